#include "albert/runner.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "albert/configio.hpp"
#include "albert/error.hpp"
#include "albert/parallel.hpp"
#include "albert/rng.hpp"

namespace albert::cli {

namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

struct CheckRun {
  std::string name;
  bool pass = true;
  json detail = json::object();
  long elapsed_ms = 0;
};

struct ReportSink {
  std::string command;
  json meta = json::object();
  std::vector<CheckRun> checks;

  template <typename Fn>
  void run(const std::string& name, Fn&& fn) {
    CheckRun c;
    c.name = name;
    auto start = Clock::now();
    try {
      fn(c);
    } catch (const Error& e) {
      c.pass = false;
      c.detail["error"] = errc_name(e.code());
      c.detail["message"] = e.what();
    }
    c.elapsed_ms = ms_since(start);
    checks.push_back(std::move(c));
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  json to_json(const json& config_echo) const {
    json checks_json = json::array();
    for (const auto& c : checks) {
      json e;
      e["name"] = c.name;
      e["status"] = c.pass ? "pass" : "fail";
      e["detail"] = c.detail;
      e["elapsedMs"] = c.elapsed_ms; // timing, excluded from determinism
      checks_json.push_back(e);
    }
    json r;
    r["schema"] = 1;
    r["tool"] = "albert-forge";
    r["command"] = command;
    r["meta"] = meta;
    r["checks"] = checks_json;
    r["status"] = all_pass() ? "pass" : "fail";
    r["config"] = config_echo;
    return r;
  }
};

int emit_and_exit(const ReportSink& sink, const json& config_echo, const std::string& out_path) {
  json report = sink.to_json(config_echo);
  if (out_path.empty()) {
    std::cout << report.dump(2) << std::endl;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write report to '" << out_path << "'" << std::endl;
      return 2;
    }
    out << report.dump(2) << std::endl;
  }
  return sink.all_pass() ? 0 : 1;
}

json certificate_json(const cubic::Certificate& cert) {
  json c;
  c["equal"] = cert.equal;
  c["evaluations"] = cert.evaluations;
  if (cert.witness) {
    c["witness"] = vec_to_json(*cert.witness);
    c["lhs"] = rational_to_json(cert.lhs_at_witness);
    c["rhs"] = rational_to_json(cert.rhs_at_witness);
  }
  return c;
}

json axiom_report_json(const cubic::AxiomReport& rep) {
  json r;
  r["pass"] = rep.pass;
  r["trials"] = rep.trials;
  r["checks"] = rep.checks;
  if (!rep.pass) {
    r["failedIdentity"] = rep.failed_identity;
    r["detail"] = rep.detail;
    if (rep.witness_x) r["witnessX"] = vec_to_json(*rep.witness_x);
    if (rep.witness_y) r["witnessY"] = vec_to_json(*rep.witness_y);
  }
  return r;
}

std::vector<std::string> pick_names(const std::vector<std::string>& requested,
                                    std::vector<std::string> all) {
  return requested.empty() ? all : requested;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"albert-forge: exact construction and identity certification for "
               "degree-3 Jordan structures and 27-dimensional Albert algebras"};
  app.require_subcommand(1);

  std::string config_path, out_path, report_in;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  std::size_t division_trials = 0;
  std::size_t workers = 0;
  std::vector<std::string> structure_sel, word_sel, cword_sel, check_sel;
  bool normalize = false, simplify = false;
  std::size_t sample_trials = 0;

  auto add_common = [&](CLI::App* sub, bool needs_config = true) {
    if (needs_config)
      sub->add_option("--config", config_path, "configuration file (JSON, schema 1)")->required();
    sub->add_option("--out", out_path, "report file (default: stdout)");
    sub->add_option("--workers", workers, "worker threads for polarization sweeps");
  };

  auto* build = app.add_subcommand("build", "build every configured object and report facts");
  add_common(build);

  auto* axioms = app.add_subcommand("check-axioms", "run the cubic norm axiom suite");
  add_common(axioms);
  axioms->add_option("--structure", structure_sel, "structure names (default: all)");
  axioms->add_option("--trials", trials, "random points per structure");
  axioms->add_option("--division-trials", division_trials,
                     "also sample nonvanishing of the norm on division-asserted structures");
  axioms->add_option("--seed", seed, "RNG seed (mandatory for randomized suites)")->required();

  auto* isotope = app.add_subcommand("isotope", "build a configured isotope and run its axioms");
  add_common(isotope);
  isotope->add_option("--structure", structure_sel, "isotope structure names")->required();
  isotope->add_option("--trials", trials, "random points");
  isotope->add_option("--seed", seed, "RNG seed")->required();

  auto* verify = app.add_subcommand("verify-iso", "replay an isotope isomorphism certificate");
  add_common(verify);
  verify->add_option("--check", check_sel, "isotope check names (default: all)");

  auto* extend = app.add_subcommand("extend-aut", "extend the Galois generator to the Tits process");
  add_common(extend);
  extend->add_option("--structure", structure_sel, "Tits-process structure names")->required();

  auto* word = app.add_subcommand("word", "certify structure-group words");
  add_common(word);
  word->add_option("--word", word_sel, "word names (default: all)");
  word->add_flag("--normalize", normalize, "also normalize each word to an isometry");

  auto* fixed = app.add_subcommand("fixed", "fixed subalgebra of an automorphism word");
  add_common(fixed);
  fixed->add_option("--word", word_sel, "word names")->required();

  auto* conformal = app.add_subcommand("conformal", "evaluate and simplify conformal words");
  add_common(conformal);
  conformal->add_option("--cword", cword_sel, "conformal word names (default: all)");
  conformal->add_flag("--simplify", simplify, "apply local rewrites with sampled equality check");
  conformal->add_option("--sample", sample_trials, "sample the domain with this many points");
  conformal->add_option("--seed", seed, "RNG seed (mandatory)")->required();

  auto* report = app.add_subcommand("report", "validate an existing report file");
  report->add_option("--in", report_in, "report file to validate")->required();

  std::vector<std::string> argv_vec = args;
  std::vector<const char*> argv;
  argv.push_back("albert-forge");
  for (const auto& a : argv_vec) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help() << std::endl;
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << std::endl;
    return 2;
  }

  if (workers > 0) set_worker_count(workers);

  if (report->parsed()) {
    std::ifstream in(report_in);
    if (!in) {
      std::cerr << "cannot open report '" << report_in << "'" << std::endl;
      return 2;
    }
    json r;
    try {
      in >> r;
    } catch (const std::exception& e) {
      std::cerr << "report is not valid JSON: " << e.what() << std::endl;
      return 2;
    }
    for (const char* field : {"schema", "tool", "command", "checks", "status"})
      if (!r.contains(field)) {
        std::cerr << "report is missing the '" << field << "' field" << std::endl;
        return 2;
      }
    if (r["schema"] != 1) {
      std::cerr << "unsupported report schema" << std::endl;
      return 2;
    }
    std::cout << "report ok: command=" << r["command"] << " status=" << r["status"]
              << " checks=" << r["checks"].size() << std::endl;
    return r["status"] == "pass" ? 0 : 1;
  }

  // Everything below needs a parsed configuration; construction problems are
  // configuration errors by contract (exit 2).
  Config cfg;
  try {
    cfg = Config::load_file(config_path);
  } catch (const Error& e) {
    std::cerr << e.what() << std::endl;
    return 2;
  }

  // Selector flags must reference configured objects; unresolved names are
  // configuration errors (exit 2), not check failures.
  try {
    if (axioms->parsed() || isotope->parsed())
      for (const auto& n : structure_sel) cfg.get_structure(n);
    if (extend->parsed())
      for (const auto& n : structure_sel) cfg.get_structure(n);
    if (word->parsed() || fixed->parsed())
      for (const auto& n : word_sel) cfg.get_word(n);
    if (conformal->parsed())
      for (const auto& n : cword_sel) cfg.get_conformal(n);
    if (verify->parsed())
      for (const auto& n : check_sel)
        if (!cfg.get_isotope_check(n)) fail(Errc::ConfigError, "unknown isotope check '" + n + "'");
  } catch (const Error& e) {
    std::cerr << e.what() << std::endl;
    return 2;
  }

  ReportSink sink;
  try {
    if (build->parsed()) {
      sink.command = "build";
      for (const auto& name : cfg.structure_names())
        sink.run("build:" + name, [&](CheckRun& c) {
          auto s = cfg.get_structure(name);
          c.detail["dimension"] = s->dim();
          c.detail["provenance"] = s->provenance();
          c.detail["basePoint"] = vec_to_json(s->base_point());
          c.detail["normAtBasePoint"] = rational_to_json(s->norm(s->base_point()));
          c.pass = s->norm(s->base_point()).is_one();
        });
      for (const auto& name : cfg.word_names())
        sink.run("word:" + name, [&](CheckRun& c) {
          auto w = cfg.get_word(name);
          c.detail["multiplier"] = rational_to_json(w.multiplier());
          c.detail["length"] = w.length();
        });
    } else if (axioms->parsed()) {
      sink.command = "check-axioms";
      sink.meta["seed"] = seed;
      sink.meta["trials"] = trials;
      auto names = pick_names(structure_sel, cfg.structure_names());
      for (const auto& name : names)
        sink.run("axioms:" + name, [&](CheckRun& c) {
          auto s = cfg.get_structure(name);
          auto rep = cubic::axiom_suite(*s, trials, seed);
          c.detail = axiom_report_json(rep);
          c.pass = rep.pass;
        });
      if (division_trials > 0)
        for (const auto& name : names) {
          if (!cfg.division_asserted(name)) continue;
          sink.run("division:" + name, [&](CheckRun& c) {
            auto s = cfg.get_structure(name);
            auto ds = cubic::division_sample(*s, division_trials, seed);
            c.detail["trials"] = ds.trials;
            c.detail["nonzero"] = ds.nonzero;
            if (ds.zero_witness) c.detail["zeroWitness"] = vec_to_json(*ds.zero_witness);
            c.detail["note"] = "sampling evidence only, not a proof of the division property";
            c.pass = ds.nonzero == ds.trials;
          });
        }
    } else if (isotope->parsed()) {
      sink.command = "isotope";
      sink.meta["seed"] = seed;
      sink.meta["trials"] = trials;
      for (const auto& name : structure_sel)
        sink.run("isotope:" + name, [&](CheckRun& c) {
          auto s = cfg.get_structure(name);
          c.detail["dimension"] = s->dim();
          c.detail["identity"] = vec_to_json(s->base_point());
          auto rep = cubic::axiom_suite(*s, trials, seed);
          c.detail["axioms"] = axiom_report_json(rep);
          c.pass = rep.pass;
        });
    } else if (verify->parsed()) {
      sink.command = "verify-iso";
      auto names = pick_names(check_sel, cfg.isotope_check_names());
      for (const auto& name : names)
        sink.run("verify-iso:" + name, [&](CheckRun& c) {
          auto chk = cfg.get_isotope_check(name);
          if (!chk) fail(Errc::ConfigError, "unknown isotope check '" + name + "'");
          const auto* jd = cfg.get_jordan(chk->structure);
          if (!jd) fail(Errc::ConfigError, "not a Tits-process structure");
          if (chk->albert) {
            auto rep = tits::isotope_params_albert(*jd, chk->v);
            c.detail["uTarget"] = vec_to_json(rep.u_target);
            c.detail["muTarget"] = vec_to_json(rep.mu_target);
            c.detail["certificate"] = certificate_json(rep.certificate);
            c.pass = rep.certificate.equal;
          } else {
            auto rep = tits::isotope_params(*jd, chk->v);
            c.detail["uTarget"] = vec_to_json(rep.u_target);
            c.detail["muTarget"] = vec_to_json(rep.mu_target);
            c.detail["certificate"] = certificate_json(rep.certificate);
            c.pass = rep.certificate.equal;
          }
        });
    } else if (extend->parsed()) {
      sink.command = "extend-aut";
      for (const auto& name : structure_sel)
        sink.run("extend-aut:" + name, [&](CheckRun& c) {
          const auto* jd = cfg.get_jordan(name);
          if (!jd) fail(Errc::ConfigError, "'" + name + "' is not a Tits-process structure");
          auto ext = tits::extend_galois(*jd);
          c.detail["fixesIdentity"] = ext.fixes_identity;
          c.detail["orderThree"] = ext.order_three;
          c.detail["certificate"] = certificate_json(ext.certificate);
          c.pass = ext.fixes_identity && ext.order_three && ext.certificate.equal;
        });
    } else if (word->parsed()) {
      sink.command = "word";
      auto names = pick_names(word_sel, cfg.word_names());
      for (const auto& name : names)
        sink.run("word:" + name, [&](CheckRun& c) {
          auto w = cfg.get_word(name);
          c.detail["multiplier"] = rational_to_json(w.multiplier());
          c.detail["length"] = w.length();
          c.detail["certificate"] = certificate_json(w.certificate());
          c.detail["isAutomorphism"] = strg::is_automorphism(w);
          c.pass = w.certificate().equal;
          if (normalize) {
            auto iso = strg::normalize_to_isometry(w);
            c.detail["normalizedMultiplier"] = rational_to_json(iso.multiplier());
            c.detail["normalizedLength"] = iso.length();
            c.pass = c.pass && iso.multiplier().is_one();
          }
        });
    } else if (fixed->parsed()) {
      sink.command = "fixed";
      for (const auto& name : word_sel)
        sink.run("fixed:" + name, [&](CheckRun& c) {
          auto w = cfg.get_word(name);
          auto sub = strg::fixed_subalgebra(w);
          auto cls = strg::classify_subalgebra(sub);
          c.detail["dimension"] = sub.dim();
          c.detail["stratum"] = strg::stratum_name(cls.stratum);
          c.detail["diagnostic"] = cls.diagnostic;
          c.detail["containsIdentity"] = sub.contains(w.structure()->base_point());
        });
    } else if (conformal->parsed()) {
      sink.command = "conformal";
      sink.meta["seed"] = seed;
      auto names = pick_names(cword_sel, cfg.conformal_names());
      for (const auto& name : names)
        sink.run("conformal:" + name, [&](CheckRun& c) {
          auto w = cfg.get_conformal(name);
          c.detail["letters"] = w.letters().size();
          c.detail["normalForm"] = w.normal_form().has_value();
          if (simplify) {
            auto simp = w.simplified(seed);
            c.detail["simplifiedLetters"] = simp.letters().size();
            c.detail["simplifiedNormalForm"] = simp.normal_form().has_value();
          }
          if (sample_trials > 0) {
            auto rep = w.sample_domain(sample_trials, seed);
            c.detail["domain"] = {{"trials", rep.trials}, {"defined", rep.defined}};
          }
        });
    }
  } catch (const Error& e) {
    // errors outside a check body are configuration-shaped
    std::cerr << e.what() << std::endl;
    return 2;
  }

  json echo = cfg.raw();
  return emit_and_exit(sink, echo, out_path);
}

} // namespace albert::cli

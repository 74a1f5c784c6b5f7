#include "albert/configio.hpp"

#include <fstream>

#include "albert/error.hpp"

namespace albert::cli {

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<long long>()));
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  fail(Errc::ConfigError, "expected a rational ('p/q' string or integer), got " + j.dump());
}

json rational_to_json(const Rational& r) { return r.str(); }

linalg::Vec vec_from_json(const json& j) {
  if (!j.is_array()) fail(Errc::ConfigError, "expected a coordinate array, got " + j.dump());
  linalg::Vec v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

json vec_to_json(const linalg::Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_to_json(x));
  return a;
}

linalg::Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail(Errc::ConfigError, "expected a matrix (array of rows)");
  linalg::Mat m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto row = vec_from_json(j[i]);
    if (row.size() != m.cols()) fail(Errc::ConfigError, "ragged matrix rows");
    for (std::size_t c = 0; c < row.size(); ++c) m.at(i, c) = row[c];
  }
  return m;
}

json mat_to_json(const linalg::Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m.at(i, c)));
    rows.push_back(row);
  }
  return rows;
}

namespace {

[[noreturn]] void missing(const std::string& kind, const std::string& name) {
  fail(Errc::ConfigError, "unresolved " + kind + " reference '" + name + "'");
}

etale::Spec etale_spec_from_json(const json& j, const std::map<std::string, json>& spec_pool) {
  if (j.is_string()) {
    auto it = spec_pool.find(j.get<std::string>());
    if (it == spec_pool.end()) missing("etale", j.get<std::string>());
    return etale_spec_from_json(it->second, spec_pool);
  }
  const std::string kind = j.value("kind", "");
  if (kind == "rationals") return etale::Spec::rationals();
  if (kind == "splitQuadratic") return etale::Spec::split_quadratic();
  if (kind == "quadraticField") {
    if (!j.contains("d")) fail(Errc::ConfigError, "quadraticField needs 'd'");
    return etale::Spec::quadratic_field(rational_from_json(j.at("d")));
  }
  if (kind == "splitCubic") return etale::Spec::split_cubic();
  if (kind == "cyclicCubicField") {
    if (!j.contains("minPoly") || !j.contains("rhoImage"))
      fail(Errc::ConfigError, "cyclicCubicField needs 'minPoly' and 'rhoImage'");
    return etale::Spec::cyclic_cubic_field(vec_from_json(j.at("minPoly")),
                                           vec_from_json(j.at("rhoImage")));
  }
  if (kind == "composite") {
    if (!j.contains("cubic") || !j.contains("quadratic"))
      fail(Errc::ConfigError, "composite needs 'cubic' and 'quadratic'");
    return etale::Spec::composite(etale_spec_from_json(j.at("cubic"), spec_pool),
                                  etale_spec_from_json(j.at("quadratic"), spec_pool));
  }
  fail(Errc::ConfigError, "unknown etale kind '" + kind + "'");
}

} // namespace

Config Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoError, "cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  return parse(j);
}

Config Config::parse(const json& j) {
  Config cfg;
  cfg.raw_ = j;
  if (!j.is_object()) fail(Errc::ConfigError, "config root must be an object");
  const int schema = j.value("schema", 0);
  if (schema != 1) fail(Errc::ConfigError, "unsupported schema version (expected 1)");

  std::map<std::string, json> etale_pool;
  if (j.contains("etales"))
    for (auto it = j.at("etales").begin(); it != j.at("etales").end(); ++it)
      etale_pool[it.key()] = it.value();
  for (const auto& [name, spec_json] : etale_pool) {
    auto spec = etale_spec_from_json(spec_json, etale_pool);
    auto rep = etale::check_spec(spec);
    if (!rep.valid) {
      std::string msg = "etale '" + name + "' invalid:";
      for (const auto& f : rep.failures) msg += " " + f + ";";
      fail(Errc::ConfigError, msg);
    }
    cfg.etales_[name] = etale::Algebra::make(spec);
  }
  // the base field is always available
  if (!cfg.etales_.count("Q")) cfg.etales_["Q"] = etale::Algebra::make(etale::Spec::rationals());

  if (j.contains("algebras"))
    for (auto it = j.at("algebras").begin(); it != j.at("algebras").end(); ++it) {
      const std::string& name = it.key();
      const json& a = it.value();
      const std::string model = a.value("model", "");
      if (model == "mat3") {
        cfg.algebras_[name] = assoc::Algebra::mat3(cfg.get_etale(a.value("center", "Q")));
      } else if (model == "mat3Unitary") {
        std::optional<linalg::Vec> w;
        if (a.contains("w")) w = vec_from_json(a.at("w"));
        cfg.algebras_[name] =
            assoc::Algebra::mat3_unitary(cfg.get_etale(a.value("center", "")), std::move(w));
      } else if (model == "etale3") {
        cfg.algebras_[name] = assoc::Algebra::etale3(cfg.get_etale(a.value("etale", "")));
      } else if (model == "crossedProduct") {
        if (!a.contains("gamma")) fail(Errc::ConfigError, "crossedProduct needs 'gamma'");
        cfg.algebras_[name] =
            assoc::Algebra::crossed_product(cfg.get_etale(a.value("etale", "")),
                                            vec_from_json(a.at("gamma")),
                                            a.value("involution", false));
      } else if (model == "doubleOpposite") {
        cfg.algebras_[name] =
            assoc::Algebra::double_opposite(cfg.get_algebra(a.value("inner", "")));
      } else {
        fail(Errc::ConfigError, "algebra '" + name + "': unknown model '" + model + "'");
      }
    }

  if (j.contains("structures")) {
    // two passes so isotopes can reference earlier structures
    std::vector<std::pair<std::string, json>> deferred;
    for (auto it = j.at("structures").begin(); it != j.at("structures").end(); ++it) {
      const std::string& name = it.key();
      const json& s = it.value();
      const std::string kind = s.value("kind", "");
      if (kind == "isotope") {
        deferred.push_back({name, s});
        continue;
      }
      if (kind == "etale") {
        cfg.structures_[name] = tits::etale_structure(cfg.get_etale(s.value("etale", "")));
      } else if (kind == "hermitian") {
        cfg.structures_[name] = tits::hermitian_structure(cfg.get_algebra(s.value("algebra", "")));
      } else if (kind == "titsProcess") {
        auto b = cfg.get_algebra(s.value("algebra", ""));
        linalg::Vec u =
            s.contains("u") && !s.at("u").is_string() ? vec_from_json(s.at("u")) : b->one();
        if (!s.contains("mu")) fail(Errc::ConfigError, "titsProcess needs 'mu'");
        auto jordan = std::make_shared<tits::Jordan>(
            tits::build_tits(b, std::move(u), vec_from_json(s.at("mu"))));
        cfg.structures_[name] = jordan->structure();
        cfg.jordans_[name] = jordan;
      } else if (kind == "firstConstruction") {
        if (!s.contains("mu")) fail(Errc::ConfigError, "firstConstruction needs 'mu'");
        auto jordan = std::make_shared<tits::Jordan>(tits::build_first_construction(
            cfg.get_algebra(s.value("algebra", "")), rational_from_json(s.at("mu"))));
        cfg.structures_[name] = jordan->structure();
        cfg.jordans_[name] = jordan;
      } else {
        fail(Errc::ConfigError, "structure '" + name + "': unknown kind '" + kind + "'");
      }
      if (s.value("divisionAsserted", false)) cfg.division_flags_[name] = true;
    }
    for (const auto& [name, s] : deferred) {
      auto parent = cfg.get_structure(s.value("parent", ""));
      if (!s.contains("v")) fail(Errc::ConfigError, "isotope needs 'v'");
      cfg.structures_[name] = tits::isotope(parent, vec_from_json(s.at("v")));
      if (s.value("divisionAsserted", false)) cfg.division_flags_[name] = true;
    }
  }

  if (j.contains("automorphisms"))
    for (auto it = j.at("automorphisms").begin(); it != j.at("automorphisms").end(); ++it) {
      const std::string& name = it.key();
      const json& a = it.value();
      const std::string kind = a.value("kind", "");
      const std::string sname = a.value("structure", "");
      if (kind == "extendGalois") {
        const auto* jd = cfg.get_jordan(sname);
        if (!jd)
          fail(Errc::ConfigError,
               "automorphism '" + name + "': '" + sname + "' is not a Tits-process structure");
        cfg.automorphisms_[name] = tits::extend_galois(*jd).op;
      } else if (kind == "conjugation") {
        const auto* jd = cfg.get_jordan(sname);
        if (!jd)
          fail(Errc::ConfigError,
               "automorphism '" + name + "': '" + sname + "' is not a Tits-process structure");
        if (!a.contains("g")) fail(Errc::ConfigError, "conjugation needs 'g'");
        cfg.automorphisms_[name] = tits::conjugation_automorphism(*jd, vec_from_json(a.at("g")));
      } else if (kind == "explicit") {
        cfg.automorphisms_[name] = mat_from_json(a.at("matrix"));
      } else {
        fail(Errc::ConfigError, "automorphism '" + name + "': unknown kind '" + kind + "'");
      }
    }

  if (j.contains("words"))
    for (auto it = j.at("words").begin(); it != j.at("words").end(); ++it) {
      const std::string& name = it.key();
      const json& w = it.value();
      auto s = cfg.get_structure(w.value("structure", ""));
      std::vector<strg::Letter> letters;
      for (const auto& l : w.value("letters", json::array())) {
        if (l.contains("scalar")) {
          letters.push_back(strg::scalar_letter(rational_from_json(l.at("scalar"))));
        } else if (l.contains("uop")) {
          letters.push_back(strg::u_letter(vec_from_json(l.at("uop"))));
        } else if (l.contains("aut")) {
          const std::string aname = l.at("aut").get<std::string>();
          auto a = cfg.automorphisms_.find(aname);
          if (a == cfg.automorphisms_.end()) missing("automorphism", aname);
          letters.push_back(strg::aut_letter(a->second, aname));
        } else if (l.contains("linear")) {
          letters.push_back(strg::linear_letter(mat_from_json(l.at("linear"))));
        } else {
          fail(Errc::ConfigError, "word '" + name + "': unknown letter " + l.dump());
        }
      }
      cfg.words_.emplace(name, strg::Word::make(s, std::move(letters)));
    }

  if (j.contains("conformalWords"))
    for (auto it = j.at("conformalWords").begin(); it != j.at("conformalWords").end(); ++it) {
      const std::string& name = it.key();
      const json& w = it.value();
      auto s = cfg.get_structure(w.value("structure", ""));
      std::vector<conf::Letter> letters;
      for (const auto& l : w.value("letters", json::array())) {
        if (l.contains("translate")) {
          letters.push_back(conf::translate_letter(vec_from_json(l.at("translate"))));
        } else if (l.contains("j")) {
          letters.push_back(conf::j_letter());
        } else if (l.contains("word")) {
          const std::string wname = l.at("word").get<std::string>();
          auto found = cfg.words_.find(wname);
          if (found == cfg.words_.end()) missing("word", wname);
          letters.push_back(conf::str_letter(found->second));
        } else {
          fail(Errc::ConfigError, "conformal word '" + name + "': unknown letter " + l.dump());
        }
      }
      cfg.conformals_.emplace(name, conf::Word::make(s, std::move(letters)));
    }

  if (j.contains("isotopeChecks"))
    for (auto it = j.at("isotopeChecks").begin(); it != j.at("isotopeChecks").end(); ++it) {
      const json& c = it.value();
      IsotopeCheck chk;
      chk.structure = c.value("structure", "");
      if (!cfg.jordans_.count(chk.structure))
        fail(Errc::ConfigError, "isotope check '" + it.key() + "': '" + chk.structure +
                                    "' is not a Tits-process structure");
      if (!c.contains("v")) fail(Errc::ConfigError, "isotope check needs 'v'");
      chk.v = vec_from_json(c.at("v"));
      chk.albert = c.value("albert", false);
      cfg.isotope_checks_[it.key()] = std::move(chk);
    }

  return cfg;
}

etale::AlgebraPtr Config::get_etale(const std::string& name) const {
  auto it = etales_.find(name);
  if (it == etales_.end()) missing("etale", name);
  return it->second;
}

assoc::AlgebraPtr Config::get_algebra(const std::string& name) const {
  auto it = algebras_.find(name);
  if (it == algebras_.end()) missing("algebra", name);
  return it->second;
}

const tits::Jordan* Config::get_jordan(const std::string& name) const {
  auto it = jordans_.find(name);
  return it == jordans_.end() ? nullptr : it->second.get();
}

cubic::StructurePtr Config::get_structure(const std::string& name) const {
  auto it = structures_.find(name);
  if (it == structures_.end()) missing("structure", name);
  return it->second;
}

linalg::Mat Config::get_automorphism(const std::string& name) const {
  auto it = automorphisms_.find(name);
  if (it == automorphisms_.end()) missing("automorphism", name);
  return it->second;
}

strg::Word Config::get_word(const std::string& name) const {
  auto it = words_.find(name);
  if (it == words_.end()) missing("word", name);
  return it->second;
}

conf::Word Config::get_conformal(const std::string& name) const {
  auto it = conformals_.find(name);
  if (it == conformals_.end()) missing("conformal word", name);
  return it->second;
}

std::vector<std::string> Config::structure_names() const {
  std::vector<std::string> names;
  for (const auto& [n, _] : structures_) names.push_back(n);
  return names;
}

std::vector<std::string> Config::word_names() const {
  std::vector<std::string> names;
  for (const auto& [n, _] : words_) names.push_back(n);
  return names;
}

std::vector<std::string> Config::conformal_names() const {
  std::vector<std::string> names;
  for (const auto& [n, _] : conformals_) names.push_back(n);
  return names;
}

std::optional<Config::IsotopeCheck> Config::get_isotope_check(const std::string& name) const {
  auto it = isotope_checks_.find(name);
  if (it == isotope_checks_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Config::isotope_check_names() const {
  std::vector<std::string> names;
  for (const auto& [n, _] : isotope_checks_) names.push_back(n);
  return names;
}

bool Config::division_asserted(const std::string& structure) const {
  auto it = division_flags_.find(structure);
  return it != division_flags_.end() && it->second;
}

} // namespace albert::cli

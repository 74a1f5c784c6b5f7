#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "albert/conformal.hpp"
#include "albert/strgroup.hpp"
#include "albert/titsbuild.hpp"

namespace albert::cli {

using nlohmann::json;

// Parsed and resolved run configuration. Rationals are "p/q" strings in the
// file; every cross-reference is resolved at load time (ConfigError with the
// offending name otherwise). Schema version 1.
class Config {
public:
  static Config load_file(const std::string& path);
  static Config parse(const json& j);

  const json& raw() const { return raw_; }

  etale::AlgebraPtr get_etale(const std::string& name) const;
  assoc::AlgebraPtr get_algebra(const std::string& name) const;
  const tits::Jordan* get_jordan(const std::string& name) const; // null for non-Tits structures
  cubic::StructurePtr get_structure(const std::string& name) const;
  linalg::Mat get_automorphism(const std::string& name) const;
  strg::Word get_word(const std::string& name) const;
  conf::Word get_conformal(const std::string& name) const;

  std::vector<std::string> structure_names() const;
  std::vector<std::string> word_names() const;
  std::vector<std::string> conformal_names() const;

  struct IsotopeCheck {
    std::string structure;
    linalg::Vec v; // etale L coordinates or hermitian coordinates per mode
    bool albert = false;
  };
  std::optional<IsotopeCheck> get_isotope_check(const std::string& name) const;
  std::vector<std::string> isotope_check_names() const;

  // Structures flagged as division-asserted configurations.
  bool division_asserted(const std::string& structure) const;

private:
  json raw_;
  std::map<std::string, etale::AlgebraPtr> etales_;
  std::map<std::string, assoc::AlgebraPtr> algebras_;
  std::map<std::string, cubic::StructurePtr> structures_;
  std::map<std::string, std::shared_ptr<tits::Jordan>> jordans_;
  std::map<std::string, linalg::Mat> automorphisms_;
  std::map<std::string, strg::Word> words_;
  std::map<std::string, conf::Word> conformals_;
  std::map<std::string, IsotopeCheck> isotope_checks_;
  std::map<std::string, bool> division_flags_;
};

// "p/q" string <-> exact rational helpers shared by config and reports.
Rational rational_from_json(const json& j);
json rational_to_json(const Rational& r);
linalg::Vec vec_from_json(const json& j);
json vec_to_json(const linalg::Vec& v);
linalg::Mat mat_from_json(const json& j);
json mat_to_json(const linalg::Mat& m);

} // namespace albert::cli

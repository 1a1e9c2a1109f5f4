#pragma once

// ConfigDocument (schema_version "1"): five input points plus an optional
// derived-object cache, in exact ("p/q" strings, canonical lowest terms) or
// float (decimal strings) mode. Rationals never serialize as JSON numbers;
// canonical exact documents re-serialize byte-identically.

#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "harness.hpp"

namespace pentagram {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error("schema error at " + path + ": " + what) {}
};

struct ConfigDocument {
  bool exact = true;
  unsigned precision_bits = 53;  // float mode only
  std::array<std::array<std::string, 2>, 5> points;  // canonical value strings
  // derived cache in canonical layer order (B,C,K,L,D,E have 5 points; O,J,X have 1)
  std::vector<std::pair<std::string, std::vector<std::array<std::string, 2>>>> derived;
  std::optional<SolveReport> solve;

  Penta<Rat> rational_points() const;     // exact coords, or exact lift of decimals
  Penta<double> double_points() const;    // float coords as binary doubles
  std::optional<Penta<Rat>> rational_derived(const std::string& name) const;
  std::optional<Penta<double>> double_derived(const std::string& name) const;
};

// "p/q" or "p"; canonicalized to lowest terms with positive denominator
Rat parse_rational(const std::string& text, const std::string& path);
std::string emit_rational(const Rat& v);

// decimal with optional exponent; must be finite
double parse_double(const std::string& text, const std::string& path);
std::string emit_double(double v);

// exact lift: every finite decimal is a rational
Rat rational_from_decimal(const std::string& text, const std::string& path);

ConfigDocument parse_config(const std::string& json_text);
ConfigDocument config_from_json(const ordered_json& j);
ordered_json config_to_json(const ConfigDocument& doc);
std::string emit_config(const ConfigDocument& doc);

ConfigDocument document_from_points(const Penta<Rat>& A);
ConfigDocument document_from_points(const Penta<double>& A, unsigned precision_bits = 53);

// Solver output: {"schema_version":"1","kind":"solved-batch",...}
std::string emit_solved_batch(std::uint64_t seed, const std::vector<ConfigDocument>& configs);
std::vector<ConfigDocument> parse_solved_batch(const std::string& json_text);

// Accepts either a single configuration document or a solved batch.
std::vector<ConfigDocument> parse_config_or_batch(const std::string& json_text);

}  // namespace pentagram

#include "config_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace pentagram {

namespace {

const std::vector<std::string> kDerivedOrder = {"B", "C", "K", "L", "D", "E", "O", "J", "X"};

bool is_orbit(const std::string& name) {
  return name == "B" || name == "C" || name == "K" || name == "L" || name == "D" || name == "E";
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// GMP's string constructor treats a leading 0 as an octal prefix
Int int_from_digits(std::string_view digits) {
  size_t first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return Int(0);
  return Int{std::string(digits.substr(first))};
}

}  // namespace

Rat parse_rational(const std::string& text, const std::string& path) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s, den = "1";
  if (size_t slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw ConfigError(path, "expected a rational 'p/q', got '" + text + "'");
  }
  Int n = int_from_digits(num);
  Int d = int_from_digits(den);
  if (d == 0) throw ConfigError(path, "zero denominator in '" + text + "'");
  Rat v(n, d);
  return negative ? Rat(-v) : v;
}

std::string emit_rational(const Rat& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

double parse_double(const std::string& text, const std::string& path) {
  if (text.empty()) throw ConfigError(path, "empty number");
  const char* begin = text.data();
  const char* end = begin + text.size();
  double v = 0;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ConfigError(path, "expected a finite decimal, got '" + text + "'");
  }
  return v;
}

std::string emit_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

Rat rational_from_decimal(const std::string& text, const std::string& path) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  long exp10 = 0;
  if (size_t e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view es = s.substr(e + 1);
    s = s.substr(0, e);
    bool eneg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      eneg = es[0] == '-';
      es.remove_prefix(1);
    }
    if (!all_digits(es)) throw ConfigError(path, "bad exponent in '" + text + "'");
    exp10 = std::stol(std::string(es));
    if (eneg) exp10 = -exp10;
  }
  std::string_view ip = s, fp = "";
  if (size_t dot = s.find('.'); dot != std::string_view::npos) {
    ip = s.substr(0, dot);
    fp = s.substr(dot + 1);
  }
  if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
      (!fp.empty() && !all_digits(fp))) {
    throw ConfigError(path, "expected a decimal, got '" + text + "'");
  }
  Int digits = int_from_digits(std::string(ip) + std::string(fp));
  long shift = exp10 - static_cast<long>(fp.size());
  Rat v(digits);
  if (shift > 0) {
    v *= Rat(pow(Int(10), static_cast<unsigned>(shift)));
  } else if (shift < 0) {
    v /= Rat(pow(Int(10), static_cast<unsigned>(-shift)));
  }
  return negative ? Rat(-v) : v;
}

Penta<Rat> ConfigDocument::rational_points() const {
  Penta<Rat> A;
  for (int i = 0; i < 5; ++i) {
    std::string path = "points[" + std::to_string(i) + "]";
    if (exact) {
      A[i] = Point<Rat>{parse_rational(points[i][0], path), parse_rational(points[i][1], path)};
    } else {
      A[i] = Point<Rat>{rational_from_decimal(points[i][0], path),
                        rational_from_decimal(points[i][1], path)};
    }
  }
  return A;
}

Penta<double> ConfigDocument::double_points() const {
  Penta<double> A;
  for (int i = 0; i < 5; ++i) {
    std::string path = "points[" + std::to_string(i) + "]";
    if (exact) {
      A[i] = Point<double>{to_double(parse_rational(points[i][0], path)),
                           to_double(parse_rational(points[i][1], path))};
    } else {
      A[i] = Point<double>{parse_double(points[i][0], path), parse_double(points[i][1], path)};
    }
  }
  return A;
}

namespace {

template <class S, class ParseFn>
std::optional<Penta<S>> derived_as(const ConfigDocument& doc, const std::string& name,
                                   ParseFn&& parse) {
  for (const auto& [key, pts] : doc.derived) {
    if (key != name) continue;
    if (pts.size() != 5) return std::nullopt;
    Penta<S> out;
    for (int i = 0; i < 5; ++i) {
      std::string path = "derived." + name + "[" + std::to_string(i) + "]";
      out[i] = Point<S>{parse(pts[i][0], path), parse(pts[i][1], path)};
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Penta<Rat>> ConfigDocument::rational_derived(const std::string& name) const {
  if (exact) {
    return derived_as<Rat>(*this, name,
                           [](const std::string& s, const std::string& p) { return parse_rational(s, p); });
  }
  return derived_as<Rat>(*this, name, [](const std::string& s, const std::string& p) {
    return rational_from_decimal(s, p);
  });
}

std::optional<Penta<double>> ConfigDocument::double_derived(const std::string& name) const {
  if (exact) {
    return derived_as<double>(*this, name, [](const std::string& s, const std::string& p) {
      return to_double(parse_rational(s, p));
    });
  }
  return derived_as<double>(*this, name,
                            [](const std::string& s, const std::string& p) { return parse_double(s, p); });
}

namespace {

SolveReport solve_from_json(const ordered_json& j, const std::string& path) {
  SolveReport rep;
  if (!j.is_object()) throw ConfigError(path, "solve_report must be an object");
  rep.iterations = j.value("iterations", 0);
  rep.converged = j.value("converged", false);
  rep.final_residual = j.value("final_residual", 0.0);
  if (j.contains("step_norms")) rep.step_norms = j["step_norms"].get<std::vector<double>>();
  if (j.contains("residual_history")) {
    rep.residual_history = j["residual_history"].get<std::vector<double>>();
  }
  return rep;
}

std::array<std::string, 2> pair_from_json(const ordered_json& j, const std::string& path,
                                          bool exact) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw ConfigError(path, "expected a [\"x\", \"y\"] string pair");
  }
  std::array<std::string, 2> out{j[0].get<std::string>(), j[1].get<std::string>()};
  // canonicalize exact values; keep float strings verbatim
  if (exact) {
    out[0] = emit_rational(parse_rational(out[0], path));
    out[1] = emit_rational(parse_rational(out[1], path));
  } else {
    parse_double(out[0], path);
    parse_double(out[1], path);
  }
  return out;
}

}  // namespace

ConfigDocument config_from_json(const ordered_json& j) {
  if (!j.is_object()) throw ConfigError("$", "document must be a JSON object");
  if (!j.contains("schema_version") || j["schema_version"] != "1") {
    throw ConfigError("$.schema_version", "expected \"1\"");
  }
  ConfigDocument doc;
  std::string mode = j.value("mode", "");
  if (mode == "exact") {
    doc.exact = true;
  } else if (mode == "float") {
    doc.exact = false;
    if (!j.contains("precision_bits") || !j["precision_bits"].is_number_unsigned()) {
      throw ConfigError("$.precision_bits", "float documents must carry precision_bits");
    }
    doc.precision_bits = j["precision_bits"].get<unsigned>();
  } else {
    throw ConfigError("$.mode", "expected \"exact\" or \"float\"");
  }
  if (!j.contains("points") || !j["points"].is_array() || j["points"].size() != 5) {
    throw ConfigError("$.points", "exactly 5 points required");
  }
  for (int i = 0; i < 5; ++i) {
    doc.points[i] = pair_from_json(j["points"][i], "$.points[" + std::to_string(i) + "]", doc.exact);
  }
  if (j.contains("derived")) {
    const auto& d = j["derived"];
    if (!d.is_object()) throw ConfigError("$.derived", "must be an object");
    for (const std::string& name : kDerivedOrder) {
      if (!d.contains(name)) continue;
      const auto& arr = d[name];
      std::string path = "$.derived." + name;
      if (!arr.is_array()) throw ConfigError(path, "must be an array of point pairs");
      size_t expect = is_orbit(name) ? 5 : 1;
      if (arr.size() != expect) {
        throw ConfigError(path, "expected " + std::to_string(expect) + " points");
      }
      std::vector<std::array<std::string, 2>> pts;
      for (size_t i = 0; i < arr.size(); ++i) {
        pts.push_back(pair_from_json(arr[i], path + "[" + std::to_string(i) + "]", doc.exact));
      }
      doc.derived.emplace_back(name, std::move(pts));
    }
    for (auto it = d.begin(); it != d.end(); ++it) {
      if (std::find(kDerivedOrder.begin(), kDerivedOrder.end(), it.key()) == kDerivedOrder.end()) {
        throw ConfigError("$.derived." + it.key(), "unknown derived layer");
      }
    }
  }
  if (j.contains("solve_report")) {
    doc.solve = solve_from_json(j["solve_report"], "$.solve_report");
  }
  return doc;
}

ConfigDocument parse_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

ordered_json config_to_json(const ConfigDocument& doc) {
  ordered_json j;
  j["schema_version"] = "1";
  j["mode"] = doc.exact ? "exact" : "float";
  if (!doc.exact) j["precision_bits"] = doc.precision_bits;
  ordered_json pts = ordered_json::array();
  for (const auto& p : doc.points) pts.push_back({p[0], p[1]});
  j["points"] = std::move(pts);
  if (!doc.derived.empty()) {
    ordered_json d;
    for (const std::string& name : kDerivedOrder) {
      for (const auto& [key, vals] : doc.derived) {
        if (key != name) continue;
        ordered_json arr = ordered_json::array();
        for (const auto& p : vals) arr.push_back({p[0], p[1]});
        d[name] = std::move(arr);
      }
    }
    j["derived"] = std::move(d);
  }
  if (doc.solve) j["solve_report"] = to_json(*doc.solve);
  return j;
}

std::string emit_config(const ConfigDocument& doc) { return config_to_json(doc).dump(2) + "\n"; }

ConfigDocument document_from_points(const Penta<Rat>& A) {
  ConfigDocument doc;
  doc.exact = true;
  for (int i = 0; i < 5; ++i) {
    doc.points[i] = {emit_rational(A[i].x), emit_rational(A[i].y)};
  }
  return doc;
}

ConfigDocument document_from_points(const Penta<double>& A, unsigned precision_bits) {
  ConfigDocument doc;
  doc.exact = false;
  doc.precision_bits = precision_bits;
  for (int i = 0; i < 5; ++i) {
    doc.points[i] = {emit_double(A[i].x), emit_double(A[i].y)};
  }
  return doc;
}

std::string emit_solved_batch(std::uint64_t seed, const std::vector<ConfigDocument>& configs) {
  ordered_json j;
  j["schema_version"] = "1";
  j["kind"] = "solved-batch";
  j["seed"] = seed;
  j["count"] = configs.size();
  ordered_json arr = ordered_json::array();
  for (const auto& c : configs) arr.push_back(config_to_json(c));
  j["configurations"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::vector<ConfigDocument> parse_solved_batch(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("kind", "") != "solved-batch") {
    throw ConfigError("$.kind", "expected \"solved-batch\"");
  }
  if (!j.contains("configurations") || !j["configurations"].is_array()) {
    throw ConfigError("$.configurations", "missing configuration array");
  }
  std::vector<ConfigDocument> out;
  for (const auto& c : j["configurations"]) out.push_back(config_from_json(c));
  return out;
}

std::vector<ConfigDocument> parse_config_or_batch(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  if (j.is_object() && j.value("kind", "") == "solved-batch") {
    std::vector<ConfigDocument> out;
    if (!j.contains("configurations") || !j["configurations"].is_array()) {
      throw ConfigError("$.configurations", "missing configuration array");
    }
    for (const auto& c : j["configurations"]) out.push_back(config_from_json(c));
    return out;
  }
  return {config_from_json(j)};
}

}  // namespace pentagram

#pragma once

// JSON documents for symbol specs, experiment configs and reports.
//
// Complex numbers are either a bare number or a two-element array [re, im].

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "thdet/experiment.hpp"
#include "thdet/symbol.hpp"

namespace thdet {

using json = nlohmann::json;

/// Malformed or inconsistent JSON input.
class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline complex complex_from_json(const json& j, const char* field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw format_error(std::string(field) + ": expected a number or [re, im]");
}

inline json complex_to_json(complex z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

inline Center center_from_json(const json& j) {
  if (j.is_number()) {
    const double c = j.get<double>();
    if (c == 1.0) return Center::plus_one;
    if (c == -1.0) return Center::minus_one;
  } else if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+1" || s == "1" || s == "plus_one") return Center::plus_one;
    if (s == "-1" || s == "minus_one") return Center::minus_one;
  }
  throw format_error("center: expected 1, -1, \"+1\" or \"-1\"");
}

inline SpecialKind special_kind_from_string(const std::string& s) {
  if (s == "phi1") return SpecialKind::phi1;
  if (s == "phi2") return SpecialKind::phi2;
  if (s == "phi3") return SpecialKind::phi3;
  if (s == "phi4") return SpecialKind::phi4;
  throw format_error("special_kind: unknown kind '" + s + "'");
}

inline const char* special_kind_name(SpecialKind k) {
  switch (k) {
    case SpecialKind::phi1: return "phi1";
    case SpecialKind::phi2: return "phi2";
    case SpecialKind::phi3: return "phi3";
    case SpecialKind::phi4: return "phi4";
  }
  return "?";
}

inline void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                                const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw format_error(std::string(where) + ": unknown field '" + it.key() + "'");
  }
}

}  // namespace detail

inline SymbolSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw format_error("spec: expected a JSON object");
  detail::reject_unknown_keys(
      j, {"smooth_log_coeffs", "jump_plus", "jump_minus", "jumps", "powers", "special_kind"},
      "spec");
  SymbolSpec s;
  if (j.contains("smooth_log_coeffs")) {
    std::vector<std::pair<int, complex>> entries;
    for (const auto& e : j.at("smooth_log_coeffs")) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer()) {
        throw format_error("smooth_log_coeffs: entries are [k, re, im] with integer k");
      }
      entries.emplace_back(e[0].get<int>(), complex{e[1].get<double>(), e[2].get<double>()});
    }
    s.smooth = SmoothPart(entries);
  }
  if (j.contains("jump_plus")) s.jump_plus = detail::complex_from_json(j["jump_plus"], "jump_plus");
  if (j.contains("jump_minus")) {
    s.jump_minus = detail::complex_from_json(j["jump_minus"], "jump_minus");
  }
  if (j.contains("jumps")) {
    for (const auto& e : j.at("jumps")) {
      detail::reject_unknown_keys(e, {"theta0", "beta"}, "jumps");
      s.jumps.push_back({detail::complex_from_json(e.at("beta"), "jumps.beta"),
                         e.at("theta0").get<double>()});
    }
  }
  if (j.contains("powers")) {
    for (const auto& e : j.at("powers")) {
      detail::reject_unknown_keys(e, {"alpha", "center"}, "powers");
      PowerFactor p{detail::complex_from_json(e.at("alpha"), "powers.alpha")};
      if (e.contains("center")) p.center = detail::center_from_json(e["center"]);
      s.powers.push_back(p);
    }
  }
  if (j.contains("special_kind") && !j["special_kind"].is_null()) {
    const json& k = j["special_kind"];
    detail::reject_unknown_keys(k, {"kind", "beta"}, "special_kind");
    s.special = SpecialSymbol{detail::special_kind_from_string(k.at("kind").get<std::string>()),
                              detail::complex_from_json(k.at("beta"), "special_kind.beta")};
  }
  try {
    s.validate();
  } catch (const domain_error& e) {
    throw format_error(std::string("spec: ") + e.what());
  }
  return s;
}

inline json spec_to_json(const SymbolSpec& s) {
  json j = json::object();
  json smooth = json::array();
  for (const auto& [k, v] : s.smooth.entries()) smooth.push_back({k, v.real(), v.imag()});
  j["smooth_log_coeffs"] = smooth;
  j["jump_plus"] = detail::complex_to_json(s.jump_plus);
  j["jump_minus"] = detail::complex_to_json(s.jump_minus);
  j["jumps"] = json::array();
  for (const auto& f : s.jumps) {
    j["jumps"].push_back({{"theta0", f.theta0}, {"beta", detail::complex_to_json(f.beta)}});
  }
  j["powers"] = json::array();
  for (const auto& p : s.powers) {
    j["powers"].push_back({{"alpha", detail::complex_to_json(p.alpha)},
                           {"center", p.center == Center::plus_one ? "+1" : "-1"}});
  }
  if (s.special) {
    j["special_kind"] = {{"kind", detail::special_kind_name(s.special->kind)},
                         {"beta", detail::complex_to_json(s.special->beta)}};
  }
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

inline ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw format_error("config: expected a JSON object");
  detail::reject_unknown_keys(j,
                              {"spec", "n_list", "exact_method", "toeplitz_too", "output",
                               "output_path", "thresholds"},
                              "config");
  ExperimentConfig c;
  c.spec = spec_from_json(j.at("spec"));
  if (j.contains("n_list")) c.n_list = j["n_list"].get<std::vector<int>>();
  if (j.contains("exact_method")) {
    const auto m = j["exact_method"].get<std::string>();
    if (m == "lu") c.exact_method = ExactMethod::lu;
    else if (m == "closed_form" || m == "closed") c.exact_method = ExactMethod::closed_form;
    else if (m == "both") c.exact_method = ExactMethod::both;
    else throw format_error("exact_method: expected lu, closed_form or both");
  }
  if (j.contains("toeplitz_too")) c.toeplitz_too = j["toeplitz_too"].get<bool>();
  if (j.contains("output")) {
    const auto o = j["output"].get<std::string>();
    if (o == "csv") c.output = OutputFormat::csv;
    else if (o == "json") c.output = OutputFormat::json;
    else throw format_error("output: expected csv or json");
  }
  if (j.contains("output_path")) c.output_path = j["output_path"].get<std::string>();
  if (j.contains("thresholds")) {
    const json& t = j["thresholds"];
    detail::reject_unknown_keys(t, {"max_abs_err", "monotone_tail", "max_mt_err"}, "thresholds");
    if (t.contains("max_abs_err")) c.thresholds.max_abs_err = t["max_abs_err"].get<double>();
    if (t.contains("monotone_tail")) {
      c.thresholds.require_monotone_tail = t["monotone_tail"].get<bool>();
    }
    if (t.contains("max_mt_err")) c.thresholds.max_mt_err = t["max_mt_err"].get<double>();
  }
  try {
    c.validate();
  } catch (const domain_error& e) {
    throw format_error(std::string("config: ") + e.what());
  }
  return c;
}

namespace detail {

inline json logvalue_to_json(const LogValue& v) {
  if (v.is_zero()) return "zero";
  return {{"logmod", v.log_modulus()}, {"arg", v.argument()}};
}

inline LogValue logvalue_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "zero") return LogValue::zero();
  return LogValue::from_polar_log(j.at("logmod").get<double>(), j.at("arg").get<double>());
}

template <typename T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json("undefined");
}

inline std::optional<double> optional_double(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) return std::nullopt;
  return j[key].get<double>();
}

}  // namespace detail

inline json report_to_json(const ConvergenceReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json o;
    o["n"] = row.n;
    o["exact"] = detail::logvalue_to_json(row.exact);
    o["predicted"] = detail::logvalue_to_json(row.predicted);
    if (row.ratio) {
      o["ratio_mod"] = row.ratio->modulus;
      o["ratio_arg"] = row.ratio->argument;
      o["abs_err"] = row.ratio->abs_err;
    } else {
      o["ratio_mod"] = o["ratio_arg"] = o["abs_err"] = "undefined";
    }
    if (row.method_discrepancy) o["method_discrepancy"] = *row.method_discrepancy;
    if (row.mt_ratio) o["mt_ratio"] = detail::logvalue_to_json(*row.mt_ratio);
    if (row.mt_abs_err) o["mt_abs_err"] = *row.mt_abs_err;
    rows.push_back(std::move(o));
  }
  return {{"rows", rows},
          {"fitted_rate", detail::optional_to_json(r.fitted_rate)},
          {"monotone_tail", r.monotone_tail},
          {"methods_agree", r.methods_agree}};
}

inline ConvergenceReport report_from_json(const json& j) {
  ConvergenceReport r;
  for (const auto& o : j.at("rows")) {
    ReportRow row;
    row.n = o.at("n").get<int>();
    row.exact = detail::logvalue_from_json(o.at("exact"));
    row.predicted = detail::logvalue_from_json(o.at("predicted"));
    if (o.at("abs_err").is_number()) {
      row.ratio = Ratio{o["ratio_mod"].get<double>(), o["ratio_arg"].get<double>(),
                        o["abs_err"].get<double>()};
    }
    row.method_discrepancy = detail::optional_double(o, "method_discrepancy");
    if (o.contains("mt_ratio")) row.mt_ratio = detail::logvalue_from_json(o["mt_ratio"]);
    row.mt_abs_err = detail::optional_double(o, "mt_abs_err");
    r.rows.push_back(std::move(row));
  }
  r.fitted_rate = detail::optional_double(j, "fitted_rate");
  r.monotone_tail = j.at("monotone_tail").get<bool>();
  r.methods_agree = j.value("methods_agree", true);
  return r;
}

inline std::string report_text(const ConvergenceReport& r, OutputFormat format) {
  return format == OutputFormat::csv ? report_to_csv(r) : report_to_json(r).dump(2) + "\n";
}

/// Writes the report to `path`, or to stdout when `path` is empty or "-".
inline void emit_report(const ConvergenceReport& r, OutputFormat format, const std::string& path,
                        std::ostream& fallback) {
  const std::string text = report_text(r, format);
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace thdet

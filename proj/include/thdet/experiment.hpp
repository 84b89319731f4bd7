#pragma once

// Convergence experiments: exact determinants against predictions over an
// n-grid, tail rate fitting, and CSV/JSON report emission.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "thdet/asymptotics.hpp"
#include "thdet/closed_forms.hpp"
#include "thdet/fourier.hpp"
#include "thdet/log_value.hpp"
#include "thdet/matrix_kernel.hpp"
#include "thdet/symbol.hpp"

namespace thdet {

enum class ExactMethod { lu, closed_form, both };
enum class OutputFormat { csv, json };

/// Pass/fail thresholds evaluated by `verify`.
struct Thresholds {
  std::optional<double> max_abs_err;   // at the largest n
  bool require_monotone_tail = false;
  std::optional<double> max_mt_err;    // |(det M/det T)/F - 1| at the largest n
};

struct ExperimentConfig {
  SymbolSpec spec;
  std::vector<int> n_list{16, 23, 32, 45, 64, 91, 128, 181, 256};
  ExactMethod exact_method = ExactMethod::lu;
  bool toeplitz_too = false;
  OutputFormat output = OutputFormat::csv;
  std::string output_path;
  Thresholds thresholds;

  void validate() const {
    if (n_list.empty()) throw domain_error("n_list must not be empty");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
      if (n_list[i] < 1) throw domain_error("n_list entries must be positive");
      if (i > 0 && n_list[i] <= n_list[i - 1]) {
        throw domain_error("n_list must be strictly increasing");
      }
    }
    if (n_list.back() > 1024) throw domain_error("n_list exceeds the 1024 desk-scale guard");
    spec.validate();
  }
};

/// exact / predicted; undefined when either side is zero.
struct Ratio {
  double modulus = 1.0;
  double argument = 0.0;
  double abs_err = 0.0;
};

struct ReportRow {
  int n = 0;
  LogValue exact;
  LogValue predicted;
  std::optional<Ratio> ratio;
  /// |LU/closed - 1| when both methods ran.
  std::optional<double> method_discrepancy;
  /// det M_n / det T_n compared with exp(ratio_constant_F), when requested.
  std::optional<LogValue> mt_ratio;
  std::optional<double> mt_abs_err;
};

struct ConvergenceReport {
  std::vector<ReportRow> rows;
  std::optional<double> fitted_rate;
  bool monotone_tail = false;
  bool methods_agree = true;
};

inline Ratio make_ratio(const LogValue& exact, const LogValue& predicted) {
  Ratio r;
  const double dl = exact.log_modulus() - predicted.log_modulus();
  r.modulus = std::exp(dl);
  r.argument = reduce_angle(exact.argument() - predicted.argument());
  r.abs_err = relative_difference(exact, predicted);
  return r;
}

/// True when the spec has an exact closed-form determinant.
inline bool has_closed_form(const SymbolSpec& spec) {
  if (spec.has_only_special()) return true;
  if (!spec.smooth.is_trivial() || spec.special) return false;
  const bool no_interior = spec.jumps.empty();
  if (spec.powers.empty()) {
    return no_interior && ((spec.jump_plus != complex{}) != (spec.jump_minus != complex{}));
  }
  return no_interior && spec.powers.size() == 1 && spec.jump_plus == complex{} &&
         spec.jump_minus == complex{};
}

/// Exact det M_n by the closed-form family of the spec.
inline LogDet closed_form_logdet(const SymbolSpec& spec, int n) {
  if (!has_closed_form(spec)) {
    throw domain_error("closed form unavailable: spec is not a single jump at +-1, "
                       "a single power factor, or one of phi1..phi4");
  }
  if (spec.special) return exact_logdet_special(spec.special->kind, n, spec.special->beta);
  if (!spec.powers.empty()) {
    return exact_logdet_ualpha(n, spec.powers.front().alpha, spec.powers.front().center);
  }
  if (spec.jump_plus != complex{}) return exact_logdet_tbeta(n, spec.jump_plus, Center::plus_one);
  return exact_logdet_tbeta(n, spec.jump_minus, Center::minus_one);
}

/// Least-squares slope of log abs_err against log n over the tail: the
/// largest half of the rows with a defined, nonzero error, at least 3 rows.
inline double fit_rate(const ConvergenceReport& report) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : report.rows) {
    if (r.ratio && r.ratio->abs_err > 0.0 && std::isfinite(r.ratio->abs_err)) {
      pts.emplace_back(std::log(static_cast<double>(r.n)), std::log(r.ratio->abs_err));
    }
  }
  if (pts.size() < 3) throw domain_error("fit_rate: need at least 3 rows with nonzero error");
  const std::size_t take = std::max<std::size_t>(3, (pts.size() + 1) / 2);
  const std::size_t start = pts.size() - take;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = start; i < pts.size(); ++i) {
    sx += pts[i].first;
    sy += pts[i].second;
    sxx += pts[i].first * pts[i].first;
    sxy += pts[i].first * pts[i].second;
  }
  const double m = static_cast<double>(take);
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

/// abs_err strictly decreasing over the largest half of the rows (at least 2).
inline bool tail_is_monotone(const std::vector<ReportRow>& rows) {
  if (rows.empty()) return false;
  const std::size_t take = std::max<std::size_t>(2, (rows.size() + 1) / 2);
  const std::size_t start = rows.size() > take ? rows.size() - take : 0;
  for (std::size_t i = start; i < rows.size(); ++i) {
    if (!rows[i].ratio) return false;
    if (i > start && !(rows[i].ratio->abs_err < rows[i - 1].ratio->abs_err)) return false;
  }
  return true;
}

/// Runs exact-vs-predicted for every n in the grid. Coefficients are computed
/// once for the largest n (window 2 n_max + 8); rows only read |k| <= 2n.
inline ConvergenceReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const SymbolSpec& spec = config.spec;
  const bool want_lu = config.exact_method != ExactMethod::closed_form;
  const bool want_closed = config.exact_method != ExactMethod::lu;
  if (want_closed && !has_closed_form(spec)) {
    throw domain_error("closed form unavailable for this spec");
  }
  // a vanishing Barnes G factor makes the leading term, and so the prediction, zero
  std::optional<AsymptoticPrediction> prediction;
  try {
    prediction = predict_M(spec);
  } catch (const zero_value_error&) {
    prediction.reset();
  }
  std::optional<complex> log_f;
  if (config.toeplitz_too) log_f = ratio_constant_F(spec);

  std::optional<FourierSeries> series;
  if (want_lu || config.toeplitz_too) {
    series = symbol_fourier_coeffs(spec, 2 * config.n_list.back() + 8);
  }

  ConvergenceReport report;
  report.rows.resize(config.n_list.size());
  for (std::size_t i = 0; i < config.n_list.size(); ++i) {
    const int n = config.n_list[i];
    ReportRow& row = report.rows[i];
    row.n = n;
    std::optional<LogDet> lu, closed;
    if (want_lu) lu = logdet_lu(build_M(*series, n, 1));
    if (want_closed) closed = closed_form_logdet(spec, n);
    row.exact = closed ? closed->value : lu->value;
    if (lu && closed) {
      double d = relative_difference(lu->value, closed->value);
      // a closed-form zero is matched by an LU pivot at rounding level
      if (closed->is_zero() && (lu->numerically_singular || lu->is_zero())) d = 0.0;
      row.method_discrepancy = d;
      if (!(d <= 1e-8)) report.methods_agree = false;
    }
    row.predicted = prediction ? prediction->at(n) : LogValue::zero();
    if (!row.exact.is_zero() && !row.predicted.is_zero()) {
      row.ratio = make_ratio(row.exact, row.predicted);
    }
    if (config.toeplitz_too) {
      const LogDet t = logdet_lu(build_toeplitz(*series, n));
      const LogDet m = lu ? *lu : logdet_lu(build_M(*series, n, 1));
      if (!t.is_zero() && !m.is_zero()) {
        const LogValue q = (m.value / t.value).reduced();
        row.mt_ratio = q;
        row.mt_abs_err = relative_difference(q, LogValue::from_log(*log_f));
      }
    }
  }
  report.monotone_tail = tail_is_monotone(report.rows);
  try {
    report.fitted_rate = fit_rate(report);
  } catch (const domain_error&) {
    report.fitted_rate.reset();
  }
  return report;
}

/// Verdict of `verify` for a finished report.
struct Verdict {
  bool passed = true;
  std::vector<std::string> messages;
};

inline Verdict judge(const ConvergenceReport& report, const Thresholds& t) {
  Verdict v;
  auto fail = [&](std::string m) {
    v.passed = false;
    v.messages.push_back("FAIL " + std::move(m));
  };
  if (!report.methods_agree) fail("LU and closed form disagree beyond 1e-8");
  if (report.rows.empty()) {
    fail("empty report");
    return v;
  }
  const ReportRow& last = report.rows.back();
  if (t.max_abs_err) {
    if (!last.ratio) {
      fail("ratio undefined at the largest n (exact zero)");
    } else if (!(last.ratio->abs_err < *t.max_abs_err)) {
      std::ostringstream os;
      os << "|ratio-1| = " << last.ratio->abs_err << " at n = " << last.n
         << " is not below " << *t.max_abs_err;
      fail(os.str());
    }
  }
  if (t.require_monotone_tail && !report.monotone_tail) fail("abs_err not decreasing over the tail");
  if (t.max_mt_err) {
    if (!last.mt_abs_err || !(*last.mt_abs_err < *t.max_mt_err)) {
      fail("det M/det T does not approach exp(F) within threshold");
    }
  }
  return v;
}

namespace detail {

/// Shortest round-trip decimal representation.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline constexpr const char* csv_header =
    "n,exact_logmod,exact_arg,pred_logmod,pred_arg,ratio_mod,ratio_arg,abs_err";

inline std::string report_to_csv(const ConvergenceReport& report) {
  using detail::format_double;
  std::ostringstream os;
  os << csv_header << '\n';
  for (const auto& r : report.rows) {
    os << r.n << ',';
    for (const LogValue* v : {&r.exact, &r.predicted}) {
      if (v->is_zero()) {
        os << "zero,zero,";
      } else {
        os << format_double(v->log_modulus()) << ',' << format_double(v->principal_argument())
           << ',';
      }
    }
    if (r.ratio) {
      os << format_double(r.ratio->modulus) << ',' << format_double(r.ratio->argument) << ','
         << format_double(r.ratio->abs_err);
    } else {
      os << "undefined,undefined,undefined";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace thdet

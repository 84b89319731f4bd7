#pragma once

// Asymptotic predictions det ~ G^n n^omega E for Toeplitz+Hankel and Toeplitz
// determinants, plus the limit constants for ratios and localization.
//
// All factors (1 - e^{i x})^s use the principal Log. Powers of b_+ and b_-
// use log b_+- as the finite log-coefficient sums, which is the analytic
// branch of the Wiener-Hopf factors.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "thdet/log_value.hpp"
#include "thdet/special_functions.hpp"
#include "thdet/symbol.hpp"

namespace thdet {

/// det ~ exp(n * log_growth) * n^omega * exp(log_constant) * exp(i * phase(n)).
struct AsymptoticPrediction {
  complex log_growth;
  complex omega;
  complex log_constant;
  /// Extra per-n argument; empty means none. Used for the i^sigma of phi3.
  std::function<double(long long)> phase;

  LogValue at(long long n) const {
    if (n < 1) throw domain_error("AsymptoticPrediction: n must be >= 1");
    const double nd = static_cast<double>(n);
    complex l = nd * log_growth + omega * std::log(nd) + log_constant;
    LogValue v = LogValue::from_log(l);
    if (phase) v.rotate(phase(n));
    return v.reduced();
  }
};

struct SmoothConstants {
  complex logG;
  complex logE;
  complex logF;
};

/// log G[b] = [log b]_0, log E[b] = sum k [log b]_k [log b]_{-k},
/// log F[b] = (log b_+(1) - log b_+(-1))/2 - (1/2) sum k [log b]_k^2.
inline SmoothConstants smooth_constants(const SmoothPart& b) {
  SmoothConstants c;
  c.logG = b.log_coeff(0);
  complex plus_at_one = 0.0, plus_at_minus_one = 0.0, sq = 0.0;
  for (int k = 1; k <= b.radius(); ++k) {
    const complex ck = b.log_coeff(k);
    c.logE += static_cast<double>(k) * ck * b.log_coeff(-k);
    sq += static_cast<double>(k) * ck * ck;
    plus_at_one += ck;
    plus_at_minus_one += (k % 2 == 0) ? ck : -ck;
  }
  c.logF = 0.5 * (plus_at_one - plus_at_minus_one) - 0.5 * sq;
  return c;
}

namespace detail {

inline complex log_g_factor(complex z, const std::string& what) {
  LogValue g = barnes_g(z);
  if (g.is_zero()) throw zero_value_error("Barnes G vanishes in factor " + what);
  return g.log();
}

/// Principal Log(1 - e^{i x}).
inline complex log_one_minus_exp(double x) {
  const complex w = 1.0 - std::polar(1.0, x);
  if (std::abs(w) == 0.0) throw domain_error("factor (1 - e^{ix}) vanishes");
  return std::log(w);
}

/// Principal Log(1 + e^{i x}).
inline complex log_one_plus_exp(double x) {
  const complex w = 1.0 + std::polar(1.0, x);
  if (std::abs(w) == 0.0) throw domain_error("factor (1 + e^{ix}) vanishes");
  return std::log(w);
}

/// log of G(1+b)G(1-b)G(1/2-b)/G(1/2) (2 pi)^{b/2} 2^{3b^2/2} at +1, or the
/// same with G(3/2-b)/G(3/2) at -1.
inline complex one_jump_log_constant(complex beta, Center at) {
  const double pi = std::numbers::pi;
  const double shift = at == Center::plus_one ? 0.5 : 1.5;
  complex l = log_g_factor(1.0 + beta, "G(1+beta)") +
              log_g_factor(1.0 - beta, "G(1-beta)") +
              log_g_factor(shift - beta, at == Center::plus_one ? "G(1/2-beta)" : "G(3/2-beta)") -
              log_barnes_g(shift);
  l += 0.5 * beta * std::log(2.0 * pi) + 1.5 * beta * beta * std::log(2.0);
  return l;
}

inline complex one_jump_omega(complex beta, Center at) {
  const double sign = at == Center::plus_one ? -1.0 : 1.0;
  return -1.5 * beta * beta + sign * 0.5 * beta;
}

inline void require_structural_main(const SymbolSpec& spec, const char* what) {
  if (!spec.powers.empty() || spec.special) {
    throw domain_error(std::string(what) +
                       ": power factors and special symbols need their dedicated predictors");
  }
  for (std::size_t r = 0; r < spec.jumps.size(); ++r) {
    for (std::size_t s = 0; s < spec.jumps.size(); ++s) {
      if (std::abs(spec.jumps[r].theta0 + spec.jumps[s].theta0) < 1e-14) {
        throw domain_error(std::string(what) +
                           ": jumps at conjugate points (theta_r + theta_s = 0)");
      }
    }
  }
}

}  // namespace detail

/// Omega_M = -3b+^2/2 - b+/2 - 3b-^2/2 + b-/2 - sum b_r^2.
inline complex omega_M(const SymbolSpec& spec) {
  detail::require_structural_main(spec, "omega_M");
  complex om = detail::one_jump_omega(spec.jump_plus, Center::plus_one) +
               detail::one_jump_omega(spec.jump_minus, Center::minus_one);
  for (const auto& j : spec.jumps) om -= j.beta * j.beta;
  return om;
}

/// log E_M, the constant of the main Toeplitz+Hankel asymptotic formula.
inline complex e_m_constant(const SymbolSpec& spec) {
  detail::require_structural_main(spec, "e_m_constant");
  const SmoothConstants sc = smooth_constants(spec.smooth);
  const complex bp = spec.jump_plus, bm = spec.jump_minus;
  const double ln2 = std::log(2.0);

  complex l = sc.logE + sc.logF;
  if (bp != complex{}) l += detail::one_jump_log_constant(bp, Center::plus_one);
  if (bm != complex{}) l += detail::one_jump_log_constant(bm, Center::minus_one);

  for (const auto& j : spec.jumps) {
    const complex b = j.beta;
    if (b == complex{}) continue;
    l += detail::log_g_factor(1.0 + b, "G(1+beta_r)") +
         detail::log_g_factor(1.0 - b, "G(1-beta_r)");
    l += (0.5 * b * b + 0.5 * b) * detail::log_one_minus_exp(-j.theta0);
    l += (0.5 * b * b - 0.5 * b) * detail::log_one_plus_exp(-j.theta0);
  }

  const auto [lp1, lm1] = wiener_hopf_log_parts(spec.smooth, 1.0);
  const auto [lpm1, lmm1] = wiener_hopf_log_parts(spec.smooth, -1.0);
  l += 2.0 * bp * lp1 - bp * lm1 + 2.0 * bm * lpm1 - bm * lmm1 + 3.0 * bp * bm * ln2;

  for (const auto& j : spec.jumps) {
    const complex b = j.beta;
    if (b == complex{}) continue;
    const auto [lp, lm] = wiener_hopf_log_parts(spec.smooth, std::polar(1.0, j.theta0));
    const auto [lpc, lmc] = wiener_hopf_log_parts(spec.smooth, std::polar(1.0, -j.theta0));
    (void)lmc;
    l += b * lp - b * lm + b * lpc;
    l += 2.0 * bp * b * detail::log_one_minus_exp(-j.theta0) +
         bp * b * detail::log_one_minus_exp(j.theta0) +
         2.0 * bm * b * detail::log_one_plus_exp(-j.theta0) +
         bm * b * detail::log_one_plus_exp(j.theta0);
  }

  for (std::size_t r = 0; r < spec.jumps.size(); ++r) {
    for (std::size_t s = 0; s < r; ++s) {
      const auto& jr = spec.jumps[r];
      const auto& js = spec.jumps[s];
      const complex w = jr.beta * js.beta;
      if (w == complex{}) continue;
      l += w * (detail::log_one_minus_exp(js.theta0 - jr.theta0) +
                detail::log_one_minus_exp(jr.theta0 - js.theta0) +
                detail::log_one_minus_exp(-(js.theta0 + jr.theta0)));
    }
  }
  return l;
}

/// One jump at +1 (t_beta) or -1 (t_beta(e^{i(theta-pi)})), any beta not in Z.
inline AsymptoticPrediction predict_one_jump(complex beta, Center at) {
  if (detail::is_integer(beta) && beta != complex{}) {
    throw domain_error("predict_one_jump: beta must not be an integer");
  }
  if (beta == complex{}) return {};
  return {0.0, detail::one_jump_omega(beta, at), detail::one_jump_log_constant(beta, at), {}};
}

/// phi1/phi3: n^{-1/4-3b^2} 2^{4b^2} G(1-2b) G(1/2+b) G(3/2+b);
/// phi2/phi4: n^{-3b^2} 2^{4b^2} G(1-2b) G(1+b)^2. phi3 adds i for odd n.
inline AsymptoticPrediction predict_two_jump(SpecialKind kind, complex beta) {
  const double ln2 = std::log(2.0);
  const bool odd_kind = kind == SpecialKind::phi1 || kind == SpecialKind::phi3;
  if (odd_kind && detail::is_integer(beta - 0.5)) {
    throw domain_error("predict_two_jump: phi1/phi3 require beta not in Z + 1/2");
  }
  if (!odd_kind && detail::is_integer(beta) && beta != complex{}) {
    throw domain_error("predict_two_jump: phi2/phi4 require beta not in Z");
  }
  AsymptoticPrediction p;
  const complex b2 = beta * beta;
  p.log_constant = 4.0 * b2 * ln2 + detail::log_g_factor(1.0 - 2.0 * beta, "G(1-2beta)");
  if (odd_kind) {
    p.omega = -0.25 - 3.0 * b2;
    p.log_constant += detail::log_g_factor(0.5 + beta, "G(1/2+beta)") +
                      detail::log_g_factor(1.5 + beta, "G(3/2+beta)");
  } else {
    p.omega = -3.0 * b2;
    p.log_constant += 2.0 * detail::log_g_factor(1.0 + beta, "G(1+beta)");
  }
  if (kind == SpecialKind::phi3) {
    p.phase = [](long long n) { return n % 2 != 0 ? 0.5 * std::numbers::pi : 0.0; };
  }
  return p;
}

/// u_alpha at +1: n^{(a^2-a)/2} (2pi)^{-a/2} 2^{3a^2/2} G(3/2+a) G(1+a)^2 / (G(3/2) G(1+2a));
/// at -1: n^{(a^2+a)/2} with G(1/2+a)/G(1/2). Integer alpha is allowed.
inline AsymptoticPrediction predict_ualpha(complex alpha, Center at) {
  if (!(alpha.real() > -0.5)) {
    throw domain_error("predict_ualpha: requires Re alpha > -1/2");
  }
  const double pi = std::numbers::pi;
  const double shift = at == Center::plus_one ? 1.5 : 0.5;
  AsymptoticPrediction p;
  const complex a2 = alpha * alpha;
  p.omega = at == Center::plus_one ? 0.5 * (a2 - alpha) : 0.5 * (a2 + alpha);
  p.log_constant = -0.5 * alpha * std::log(2.0 * pi) + 1.5 * a2 * std::log(2.0) +
                   detail::log_g_factor(shift + alpha, "G(shift+alpha)") +
                   2.0 * detail::log_g_factor(1.0 + alpha, "G(1+alpha)") -
                   log_barnes_g(shift) - detail::log_g_factor(1.0 + 2.0 * alpha, "G(1+2alpha)");
  return p;
}

/// Toeplitz prediction: log G[b], Omega_T = -sum beta_r^2,
/// E_T = E[b] prod G(1+b_r)G(1-b_r) b_+(e^{i th_r})^{b_r} b_-(e^{i th_r})^{-b_r}
///       prod_{r != s} (1 - e^{i(th_s - th_r)})^{b_r b_s}.
/// Jumps at +-1 are folded into the list.
inline AsymptoticPrediction predict_T(const SymbolSpec& spec) {
  if (!spec.powers.empty() || spec.special) {
    throw domain_error("predict_T: only smooth parts and jumps are supported");
  }
  const auto jumps = spec.all_jumps();
  for (const auto& j : jumps) {
    if (!(std::abs(j.beta.real()) < 0.5)) {
      throw domain_error("predict_T: requires |Re beta_r| < 1/2");
    }
  }
  const SmoothConstants sc = smooth_constants(spec.smooth);
  AsymptoticPrediction p;
  p.log_growth = sc.logG;
  p.log_constant = sc.logE;
  for (const auto& j : jumps) {
    p.omega -= j.beta * j.beta;
    p.log_constant += detail::log_g_factor(1.0 + j.beta, "G(1+beta_r)") +
                      detail::log_g_factor(1.0 - j.beta, "G(1-beta_r)");
    const auto [lp, lm] = wiener_hopf_log_parts(spec.smooth, std::polar(1.0, j.theta0));
    p.log_constant += j.beta * lp - j.beta * lm;
  }
  for (std::size_t r = 0; r < jumps.size(); ++r) {
    for (std::size_t s = 0; s < jumps.size(); ++s) {
      if (r == s) continue;
      p.log_constant += jumps[r].beta * jumps[s].beta *
                        detail::log_one_minus_exp(jumps[s].theta0 - jumps[r].theta0);
    }
  }
  return p;
}

/// Prediction for det M_n. Special symbols and single power factors go to
/// their dedicated predictors; a pure single jump at +-1 accepts any beta not
/// in Z; everything else must satisfy the main-theorem hypotheses.
inline AsymptoticPrediction predict_M(const SymbolSpec& spec) {
  spec.validate();
  if (spec.special) return predict_two_jump(spec.special->kind, spec.special->beta);
  if (!spec.powers.empty()) {
    if (spec.powers.size() == 1 && spec.smooth.is_trivial() && spec.all_jumps().empty()) {
      return predict_ualpha(spec.powers.front().alpha, spec.powers.front().center);
    }
    throw domain_error("predict_M: power factors are only supported on their own");
  }
  const bool pure_single =
      spec.smooth.is_trivial() && spec.jumps.empty() &&
      (spec.jump_plus == complex{} || spec.jump_minus == complex{});
  if (pure_single) {
    if (spec.jump_plus != complex{}) return predict_one_jump(spec.jump_plus, Center::plus_one);
    if (spec.jump_minus != complex{}) return predict_one_jump(spec.jump_minus, Center::minus_one);
    return {};
  }
  const RegimeReport reg = regime_check(spec);
  if (!reg.main_theorem_ok) {
    std::string why = "predict_M: main-theorem hypotheses violated:";
    const double bp = spec.jump_plus.real(), bm = spec.jump_minus.real();
    if (!(bp > -0.5 && bp < 0.25)) why += " need -1/2 < Re beta_+ < 1/4;";
    if (!(bm > -0.25 && bm < 0.5)) why += " need -1/4 < Re beta_- < 1/2;";
    for (const auto& j : spec.jumps) {
      if (!(std::abs(j.beta.real()) < 0.5)) why += " need |Re beta_r| < 1/2;";
    }
    if (!reg.satisfies_III) why += " condition (III) fails;";
    why += " (jumps at conjugate points are not covered)";
    throw domain_error(why);
  }
  AsymptoticPrediction p;
  p.log_growth = smooth_constants(spec.smooth).logG;
  p.omega = omega_M(spec);
  p.log_constant = e_m_constant(spec);
  return p;
}

/// log E(b, c) = sum_{k>=1} k [log b]_k [log c]_{-k}.
inline complex pair_constant_E(const SmoothPart& b, const SmoothPart& c) {
  complex s = 0.0;
  for (int k = 1; k <= b.radius(); ++k) {
    s += static_cast<double>(k) * b.log_coeff(k) * c.log_coeff(-k);
  }
  return s;
}

/// SmoothPart with reversed index: [log b~]_k = [log b]_{-k}.
inline SmoothPart reflect(const SmoothPart& b) {
  std::vector<std::pair<int, complex>> e;
  for (const auto& [k, v] : b.entries()) e.emplace_back(-k, v);
  return SmoothPart(e);
}

using LocalizationFactor = std::variant<SmoothPart, JumpFactor>;

/// log H(left, right): the interaction constant in
/// det M_n(left * right) ~ H det M_n(left) det M_n(right).
inline complex localization_constant_H(const LocalizationFactor& left,
                                       const JumpFactor& right) {
  if (!(std::abs(right.beta.real()) < 0.5)) {
    throw domain_error("localization_constant_H: requires |Re beta_s| < 1/2");
  }
  const double ts = right.theta0;
  if (const auto* b = std::get_if<SmoothPart>(&left)) {
    const auto [lp, lm] = wiener_hopf_log_parts(*b, std::polar(1.0, ts));
    const auto [lpc, lmc] = wiener_hopf_log_parts(*b, std::polar(1.0, -ts));
    (void)lmc;
    return right.beta * (lp - lm + lpc);
  }
  const auto& jr = std::get<JumpFactor>(left);
  if (!(std::abs(jr.beta.real()) < 0.5)) {
    throw domain_error("localization_constant_H: requires |Re beta_r| < 1/2");
  }
  const double tr = jr.theta0;
  if (std::abs(reduce_angle(tr - ts)) < 1e-14) {
    throw domain_error("localization_constant_H: theta_r == theta_s");
  }
  if (std::abs(reduce_angle(tr + ts)) < 1e-14) {
    throw domain_error("localization_constant_H: theta_r + theta_s == 0");
  }
  const complex w = jr.beta * right.beta;
  if (w == complex{}) return 0.0;
  return w * (detail::log_one_minus_exp(ts - tr) + detail::log_one_minus_exp(tr - ts) +
              detail::log_one_minus_exp(-(tr + ts)));
}

/// Total interaction constant for b times interior jumps:
/// prod_r H(b, phi_r) prod_{r<s} H(phi_r, phi_s).
inline complex localization_constant_total(const SymbolSpec& spec) {
  if (spec.jump_plus != complex{} || spec.jump_minus != complex{} || !spec.powers.empty() ||
      spec.special) {
    throw domain_error("localization_constant_total: interior jumps and a smooth part only");
  }
  complex l = 0.0;
  for (std::size_t r = 0; r < spec.jumps.size(); ++r) {
    l += localization_constant_H(spec.smooth, spec.jumps[r]);
    for (std::size_t s = 0; s < r; ++s) {
      l += localization_constant_H(spec.jumps[s], spec.jumps[r]);
    }
  }
  return l;
}

/// log F(phi), the limit of det M_n(phi)/det T_n(phi), for symbols without
/// jumps at +-1 or at conjugate points.
inline complex ratio_constant_F(const SymbolSpec& spec) {
  if (spec.jump_plus != complex{} || spec.jump_minus != complex{}) {
    throw domain_error("ratio_constant_F: jumps at +1/-1 are not allowed");
  }
  detail::require_structural_main(spec, "ratio_constant_F");
  complex l = smooth_constants(spec.smooth).logF;
  for (std::size_t r = 0; r < spec.jumps.size(); ++r) {
    const auto& j = spec.jumps[r];
    const complex b = j.beta;
    l += (0.5 * b * b + 0.5 * b) * detail::log_one_minus_exp(-j.theta0);
    l += (0.5 * b * b - 0.5 * b) * detail::log_one_plus_exp(-j.theta0);
    l += b * wiener_hopf_log_parts(spec.smooth, std::polar(1.0, -j.theta0)).first;
    for (std::size_t s = 0; s < r; ++s) {
      l += b * spec.jumps[s].beta *
           detail::log_one_minus_exp(-(spec.jumps[s].theta0 + j.theta0));
    }
  }
  return l;
}

}  // namespace thdet

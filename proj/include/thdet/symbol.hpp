#pragma once

// Symbol model: smooth part b = exp(sum_k [log b]_k t^k), jump factors t_beta
// at 1, -1 and at interior angles, power factors u_alpha at +-1, and the four
// two-jump symbols phi1..phi4.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "thdet/log_value.hpp"
#include "thdet/special_functions.hpp"

namespace thdet {

/// t_beta(e^{i(theta - theta0)}), with t_beta(e^{i theta}) = exp(i beta (theta - pi))
/// on 0 < theta < 2 pi.
struct JumpFactor {
  complex beta;
  double theta0 = 0.0;
};

enum class Center { plus_one, minus_one };

inline double center_angle(Center c) {
  return c == Center::plus_one ? 0.0 : std::numbers::pi;
}

/// u_alpha(e^{i theta}) = (2 - 2 cos theta)^alpha, located at +1 or -1.
struct PowerFactor {
  complex alpha;
  Center center = Center::plus_one;
};

/// phi1 = t_{beta-1/2}(e^{i theta}) t_{beta+1/2}(e^{i(theta-pi)}),
/// phi2 = t_beta(e^{i theta}) t_beta(e^{i(theta-pi)}), and their rotations by
/// -pi/2: phi3 (from phi1) and phi4 (from phi2).
enum class SpecialKind { phi1, phi2, phi3, phi4 };

struct SpecialSymbol {
  SpecialKind kind = SpecialKind::phi1;
  complex beta;
};

/// Finitely supported log-coefficients {[log b]_k : |k| <= radius}.
class SmoothPart {
 public:
  SmoothPart() = default;

  /// From (k, [log b]_k) pairs; repeated indices accumulate.
  explicit SmoothPart(const std::vector<std::pair<int, complex>>& entries) {
    int r = 0;
    for (const auto& [k, v] : entries) r = std::max(r, std::abs(k));
    radius_ = r;
    coeffs_.assign(2 * static_cast<std::size_t>(r) + 1, complex{});
    for (const auto& [k, v] : entries) coeffs_[index(k)] += v;
  }

  int radius() const { return radius_; }

  complex log_coeff(int k) const {
    if (std::abs(k) > radius_) return {};
    return coeffs_[index(k)];
  }

  bool is_trivial() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](complex c) { return c == complex{}; });
  }

  /// Nonzero (k, value) pairs in increasing k.
  std::vector<std::pair<int, complex>> entries() const {
    std::vector<std::pair<int, complex>> out;
    for (int k = -radius_; k <= radius_; ++k) {
      if (log_coeff(k) != complex{}) out.emplace_back(k, log_coeff(k));
    }
    return out;
  }

  /// log b(e^{i theta}).
  complex log_value(double theta) const {
    complex s = 0.0;
    for (int k = -radius_; k <= radius_; ++k) {
      const complex c = log_coeff(k);
      if (c != complex{}) s += c * std::polar(1.0, k * theta);
    }
    return s;
  }

 private:
  std::size_t index(int k) const { return static_cast<std::size_t>(k + radius_); }

  int radius_ = 0;
  std::vector<complex> coeffs_{complex{}};
};

/// Full Fisher-Hartwig-type symbol
///   b(t) t_{beta+}(t) t_{beta-}(-t) prod_r t_{beta_r}(t e^{-i theta_r}) prod_p u_{alpha_p}
/// or one of the special two-jump symbols.
struct SymbolSpec {
  SmoothPart smooth;
  complex jump_plus;
  complex jump_minus;
  std::vector<JumpFactor> jumps;
  std::vector<PowerFactor> powers;
  std::optional<SpecialSymbol> special;

  /// Throws domain_error when an invariant is violated.
  void validate() const;

  bool has_only_special() const {
    return special && smooth.is_trivial() && jump_plus == complex{} &&
           jump_minus == complex{} && jumps.empty() && powers.empty();
  }

  /// All jump factors including the ones at +1 and -1 (zero betas skipped).
  std::vector<JumpFactor> all_jumps() const {
    std::vector<JumpFactor> out;
    if (jump_plus != complex{}) out.push_back({jump_plus, 0.0});
    if (jump_minus != complex{}) out.push_back({jump_minus, std::numbers::pi});
    for (const auto& j : jumps) {
      if (j.beta != complex{}) out.push_back(j);
    }
    return out;
  }

  /// Angles in [0, 2 pi) where the symbol is not smooth, sorted, unique.
  std::vector<double> singular_angles() const;

  /// Angles in [0, 2 pi) carrying an algebraic (power) singularity.
  std::vector<double> power_angles() const;

  /// phi(e^{i(anchor + offset)}). The differences to each singular point are
  /// formed as (anchor - point) + offset so that tiny offsets next to a
  /// singular anchor keep full relative precision.
  complex evaluate(double anchor, double offset = 0.0) const;

  /// True when every factor is real-valued a.e.: real smooth log with
  /// [log b]_{-k} = conj([log b]_k), and real alphas. Jump factors are never real.
  bool is_real_valued() const;
};

namespace detail {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Angle reduced to [0, 2 pi).
inline double wrap_positive(double a) {
  double r = std::fmod(a, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

/// t_beta at angular distance delta past the jump, delta reduced to (0, 2 pi).
inline complex jump_value(complex beta, double delta) {
  double d = wrap_positive(delta);
  return std::exp(complex{0.0, 1.0} * beta * (d - std::numbers::pi));
}

/// (2 - 2 cos delta)^alpha = (2 |sin(delta/2)|)^{2 alpha}.
inline complex power_value(complex alpha, double delta) {
  const double s = 2.0 * std::abs(std::sin(0.5 * delta));
  return std::exp(2.0 * alpha * std::log(s));
}

inline double special_jump_plus_offset(SpecialKind k) {
  return (k == SpecialKind::phi1 || k == SpecialKind::phi3) ? -0.5 : 0.0;
}

inline double special_jump_minus_offset(SpecialKind k) {
  return (k == SpecialKind::phi1 || k == SpecialKind::phi3) ? 0.5 : 0.0;
}

/// Rotation angle mapping phi1/phi2 to phi3/phi4.
inline bool special_rotated(SpecialKind k) {
  return k == SpecialKind::phi3 || k == SpecialKind::phi4;
}

}  // namespace detail

inline void SymbolSpec::validate() const {
  auto check_beta = [](complex beta, const char* what) {
    if (beta != complex{} && detail::is_integer(beta)) {
      throw domain_error(std::string("nonzero integer jump exponent at ") + what +
                         "; absorb it into a monomial");
    }
  };
  check_beta(jump_plus, "+1");
  check_beta(jump_minus, "-1");
  std::vector<double> angles;
  for (const auto& j : jumps) {
    if (!(j.theta0 > -std::numbers::pi && j.theta0 <= std::numbers::pi)) {
      throw domain_error("jump angle must lie in (-pi, pi]");
    }
    if (j.theta0 == 0.0 || j.theta0 == std::numbers::pi) {
      throw domain_error("jumps at +1/-1 belong in jump_plus/jump_minus");
    }
    check_beta(j.beta, "interior angle");
    angles.push_back(j.theta0);
  }
  std::sort(angles.begin(), angles.end());
  if (std::adjacent_find(angles.begin(), angles.end()) != angles.end()) {
    throw domain_error("jump angles must be pairwise distinct");
  }
  for (const auto& p : powers) {
    if (!(p.alpha.real() > -0.5)) {
      throw domain_error("power factor requires Re alpha > -1/2");
    }
  }
  if (special) {
    if (!has_only_special()) {
      throw domain_error("special_kind symbols cannot carry further factors");
    }
    const complex b = special->beta;
    const bool odd_kind = special->kind == SpecialKind::phi1 ||
                          special->kind == SpecialKind::phi3;
    if (odd_kind && detail::is_integer(b - 0.5)) {
      throw domain_error("phi1/phi3 require beta not in Z + 1/2");
    }
    if (!odd_kind && detail::is_integer(b)) {
      throw domain_error("phi2/phi4 require beta not in Z");
    }
  }
}

inline std::vector<double> SymbolSpec::singular_angles() const {
  std::vector<double> a;
  if (special) {
    const double rot = detail::special_rotated(special->kind) ? -0.5 * std::numbers::pi : 0.0;
    a.push_back(detail::wrap_positive(rot));
    a.push_back(detail::wrap_positive(std::numbers::pi + rot));
  }
  if (jump_plus != complex{}) a.push_back(0.0);
  if (jump_minus != complex{}) a.push_back(std::numbers::pi);
  for (const auto& j : jumps) {
    if (j.beta != complex{}) a.push_back(detail::wrap_positive(j.theta0));
  }
  for (const auto& p : powers) a.push_back(center_angle(p.center));
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline std::vector<double> SymbolSpec::power_angles() const {
  std::vector<double> a;
  for (const auto& p : powers) a.push_back(center_angle(p.center));
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline complex SymbolSpec::evaluate(double anchor, double offset) const {
  const double pi = std::numbers::pi;
  complex v = std::exp(smooth.log_value(anchor + offset));
  if (special) {
    // phi3/phi4 are phi1/phi2 rotated by -pi/2: phi3(e^{i theta}) = phi1(e^{i(theta + pi/2)}).
    const double rot = detail::special_rotated(special->kind) ? 0.5 * pi : 0.0;
    const complex b = special->beta;
    const double base = anchor + rot;
    v *= detail::jump_value(b + detail::special_jump_plus_offset(special->kind),
                            base + offset);
    v *= detail::jump_value(b + detail::special_jump_minus_offset(special->kind),
                            (base - pi) + offset);
  }
  if (jump_plus != complex{}) v *= detail::jump_value(jump_plus, anchor + offset);
  if (jump_minus != complex{}) {
    v *= detail::jump_value(jump_minus, (anchor - pi) + offset);
  }
  for (const auto& j : jumps) {
    if (j.beta != complex{}) v *= detail::jump_value(j.beta, (anchor - j.theta0) + offset);
  }
  for (const auto& p : powers) {
    v *= detail::power_value(p.alpha, (anchor - center_angle(p.center)) + offset);
  }
  return v;
}

inline bool SymbolSpec::is_real_valued() const {
  if (special || jump_plus != complex{} || jump_minus != complex{}) return false;
  for (const auto& j : jumps) {
    if (j.beta != complex{}) return false;
  }
  for (const auto& p : powers) {
    if (p.alpha.imag() != 0.0) return false;
  }
  for (int k = 0; k <= smooth.radius(); ++k) {
    if (std::abs(smooth.log_coeff(-k) - std::conj(smooth.log_coeff(k))) > 0.0) {
      return false;
    }
  }
  return true;
}

/// Result of evaluating the parameter conditions (I), (II), (III) and the
/// hypotheses of the main asymptotic theorem.
struct RegimeReport {
  bool satisfies_I = true;
  bool satisfies_II = true;
  bool satisfies_III = true;
  bool main_theorem_ok = true;
};

/// Strict inequalities on real parts. Interior jumps are paired as
/// (beta_r^+ at theta, beta_r^- at -theta); an unpaired jump has a zero partner.
inline RegimeReport regime_check(const SymbolSpec& spec) {
  RegimeReport r;
  const double bp = spec.jump_plus.real();
  const double bm = spec.jump_minus.real();

  r.satisfies_I = std::abs(bp) < 0.5 && std::abs(bm) < 0.5;
  r.satisfies_II = bp > -0.75 && bp < 0.25 && bm > -0.25 && bm < 0.75;
  r.satisfies_III = bp > -0.5 && bp < 0.25 && bm > -0.25 && bm < 0.5;

  // Pair jumps at conjugate points.
  std::vector<bool> used(spec.jumps.size(), false);
  bool conjugate_pair = false;
  for (std::size_t i = 0; i < spec.jumps.size(); ++i) {
    if (used[i]) continue;
    complex plus = spec.jumps[i].beta;
    complex minus = 0.0;
    for (std::size_t j = i + 1; j < spec.jumps.size(); ++j) {
      if (!used[j] && std::abs(spec.jumps[i].theta0 + spec.jumps[j].theta0) < 1e-14) {
        minus = spec.jumps[j].beta;
        used[j] = true;
        if (plus != complex{} && minus != complex{}) conjugate_pair = true;
      }
    }
    const double p = plus.real(), m = minus.real(), s = (plus + minus).real();
    const bool each = std::abs(p) < 0.5 && std::abs(m) < 0.5;
    const bool sum = std::abs(s) < 0.5;
    r.satisfies_I = r.satisfies_I && each;
    r.satisfies_II = r.satisfies_II && sum;
    r.satisfies_III = r.satisfies_III && each && sum;
  }

  r.main_theorem_ok = r.satisfies_III && !conjugate_pair && spec.powers.empty() &&
                      !spec.special;
  for (const auto& j : spec.jumps) {
    if (!(std::abs(j.beta.real()) < 0.5)) r.main_theorem_ok = false;
  }
  return r;
}

/// (b_+(t), b_-(t)) from the finite log-coefficient sums; |t| must be 1.
inline std::pair<complex, complex> wiener_hopf_parts(const SmoothPart& smooth,
                                                     complex t) {
  if (std::abs(std::abs(t) - 1.0) > 1e-12) {
    throw domain_error("wiener_hopf_parts: t must lie on the unit circle");
  }
  complex plus = 0.0, minus = 0.0;
  complex tk = 1.0;
  const complex tinv = 1.0 / t;
  complex tmk = 1.0;
  for (int k = 1; k <= smooth.radius(); ++k) {
    tk *= t;
    tmk *= tinv;
    plus += tk * smooth.log_coeff(k);
    minus += tmk * smooth.log_coeff(-k);
  }
  return {std::exp(plus), std::exp(minus)};
}

/// log b_+(t) and log b_-(t) as the finite sums themselves (no branch cut).
inline std::pair<complex, complex> wiener_hopf_log_parts(const SmoothPart& smooth,
                                                         complex t) {
  complex plus = 0.0, minus = 0.0;
  complex tk = 1.0, tmk = 1.0;
  const complex tinv = 1.0 / t;
  for (int k = 1; k <= smooth.radius(); ++k) {
    tk *= t;
    tmk *= tinv;
    plus += tk * smooth.log_coeff(k);
    minus += tmk * smooth.log_coeff(-k);
  }
  return {plus, minus};
}

}  // namespace thdet

#pragma once

// Complex log-Gamma, Barnes G, and the product identities used by the
// closed-form determinants.
//
// Branch policy (used everywhere in the library): complex powers w^s are
// exp(s * Log w) with the principal Log, arg in (-pi, pi]. log_gamma and
// log_barnes_g return the branch that is continuous on C \ (-inf, 0] and
// real on (0, inf). On the cut itself they return the limit from above;
// exponentiating still gives the correct value.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "thdet/log_value.hpp"

namespace thdet {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
/// zeta'(-1) = 1/12 - log(Glaisher's constant).
inline constexpr double zeta_prime_minus_one = -0.16542114370045092921391966024278;

namespace detail {

inline constexpr double integer_tolerance = 1e-12;

/// True when z is within tolerance of a nonpositive integer.
inline bool is_nonpositive_integer(complex z) {
  if (std::abs(z.imag()) > integer_tolerance) return false;
  double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) <= integer_tolerance;
}

inline bool is_integer(complex z) {
  return std::abs(z.imag()) <= integer_tolerance &&
         std::abs(z.real() - std::round(z.real())) <= integer_tolerance;
}

/// Stirling series for log Gamma(w), valid for Re w >= 15.
inline complex stirling_log_gamma(complex w) {
  // B_{2k} / (2k (2k-1)), k = 1..10
  static constexpr std::array<double, 10> c = {
      1.0 / 12.0,           -1.0 / 360.0,         1.0 / 1260.0,
      -1.0 / 1680.0,        1.0 / 1188.0,         -691.0 / 360360.0,
      1.0 / 156.0,          -3617.0 / 122400.0,   43867.0 / 244188.0,
      -174611.0 / 125400.0};
  const complex inv = 1.0 / w;
  const complex inv2 = inv * inv;
  complex sum = 0.0;
  complex p = inv;
  for (double ck : c) {
    sum += ck * p;
    p *= inv2;
  }
  return (w - 0.5) * std::log(w) - w +
         0.5 * std::log(2.0 * std::numbers::pi) + sum;
}

/// Large-argument expansion of log G(1+x), valid for Re x >= 29.
inline complex asymptotic_log_barnes_g1p(complex x) {
  // B_{2k+2} / (4k(k+1)), k = 1..8
  static constexpr std::array<double, 8> c = {
      (-1.0 / 30.0) / 8.0,        (1.0 / 42.0) / 24.0,
      (-1.0 / 30.0) / 48.0,       (5.0 / 66.0) / 80.0,
      (-691.0 / 2730.0) / 120.0,  (7.0 / 6.0) / 168.0,
      (-3617.0 / 510.0) / 224.0,  (43867.0 / 798.0) / 288.0};
  const complex lx = std::log(x);
  const complex x2 = x * x;
  const complex inv2 = 1.0 / x2;
  complex sum = 0.0;
  complex p = inv2;
  for (double ck : c) {
    sum += ck * p;
    p *= inv2;
  }
  return 0.5 * x2 * lx - 0.75 * x2 +
         0.5 * x * std::log(2.0 * std::numbers::pi) - lx / 12.0 +
         zeta_prime_minus_one + sum;
}

}  // namespace detail

/// log Gamma(z), continuous on the cut plane, relative accuracy ~1e-13.
/// Throws pole_error at z in {0, -1, -2, ...}.
inline complex log_gamma(complex z) {
  if (detail::is_nonpositive_integer(z)) {
    throw pole_error("log_gamma: pole at nonpositive integer");
  }
  complex w = z;
  complex shift = 0.0;
  while (w.real() < 15.0) {
    shift += std::log(w);
    w += 1.0;
  }
  return detail::stirling_log_gamma(w) - shift;
}

inline double log_gamma(double x) { return log_gamma(complex{x, 0.0}).real(); }

/// Gamma(z) in log scale; 1/Gamma is never needed at poles here.
inline LogValue gamma(complex z) { return LogValue::from_log(log_gamma(z)); }

/// 1/Gamma(z) in log scale, exact zero at the poles of Gamma.
inline LogValue reciprocal_gamma(complex z) {
  if (detail::is_nonpositive_integer(z)) return LogValue::zero();
  return LogValue::from_log(-log_gamma(z));
}

/// Barnes G(z) in log scale; exact zero at z in {0, -1, -2, ...}.
///
/// Shifts the argument with G(1+z) = Gamma(z) G(z) until Re z >= 30 and then
/// applies the large-argument expansion.
inline LogValue barnes_g(complex z) {
  if (detail::is_nonpositive_integer(z)) return LogValue::zero();
  if (z.real() >= 30.0) {
    return LogValue::from_log(detail::asymptotic_log_barnes_g1p(z - 1.0));
  }
  // log G(z) = log G(z+m) - sum_{j<m} log Gamma(z+j)
  complex lg = log_gamma(z);
  complex gamma_sum = 0.0;
  complex w = z;
  while (w.real() < 30.0) {
    gamma_sum += lg;
    lg += std::log(w);
    w += 1.0;
  }
  return LogValue::from_log(detail::asymptotic_log_barnes_g1p(w - 1.0) -
                            gamma_sum);
}

/// log G(z); throws zero_value_error where G vanishes.
inline complex log_barnes_g(complex z) {
  LogValue g = barnes_g(z);
  if (g.is_zero()) {
    throw zero_value_error("log_barnes_g: G vanishes at nonpositive integers");
  }
  return g.log();
}

inline LogValue sign_power(long long exponent) {
  return (exponent % 2 == 0) ? LogValue{}
                             : LogValue::from_polar_log(0.0, std::numbers::pi);
}

/// G(1+z-n)/G(1+z) evaluated through the reflected side
/// (-1)^{n(n-1)/2} (sin(pi z)/pi)^n G(1-z+n)/G(1-z).
inline LogValue reflection_ratio(complex z, unsigned n) {
  if (detail::is_integer(z)) {
    throw domain_error("reflection_ratio: z must not be an integer");
  }
  if (n == 0) return {};
  const long long nn = n;
  LogValue r = sign_power(nn * (nn - 1) / 2);
  r *= LogValue::from_value(std::sin(std::numbers::pi * z) / std::numbers::pi)
           .pow(nn);
  r *= barnes_g(1.0 - z + static_cast<double>(n));
  r /= barnes_g(1.0 - z);
  return r;
}

enum class ProductKind { pr1, pr4, pr2, pr3 };

/// Closed (Barnes G) side of the finite-product identities:
///   pr1: prod_{0<=j<k<=n-1} (k-j)                 = G(1+n)
///   pr4: prod_{0<=j<k<=n-1} (k+j+z)
///   pr2: prod_{k1<n1, k2<n2} (z+k1+k2)
///   pr3: prod_{k1<n1, k2<n2} (z+k1-k2)
/// Unused size arguments are ignored.
inline LogValue product_identity(ProductKind kind, complex z, unsigned n,
                                 unsigned n1, unsigned n2) {
  const double pi = std::numbers::pi;
  switch (kind) {
    case ProductKind::pr1:
      return barnes_g(1.0 + static_cast<double>(n));
    case ProductKind::pr4: {
      if (detail::is_nonpositive_integer(z)) {
        throw domain_error("product_identity(pr4): z in {0,-1,-2,...}");
      }
      if (n <= 1) return {};
      const double nd = n;
      LogValue r = barnes_g(2.0 * nd - 1.0 + z);
      r *= barnes_g(0.5 + z / 2.0);
      r *= barnes_g(1.0 + z / 2.0);
      r *= LogValue::from_log(complex{0.5 * (nd - 1.0) * std::log(pi), 0.0});
      r /= barnes_g(nd + z);
      r /= barnes_g(nd - 0.5 + z / 2.0);
      r /= barnes_g(nd + z / 2.0);
      r /= LogValue::from_log((nd - 1.0) * (nd - 2.0 + z) * std::log(2.0));
      return r;
    }
    case ProductKind::pr2: {
      if (detail::is_nonpositive_integer(z)) {
        throw domain_error("product_identity(pr2): z in {0,-1,-2,...}");
      }
      const double a = n1, b = n2;
      LogValue r = barnes_g(z + a + b) * barnes_g(z);
      r /= barnes_g(z + a);
      r /= barnes_g(z + b);
      return r;
    }
    case ProductKind::pr3: {
      if (detail::is_integer(z)) {
        throw domain_error("product_identity(pr3): z must not be an integer");
      }
      const double a = n1, b = n2;
      const long long m = n2;
      LogValue r = barnes_g(1.0 + z + a) * barnes_g(1.0 - z + b);
      r /= barnes_g(1.0 + z + a - b);
      r /= barnes_g(1.0 - z);
      r *= sign_power(m * (m - 1) / 2);
      r *= LogValue::from_value(std::sin(pi * z) / pi).pow(m);
      return r;
    }
  }
  throw domain_error("product_identity: unknown kind");
}

/// omega/2 with omega = sum x_r^2 - sum y_r^2: the power of n in
/// prod G(1+x_r+n)/G(1+y_r+n) when sum x_r = sum y_r.
inline complex ratio_growth_exponent(std::span<const complex> x,
                                     std::span<const complex> y) {
  if (x.size() != y.size()) {
    throw domain_error("ratio_growth_exponent: lists differ in length");
  }
  complex sx = 0.0, sy = 0.0, qx = 0.0, qy = 0.0;
  for (complex v : x) {
    sx += v;
    qx += v * v;
  }
  for (complex v : y) {
    sy += v;
    qy += v * v;
  }
  if (std::abs(sx - sy) > 1e-12) {
    throw domain_error("ratio_growth_exponent: sums of x and y differ");
  }
  return 0.5 * (qx - qy);
}

}  // namespace thdet

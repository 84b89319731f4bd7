#pragma once

// Exact finite-n determinants: Cauchy and block-Cauchy products, det M_n(t_beta)
// at +1 and -1, the two-jump symbols phi1..phi4 and the u_alpha reduction.
// All products are accumulated as sums of logs; n = 0 gives 1.

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "thdet/log_value.hpp"
#include "thdet/matrix_kernel.hpp"
#include "thdet/special_functions.hpp"
#include "thdet/symbol.hpp"

namespace thdet {

namespace detail {

/// Accumulates a product of complex factors in log scale.
/// Neumaier-compensated running sum; products of O(n^2) factors otherwise
/// lose digits in the accumulated logarithm.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

class LogProduct {
 public:
  void mul(complex z) {
    if (z == complex{}) {
      zero_ = true;
      return;
    }
    add(z, 1);
  }
  void div(complex z) {
    if (z == complex{}) throw domain_error("Cauchy data: vanishing denominator a_j + b_k");
    add(z, -1);
  }
  void mul(const LogValue& v) {
    if (v.is_zero()) {
      zero_ = true;
      return;
    }
    re_.add(v.log_modulus());
    im_.add(v.argument());
  }
  LogValue result() const {
    if (zero_) return LogValue::zero();
    const double half_turn = (negatives_ % 2 != 0) ? std::numbers::pi : 0.0;
    return LogValue::from_polar_log(re_.value(), reduce_angle(im_.value() + half_turn));
  }

 private:
  // real negative factors are counted, so real products keep an exact phase
  void add(complex z, int sign) {
    const double s = sign;
    if (z.imag() == 0.0) {
      re_.add(s * std::log(std::abs(z.real())));
      if (z.real() < 0.0) ++negatives_;
      return;
    }
    re_.add(s * std::log(std::abs(z)));
    im_.add(s * std::arg(z));
  }

  CompensatedSum re_, im_;
  long long negatives_ = 0;
  bool zero_ = false;
};

inline void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw domain_error("Cauchy data: a and b must have equal length");
}

}  // namespace detail

/// det [(a_j + b_k)^{-1}] = p/q with p = prod_{j<k} (a_k-a_j)(b_k-b_j) and
/// q = prod_{j,k} (a_j+b_k).
inline LogDet cauchy_logdet(std::span<const complex> a, std::span<const complex> b) {
  detail::check_sizes(a.size(), b.size());
  const std::size_t n = a.size();
  detail::LogProduct prod;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) prod.div(a[j] + b[k]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      prod.mul(a[k] - a[j]);
      prod.mul(b[k] - b[j]);
    }
  }
  return {prod.result()};
}

/// Block-Cauchy data: A11 = [(a_j+b_k)^{-1}], A12 = [(a_j+bt_k)^{-1}],
/// A21 = [(at_j+b_k)^{-1}], A22 = [(at_j+bt_k)^{-1}].
struct BlockCauchyData {
  std::vector<complex> a, a_tilde, b, b_tilde;
};

inline LogDet block_cauchy_logdet(const BlockCauchyData& d) {
  detail::check_sizes(d.a.size(), d.b.size());
  detail::check_sizes(d.a_tilde.size(), d.b_tilde.size());
  const std::size_t m1 = d.a.size(), m2 = d.a_tilde.size();
  detail::LogProduct prod;
  // q
  for (std::size_t j = 0; j < m1; ++j) {
    for (std::size_t k = 0; k < m1; ++k) prod.div(d.a[j] + d.b[k]);
    for (std::size_t k = 0; k < m2; ++k) prod.div(d.a[j] + d.b_tilde[k]);
  }
  for (std::size_t j = 0; j < m2; ++j) {
    for (std::size_t k = 0; k < m2; ++k) prod.div(d.a_tilde[j] + d.b_tilde[k]);
    for (std::size_t k = 0; k < m1; ++k) prod.div(d.a_tilde[j] + d.b[k]);
  }
  // p
  for (std::size_t j = 0; j < m1; ++j) {
    for (std::size_t k = j + 1; k < m1; ++k) {
      prod.mul(d.a[k] - d.a[j]);
      prod.mul(d.b[k] - d.b[j]);
    }
  }
  for (std::size_t j = 0; j < m2; ++j) {
    for (std::size_t k = j + 1; k < m2; ++k) {
      prod.mul(d.a_tilde[k] - d.a_tilde[j]);
      prod.mul(d.b_tilde[k] - d.b_tilde[j]);
    }
  }
  for (std::size_t j = 0; j < m1; ++j) {
    for (std::size_t k = 0; k < m2; ++k) {
      prod.mul(d.a_tilde[k] - d.a[j]);
      prod.mul(d.b_tilde[k] - d.b[j]);
    }
  }
  return {prod.result()};
}

/// Assembled Cauchy matrix, for oracle comparisons.
inline DenseComplexMatrix cauchy_matrix(std::span<const complex> a,
                                        std::span<const complex> b) {
  detail::check_sizes(a.size(), b.size());
  const auto n = static_cast<Eigen::Index>(a.size());
  DenseComplexMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) m(j, k) = 1.0 / (a[j] + b[k]);
  }
  return m;
}

inline DenseComplexMatrix block_cauchy_matrix(const BlockCauchyData& d) {
  std::vector<complex> a = d.a, b = d.b;
  a.insert(a.end(), d.a_tilde.begin(), d.a_tilde.end());
  b.insert(b.end(), d.b_tilde.begin(), d.b_tilde.end());
  return cauchy_matrix(a, b);
}

/// Exact det M_n(t_beta) (at = +1) or det M_n(t_beta(e^{i(theta-pi)})) =
/// det(T_n - H_n)(t_beta) (at = -1).
///
/// Entry (j,k) of T_n +- H_n is (sin(pi beta)/pi) * r / (a_j + b_k) with
/// a_j + b_k = (beta - j + k)(beta - 1 - j - k); the numerator r is the row
/// factor 2 beta - 2j - 1 for +1 and the column factor -2k - 1 for -1. The
/// Cauchy differences are used in factored form,
///   a_k - a_j = (k - j)(k + j + 1 - 2 beta),  b_k - b_j = -(k - j)(k + j + 1),
/// so vanishing factors are detected exactly.
inline LogDet exact_logdet_tbeta(int n, complex beta, Center at) {
  if (detail::is_integer(beta)) {
    throw domain_error("exact_logdet_tbeta: beta must not be an integer");
  }
  if (n < 0) throw domain_error("exact_logdet_tbeta: n must be >= 0");
  const double pi = std::numbers::pi;
  detail::LogProduct prod;
  const complex s = std::sin(pi * beta) / pi;
  for (int j = 0; j < n; ++j) {
    prod.mul(s);
    prod.mul(at == Center::plus_one ? 2.0 * beta - 2.0 * j - 1.0
                                    : complex{-2.0 * j - 1.0});
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      prod.div(beta - static_cast<double>(j) + static_cast<double>(k));
      prod.div(beta - 1.0 - static_cast<double>(j) - static_cast<double>(k));
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double d = k - j;
      prod.mul(d * (static_cast<double>(k + j + 1) - 2.0 * beta));
      prod.mul(complex{-d * (k + j + 1)});
    }
  }
  return {prod.result()};
}

/// Closed Barnes-G expression for det M_n(t_beta) at +1; an independent
/// route to the same numbers as exact_logdet_tbeta(n, beta, plus_one).
inline LogValue tbeta_barnes_form(int n, complex beta) {
  if (detail::is_integer(beta)) {
    throw domain_error("tbeta_barnes_form: beta must not be an integer");
  }
  if (n == 0) return {};
  const double pi = std::numbers::pi;
  const double nd = n;
  LogValue r = LogValue::from_log((nd - 1.0) * std::log(pi) +
                                  (nd - 2.0 * (nd - 1.0) * (nd - 1.0 - beta)) *
                                      std::log(2.0));
  r *= gamma(nd + 0.5 - beta);
  r /= gamma(0.5 - beta);
  r *= barnes_g(nd + 1.0) * barnes_g(2.0 * nd) * barnes_g(1.5) *
       barnes_g(2.0 * nd - 2.0 * beta) * barnes_g(1.0 - beta) * barnes_g(1.5 - beta);
  r /= barnes_g(nd) * barnes_g(nd + 0.5) * barnes_g(nd + 1.0 - 2.0 * beta) *
       barnes_g(nd - beta) * barnes_g(nd + 0.5 - beta);
  r *= barnes_g(1.0 - beta + nd) * barnes_g(1.0 + beta);
  r /= barnes_g(1.0 - beta + 2.0 * nd) * barnes_g(1.0 + beta + nd);
  return r.reduced();
}

/// Block-Cauchy parameters of the even/odd rearrangement of M_n(phi1/phi2),
/// with m1 = ceil(n/2), m2 = floor(n/2).
inline BlockCauchyData phi12_block_data(SpecialKind kind, int n, complex beta) {
  const int m1 = (n + 1) / 2, m2 = n / 2;
  BlockCauchyData d;
  for (int j = 0; j < m1; ++j) {
    if (kind == SpecialKind::phi1) {
      d.a.push_back(beta - static_cast<double>(j) - 0.5);
      d.b.push_back(-static_cast<double>(j));
    } else {
      d.a.push_back(beta - static_cast<double>(j));
      d.b.push_back(static_cast<double>(j));
    }
  }
  for (int j = 0; j < m2; ++j) {
    if (kind == SpecialKind::phi1) {
      d.a_tilde.push_back(-beta + static_cast<double>(j) + 0.5);
      d.b_tilde.push_back(static_cast<double>(j) + 1.0);
    } else {
      d.a_tilde.push_back(-beta + static_cast<double>(j) + 1.0);
      d.b_tilde.push_back(-static_cast<double>(j) - 1.0);
    }
  }
  return d;
}

/// Exact det M_n(phi1) or det M_n(phi2).
///
/// Taking even then odd rows and columns (a similarity, so the determinant is
/// unchanged) gives B = c * diag(I, -I) * A with A block-Cauchy, so
/// det M_n = c^n (-1)^{m2} det A, c = -cos(pi beta)/pi (phi1), sin(pi beta)/pi (phi2).
inline LogDet exact_logdet_phi12(SpecialKind kind, int n, complex beta) {
  const double pi = std::numbers::pi;
  complex c;
  if (kind == SpecialKind::phi1) {
    if (detail::is_integer(beta - 0.5)) {
      throw domain_error("exact_logdet_phi12: phi1 requires beta not in Z + 1/2");
    }
    c = -std::cos(pi * beta) / pi;
  } else if (kind == SpecialKind::phi2) {
    if (detail::is_integer(beta)) {
      throw domain_error("exact_logdet_phi12: phi2 requires beta not in Z");
    }
    c = std::sin(pi * beta) / pi;
  } else {
    throw domain_error("exact_logdet_phi12: kind must be phi1 or phi2");
  }
  if (n < 0) throw domain_error("exact_logdet_phi12: n must be >= 0");
  LogValue det = block_cauchy_logdet(phi12_block_data(kind, n, beta)).value;
  det *= LogValue::from_value(c).pow(n);
  det *= sign_power(n / 2);
  return {det.reduced()};
}

/// det M_n(phi3) = i^sigma det M_n(phi1), det M_n(phi4) = det M_n(phi2), with
/// sigma = n mod 2. `target` selects the rotated kind.
inline LogDet phi34_rotation(int n, const LogDet& det_phi12,
                             SpecialKind target = SpecialKind::phi3) {
  LogDet out = det_phi12;
  if (target == SpecialKind::phi3 && n % 2 != 0 && !out.is_zero()) {
    out.value = LogValue(out.value).rotate(0.5 * std::numbers::pi).reduced();
  }
  return out;
}

/// Exact det M_n for any of phi1..phi4.
inline LogDet exact_logdet_special(SpecialKind kind, int n, complex beta) {
  switch (kind) {
    case SpecialKind::phi1:
    case SpecialKind::phi2:
      return exact_logdet_phi12(kind, n, beta);
    case SpecialKind::phi3:
      return phi34_rotation(n, exact_logdet_phi12(SpecialKind::phi1, n, beta),
                            SpecialKind::phi3);
    case SpecialKind::phi4:
      return phi34_rotation(n, exact_logdet_phi12(SpecialKind::phi2, n, beta),
                            SpecialKind::phi4);
  }
  throw domain_error("exact_logdet_special: unknown kind");
}

/// prod_{j<n} Gamma(1-a+j) Gamma(1+2a+j) / (j! Gamma(1+a+j)), the ratio
/// det M_n(u_a) / det (T_n - H_n)(t_{-a}). The same factor links
/// det M_n(u_a(e^{i(theta-pi)})) to det M_n(t_{-a}).
inline LogValue ualpha_reduction_factor(int n, complex alpha) {
  if (!(alpha.real() > -0.5)) {
    throw domain_error("ualpha_reduction_factor: requires Re alpha > -1/2");
  }
  if (alpha != complex{} && detail::is_integer(alpha)) {
    throw domain_error("ualpha_reduction_factor: alpha must not be a nonzero integer");
  }
  if (n < 0) throw domain_error("ualpha_reduction_factor: n must be >= 0");
  detail::LogProduct prod;
  for (int j = 0; j < n; ++j) {
    const double jd = j;
    prod.mul(LogValue::from_log(log_gamma(1.0 - alpha + jd) + log_gamma(1.0 + 2.0 * alpha + jd) -
                                log_gamma(1.0 + jd) - log_gamma(1.0 + alpha + jd)));
  }
  return prod.result();
}

/// Exact det M_n(u_alpha) at the given center through the reduction to t_{-alpha}.
inline LogDet exact_logdet_ualpha(int n, complex alpha, Center at) {
  if (alpha == complex{}) return {};
  const Center other = at == Center::plus_one ? Center::minus_one : Center::plus_one;
  LogDet det = exact_logdet_tbeta(n, -alpha, other);
  det.value = (det.value * ualpha_reduction_factor(n, alpha)).reduced();
  return det;
}

}  // namespace thdet

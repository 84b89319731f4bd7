#pragma once

// Finite Toeplitz, Hankel and Toeplitz+Hankel matrices and their
// log-determinants.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "thdet/fourier.hpp"
#include "thdet/log_value.hpp"

namespace thdet {

using DenseComplexMatrix = Eigen::MatrixXcd;

/// A determinant in log scale. `numerically_singular` marks a pivot that is
/// tiny relative to the input scale but above the exact-zero threshold.
struct LogDet {
  LogValue value;
  bool numerically_singular = false;

  bool is_zero() const { return value.is_zero(); }
  double log_modulus() const { return value.log_modulus(); }
  double argument() const { return value.principal_argument(); }
};

inline void require_window(const FourierSeries& s, int needed, const char* what) {
  if (s.radius() < needed) {
    throw domain_error(std::string(what) + ": Fourier window too small for this n");
  }
}

/// T_n = (phi_{j-k}), j,k = 0..n-1.
inline DenseComplexMatrix build_toeplitz(const FourierSeries& s, int n) {
  if (n < 1) throw domain_error("build_toeplitz: n must be >= 1");
  require_window(s, n - 1, "build_toeplitz");
  DenseComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) m(j, k) = s[j - k];
  }
  return m;
}

/// H_n = (phi_{j+k+1}), j,k = 0..n-1.
inline DenseComplexMatrix build_hankel(const FourierSeries& s, int n) {
  if (n < 1) throw domain_error("build_hankel: n must be >= 1");
  require_window(s, 2 * n - 1, "build_hankel");
  DenseComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) m(j, k) = s[j + k + 1];
  }
  return m;
}

/// T_n + hankel_sign * H_n. The sign -1 gives M_n of the symbol rotated by pi,
/// up to conjugation by diag((-1)^j).
inline DenseComplexMatrix build_M(const FourierSeries& s, int n, int hankel_sign = 1) {
  if (hankel_sign != 1 && hankel_sign != -1) {
    throw domain_error("build_M: hankel_sign must be +1 or -1");
  }
  if (n < 1) throw domain_error("build_M: n must be >= 1");
  require_window(s, 2 * n - 1, "build_M");
  DenseComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      m(j, k) = s[j - k] + static_cast<double>(hankel_sign) * s[j + k + 1];
    }
  }
  return m;
}

inline constexpr double exact_zero_pivot = 1e-300;
inline constexpr double relative_singular_pivot = 1e-13;

/// log det by partial-pivot LU, accumulating log|u_ii| and arg(u_ii).
inline LogDet logdet_lu(const DenseComplexMatrix& m) {
  if (m.rows() != m.cols()) throw domain_error("logdet_lu: matrix must be square");
  if (m.rows() == 0) return {};
  const double scale = m.rowwise().norm().maxCoeff();
  if (scale == 0.0) return {LogValue::zero(), true};

  Eigen::PartialPivLU<DenseComplexMatrix> lu(m);
  const auto& u = lu.matrixLU();
  LogDet out;
  double log_mod = 0.0, arg = 0.0;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const complex p = u(i, i);
    const double a = std::abs(p);
    if (a < exact_zero_pivot) return {LogValue::zero(), true};
    if (a < relative_singular_pivot * scale) out.numerically_singular = true;
    log_mod += std::log(a);
    arg += std::arg(p);
  }
  if (lu.permutationP().determinant() < 0) arg += std::numbers::pi;
  out.value = LogValue::from_polar_log(log_mod, reduce_angle(arg));
  return out;
}

}  // namespace thdet

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace thdet {

using complex = std::complex<double>;

/// Raised when an argument lies outside the domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an argument hits a pole (e.g. Gamma at a nonpositive integer).
class pole_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Raised when the logarithm of an exact zero is requested.
class zero_value_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Reduce an angle to (-pi, pi].
inline double reduce_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(a, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

/// A complex number exp(log_modulus + i*argument) kept in log scale.
///
/// Determinants and Barnes G products under- and overflow doubles long
/// before the sizes of interest, so every product in the library is carried
/// in this form. Exact zero is a flag, never log_modulus = -inf. The
/// argument accumulates across multiplications; use principal_argument()
/// for the value reduced to (-pi, pi].
class LogValue {
 public:
  constexpr LogValue() = default;

  static constexpr LogValue zero() {
    LogValue v;
    v.exact_zero_ = true;
    return v;
  }

  static LogValue from_log(complex log) {
    LogValue v;
    v.log_modulus_ = log.real();
    v.argument_ = log.imag();
    return v;
  }

  static LogValue from_polar_log(double log_modulus, double argument) {
    LogValue v;
    v.log_modulus_ = log_modulus;
    v.argument_ = argument;
    return v;
  }

  static LogValue from_value(complex z) {
    if (z == complex{}) return zero();
    return from_log(std::log(z));
  }

  static LogValue from_value(double x) { return from_value(complex{x, 0.0}); }

  bool is_zero() const { return exact_zero_; }
  double log_modulus() const { return log_modulus_; }
  double argument() const { return argument_; }
  double principal_argument() const { return reduce_angle(argument_); }

  /// Complex logarithm with the accumulated argument as imaginary part.
  complex log() const {
    if (exact_zero_) throw zero_value_error("logarithm of exact zero");
    return {log_modulus_, argument_};
  }

  complex value() const {
    if (exact_zero_) return {};
    return std::polar(std::exp(log_modulus_), argument_);
  }

  LogValue& operator*=(const LogValue& o) {
    exact_zero_ = exact_zero_ || o.exact_zero_;
    log_modulus_ += o.log_modulus_;
    argument_ += o.argument_;
    return *this;
  }

  LogValue& operator/=(const LogValue& o) {
    if (o.exact_zero_) throw zero_value_error("division by exact zero");
    log_modulus_ -= o.log_modulus_;
    argument_ -= o.argument_;
    return *this;
  }

  LogValue& operator*=(complex z) { return *this *= from_value(z); }
  LogValue& operator/=(complex z) { return *this /= from_value(z); }

  /// Multiply the phase by exp(i*angle).
  LogValue& rotate(double angle) {
    argument_ += angle;
    return *this;
  }

  friend LogValue operator*(LogValue a, const LogValue& b) { return a *= b; }
  friend LogValue operator/(LogValue a, const LogValue& b) { return a /= b; }

  LogValue pow(long long k) const {
    if (exact_zero_) {
      if (k > 0) return zero();
      if (k == 0) return {};
      throw zero_value_error("negative power of exact zero");
    }
    return from_polar_log(static_cast<double>(k) * log_modulus_,
                          static_cast<double>(k) * argument_);
  }

  LogValue inverse() const { return LogValue{} / *this; }

  /// Same value with the argument reduced to (-pi, pi].
  LogValue reduced() const {
    LogValue v = *this;
    v.argument_ = reduce_angle(argument_);
    return v;
  }

 private:
  double log_modulus_ = 0.0;
  double argument_ = 0.0;
  bool exact_zero_ = false;
};

/// |a/b - 1| for two log-scale values, robust to huge moduli.
/// Returns +inf when exactly one of them is zero, 0 when both are.
inline double relative_difference(const LogValue& a, const LogValue& b) {
  if (a.is_zero() || b.is_zero()) {
    return a.is_zero() && b.is_zero() ? 0.0 : INFINITY;
  }
  complex d{a.log_modulus() - b.log_modulus(),
            reduce_angle(a.argument() - b.argument())};
  return std::abs(std::expm1(d.real()) * std::exp(complex{0.0, d.imag()}) +
                  (std::exp(complex{0.0, d.imag()}) - 1.0));
}

/// Principal complex power w^s = exp(s * Log w), Log with arg in (-pi, pi].
inline LogValue principal_pow(complex w, complex s) {
  if (w == complex{}) {
    if (s.real() > 0.0) return LogValue::zero();
    throw domain_error("principal_pow: zero base with exponent Re s <= 0");
  }
  return LogValue::from_log(s * std::log(w));
}

}  // namespace thdet

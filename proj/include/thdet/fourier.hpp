#pragma once

// Fourier coefficients of symbols: closed forms for the elementary factors and
// panel-split Gauss-Legendre quadrature for composites.

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "thdet/log_value.hpp"
#include "thdet/special_functions.hpp"
#include "thdet/symbol.hpp"

namespace thdet {

/// Raised when the composite quadrature cannot reach its tolerance.
class quadrature_error : public std::runtime_error {
 public:
  quadrature_error(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double error_estimate() const { return estimate_; }

 private:
  double estimate_;
};

/// Two-sided coefficient window {phi_k : -radius <= k <= radius}.
class FourierSeries {
 public:
  FourierSeries() = default;
  FourierSeries(int radius, std::vector<complex> coeffs)
      : radius_(radius), coeffs_(std::move(coeffs)) {
    if (radius_ < 0 || coeffs_.size() != 2 * static_cast<std::size_t>(radius_) + 1) {
      throw domain_error("FourierSeries: coefficient count must be 2*radius+1");
    }
  }

  /// Series of the constant symbol 1.
  static FourierSeries identity(int radius) {
    std::vector<complex> c(2 * static_cast<std::size_t>(radius) + 1);
    c[static_cast<std::size_t>(radius)] = 1.0;
    return {radius, std::move(c)};
  }

  int radius() const { return radius_; }

  complex operator[](int k) const {
    return coeffs_[static_cast<std::size_t>(k + radius_)];
  }

  complex at(int k) const {
    if (std::abs(k) > radius_) throw domain_error("FourierSeries: index outside window");
    return (*this)[k];
  }

  const std::vector<complex>& coeffs() const { return coeffs_; }

 private:
  int radius_ = 0;
  std::vector<complex> coeffs_{complex{1.0, 0.0}};
};

/// k-th coefficient of t_beta(e^{i(theta - theta0)}):
/// e^{-ik theta0} sin(pi beta) / (pi (beta - k)).
inline complex jump_fourier_coeff(complex beta, double theta0, int k) {
  if (beta == complex{}) return k == 0 ? complex{1.0} : complex{};
  if (detail::is_integer(beta)) {
    throw domain_error("jump_fourier_coeff: nonzero integer beta is a monomial");
  }
  const double pi = std::numbers::pi;
  return std::polar(1.0, -k * theta0) * std::sin(pi * beta) /
         (pi * (beta - static_cast<double>(k)));
}

/// Coefficients of phi1 (odd k only) and phi2 (even k only).
inline complex phi12_fourier_coeff(SpecialKind kind, complex beta, int k) {
  const double pi = std::numbers::pi;
  switch (kind) {
    case SpecialKind::phi1:
      if (detail::is_integer(beta - 0.5)) {
        throw domain_error("phi1 requires beta not in Z + 1/2");
      }
      if (k % 2 == 0) return {};
      return -std::cos(pi * beta) / (pi * (beta - 0.5 * k));
    case SpecialKind::phi2:
      if (detail::is_integer(beta)) throw domain_error("phi2 requires beta not in Z");
      if (k % 2 != 0) return {};
      return std::sin(pi * beta) / (pi * (beta - 0.5 * k));
    default:
      throw domain_error("phi12_fourier_coeff: kind must be phi1 or phi2");
  }
}

/// Coefficient of phi3/phi4: i^k times the phi1/phi2 coefficient.
inline complex special_fourier_coeff(const SpecialSymbol& s, int k) {
  switch (s.kind) {
    case SpecialKind::phi1:
    case SpecialKind::phi2:
      return phi12_fourier_coeff(s.kind, s.beta, k);
    case SpecialKind::phi3:
    case SpecialKind::phi4: {
      const SpecialKind base =
          s.kind == SpecialKind::phi3 ? SpecialKind::phi1 : SpecialKind::phi2;
      static constexpr complex quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      return quarter[((k % 4) + 4) % 4] * phi12_fourier_coeff(base, s.beta, k);
    }
  }
  throw domain_error("special_fourier_coeff: unknown kind");
}

/// Coefficients [u_alpha]_k for 0 <= k <= kmax at the given center.
///
/// [u_alpha]_k = (-1)^k Gamma(1+2a) / (Gamma(1+a+k) Gamma(1+a-k)), built by the
/// ratio c_{k+1}/c_k = (k - a)/(k + 1 + a); symmetric in k. Centering at -1
/// multiplies by (-1)^k.
inline std::vector<complex> ualpha_fourier_coeffs(complex alpha, Center center,
                                                  int kmax) {
  if (!(alpha.real() > -0.5)) {
    throw domain_error("ualpha_fourier_coeff: requires Re alpha > -1/2");
  }
  std::vector<complex> c(static_cast<std::size_t>(kmax) + 1);
  complex v = (gamma(1.0 + 2.0 * alpha) / gamma(1.0 + alpha).pow(2)).value();
  for (int k = 0; k <= kmax; ++k) {
    c[static_cast<std::size_t>(k)] =
        (center == Center::minus_one && k % 2 != 0) ? -v : v;
    v *= (static_cast<double>(k) - alpha) / (static_cast<double>(k) + 1.0 + alpha);
  }
  return c;
}

inline complex ualpha_fourier_coeff(complex alpha, Center center, int k) {
  return ualpha_fourier_coeffs(alpha, center, std::abs(k)).back();
}

namespace detail {

/// Nodes of one quadrature panel [anchor + lo, anchor + hi].
struct PanelNode {
  double anchor;
  double offset;
  double weight;
};

/// 20-point Gauss-Legendre nodes mapped to [anchor+lo, anchor+hi].
inline void append_gauss_panel(std::vector<PanelNode>& out, double anchor,
                               double lo, double hi) {
  using rule = boost::math::quadrature::gauss<double, 20>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.push_back({anchor, mid + half * x[i], half * w[i]});
    out.push_back({anchor, mid - half * x[i], half * w[i]});
  }
}

/// Quadrature nodes for [0, 2 pi) with breakpoints at every singular angle.
/// Segments are split into uniform panels of width <= 2 pi / panels_per_turn;
/// panels touching a power singularity are refined geometrically toward it.
inline std::vector<PanelNode> build_panels(const std::vector<double>& singular,
                                           const std::vector<double>& power,
                                           int panels_per_turn) {
  constexpr double ratio = 0.15;
  constexpr int levels = 40;
  std::vector<double> breaks = singular;
  if (breaks.empty()) breaks.push_back(0.0);
  std::vector<PanelNode> nodes;
  auto is_power = [&](double a) {
    return std::any_of(power.begin(), power.end(),
                       [&](double p) { return std::abs(wrap_positive(p) - a) < 1e-15; });
  };
  for (std::size_t s = 0; s < breaks.size(); ++s) {
    const double a = breaks[s];
    const double c = (s + 1 < breaks.size()) ? breaks[s + 1] : breaks[0] + two_pi;
    const double len = c - a;
    const int m = std::max(2, static_cast<int>(std::ceil(panels_per_turn * len / two_pi)));
    const double h = len / m;
    const bool left_power = is_power(a);
    const bool right_power = is_power(wrap_positive(c));
    for (int p = 0; p < m; ++p) {
      if (p == 0 && left_power) {
        // offsets measured from a
        double hi = h;
        for (int l = 0; l < levels; ++l) {
          const double lo = hi * ratio;
          append_gauss_panel(nodes, a, lo, hi);
          hi = lo;
        }
        append_gauss_panel(nodes, a, 0.0, hi);
      } else if (p == m - 1 && right_power) {
        // offsets measured from c (negative)
        double hi = h;
        for (int l = 0; l < levels; ++l) {
          const double lo = hi * ratio;
          append_gauss_panel(nodes, c, -hi, -lo);
          hi = lo;
        }
        append_gauss_panel(nodes, c, -hi, 0.0);
      } else {
        append_gauss_panel(nodes, a, p * h, (p + 1) * h);
      }
    }
  }
  return nodes;
}

inline std::vector<complex> quadrature_coeffs(const SymbolSpec& spec, int radius,
                                              int panels_per_turn) {
  const auto nodes = build_panels(spec.singular_angles(), spec.power_angles(),
                                  panels_per_turn);
  std::vector<complex> c(2 * static_cast<std::size_t>(radius) + 1);
  const double scale = 1.0 / two_pi;
  for (const auto& nd : nodes) {
    const double theta = nd.anchor + nd.offset;
    const complex f = spec.evaluate(nd.anchor, nd.offset) * (nd.weight * scale);
    const complex step = std::polar(1.0, -theta);
    // k >= 0 by forward powers, k < 0 by conjugate powers
    complex e = 1.0;
    c[static_cast<std::size_t>(radius)] += f;
    for (int k = 1; k <= radius; ++k) {
      e *= step;
      c[static_cast<std::size_t>(radius + k)] += f * e;
      c[static_cast<std::size_t>(radius - k)] += f * std::conj(e);
    }
  }
  return c;
}

}  // namespace detail

/// Quadrature tolerance on each coefficient (absolute).
inline constexpr double fourier_tolerance = 1e-9;

/// Fourier coefficients by panel quadrature only, regardless of the factor
/// structure. Resolves the window at two panel densities and throws
/// quadrature_error when they disagree by more than fourier_tolerance.
inline FourierSeries quadrature_fourier_coeffs(const SymbolSpec& spec, int radius) {
  spec.validate();
  const int coarse = radius / 2 + 16;
  const int fine = coarse + coarse / 2 + 8;
  auto a = detail::quadrature_coeffs(spec, radius, coarse);
  auto b = detail::quadrature_coeffs(spec, radius, fine);
  double est = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) est = std::max(est, std::abs(a[i] - b[i]));
  if (est > fourier_tolerance) {
    std::ostringstream os;
    os << "quadrature did not converge: estimated error " << est;
    throw quadrature_error(os.str(), est);
  }
  return {radius, std::move(b)};
}

/// Coefficients phi_k for |k| <= radius of the full symbol. Closed forms are
/// used when the symbol is a single elementary factor; everything else goes
/// through panel quadrature.
inline FourierSeries symbol_fourier_coeffs(const SymbolSpec& spec, int radius) {
  if (radius < 1) throw domain_error("symbol_fourier_coeffs: radius must be >= 1");
  spec.validate();
  const std::size_t size = 2 * static_cast<std::size_t>(radius) + 1;
  std::vector<complex> c(size);
  auto fill = [&](auto&& f) {
    for (int k = -radius; k <= radius; ++k) c[static_cast<std::size_t>(k + radius)] = f(k);
    return FourierSeries{radius, std::move(c)};
  };

  if (spec.has_only_special()) {
    return fill([&](int k) { return special_fourier_coeff(*spec.special, k); });
  }
  if (!spec.smooth.is_trivial()) return quadrature_fourier_coeffs(spec, radius);

  const auto jumps = spec.all_jumps();
  if (jumps.empty() && spec.powers.empty()) return FourierSeries::identity(radius);
  if (jumps.size() == 1 && spec.powers.empty()) {
    const auto j = jumps.front();
    return fill([&](int k) { return jump_fourier_coeff(j.beta, j.theta0, k); });
  }
  if (jumps.empty() && spec.powers.size() == 1) {
    const auto p = spec.powers.front();
    const auto u = ualpha_fourier_coeffs(p.alpha, p.center, radius);
    return fill([&](int k) { return u[static_cast<std::size_t>(std::abs(k))]; });
  }
  return quadrature_fourier_coeffs(spec, radius);
}

}  // namespace thdet

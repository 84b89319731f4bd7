#include <gtest/gtest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "thdet/fourier.hpp"
#include "thdet/symbol.hpp"

using namespace thdet;
using std::numbers::pi;

namespace {

// (1/2pi) int_a^b f(theta) e^{-ik theta} d theta on each piece of `cuts`,
// with tanh-sinh absorbing endpoint singularities.
complex oracle_coeff(const std::function<complex(double)>& f, int k,
                     const std::vector<double>& cuts) {
  boost::math::quadrature::tanh_sinh<double> ts;
  complex total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto part = [&](auto proj) {
      return ts.integrate(
          [&](double t) { return proj(f(t) * std::polar(1.0, -k * t)); }, cuts[i], cuts[i + 1]);
    };
    total += complex{part([](complex z) { return z.real(); }),
                     part([](complex z) { return z.imag(); })};
  }
  return total / (2.0 * pi);
}

// t_beta(e^{i(theta - theta0)}) written out from its definition.
complex raw_jump(complex beta, double theta0, double theta) {
  double d = std::fmod(theta - theta0, 2.0 * pi);
  if (d <= 0) d += 2.0 * pi;
  return std::exp(complex{0.0, 1.0} * beta * (d - pi));
}

SymbolSpec jump_spec(double beta, double theta0) {
  SymbolSpec s;
  if (theta0 == 0.0) s.jump_plus = beta;
  else s.jumps.push_back({beta, theta0});
  return s;
}

}  // namespace

TEST(JumpCoeff, Examples) {
  EXPECT_NEAR(std::abs(jump_fourier_coeff(0.5, 0.0, 0) - 2.0 / pi), 0.0, 1e-15);
  EXPECT_EQ(jump_fourier_coeff(0.0, 1.2, 3), complex{});
  const complex expect = std::polar(1.0, -pi / 2) * std::sin(0.3 * pi) / (pi * (0.3 - 1.0));
  EXPECT_NEAR(std::abs(jump_fourier_coeff(0.3, pi / 2, 1) - expect), 0.0, 1e-15);
}

TEST(JumpCoeff, MatchesOracleQuadrature) {
  for (complex beta : {complex{0.3}, complex{-0.2, 0.35}}) {
    for (double t0 : {0.0, pi / 2, -2.0}) {
      for (int k : {-3, 0, 1, 5}) {
        const double c = t0 > 0 ? t0 : t0 + 2.0 * pi;
        const complex want = oracle_coeff([&](double t) { return raw_jump(beta, t0, t); }, k,
                                          {0.0, c == 2.0 * pi ? pi : c, 2.0 * pi});
        EXPECT_LT(std::abs(jump_fourier_coeff(beta, t0, k) - want), 1e-10)
            << beta << ' ' << t0 << ' ' << k;
      }
    }
  }
}

TEST(JumpCoeff, IntegerBetaThrows) {
  EXPECT_THROW(jump_fourier_coeff(2.0, 0.0, 1), domain_error);
}

TEST(Phi12Coeff, Examples) {
  EXPECT_NEAR(std::abs(phi12_fourier_coeff(SpecialKind::phi1, 0.0, 3) - 2.0 / (3.0 * pi)), 0.0,
              1e-15);
  EXPECT_EQ(phi12_fourier_coeff(SpecialKind::phi2, 0.25, 1), complex{});
}

TEST(Phi12Coeff, MatchesOracleQuadrature) {
  const complex beta{0.1, 0.2};
  // phi1 = t_{beta-1/2}(e^{i theta}) t_{beta+1/2}(e^{i(theta - pi)})
  auto phi1 = [&](double t) { return raw_jump(beta - 0.5, 0.0, t) * raw_jump(beta + 0.5, pi, t); };
  auto phi2 = [&](double t) { return raw_jump(beta, 0.0, t) * raw_jump(beta, pi, t); };
  for (int k : {-1, 0, 2, 3, -4}) {
    EXPECT_LT(std::abs(phi12_fourier_coeff(SpecialKind::phi1, beta, k) -
                       oracle_coeff(phi1, k, {0.0, pi, 2.0 * pi})),
              1e-10)
        << k;
    EXPECT_LT(std::abs(phi12_fourier_coeff(SpecialKind::phi2, beta, k) -
                       oracle_coeff(phi2, k, {0.0, pi, 2.0 * pi})),
              1e-10)
        << k;
  }
}

TEST(Phi34Coeff, RotationOfPhi12) {
  for (auto [rot, base] : {std::pair{SpecialKind::phi3, SpecialKind::phi1},
                           std::pair{SpecialKind::phi4, SpecialKind::phi2}}) {
    SymbolSpec s;
    s.special = SpecialSymbol{rot, 0.2};
    const auto closed = symbol_fourier_coeffs(s, 12);
    const auto quad = quadrature_fourier_coeffs(s, 12);
    for (int k = -12; k <= 12; ++k) {
      EXPECT_LT(std::abs(closed[k] - quad[k]), 1e-10) << k;
      const complex ik = std::pow(complex{0.0, 1.0}, k);
      EXPECT_LT(std::abs(closed[k] - ik * phi12_fourier_coeff(base, 0.2, k)), 1e-14);
    }
  }
}

TEST(UalphaCoeff, Examples) {
  EXPECT_NEAR(std::abs(ualpha_fourier_coeff(1.0, Center::plus_one, 0) - 2.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(ualpha_fourier_coeff(1.0, Center::plus_one, 1) + 1.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(ualpha_fourier_coeff(1.0, Center::plus_one, 2)), 0.0, 1e-14);
}

TEST(UalphaCoeff, MatchesOracleQuadrature) {
  for (complex alpha : {complex{0.3}, complex{-0.2, 0.4}}) {
    // (2 + 2 cos t)^alpha = exp(alpha (log 4 + 2 log|cos(t/2)|)), finite near t = pi
    auto f = [&](double t) {
      return std::exp(alpha * (std::log(4.0) + 2.0 * std::log(std::abs(std::cos(0.5 * t)))));
    };
    for (int k : {0, 1, 2, -5}) {
      const complex want = oracle_coeff(f, k, {0.0, pi, 2.0 * pi});
      EXPECT_LT(std::abs(ualpha_fourier_coeff(alpha, Center::minus_one, k) - want), 1e-10)
          << alpha << ' ' << k;
    }
  }
}

TEST(SymbolCoeffs, SingleJumpPassthrough) {
  const auto s = symbol_fourier_coeffs(jump_spec(0.3, 0.0), 4);
  for (int k = -4; k <= 4; ++k) EXPECT_EQ(s[k], jump_fourier_coeff(0.3, 0.0, k));
}

TEST(SymbolCoeffs, ExponentialSeries) {
  SymbolSpec spec;
  spec.smooth = SmoothPart({{1, 0.5}});
  const auto s = symbol_fourier_coeffs(spec, 3);
  double fact = 1.0;
  for (int k = 0; k <= 3; ++k) {
    if (k > 0) fact *= k;
    EXPECT_LT(std::abs(s[k] - std::pow(0.5, k) / fact), 1e-12) << k;
    if (k > 0) EXPECT_LT(std::abs(s[-k]), 1e-12);
  }
}

TEST(SymbolCoeffs, TwoJumpsMatchConvolution) {
  SymbolSpec spec;
  spec.jump_plus = 0.2;
  spec.jumps.push_back({0.1, pi / 3});
  const auto s = symbol_fourier_coeffs(spec, 8);
  const int W = 2048;
  for (int k = -8; k <= 8; ++k) {
    complex conv = 0.0;
    for (int m = -W; m <= W; ++m) {
      conv += jump_fourier_coeff(0.2, 0.0, m) * jump_fourier_coeff(0.1, pi / 3, k - m);
    }
    EXPECT_LT(std::abs(s[k] - conv), 1e-6) << k;
  }
}

TEST(SymbolCoeffs, QuadratureMatchesClosedFormsForEveryFactor) {
  SymbolSpec j = jump_spec(0.35, -2.1);
  SymbolSpec u;
  u.powers.push_back({complex{0.3, 0.1}, Center::plus_one});
  for (const auto& spec : {j, u}) {
    const auto closed = symbol_fourier_coeffs(spec, 40);
    const auto quad = quadrature_fourier_coeffs(spec, 40);
    for (int k = -40; k <= 40; ++k) EXPECT_LT(std::abs(closed[k] - quad[k]), 1e-10) << k;
  }
}

TEST(SymbolCoeffs, RealSymbolIsConjugateSymmetric) {
  SymbolSpec spec;
  spec.smooth = SmoothPart({{1, complex{0.3, 0.1}}, {-1, complex{0.3, -0.1}}, {0, 0.2}});
  spec.powers.push_back({0.4, Center::minus_one});
  ASSERT_TRUE(spec.is_real_valued());
  const auto s = symbol_fourier_coeffs(spec, 20);
  for (int k = 0; k <= 20; ++k) EXPECT_LT(std::abs(s[-k] - std::conj(s[k])), 1e-12) << k;
}

TEST(SymbolCoeffs, ModulationShiftsPhase) {
  // rotating the whole symbol by theta0 multiplies phi_k by e^{-ik theta0}
  SymbolSpec a;
  a.smooth = SmoothPart({{1, 0.2}});
  a.jump_plus = 0.15;
  const double t0 = 0.7;
  SymbolSpec b;
  b.smooth = SmoothPart({{1, 0.2 * std::polar(1.0, -t0)}});
  b.jumps.push_back({0.15, t0});
  const auto sa = symbol_fourier_coeffs(a, 16), sb = symbol_fourier_coeffs(b, 16);
  for (int k = -16; k <= 16; ++k) {
    EXPECT_LT(std::abs(sb[k] - std::polar(1.0, -k * t0) * sa[k]), 1e-11) << k;
  }
}

TEST(FourierSeriesType, BoundsChecked) {
  const auto s = FourierSeries::identity(3);
  EXPECT_EQ(s.at(0), complex{1.0});
  EXPECT_THROW(s.at(4), domain_error);
  EXPECT_THROW(FourierSeries(2, std::vector<complex>(3)), domain_error);
}

TEST(SymbolSpecValidation, RejectsBadInput) {
  SymbolSpec s;
  s.jump_plus = 2.0;
  EXPECT_THROW(s.validate(), domain_error);
  SymbolSpec t;
  t.jumps.push_back({0.2, 0.0});
  EXPECT_THROW(t.validate(), domain_error);
  SymbolSpec u;
  u.jumps = {{0.2, 1.0}, {0.1, 1.0}};
  EXPECT_THROW(u.validate(), domain_error);
  SymbolSpec v;
  v.special = SpecialSymbol{SpecialKind::phi1, 0.5};
  EXPECT_THROW(v.validate(), domain_error);
  SymbolSpec w;
  w.special = SpecialSymbol{SpecialKind::phi2, 0.2};
  w.jump_plus = 0.1;
  EXPECT_THROW(w.validate(), domain_error);
}

TEST(WienerHopf, Examples) {
  auto [p0, m0] = wiener_hopf_parts(SmoothPart{}, std::polar(1.0, 0.4));
  EXPECT_EQ(p0, complex{1.0});
  EXPECT_EQ(m0, complex{1.0});
  auto [p1, m1] = wiener_hopf_parts(SmoothPart({{1, 1.0}}), 1.0);
  EXPECT_NEAR(std::abs(p1 - std::exp(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(m1 - 1.0), 0.0, 1e-15);
  auto [p2, m2] = wiener_hopf_parts(SmoothPart({{1, 1.0}, {-1, 0.5}}), -1.0);
  EXPECT_NEAR(std::abs(p2 - std::exp(-1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m2 - std::exp(-0.5)), 0.0, 1e-15);
  EXPECT_THROW(wiener_hopf_parts(SmoothPart{}, 1.1), domain_error);
}

TEST(WienerHopf, FactorsReproduceSymbol) {
  const SmoothPart b({{0, 0.1}, {1, complex{0.3, 0.2}}, {2, -0.1}, {-1, 0.25}, {-3, 0.05}});
  SymbolSpec spec;
  spec.smooth = b;
  for (double t : {0.0, 0.9, 2.5, -1.7}) {
    auto [p, m] = wiener_hopf_parts(b, std::polar(1.0, t));
    const complex g = std::exp(b.log_coeff(0));
    EXPECT_LT(std::abs(p * g * m - spec.evaluate(t, 0.0)), 1e-13);
  }
}

TEST(RegimeCheck, Examples) {
  const auto all = regime_check(SymbolSpec{});
  EXPECT_TRUE(all.satisfies_I && all.satisfies_II && all.satisfies_III && all.main_theorem_ok);
  SymbolSpec s;
  s.jump_plus = 0.3;
  const auto r = regime_check(s);
  EXPECT_TRUE(r.satisfies_I);
  EXPECT_FALSE(r.satisfies_III);
  SymbolSpec c;
  c.jumps = {{0.1, pi / 3}, {0.1, -pi / 3}};
  EXPECT_FALSE(regime_check(c).main_theorem_ok);
}

#pragma once

// Randomized checks of the Barnes G / Gamma identities against literal
// products. Shared by the `identities` CLI subcommand and the test suites.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "thdet/log_value.hpp"
#include "thdet/special_functions.hpp"

namespace thdet {

struct IdentityCheck {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  bool passed() const { return max_error <= tolerance; }
};

namespace detail {

/// Literal product in log scale.
template <typename F>
LogValue literal_product(F&& factors) {
  LogValue p;
  factors([&](complex z) { p *= LogValue::from_value(z); });
  return p;
}

inline complex random_off_integers(std::mt19937_64& rng, double re_lo, double re_hi,
                                   double im_span) {
  std::uniform_real_distribution<double> re(re_lo, re_hi), im(-im_span, im_span);
  for (;;) {
    complex z{re(rng), im(rng)};
    if (std::abs(z.imag()) > 1e-3 ||
        std::abs(z.real() - std::round(z.real())) > 1e-2) {
      return z;
    }
  }
}

}  // namespace detail

/// |log G(1+z) - log Gamma(z) - log G(z)| reduced mod 2 pi i over 200 random
/// z with |z| <= 20, off the cut.
inline IdentityCheck check_recurrence(std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rad(0.05, 20.0), ang(-0.95 * std::numbers::pi,
                                                             0.95 * std::numbers::pi);
  IdentityCheck c{"recurrence G(1+z) = Gamma(z) G(z)", 0.0, 1e-10, 200};
  for (int i = 0; i < c.samples; ++i) {
    const complex z = std::polar(rad(rng), ang(rng));
    const complex d = log_barnes_g(1.0 + z) - log_gamma(z) - log_barnes_g(z);
    const double err = std::abs(complex{d.real(), reduce_angle(d.imag())});
    c.max_error = std::max(c.max_error, err);
  }
  return c;
}

/// G(1+z-n)/G(1+z) directly versus through the reflected side, n <= 8.
inline IdentityCheck check_reflection(std::uint64_t seed = 2) {
  std::mt19937_64 rng(seed);
  IdentityCheck c{"reflection G(1+z-n)/G(1+z)", 0.0, 1e-9, 0};
  for (int i = 0; i < 40; ++i) {
    const complex z = detail::random_off_integers(rng, -4.0, 4.0, 2.0);
    for (unsigned n = 0; n <= 8; ++n) {
      const LogValue lhs = barnes_g(1.0 + z - static_cast<double>(n)) / barnes_g(1.0 + z);
      c.max_error = std::max(c.max_error, relative_difference(lhs, reflection_ratio(z, n)));
      ++c.samples;
    }
  }
  return c;
}

/// G(z)G(z+1/2)^2 G(z+1) = G(1/2)^2 pi^z 2^{-2z^2+3z-1} G(2z), Re z in (0.1, 10).
inline IdentityCheck check_duplication(std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(0.1, 10.0), im(-3.0, 3.0);
  IdentityCheck c{"duplication of Barnes G", 0.0, 1e-9, 100};
  const double pi = std::numbers::pi;
  for (int i = 0; i < c.samples; ++i) {
    const complex z{re(rng), im(rng)};
    const LogValue lhs = barnes_g(z) * barnes_g(z + 0.5).pow(2) * barnes_g(z + 1.0);
    LogValue rhs = barnes_g(0.5).pow(2) * barnes_g(2.0 * z);
    rhs *= LogValue::from_log(z * std::log(pi) + (-2.0 * z * z + 3.0 * z - 1.0) * std::log(2.0));
    c.max_error = std::max(c.max_error, relative_difference(lhs, rhs));
  }
  return c;
}

/// Each product identity against its literal product, sizes <= 12, 50 random z.
inline std::vector<IdentityCheck> check_products(std::uint64_t seed = 4) {
  std::mt19937_64 rng(seed);
  IdentityCheck pr1{"pr1 prod (k-j) = G(1+n)", 0.0, 1e-10, 0};
  IdentityCheck pr4{"pr4 prod (k+j+z)", 0.0, 1e-10, 0};
  IdentityCheck pr2{"pr2 prod (z+k1+k2)", 0.0, 1e-10, 0};
  IdentityCheck pr3{"pr3 prod (z+k1-k2)", 0.0, 1e-10, 0};

  for (unsigned n = 0; n <= 12; ++n) {
    const LogValue lit = detail::literal_product([&](auto&& mul) {
      for (unsigned j = 0; j < n; ++j)
        for (unsigned k = j + 1; k < n; ++k) mul(complex{static_cast<double>(k - j)});
    });
    pr1.max_error = std::max(
        pr1.max_error, relative_difference(lit, product_identity(ProductKind::pr1, 0.0, n, 0, 0)));
    ++pr1.samples;
  }

  for (int i = 0; i < 50; ++i) {
    // positive real part keeps pr4/pr2 away from {0,-1,...}; pr3 only needs z off Z
    const complex zp = detail::random_off_integers(rng, 0.05, 4.0, 1.5);
    const complex z3 = detail::random_off_integers(rng, -3.0, 3.0, 1.5);
    for (unsigned n = 0; n <= 12; ++n) {
      const LogValue lit = detail::literal_product([&](auto&& mul) {
        for (unsigned j = 0; j < n; ++j)
          for (unsigned k = j + 1; k < n; ++k) mul(static_cast<double>(k + j) + zp);
      });
      pr4.max_error = std::max(
          pr4.max_error, relative_difference(lit, product_identity(ProductKind::pr4, zp, n, 0, 0)));
      ++pr4.samples;
    }
    for (unsigned n1 = 0; n1 <= 12; ++n1) {
      for (unsigned n2 = 0; n2 <= 12; ++n2) {
        const LogValue lit2 = detail::literal_product([&](auto&& mul) {
          for (unsigned a = 0; a < n1; ++a)
            for (unsigned b = 0; b < n2; ++b) mul(zp + static_cast<double>(a + b));
        });
        pr2.max_error = std::max(pr2.max_error,
                                 relative_difference(lit2, product_identity(ProductKind::pr2, zp,
                                                                            0, n1, n2)));
        ++pr2.samples;
        const LogValue lit3 = detail::literal_product([&](auto&& mul) {
          for (unsigned a = 0; a < n1; ++a)
            for (unsigned b = 0; b < n2; ++b)
              mul(z3 + static_cast<double>(a) - static_cast<double>(b));
        });
        pr3.max_error = std::max(pr3.max_error,
                                 relative_difference(lit3, product_identity(ProductKind::pr3, z3,
                                                                            0, n1, n2)));
        ++pr3.samples;
      }
    }
  }
  return {pr1, pr4, pr2, pr3};
}

inline std::vector<IdentityCheck> run_identity_suite() {
  std::vector<IdentityCheck> all{check_recurrence(), check_reflection(), check_duplication()};
  for (auto& c : check_products()) all.push_back(std::move(c));
  return all;
}

}  // namespace thdet

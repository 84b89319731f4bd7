// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "thdet/thdet.hpp"

using namespace thdet;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) {
    o.pass = false;
    o.detail += " [over time budget]";
  }
  if (!o.pass) ++failures;
  std::printf("%s  %2d  %-34s %6.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, title, secs,
              o.detail.c_str());
  std::fflush(stdout);
}

std::string sci(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", x);
  return b;
}

LogDet lu_M(const SymbolSpec& spec, int n, int sign = 1) {
  return logdet_lu(build_M(symbol_fourier_coeffs(spec, 2 * n + 8), n, sign));
}

SymbolSpec special(SpecialKind k, complex beta) {
  SymbolSpec s;
  s.special = SpecialSymbol{k, beta};
  return s;
}

// |ratio - 1| at each n; pass when below `limit` at the last n and strictly decreasing.
Outcome convergence(const std::string& label, const std::vector<int>& ns,
                    const std::function<LogValue(int)>& exact,
                    const AsymptoticPrediction& pred, double limit) {
  std::ostringstream os;
  os << label << " err:";
  double prev = INFINITY;
  bool ok = true;
  for (int n : ns) {
    const LogValue e = exact(n);
    const double err = e.is_zero() ? INFINITY : relative_difference(e, pred.at(n));
    os << ' ' << n << '=' << sci(err);
    ok = ok && err < prev;
    prev = err;
  }
  ok = ok && prev < limit;
  return {ok, os.str()};
}

Outcome combine(std::initializer_list<Outcome> parts) {
  Outcome o;
  for (const auto& p : parts) {
    o.pass = o.pass && p.pass;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += p.detail;
  }
  return o;
}

SmoothPart criterion_b() { return SmoothPart({{1, 0.3}, {-1, 0.1}}); }

}  // namespace

int main() {
  run(1, "special-function identities", 5.0, [] {
    Outcome o;
    double worst = 0.0;
    for (const auto& c : run_identity_suite()) {
      o.pass = o.pass && c.passed() && c.tolerance <= 1e-9;
      worst = std::max(worst, c.max_error);
    }
    o.detail = "worst relative error " + sci(worst);
    return o;
  });

  run(2, "closed form vs LU, n <= 24", 20.0, [] {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-0.45, 0.45), w(-1.0, 1.0);
    const std::vector<int> ns{1, 2, 3, 5, 8, 13, 17, 24};
    std::vector<std::pair<std::string, double>> worst;
    auto note = [&](const std::string& family, const LogValue& a, const LogValue& b) {
      const double e = relative_difference(a, b);
      for (auto& [name, v] : worst) {
        if (name == family) {
          v = std::max(v, e);
          return;
        }
      }
      worst.emplace_back(family, e);
    };
    // 9 real draws plus one complex per family
    auto params = [&](int i) { return i < 9 ? complex{u(rng)} : complex{u(rng), 0.3 * w(rng)}; };
    for (int i = 0; i < 10; ++i) {
      const complex beta = params(i);
      SymbolSpec s;
      s.jump_plus = beta;
      for (int n : ns) {
        note("t+1", exact_logdet_tbeta(n, beta, Center::plus_one).value, lu_M(s, n, 1).value);
        note("t-1", exact_logdet_tbeta(n, beta, Center::minus_one).value, lu_M(s, n, -1).value);
      }
    }
    for (SpecialKind k : {SpecialKind::phi1, SpecialKind::phi2}) {
      for (int i = 0; i < 10; ++i) {
        const complex beta = params(i);
        for (int n : ns) {
          note(k == SpecialKind::phi1 ? "phi1" : "phi2", exact_logdet_phi12(k, n, beta).value,
               lu_M(special(k, beta), n).value);
        }
      }
    }
    // jittered nodes interlaced on the unit circle keep the Cauchy matrices well conditioned
    auto node = [&](double pos, int n) {
      return std::polar(1.0 + 0.02 * w(rng), 2.0 * pi * (pos + 0.05 * w(rng)) / n);
    };
    for (int i = 0; i < 10; ++i) {
      const int n = 1 + static_cast<int>(rng() % 24);
      std::vector<complex> a, b;
      for (int j = 0; j < n; ++j) {
        a.push_back(node(j, n));
        b.push_back(-node(j + 0.5, n));
      }
      note("cauchy", cauchy_logdet(a, b).value, logdet_lu(cauchy_matrix(a, b)).value);
      // the block matrix is the Cauchy matrix of (a, a~) x (b, b~); split rows
      // in halves and columns by parity, ceil(n/2) each
      BlockCauchyData d;
      const int m1 = (n + 1) / 2;
      for (int j = 0; j < n; ++j) {
        (j < m1 ? d.a : d.a_tilde).push_back(a[j]);
        (j % 2 == 0 ? d.b : d.b_tilde).push_back(b[j]);
      }
      note("block-cauchy", block_cauchy_logdet(d).value, logdet_lu(block_cauchy_matrix(d)).value);
    }
    for (int i = 0; i < 10; ++i) {
      const complex alpha = params(i) + 0.1;
      for (Center at : {Center::plus_one, Center::minus_one}) {
        SymbolSpec s;
        s.powers.push_back({alpha, at});
        for (int n : ns) note("u_alpha", exact_logdet_ualpha(n, alpha, at).value, lu_M(s, n).value);
      }
    }
    Outcome o;
    for (const auto& [name, v] : worst) {
      o.pass = o.pass && v <= 1e-9;
      o.detail += name + " " + sci(v) + "  ";
    }
    o.detail += "(10 draws each)";
    return o;
  });

  run(3, "zero structure", 10.0, [] {
    struct Miss {
      std::string family;
      int n;
      double beta;
    };
    std::vector<Miss> bad;
    auto check = [&](bool got, bool want, const char* family, int n, double beta) {
      if (got != want) bad.push_back({family, n, beta});
    };
    for (int n = 1; n <= 12; ++n) {
      for (int h = 0; h < 24; ++h) {
        const double b = h + 0.5;
        check(exact_logdet_tbeta(n, b, Center::plus_one).is_zero(), b <= n - 0.5, "+1", n, b);
        check(exact_logdet_tbeta(n, b, Center::minus_one).is_zero(), b >= 1.5 && b <= n - 0.5,
              "-1", n, b);
        check(exact_logdet_phi12(SpecialKind::phi2, n, b).is_zero(), n >= 2 * b + 1, "phi2", n,
              b);
      }
      for (int b = 1; b <= 12; ++b) {
        check(exact_logdet_phi12(SpecialKind::phi1, n, static_cast<double>(b)).is_zero(),
              n >= 2 * b + 1, "phi1", n, b);
      }
    }
    Outcome o{bad.empty(), std::to_string(bad.size()) + " mismatches"};
    if (bad.empty()) return o;
    // second opinion from LU on every mismatch
    int lu_nonzero = 0;
    for (const auto& m : bad) {
      if (m.family != "-1") continue;
      SymbolSpec s;
      s.jump_plus = m.beta;
      const LogDet d = lu_M(s, m.n, -1);
      if (!d.is_zero() && !d.numerically_singular) ++lu_nonzero;
    }
    o.detail += ":";
    for (std::size_t i = 0; i < bad.size() && i < 4; ++i) {
      char b[64];
      std::snprintf(b, sizeof b, " %s(n=%d,beta=%g)", bad[i].family.c_str(), bad[i].n,
                    bad[i].beta);
      o.detail += b;
    }
    o.detail += bad.size() > 4 ? " ..." : "";
    o.detail += "; LU finds a nonzero determinant at " + std::to_string(lu_nonzero) + " of them";
    return o;
  });

  run(4, "rotation phi3 = i^sigma phi1", 5.0, [] {
    const complex beta = 0.2;
    const SymbolSpec s1 = special(SpecialKind::phi1, beta), s3 = special(SpecialKind::phi3, beta);
    // phi3 coefficients by quadrature of point values, phi1 by closed form
    const auto c1 = symbol_fourier_coeffs(s1, 2 * 32 + 8);
    const auto c3 = quadrature_fourier_coeffs(s3, 2 * 32 + 8);
    double worst = 0.0;
    for (int n = 1; n <= 32; ++n) {
      const complex d1 = logdet_lu(build_M(c1, n)).value.value();
      const complex d3 = logdet_lu(build_M(c3, n)).value.value();
      const complex want = (n % 2 != 0 ? complex{0.0, 1.0} : complex{1.0}) * d1;
      worst = std::max(worst, std::abs(d3 - want) / std::abs(want));
    }
    return Outcome{worst <= 1e-9, "worst |det3 - i^s det1|/|det| " + sci(worst)};
  });

  const std::vector<int> tail{64, 128, 256};

  run(5, "one-jump convergence", 30.0, [&] {
    return combine(
        {convergence("+1", tail,
                     [](int n) { return exact_logdet_tbeta(n, 0.25, Center::plus_one).value; },
                     predict_one_jump(0.25, Center::plus_one), 0.05),
         convergence("-1", tail,
                     [](int n) { return exact_logdet_tbeta(n, 0.25, Center::minus_one).value; },
                     predict_one_jump(0.25, Center::minus_one), 0.05)});
  });

  run(6, "two-jump convergence", 10.0, [&] {
    auto one = [&](SpecialKind k, const char* label) {
      return convergence(label, tail,
                         [k](int n) { return exact_logdet_phi12(k, n, 0.2).value; },
                         predict_two_jump(k, 0.2), 0.05);
    };
    return combine({one(SpecialKind::phi2, "phi2"), one(SpecialKind::phi1, "phi1")});
  });

  run(7, "u_alpha convergence", 10.0, [&] {
    auto one = [&](Center at, const char* label) {
      return convergence(label, tail, [at](int n) { return exact_logdet_ualpha(n, 0.3, at).value; },
                         predict_ualpha(0.3, at), 0.05);
    };
    return combine({one(Center::plus_one, "+1"), one(Center::minus_one, "-1")});
  });

  run(8, "smooth symbol, n = 64", 5.0, [] {
    SymbolSpec s;
    s.smooth = criterion_b();
    const int n = 64;
    const auto series = symbol_fourier_coeffs(s, 2 * n + 8);
    const LogValue t = logdet_lu(build_toeplitz(series, n)).value;
    const LogValue m = logdet_lu(build_M(series, n)).value;
    const double e_t = relative_difference(t, predict_T(s).at(n));
    const complex ratio = (m / t).value();
    const double e_f = std::abs(ratio - std::exp(ratio_constant_F(s)));
    return Outcome{e_t <= 1e-6 && e_f <= 1e-6,
                   "|T/(G^n E) - 1| " + sci(e_t) + ", |M/T - F| " + sci(e_f)};
  });

  run(9, "main theorem composite", 60.0, [] {
    SymbolSpec s;
    s.smooth = criterion_b();
    s.jump_plus = 0.2;
    s.jumps.push_back({0.15, pi / 3});
    const auto series = symbol_fourier_coeffs(s, 2 * 256 + 8);
    return convergence("", {32, 64, 128, 256},
                       [&](int n) { return logdet_lu(build_M(series, n)).value; }, predict_M(s),
                       0.15);
  });

  run(10, "localization", 60.0, [] {
    const JumpFactor f{0.2, pi / 3}, g{0.15, 2 * pi / 3};
    SymbolSpec sf, sg, sfg;
    sf.jumps = {f};
    sg.jumps = {g};
    sfg.jumps = {f, g};
    const int top = 256 + 5;
    const auto cf = symbol_fourier_coeffs(sf, 2 * top + 8);
    const auto cg = symbol_fourier_coeffs(sg, 2 * top + 8);
    const auto cfg = symbol_fourier_coeffs(sfg, 2 * top + 8);
    const LogValue h = LogValue::from_log(localization_constant_H(f, g));
    auto err = [&](int n) {
      const LogValue r = logdet_lu(build_M(cfg, n)).value /
                         (logdet_lu(build_M(cf, n)).value * logdet_lu(build_M(cg, n)).value);
      return relative_difference(r, h);
    };
    // the error oscillates with period 6 in n (jumps at pi/3, 2pi/3); compare
    // the envelope max over n..n+5
    std::ostringstream os;
    os << "envelope:";
    double prev = INFINITY, last = 0.0;
    bool ok = true;
    for (int n : {64, 128, 256}) {
      double env = 0.0;
      for (int m = n; m < n + 6; ++m) env = std::max(env, err(m));
      os << ' ' << n << '=' << sci(env);
      ok = ok && env < prev;
      prev = last = env;
    }
    return Outcome{ok && last < 0.15, os.str()};
  });

  run(11, "structural identity", 1.0, [] {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(-0.2, 0.2), beta(-0.45, 0.45), ang(0.2, 2.8);
    double worst = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      SymbolSpec s;
      std::vector<std::pair<int, complex>> e;
      for (int k = -3; k <= 3; ++k) e.emplace_back(k, complex{c(rng), c(rng)});
      s.smooth = SmoothPart(e);
      const int nj = 1 + static_cast<int>(rng() % 3);
      for (int r = 0; r < nj; ++r) {
        s.jumps.push_back({complex{beta(rng), 0.1 * c(rng)}, ang(rng) + 0.05 * r});
      }
      if (!regime_check(s).main_theorem_ok) return Outcome{false, "draw outside regime"};
      const auto m = predict_M(s), t = predict_T(s);
      worst = std::max(worst, std::abs(m.omega - t.omega));
      worst = std::max(worst, std::abs(m.log_constant - t.log_constant - ratio_constant_F(s)));
    }
    return Outcome{worst <= 1e-12, "worst deviation " + sci(worst) + " over 20 specs"};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

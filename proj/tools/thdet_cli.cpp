// thdet: command-line driver for predictions, exact determinants,
// convergence verification and the special-function identity suite.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "thdet/thdet.hpp"

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

std::string num(double x) { return thdet::detail::format_double(x); }

void print_value(std::ostream& os, int n, const thdet::LogValue& v) {
  if (v.is_zero()) {
    os << n << ",zero,zero\n";
  } else {
    os << n << ',' << num(v.log_modulus()) << ',' << num(v.principal_argument()) << '\n';
  }
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const int n = std::stoi(item, &used);
    if (used != item.size() || n < 1) throw thdet::format_error("bad n value '" + item + "'");
    out.push_back(n);
  }
  if (out.empty()) throw thdet::format_error("empty n list");
  return out;
}

int run_predict(const std::string& spec_path, const std::string& n_text) {
  const auto spec = thdet::spec_from_json(thdet::read_json_file(spec_path));
  const auto ns = parse_n_list(n_text);
  const auto p = thdet::predict_M(spec);
  std::cout << "n,pred_logmod,pred_arg\n";
  for (int n : ns) print_value(std::cout, n, p.at(n));
  return exit_pass;
}

int run_exact(const std::string& spec_path, int n, const std::string& method) {
  const auto spec = thdet::spec_from_json(thdet::read_json_file(spec_path));
  if (n < 1 || n > 1024) throw thdet::format_error("--n must be in 1..1024");
  std::cout << "n,exact_logmod,exact_arg\n";
  std::optional<thdet::LogDet> lu, closed;
  if (method != "closed") {
    const auto series = thdet::symbol_fourier_coeffs(spec, 2 * n + 8);
    lu = thdet::logdet_lu(thdet::build_M(series, n, 1));
  }
  if (method != "lu") closed = thdet::closed_form_logdet(spec, n);
  print_value(std::cout, n, closed ? closed->value : lu->value);
  if (lu && closed) {
    const double d = closed->is_zero() && (lu->is_zero() || lu->numerically_singular)
                         ? 0.0
                         : thdet::relative_difference(lu->value, closed->value);
    std::cerr << "lu/closed discrepancy " << num(d) << '\n';
    if (!(d <= 1e-8)) {
      std::cout << "FAIL LU and closed form disagree\n";
      return exit_fail;
    }
  }
  if (lu && lu->numerically_singular && !lu->is_zero()) {
    std::cerr << "warning: LU hit a pivot at rounding level\n";
  }
  return exit_pass;
}

int run_verify(const std::string& config_path) {
  const auto config = thdet::config_from_json(thdet::read_json_file(config_path));
  const auto report = thdet::run_experiment(config);
  thdet::emit_report(report, config.output, config.output_path, std::cout);
  if (report.fitted_rate) std::cerr << "fitted rate " << num(*report.fitted_rate) << '\n';
  const auto verdict = thdet::judge(report, config.thresholds);
  for (const auto& m : verdict.messages) std::cerr << m << '\n';
  std::cerr << (verdict.passed ? "PASS" : "FAIL") << '\n';
  return verdict.passed ? exit_pass : exit_fail;
}

int run_identities() {
  bool ok = true;
  for (const auto& c : thdet::run_identity_suite()) {
    std::cout << (c.passed() ? "PASS " : "FAIL ") << c.name << "  max_err=" << num(c.max_error)
              << "  tol=" << num(c.tolerance) << "  samples=" << c.samples << '\n';
    ok = ok && c.passed();
  }
  return ok ? exit_pass : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz+Hankel determinant asymptotics"};
  app.require_subcommand(1);

  std::string spec_path, n_text, method = "lu", config_path;
  int n = 0;

  auto* predict = app.add_subcommand("predict", "asymptotic prediction of det M_n");
  predict->add_option("--spec", spec_path, "symbol spec JSON")->required()->check(CLI::ExistingFile);
  predict->add_option("--n", n_text, "comma-separated sizes")->required();

  auto* exact = app.add_subcommand("exact", "exact det M_n");
  exact->add_option("--spec", spec_path, "symbol spec JSON")->required()->check(CLI::ExistingFile);
  exact->add_option("--n", n, "matrix size")->required();
  exact->add_option("--method", method, "lu, closed or both")
      ->check(CLI::IsMember({"lu", "closed", "both"}));

  auto* verify = app.add_subcommand("verify", "run a convergence experiment against thresholds");
  verify->add_option("--config", config_path, "experiment config JSON")
      ->required()
      ->check(CLI::ExistingFile);

  auto* identities = app.add_subcommand("identities", "run the special-function identity suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_pass : exit_usage;
  }

  try {
    if (predict->parsed()) return run_predict(spec_path, n_text);
    if (exact->parsed()) return run_exact(spec_path, n, method);
    if (verify->parsed()) return run_verify(config_path);
    if (identities->parsed()) return run_identities();
  } catch (const thdet::format_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "FAIL " << e.what() << '\n';
    return exit_fail;
  }
  return exit_usage;
}

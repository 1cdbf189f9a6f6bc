#include "rmt/bounds.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "rmt/errors.hpp"

namespace rmt {

nlohmann::json to_json(const BoundReport& report) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [key, e] : report.entries) {
    nlohmann::json entry;
    entry["value"] = e.value;
    entry["inputs"] = e.inputs;
    if (e.satisfied.has_value()) entry["satisfied"] = *e.satisfied;
    if (!e.note.empty()) entry["note"] = e.note;
    out[key] = std::move(entry);
  }
  return out;
}

double gershgorin_norm_bound(const Matrix& sym) {
  if (sym.rows() != sym.cols())
    fail(errc::bad_parameter, "gershgorin bound needs a square matrix");
  return sym.cwiseAbs().rowwise().sum().maxCoeff();
}

double chatterjee_rhs(double sigma_norm, double a, double b, double var_w, int n) {
  if (n < 1) fail(errc::bad_parameter, "n must be >= 1");
  if (!(var_w > 0.0))
    fail(errc::degenerate_variance, "chatterjee RHS needs a positive variance");
  return 2.0 * std::sqrt(5.0) * std::pow(sigma_norm, 1.5) * a * b / (var_w * double(n));
}

std::pair<double, double> monomial_ab(int p, std::span<const double> norm_samples) {
  if (p < 1) fail(errc::bad_parameter, "p must be >= 1");
  if (norm_samples.empty()) fail(errc::empty_sample, "no operator-norm samples");
  const double count = double(norm_samples.size());
  double acc_a = 0.0, acc_b = 0.0;
  for (const double lambda : norm_samples) {
    const double f1 = double(p) * std::pow(lambda, p - 1);
    acc_a += f1 * f1 * f1 * f1;
    if (p >= 2) {
      const double f2 = double(p) * double(p - 1) * std::pow(lambda, p - 2);
      acc_b += f2 * f2 * f2 * f2;
    }
  }
  const double a = std::pow(acc_a / count, 0.25);
  const double b = p >= 2 ? std::pow(acc_b / count, 0.25) : 0.0;
  return {a, b};
}

double variance_floor(int p, double gamma, int n) {
  if (p < 1) fail(errc::bad_parameter, "p must be >= 1");
  if (!(gamma > 0.0)) fail(errc::bad_parameter, "gamma must be positive");
  if (n < 4 * p * p)
    fail(errc::too_small_n, "variance floor requires n >= 4p^2 = " +
                                std::to_string(4 * p * p));
  return std::pow(gamma, p) * double(n) / (9.0 * std::pow(12.0 * p, p - 1));
}

double variance_floor_decay(int p) {
  if (p < 1) fail(errc::bad_parameter, "p must be >= 1");
  return 1.0;
}

std::pair<double, double> tropp_sandwich(double sigma, int n) {
  if (n < 1) fail(errc::bad_parameter, "n must be >= 1");
  if (sigma < 0.0) fail(errc::bad_parameter, "sigma must be >= 0");
  const double upper = std::sqrt(std::exp(1.0) * (1.0 + 2.0 * std::log(double(n))));
  return {sigma / std::sqrt(2.0), upper * sigma};
}

MomentFit norm_moment_bound_check(int k, int n, std::span<const double> norm_samples) {
  if (k < 1) fail(errc::bad_parameter, "k must be >= 1");
  if (n < 3) fail(errc::bad_parameter, "n must be >= 3 so log n > 1");
  if (norm_samples.empty()) fail(errc::empty_sample, "no operator-norm samples");
  double acc = 0.0;
  for (const double lambda : norm_samples) acc += std::pow(lambda, k);
  MomentFit fit;
  fit.empirical_moment = acc / double(norm_samples.size());
  // smallest C with (C k log n)^{k/2} >= moment
  fit.fitted_c = std::pow(fit.empirical_moment, 2.0 / k) / (k * std::log(double(n)));
  return fit;
}

double decay_norm_bound(double sigma, double nu, int n) {
  if (n < 2) fail(errc::bad_parameter, "n must be >= 2");
  return sigma + nu * std::pow(std::log(double(n)), 1.5);
}

}  // namespace rmt

#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "rmt/covariance.hpp"

#include <nlohmann/json_fwd.hpp>

namespace rmt {

struct BoundEntry {
  double value = 0.0;
  std::map<std::string, double> inputs;
  std::optional<bool> satisfied;  // empty for purely informational entries
  std::string note;
};

/// Named bound evaluations. Keys used by the reporting pipeline:
/// "gershgorin", "chatterjee_rhs", "variance_floor", "tropp_lower",
/// "tropp_upper", "decay_shape", plus informational extras.
struct BoundReport {
  std::map<std::string, BoundEntry> entries;

  bool all_satisfied() const {
    for (const auto& [key, e] : entries)
      if (e.satisfied.has_value() && !*e.satisfied) return false;
    return true;
  }
};

nlohmann::json to_json(const BoundReport& report);

/// Row-sum (Gershgorin) upper bound on the operator norm of a symmetric
/// matrix: max_i sum_j |a_ij|.
double gershgorin_norm_bound(const Matrix& sym);

/// RHS of the total-variation bound: 2 sqrt(5) ||Sigma||^{3/2} a b / (var_w n).
double chatterjee_rhs(double sigma_norm, double a, double b, double var_w, int n);

/// Fourth-moment coefficients for the monomial x^p evaluated on operator-norm
/// samples: a = (E (p L^{p-1})^4)^{1/4}, b = (E (p(p-1) L^{p-2})^4)^{1/4}.
/// For p = 1, b = 0.
std::pair<double, double> monomial_ab(int p, std::span<const double> norm_samples);

/// gamma^p n / (9 (12 p)^{p-1}); requires n >= 4 p^2 (TooSmallN otherwise).
double variance_floor(int p, double gamma, int n);

/// Variance floor in the decay regime with unit variances: always 1.
double variance_floor_decay(int p);

/// (sigma / sqrt(2), sqrt(e (1 + 2 ln n)) sigma).
std::pair<double, double> tropp_sandwich(double sigma, int n);

struct MomentFit {
  double empirical_moment = 0.0;
  double fitted_c = 0.0;  // smallest C with (C k log n)^{k/2} >= E[L^k]
};

MomentFit norm_moment_bound_check(int k, int n, std::span<const double> norm_samples);

/// sigma + nu (ln n)^{3/2} — the decay-regime norm-bound shape with the
/// absolute constant taken as 1 (not a certified bound).
double decay_norm_bound(double sigma, double nu, int n);

}  // namespace rmt

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rmt/bounds.hpp"
#include "rmt/sampler.hpp"
#include "rmt/spectral.hpp"

namespace rmt {

enum class Standardization { automatic, exact, empirical };
enum class Regime { gamma_floor, decay };

std::string to_string(Standardization s);
std::string to_string(Regime r);

struct ExperimentConfig {
  PatternKind kind = PatternKind::symmetric_toeplitz;
  CovarianceFamily family;
  std::vector<int> n_list;
  int p = 2;
  std::int64_t trials = 10000;
  std::uint64_t master_seed = 0;
  int bins = 64;
  double bin_range = 5.0;
  Standardization standardization = Standardization::automatic;
  Regime regime = Regime::gamma_floor;
  std::int64_t opnorm_trials = 2000;
  int workers = 0;  // 0: default_worker_count()

  /// Parameter ranges shared by every pipeline.
  void validate_base() const;

  /// Full validation for distributional experiments: trials >= 100, and
  /// EvenPOnly for odd-p gamma-regime claims on the hankel /
  /// reverse-circulant kinds.
  void validate() const;
};

struct PerNReport {
  int n = 0;
  double sample_mean = 0.0;
  double sample_var = 0.0;
  std::optional<double> exact_mean;
  std::optional<double> exact_var;
  std::string standardization_used;  // "exact" or "empirical"
  double ks = 0.0;
  double tv_hist = 0.0;
  double mean_opnorm = 0.0;
  std::array<double, 4> opnorm_moments{};  // E[L^k], k = 1..4
  std::int64_t opnorm_samples = 0;
  double sigma_param = 0.0;
  double nu_value = 0.0;
  bool nu_exact = false;
  double gershgorin = 0.0;
  double chatterjee_a = 0.0;
  double chatterjee_b = 0.0;
  double chatterjee_rhs = 0.0;
  std::optional<double> variance_floor;
  bool p_growth_warning = false;
  double skewness = 0.0;
  double wall_time_s = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<PerNReport> per_n;

  /// stamp = false (the default) omits wall-clock fields so reruns of the
  /// same seed produce byte-identical output.
  nlohmann::json to_json(bool stamp = false) const;
  std::string to_csv() const;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

/// sup-distance between the empirical CDF of z and the standard normal CDF,
/// evaluated with both one-sided gaps at the sample points.
double ks_statistic(std::vector<double> z);

/// Binned total-variation surrogate: half L1 distance between the empirical
/// and standard-normal masses over `bins` equal bins on [-range, range] plus
/// the two tails. A lower bound on the true TV distance.
double tv_histogram(std::span<const double> z, int bins = 64, double range = 5.0);

/// Largest singular value of a sample (power iteration + dense fallback).
NormResult spectral_norm(const PatternedMatrix& x);

double standard_normal_cdf(double x);

double sample_skewness(std::span<const double> xs);

struct ScanRow {
  int n = 0;
  double mean_opnorm = 0.0;
  double ratio_sqrt_log = 0.0;  // mean / sqrt(ln n)
};

struct ScanResult {
  std::vector<ScanRow> rows;
  /// trend assertion outcome; empty when no assertion applies (single row or
  /// family without a check)
  std::optional<bool> trend_ok;
  std::string trend_kind;  // "sqrt_log_ratio", "bounded_level" or ""
};

/// Mean operator norm across sizes with the scaling columns; asserts the
/// sqrt(log n) ratio trend (within 20%) for positively-correlated families
/// and the bounded-level trend (within 10%) for decaying families.
ScanResult opnorm_scaling_scan(PatternKind kind, const CovarianceFamily& family,
                               const std::vector<int>& n_list, std::int64_t trials,
                               std::uint64_t master_seed = 0, int workers = 0);

/// Draws `count` trials with indices [index_offset, index_offset + count)
/// and hands each sampled matrix to fn, possibly from worker threads (fn
/// must only write to per-trial slots). Large sizes batch the factor
/// products over fixed trial blocks; the trial -> matrix map depends only on
/// (spec, master_seed, trial index), never on the worker count.
void sampled_trials(const SampleSpec& spec, std::uint64_t master_seed,
                    std::int64_t count, std::int64_t index_offset, int workers,
                    const std::function<void(std::int64_t, const Matrix&)>& fn);

}  // namespace rmt

#include "rmt/mc_harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>

#include "rmt/errors.hpp"
#include "rmt/parallel.hpp"
#include "rmt/series.hpp"
#include "rmt/wick.hpp"

namespace rmt {

namespace {

// exact standardization is worth it while the pair enumeration stays small
constexpr double kAutoExactPairCap = 2e7;  // n^{2p}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool p_growth_warn(int p, int n) {
  if (n < 3) return false;
  const double loglog = std::log(std::log(double(n)));
  if (loglog <= 0.0) return false;
  return double(p) >= std::log(double(n)) / loglog;
}

}  // namespace

std::string to_string(Standardization s) {
  switch (s) {
    case Standardization::automatic: return "auto";
    case Standardization::exact: return "exact";
    case Standardization::empirical: return "empirical";
  }
  return "?";
}

std::string to_string(Regime r) {
  return r == Regime::gamma_floor ? "gamma" : "decay";
}

void ExperimentConfig::validate_base() const {
  family.validate();
  if (n_list.empty()) fail(errc::bad_parameter, "n_list must not be empty");
  for (int n : n_list)
    if (n < 1) fail(errc::bad_size, "matrix sizes must be >= 1");
  if (p < 1) fail(errc::bad_parameter, "p must be >= 1");
  if (trials < 1) fail(errc::bad_parameter, "trials must be >= 1");
  if (bins < 2) fail(errc::bad_parameter, "bins must be >= 2");
  if (!(bin_range > 0.0)) fail(errc::bad_parameter, "bin_range must be positive");
  if (opnorm_trials < 0) fail(errc::bad_parameter, "opnorm_trials must be >= 0");
}

void ExperimentConfig::validate() const {
  validate_base();
  if (trials < 100)
    fail(errc::bad_parameter, "distributional statistics need trials >= 100");
  if (regime == Regime::gamma_floor && p % 2 != 0 &&
      (kind == PatternKind::hankel || kind == PatternKind::reverse_circulant))
    fail(errc::even_p_only,
         "gamma-regime claims on hankel/reverse-circulant require even p");
}

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double ks_statistic(std::vector<double> z) {
  if (z.size() < 2) fail(errc::too_few_samples, "KS needs at least 2 samples");
  std::sort(z.begin(), z.end());
  const double count = double(z.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double phi = standard_normal_cdf(z[i]);
    ks = std::max(ks, double(i + 1) / count - phi);
    ks = std::max(ks, phi - double(i) / count);
  }
  return ks;
}

double tv_histogram(std::span<const double> z, int bins, double range) {
  if (bins < 2) fail(errc::bad_parameter, "bins must be >= 2");
  if (z.empty()) fail(errc::too_few_samples, "tv_histogram needs samples");
  const double width = 2.0 * range / bins;
  std::vector<double> counts(std::size_t(bins) + 2, 0.0);
  for (const double x : z) {
    int b;
    if (x < -range)
      b = 0;
    else if (x >= range)
      b = bins + 1;
    else
      b = 1 + int((x + range) / width);
    b = std::clamp(b, 0, bins + 1);
    counts[b] += 1.0;
  }
  double tv = 0.0;
  const double total = double(z.size());
  for (int b = 0; b < bins + 2; ++b) {
    double lo, hi;
    if (b == 0) {
      lo = -std::numeric_limits<double>::infinity();
      hi = -range;
    } else if (b == bins + 1) {
      lo = range;
      hi = std::numeric_limits<double>::infinity();
    } else {
      lo = -range + (b - 1) * width;
      hi = -range + b * width;
    }
    const double mass = standard_normal_cdf(hi) - standard_normal_cdf(lo);
    tv += std::abs(counts[b] / total - mass);
  }
  return 0.5 * tv;
}

NormResult spectral_norm(const PatternedMatrix& x) {
  return spectral_norm_dense(x.entries);
}

double sample_skewness(std::span<const double> xs) {
  if (xs.size() < 3) fail(errc::too_few_samples, "skewness needs >= 3 samples");
  const double count = double(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= count;
  double m2 = 0.0, m3 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= count;
  m3 /= count;
  return m3 / std::pow(m2, 1.5);
}

namespace {

struct TrialData {
  std::vector<double> w;       // trials entries
  std::vector<double> opnorm;  // first opnorm_samples entries
};

}  // namespace

void sampled_trials(const SampleSpec& spec, std::uint64_t master_seed,
                    std::int64_t count, std::int64_t index_offset, int workers,
                    const std::function<void(std::int64_t, const Matrix&)>& fn) {
  // Large sizes batch the factor products over fixed blocks of trials so the
  // per-diagonal products run as matrix-matrix kernels. Block boundaries are
  // a function of the trial index only, so results do not depend on the
  // worker count.
  const int n = spec.n;
  if (n < 64) {
    parallel_trials(count, workers, [&](std::int64_t t) {
      NoiseStream stream(master_seed, std::uint64_t(t + index_offset));
      fn(t, sample_matrix(spec, stream).entries);
    });
    return;
  }

  constexpr std::int64_t kBlock = 16;
  const std::int64_t blocks = (count + kBlock - 1) / kBlock;
  const double scale = 1.0 / std::sqrt(double(n));
  const std::size_t slots = spec.layout.vectors.size();

  parallel_trials(blocks, workers, [&](std::int64_t bi) {
    const std::int64_t begin = bi * kBlock;
    const std::int64_t width = std::min(kBlock, count - begin);
    Matrix zblock(spec.noise_dim, width);
    for (std::int64_t c = 0; c < width; ++c) {
      NoiseStream stream(master_seed, std::uint64_t(begin + c + index_offset));
      stream.fill_normal({zblock.col(c).data(), std::size_t(spec.noise_dim)});
    }
    std::vector<Matrix> coords(slots);
    for (std::size_t s = 0; s < slots; ++s) {
      const FactorMatrix& f = spec.factor(int(s));
      coords[s].noalias() =
          f.a * zblock.middleRows(spec.noise_offset[s], f.rank());
    }
    Matrix x(n, n);
    for (std::int64_t c = 0; c < width; ++c) {
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          x(i - 1, j - 1) =
              scale * coords[spec.slot_of(i, j)](spec.pos_of(i, j) - 1, c);
      fn(begin + c, x);
    }
  });
}

namespace {

TrialData run_trials(const SampleSpec& spec, const ExperimentConfig& cfg,
                     std::int64_t count, std::int64_t index_offset,
                     std::int64_t opnorm_count) {
  TrialData data;
  data.w.assign(count, 0.0);
  data.opnorm.assign(opnorm_count, 0.0);
  sampled_trials(spec, cfg.master_seed, count, index_offset, cfg.workers,
                 [&](std::int64_t t, const Matrix& x) {
                   data.w[t] = trace_power(x, cfg.p);
                   if (t < opnorm_count) data.opnorm[t] = spectral_norm_dense(x).value;
                 });
  return data;
}

PerNReport run_single_n(const ExperimentConfig& cfg, int n) {
  const auto t0 = std::chrono::steady_clock::now();
  PerNReport rep;
  rep.n = n;
  rep.p_growth_warning = p_growth_warn(cfg.p, n);
  if (rep.p_growth_warning)
    std::fprintf(stderr,
                 "note: p=%d is large for n=%d; the monomial degree allowance "
                 "is p = o(log n / log log n)\n",
                 cfg.p, n);

  const SampleSpec spec = SampleSpec::make(cfg.kind, n, cfg.family);

  // decide standardization
  bool use_exact = false;
  switch (cfg.standardization) {
    case Standardization::exact:
      use_exact = true;
      break;
    case Standardization::empirical:
      use_exact = false;
      break;
    case Standardization::automatic: {
      const double pairs = std::pow(double(n), 2.0 * cfg.p);
      use_exact = trace_moments_within_caps(n, cfg.p) && pairs <= kAutoExactPairCap;
      break;
    }
  }

  if (use_exact) {
    const MomentReport exact = exact_trace_moments(spec, cfg.p, cfg.workers);
    rep.exact_mean = exact.mean;
    rep.exact_var = exact.variance;
    rep.standardization_used = "exact";
  } else {
    rep.standardization_used = "empirical";
  }

  const std::int64_t opnorm_count = std::min<std::int64_t>(cfg.opnorm_trials, cfg.trials);
  const TrialData main = run_trials(spec, cfg, cfg.trials, 0, opnorm_count);

  // sample moments of W over the main trials
  {
    double mean = 0.0;
    for (double w : main.w) mean += w;
    mean /= double(cfg.trials);
    double var = 0.0;
    for (double w : main.w) var += (w - mean) * (w - mean);
    var /= double(cfg.trials - 1);
    rep.sample_mean = mean;
    rep.sample_var = var;
  }

  double center = 0.0, scale_var = 0.0;
  if (use_exact) {
    center = *rep.exact_mean;
    scale_var = *rep.exact_var;
  } else {
    // disjoint calibration run so the centering is independent of the
    // samples being tested
    const std::int64_t calib_count = std::max<std::int64_t>(2, cfg.trials / 4);
    const TrialData calib = run_trials(spec, cfg, calib_count, cfg.trials, 0);
    double mean = 0.0;
    for (double w : calib.w) mean += w;
    mean /= double(calib_count);
    double var = 0.0;
    for (double w : calib.w) var += (w - mean) * (w - mean);
    var /= double(calib_count - 1);
    center = mean;
    scale_var = var;
  }
  if (!(scale_var > 0.0))
    fail(errc::degenerate_variance, "standardization variance is not positive");

  std::vector<double> z(main.w.size());
  const double inv_sd = 1.0 / std::sqrt(scale_var);
  for (std::size_t i = 0; i < main.w.size(); ++i)
    z[i] = (main.w[i] - center) * inv_sd;

  rep.ks = ks_statistic(z);
  rep.tv_hist = tv_histogram(z, cfg.bins, cfg.bin_range);
  rep.skewness = sample_skewness(z);

  // operator-norm statistics
  rep.opnorm_samples = opnorm_count;
  if (opnorm_count > 0) {
    std::array<double, 4> acc{};
    for (double L : main.opnorm) {
      double powl = 1.0;
      for (int k = 0; k < 4; ++k) {
        powl *= L;
        acc[k] += powl;
      }
    }
    for (int k = 0; k < 4; ++k) rep.opnorm_moments[k] = acc[k] / double(opnorm_count);
    rep.mean_opnorm = rep.opnorm_moments[0];

    const auto [a, b] = monomial_ab(cfg.p, main.opnorm);
    rep.chatterjee_a = a;
    rep.chatterjee_b = b;
  }

  // bound pipeline
  rep.sigma_param = sigma_param(spec);
  const NuResult nu = nu_param(spec);
  rep.nu_value = nu.value;
  rep.nu_exact = nu.exact;
  rep.gershgorin = entry_cov_gershgorin(spec);
  const double var_for_rhs = rep.exact_var ? *rep.exact_var : rep.sample_var;
  if (opnorm_count > 0 && var_for_rhs > 0.0)
    rep.chatterjee_rhs = chatterjee_rhs(rep.gershgorin, rep.chatterjee_a,
                                        rep.chatterjee_b, var_for_rhs, n);
  const double floor = spec.covariance_floor();
  if (cfg.regime == Regime::gamma_floor && floor > 0.0 && n >= 4 * cfg.p * cfg.p)
    rep.variance_floor = variance_floor(cfg.p, floor, n);

  rep.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  report.per_n.reserve(config.n_list.size());
  for (int n : config.n_list) report.per_n.push_back(run_single_n(config, n));
  return report;
}

nlohmann::json ExperimentReport::to_json(bool stamp) const {
  nlohmann::json out;
  out["schema"] = 1;
  out["kind"] = rmt::to_string(config.kind);
  out["family"] = config.family.name();
  out["gamma_or_alpha"] = config.family.shape_param();
  out["p"] = config.p;
  out["trials"] = config.trials;
  out["master_seed"] = config.master_seed;
  out["bins"] = config.bins;
  out["bin_range"] = config.bin_range;
  out["standardization"] = rmt::to_string(config.standardization);
  out["regime"] = rmt::to_string(config.regime);

  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : per_n) {
    nlohmann::json row;
    row["n"] = r.n;
    row["sample_mean"] = r.sample_mean;
    row["sample_var"] = r.sample_var;
    if (r.exact_mean) row["exact_mean"] = *r.exact_mean;
    if (r.exact_var) row["exact_var"] = *r.exact_var;
    row["standardization_used"] = r.standardization_used;
    row["ks"] = r.ks;
    row["tv_hist"] = r.tv_hist;
    row["skewness"] = r.skewness;
    row["mean_opnorm"] = r.mean_opnorm;
    row["opnorm_moments"] = r.opnorm_moments;
    row["opnorm_samples"] = r.opnorm_samples;
    row["sigma_param"] = r.sigma_param;
    row["nu"] = r.nu_value;
    row["nu_exact"] = r.nu_exact;
    row["gershgorin"] = r.gershgorin;
    row["chatterjee_a"] = r.chatterjee_a;
    row["chatterjee_b"] = r.chatterjee_b;
    row["chatterjee_rhs"] = r.chatterjee_rhs;
    if (r.variance_floor) row["variance_floor"] = *r.variance_floor;
    row["p_growth_warning"] = r.p_growth_warning;
    if (stamp) row["wall_time_s"] = r.wall_time_s;
    rows.push_back(std::move(row));
  }
  out["per_n"] = std::move(rows);
  return out;
}

std::string ExperimentReport::to_csv() const {
  std::string csv =
      "kind,family,gamma_or_alpha,n,p,trials,sample_mean,sample_var,exact_mean,"
      "exact_var,ks,tv_hist,mean_opnorm,sigma_param,nu_param,gershgorin,"
      "chatterjee_rhs,variance_floor,seed\n";
  for (const auto& r : per_n) {
    csv += rmt::to_string(config.kind) + "," + config.family.name() + "," +
           format_double(config.family.shape_param()) + "," + std::to_string(r.n) +
           "," + std::to_string(config.p) + "," + std::to_string(config.trials) + "," +
           format_double(r.sample_mean) + "," + format_double(r.sample_var) + "," +
           (r.exact_mean ? format_double(*r.exact_mean) : "") + "," +
           (r.exact_var ? format_double(*r.exact_var) : "") + "," +
           format_double(r.ks) + "," + format_double(r.tv_hist) + "," +
           format_double(r.mean_opnorm) + "," + format_double(r.sigma_param) + "," +
           format_double(r.nu_value) + "," + format_double(r.gershgorin) + "," +
           format_double(r.chatterjee_rhs) + "," +
           (r.variance_floor ? format_double(*r.variance_floor) : "") + "," +
           std::to_string(config.master_seed) + "\n";
  }
  return csv;
}

ScanResult opnorm_scaling_scan(PatternKind kind, const CovarianceFamily& family,
                               const std::vector<int>& n_list, std::int64_t trials,
                               std::uint64_t master_seed, int workers) {
  if (n_list.empty()) fail(errc::bad_parameter, "n_list must not be empty");
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1])
      fail(errc::bad_parameter, "n_list must be strictly increasing");
  if (trials < 1) fail(errc::bad_parameter, "trials must be >= 1");

  ScanResult result;
  for (int n : n_list) {
    const SampleSpec spec = SampleSpec::make(kind, n, family);
    std::vector<double> norms(trials, 0.0);
    sampled_trials(spec, master_seed, trials, 0, workers,
                   [&](std::int64_t t, const Matrix& x) {
                     norms[t] = spectral_norm_dense(x).value;
                   });
    double mean = 0.0;
    for (double v : norms) mean += v;
    mean /= double(trials);
    ScanRow row;
    row.n = n;
    row.mean_opnorm = mean;
    row.ratio_sqrt_log = n >= 3 ? mean / std::sqrt(std::log(double(n))) : mean;
    result.rows.push_back(row);
  }

  if (result.rows.size() < 2) return result;

  const SampleSpec probe = SampleSpec::make(kind, n_list.front(), family);
  const bool gamma_family = probe.covariance_floor() > 0.0;
  const bool decay_family =
      family.kind() == CovarianceFamily::Kind::power_decay ||
      family.kind() == CovarianceFamily::Kind::wigner;
  if (gamma_family) {
    // no pair of scan points may show the sqrt(log n) ratio growing by
    // more than 20%
    result.trend_kind = "sqrt_log_ratio";
    bool ok = true;
    for (std::size_t i = 0; i < result.rows.size(); ++i)
      for (std::size_t j = i + 1; j < result.rows.size(); ++j)
        ok = ok && result.rows[j].ratio_sqrt_log <= 1.2 * result.rows[i].ratio_sqrt_log;
    result.trend_ok = ok;
  } else if (decay_family) {
    result.trend_kind = "bounded_level";
    bool ok = true;
    for (std::size_t i = 0; i < result.rows.size(); ++i)
      for (std::size_t j = i + 1; j < result.rows.size(); ++j)
        ok = ok && result.rows[j].mean_opnorm <= 1.1 * result.rows[i].mean_opnorm;
    result.trend_ok = ok;
  }
  return result;
}

}  // namespace rmt

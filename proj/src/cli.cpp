#include "rmt/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "rmt/errors.hpp"
#include "rmt/parallel.hpp"
#include "rmt/series.hpp"
#include "rmt/wick.hpp"

namespace rmt {

namespace {

using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::config, "cannot write '" + path.string() + "'");
  out << content;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<double> opnorm_samples(const SampleSpec& spec, std::int64_t trials,
                                   std::uint64_t seed, int workers) {
  std::vector<double> norms(trials, 0.0);
  parallel_trials(trials, workers, [&](std::int64_t t) {
    NoiseStream stream(seed, std::uint64_t(t));
    norms[t] = spectral_norm(sample_matrix(spec, stream)).value;
  });
  return norms;
}

int run_clt_scan(const Invocation& inv) {
  const ExperimentReport report = run_experiment(inv.experiment);
  const std::filesystem::path dir(inv.out_dir);
  write_file(dir / "report.json", report.to_json(inv.stamp).dump(2) + "\n");
  write_file(dir / "report.csv", report.to_csv());

  int rc = 0;
  // standardization consistency whenever exact moments were available
  for (const auto& r : report.per_n) {
    if (!r.exact_mean) continue;
    const double trials = double(inv.experiment.trials);
    const double mean_tol = 5.0 * std::sqrt(*r.exact_var / trials);
    const double widen = inv.experiment.p >= 3 ? 2.0 : 1.0;
    const double ratio_tol = widen * 5.0 * std::sqrt(2.0 / trials);
    if (std::abs(r.sample_mean - *r.exact_mean) > mean_tol) {
      std::fprintf(stderr, "check failed: n=%d sample mean %.6g vs exact %.6g\n", r.n,
                   r.sample_mean, *r.exact_mean);
      rc = 1;
    }
    const double ratio = r.sample_var / *r.exact_var;
    if (std::abs(ratio - 1.0) > ratio_tol) {
      std::fprintf(stderr, "check failed: n=%d variance ratio %.6g outside 1 +- %.3g\n",
                   r.n, ratio, ratio_tol);
      rc = 1;
    }
  }
  if (inv.assert_trend && report.per_n.size() >= 2) {
    for (std::size_t i = 1; i < report.per_n.size(); ++i)
      if (!(report.per_n[i].ks < report.per_n[i - 1].ks)) {
        std::fprintf(stderr, "check failed: ks did not decrease from n=%d to n=%d\n",
                     report.per_n[i - 1].n, report.per_n[i].n);
        rc = 1;
      }
  }
  return rc;
}

void add_entry(BoundReport& report, const std::string& key, double value,
               std::map<std::string, double> inputs,
               std::optional<bool> satisfied = std::nullopt, std::string note = "") {
  BoundEntry e;
  e.value = value;
  e.inputs = std::move(inputs);
  e.satisfied = satisfied;
  e.note = std::move(note);
  report.entries[key] = std::move(e);
}

BoundReport assemble_bound_report(const ExperimentConfig& cfg, int n) {
  const SampleSpec spec = SampleSpec::make(cfg.kind, n, cfg.family);
  BoundReport report;
  const double big_m = spec.max_variance();
  const int p = cfg.p;

  // ||Sigma|| via Gershgorin, checked against the certified block norm and
  // the 2 M n bound
  const double gersh = entry_cov_gershgorin(spec);
  {
    std::map<std::string, double> inputs{{"two_m_n", 2.0 * big_m * n}};
    bool ok = gersh <= 2.0 * big_m * n + 1e-8;
    if (n <= 64) {
      const double certified = double(n) * nu_param(spec).value;
      inputs["certified_norm"] = certified;
      ok = ok && gersh >= certified - 1e-8;
    }
    add_entry(report, "gershgorin", gersh, std::move(inputs), ok);
  }

  // series parameters
  const double sigma = sigma_param(spec);
  add_entry(report, "sigma", sigma, {});
  const NuResult nu = nu_param(spec);
  add_entry(report, "nu", nu.value, {}, std::nullopt,
            nu.exact ? "exact" : "gershgorin upper bound");
  add_entry(report, "decay_shape", decay_norm_bound(sigma, nu.value, std::max(n, 2)),
            {{"sigma", sigma}, {"nu", nu.value}}, std::nullopt,
            "shape only; absolute constant taken as 1");

  // per-diagonal norms of the series terms
  {
    double k0 = 0.0, mid_max = 0.0, far_max = 0.0, all_max = 0.0;
    double gram_identity_dev = 0.0;
    const bool dilated = !is_symmetric_kind(spec.kind);
    for (const auto& vec : spec.layout.vectors) {
      const double norm = per_diagonal_norm(spec, vec.k);
      all_max = std::max(all_max, norm);
      if (spec.kind == PatternKind::symmetric_toeplitz) {
        if (vec.k == 0)
          k0 = norm;
        else if (vec.k <= n / 2)
          mid_max = std::max(mid_max, norm);
        else
          far_max = std::max(far_max, norm);
      }
      if (dilated && (spec.kind == PatternKind::circulant ||
                      spec.kind == PatternKind::reverse_circulant)) {
        const auto [left, right] = per_diagonal_gram(spec, vec.k);
        const Matrix eye = Matrix::Identity(n, n);
        gram_identity_dev = std::max(
            gram_identity_dev, std::max((left - eye).cwiseAbs().maxCoeff(),
                                        (right - eye).cwiseAbs().maxCoeff()));
      }
    }
    const bool unit = spec.unit_variance();
    if (spec.kind == PatternKind::symmetric_toeplitz && unit) {
      add_entry(report, "per_diag_k0", k0, {}, std::abs(k0 - 1.0) <= 1e-8);
      if (mid_max > 0.0)
        add_entry(report, "per_diag_mid_max", mid_max, {{"bound", 4.0}},
                  mid_max <= 4.0 + 1e-8);
      if (far_max > 0.0)
        add_entry(report, "per_diag_far_max", far_max, {{"bound", 1.0}},
                  far_max <= 1.0 + 1e-8);
    }
    if (unit && (spec.kind == PatternKind::circulant ||
                 spec.kind == PatternKind::reverse_circulant))
      add_entry(report, "dilated_gram_identity", gram_identity_dev, {},
                gram_identity_dev <= 1e-8,
                "max deviation of sum_l B~^2 from the identity, per diagonal");
    const double general_bound = 2.0 * big_m + 2.0 * big_m * big_m;
    add_entry(report, "per_diag_max", all_max, {{"bound", general_bound}},
              big_m >= 1.0 ? std::optional<bool>(all_max <= general_bound + 1e-8)
                           : std::nullopt,
              big_m >= 1.0 ? "" : "2M + 2M^2 is only claimed for M >= 1");
  }

  // Monte Carlo operator norms feed a, b and the Tropp interval
  const std::vector<double> norms =
      opnorm_samples(spec, cfg.trials, cfg.master_seed, cfg.workers);
  double mean_norm = 0.0, var_norm = 0.0;
  for (double v : norms) mean_norm += v;
  mean_norm /= double(norms.size());
  for (double v : norms) var_norm += (v - mean_norm) * (v - mean_norm);
  var_norm /= double(norms.size() - 1);
  const double se = std::sqrt(var_norm / double(norms.size()));

  {
    const auto [lower, upper] = tropp_sandwich(sigma, n);
    add_entry(report, "tropp_lower", lower,
              {{"mc_mean_opnorm", mean_norm}, {"mc_se", se}},
              mean_norm >= lower - 3.0 * se);
    add_entry(report, "tropp_upper", upper,
              {{"mc_mean_opnorm", mean_norm}, {"mc_se", se}},
              mean_norm <= upper + 3.0 * se);
  }

  const auto [a, b] = monomial_ab(p, norms);

  // exact moments when the enumeration caps allow
  std::optional<MomentReport> wick;
  if (trace_moments_within_caps(n, p)) wick = exact_trace_moments(spec, p, cfg.workers);
  if (wick) {
    add_entry(report, "wick_mean", wick->mean, {});
    add_entry(report, "wick_var", wick->variance, {});
  }

  const double floor_gamma = spec.covariance_floor();
  if (floor_gamma > 0.0 && n >= 4 * p * p) {
    const double floor = variance_floor(p, floor_gamma, n);
    add_entry(report, "variance_floor", floor,
              {{"gamma", floor_gamma}, {"wick_var", wick ? wick->variance : -1.0}},
              wick ? std::optional<bool>(wick->variance >= floor) : std::nullopt,
              wick ? "" : "exact variance unavailable at this size");
  }
  if (spec.unit_variance() && wick)
    add_entry(report, "variance_floor_decay", variance_floor_decay(p),
              {{"wick_var", wick->variance}},
              wick->variance >= variance_floor_decay(p) - 1e-9);

  if (wick && wick->variance > 0.0)
    add_entry(report, "chatterjee_rhs", chatterjee_rhs(gersh, a, b, wick->variance, n),
              {{"sigma_norm", gersh}, {"a", a}, {"b", b}, {"var_w", wick->variance}});
  else
    add_entry(report, "chatterjee_rhs", 0.0, {}, std::nullopt,
              "needs the exact variance");

  for (int k : {2, 4}) {
    if (n < 3) break;
    const MomentFit fit = norm_moment_bound_check(k, n, norms);
    add_entry(report, "norm_moment_c_k" + std::to_string(k), fit.fitted_c,
              {{"empirical_moment", fit.empirical_moment}});
  }
  return report;
}

int run_bounds_report(const Invocation& inv) {
  const ExperimentConfig& cfg = inv.experiment;
  json out = json::array();
  std::string csv = "kind,family,gamma_or_alpha,n,p,bound,value,satisfied\n";
  int rc = 0;
  for (int n : cfg.n_list) {
    const BoundReport report = assemble_bound_report(cfg, n);
    json row;
    row["n"] = n;
    row["bounds"] = to_json(report);
    out.push_back(std::move(row));
    for (const auto& [key, e] : report.entries) {
      csv += rmt::to_string(cfg.kind) + "," + cfg.family.name() + "," +
             format_double(cfg.family.shape_param()) + "," + std::to_string(n) + "," +
             std::to_string(cfg.p) + "," + key + "," + format_double(e.value) + "," +
             (e.satisfied ? (*e.satisfied ? "true" : "false") : "") + "\n";
    }
    if (!report.all_satisfied()) {
      std::fprintf(stderr, "check failed: bound violated at n=%d\n", n);
      rc = 1;
    }
  }
  const std::filesystem::path dir(inv.out_dir);
  write_file(dir / "bounds.json", out.dump(2) + "\n");
  write_file(dir / "bounds.csv", csv);
  return rc;
}

int run_oracle_check(const Invocation& inv) {
  const ExperimentConfig& cfg = inv.experiment;
  const int n = cfg.n_list.front();
  const SampleSpec spec = SampleSpec::make(cfg.kind, n, cfg.family);
  const MomentReport exact = exact_trace_moments(spec, cfg.p, cfg.workers);

  std::vector<double> w(cfg.trials, 0.0);
  parallel_trials(cfg.trials, cfg.workers, [&](std::int64_t t) {
    NoiseStream stream(cfg.master_seed, std::uint64_t(t));
    w[t] = trace_power(sample_matrix(spec, stream).entries, cfg.p);
  });
  double mean = 0.0, var = 0.0;
  for (double x : w) mean += x;
  mean /= double(cfg.trials);
  for (double x : w) var += (x - mean) * (x - mean);
  var /= double(cfg.trials - 1);

  const double z_mean =
      (mean - exact.mean) / std::sqrt(exact.variance / double(cfg.trials));
  const double widen = cfg.p >= 3 ? 2.0 : 1.0;
  const double ratio_band = widen * 5.0 * std::sqrt(2.0 / double(cfg.trials));
  const double ratio = var / exact.variance;
  const bool pass_mean = std::abs(z_mean) <= 5.0;
  const bool pass_var = std::abs(ratio - 1.0) <= ratio_band;

  json out;
  out["n"] = n;
  out["p"] = cfg.p;
  out["trials"] = cfg.trials;
  out["wick"] = exact.to_json();
  out["mc_mean"] = mean;
  out["mc_var"] = var;
  out["z_mean"] = z_mean;
  out["var_ratio"] = ratio;
  out["var_ratio_band"] = ratio_band;
  out["pass_mean"] = pass_mean;
  out["pass_var"] = pass_var;
  write_file(std::filesystem::path(inv.out_dir) / "oracle.json", out.dump(2) + "\n");
  if (!pass_mean || !pass_var) {
    std::fprintf(stderr, "check failed: oracle z_mean=%.3f var_ratio=%.4f\n", z_mean,
                 ratio);
    return 1;
  }
  return 0;
}

int run_norm_scaling(const Invocation& inv) {
  const ExperimentConfig& cfg = inv.experiment;
  const ScanResult scan = opnorm_scaling_scan(cfg.kind, cfg.family, cfg.n_list,
                                              cfg.trials, cfg.master_seed, cfg.workers);
  std::string csv = "kind,family,gamma_or_alpha,n,trials,mean_opnorm,ratio_sqrt_log,seed\n";
  json rows = json::array();
  for (const auto& row : scan.rows) {
    csv += rmt::to_string(cfg.kind) + "," + cfg.family.name() + "," +
           format_double(cfg.family.shape_param()) + "," + std::to_string(row.n) + "," +
           std::to_string(cfg.trials) + "," + format_double(row.mean_opnorm) + "," +
           format_double(row.ratio_sqrt_log) + "," + std::to_string(cfg.master_seed) +
           "\n";
    json r;
    r["n"] = row.n;
    r["mean_opnorm"] = row.mean_opnorm;
    r["ratio_sqrt_log"] = row.ratio_sqrt_log;
    rows.push_back(std::move(r));
  }
  json out;
  out["rows"] = std::move(rows);
  out["trend_kind"] = scan.trend_kind;
  if (scan.trend_ok) out["trend_ok"] = *scan.trend_ok;
  const std::filesystem::path dir(inv.out_dir);
  write_file(dir / "scan.csv", csv);
  write_file(dir / "scan.json", out.dump(2) + "\n");
  if (scan.trend_ok && !*scan.trend_ok) {
    std::fprintf(stderr, "check failed: operator norm trend (%s)\n",
                 scan.trend_kind.c_str());
    return 1;
  }
  return 0;
}

int run_sample_dump(const Invocation& inv) {
  const ExperimentConfig& cfg = inv.experiment;
  const int n = cfg.n_list.front();
  const SampleSpec spec = SampleSpec::make(cfg.kind, n, cfg.family);
  NoiseStream stream(cfg.master_seed, 0);
  const PatternedMatrix x = sample_matrix(spec, stream);
  std::string csv;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) csv += ",";
      csv += format_double(x.entries(i, j));
    }
    csv += "\n";
  }
  write_file(std::filesystem::path(inv.out_dir) / "sample.csv", csv);
  return 0;
}

}  // namespace

Invocation parse_and_validate(const std::vector<std::string>& args) {
  CLI::App app{"generalized patterned gaussian matrix lab"};
  app.require_subcommand(1);

  struct SubSpec {
    Subcommand id;
    CLI::App* sub;
    std::string config;
    std::string out = "out";
    std::vector<std::string> sets;
    bool stamp = false;
  };
  std::vector<std::unique_ptr<SubSpec>> subs;
  const std::pair<Subcommand, const char*> defs[] = {
      {Subcommand::clt_scan, "CLT scan: KS / TV statistics across sizes"},
      {Subcommand::bounds_report, "evaluate every closed-form bound at fixed sizes"},
      {Subcommand::oracle_check, "exact Wick moments vs Monte Carlo"},
      {Subcommand::norm_scaling, "mean operator norm across sizes"},
      {Subcommand::sample_dump, "write one sampled matrix as CSV"},
  };
  for (const auto& [id, desc] : defs) {
    auto spec = std::make_unique<SubSpec>();
    spec->id = id;
    spec->sub = app.add_subcommand(to_string(id), desc);
    spec->sub->add_option("--config", spec->config, "JSON config file")
        ->required();
    spec->sub->add_option("--out", spec->out, "output directory");
    spec->sub->add_option("--set", spec->sets, "key=value config override");
    spec->sub->add_flag("--stamp", spec->stamp, "include wall-clock fields in reports");
    subs.push_back(std::move(spec));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw;
  } catch (const CLI::ParseError& e) {
    fail(errc::usage, e.what());
  }

  for (const auto& spec : subs)
    if (spec->sub->parsed())
      return load_invocation(spec->id, spec->config, spec->out, spec->sets,
                             spec->stamp);
  fail(errc::usage, "no subcommand given");
}

int dispatch(const Invocation& inv) {
  std::error_code ec;
  std::filesystem::create_directories(inv.out_dir, ec);
  if (ec) fail(errc::config, "cannot create output directory '" + inv.out_dir + "'");
  switch (inv.subcommand) {
    case Subcommand::clt_scan: return run_clt_scan(inv);
    case Subcommand::bounds_report: return run_bounds_report(inv);
    case Subcommand::oracle_check: return run_oracle_check(inv);
    case Subcommand::norm_scaling: return run_norm_scaling(inv);
    case Subcommand::sample_dump: return run_sample_dump(inv);
  }
  fail(errc::usage, "unhandled subcommand");
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  try {
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
      std::printf(
          "usage: rmt_lab <clt-scan|bounds-report|oracle-check|norm-scaling|"
          "sample-dump> --config FILE [--out DIR] [--set key=value ...] [--stamp]\n");
      return args.empty() ? 2 : 0;
    }
    const Invocation inv = parse_and_validate(args);
    return dispatch(inv);
  } catch (const CLI::CallForHelp&) {
    std::printf(
        "usage: rmt_lab <clt-scan|bounds-report|oracle-check|norm-scaling|"
        "sample-dump> --config FILE [--out DIR] [--set key=value ...] [--stamp]\n");
    return 0;
  } catch (const Error& e) {
    std::fprintf(stderr, "{\"error\":\"%s\",\"message\":\"%s\"}\n",
                 errc_name(e.code()), e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "{\"error\":\"Internal\",\"message\":\"%s\"}\n", e.what());
    return 4;
  }
}

}  // namespace rmt

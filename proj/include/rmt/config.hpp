#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rmt/covariance.hpp"
#include "rmt/mc_harness.hpp"

namespace rmt {

/// Parses {"kind": ..., params} per the config schema. Unknown keys are
/// rejected.
CovarianceFamily family_from_json(const nlohmann::json& j);

enum class Subcommand { clt_scan, bounds_report, oracle_check, norm_scaling, sample_dump };

std::string to_string(Subcommand c);

/// A validated CLI invocation: the subcommand, its parsed config (with
/// --set overrides already applied), and the output directory.
struct Invocation {
  Subcommand subcommand = Subcommand::clt_scan;
  std::string config_path;
  std::string out_dir = "out";
  std::vector<std::string> overrides;  // key=value, applied in order
  bool stamp = false;

  ExperimentConfig experiment;  // populated for every subcommand
  bool assert_trend = false;    // clt-scan: require ks to decrease across n_list
};

/// Loads the config file, applies overrides, validates against the schema
/// (schema = 1, unknown fields rejected) and the domain rules.
Invocation load_invocation(Subcommand subcommand, const std::string& config_path,
                           const std::string& out_dir,
                           const std::vector<std::string>& overrides, bool stamp);

}  // namespace rmt

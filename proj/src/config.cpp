#include "rmt/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

#include "rmt/errors.hpp"

namespace rmt {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      fail(errc::config, "unknown field '" + key + "' in " + where);
}

double require_number(const json& obj, const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_number())
    fail(errc::config, "field '" + key + "' must be a number");
  return obj[key].get<double>();
}

}  // namespace

CovarianceFamily family_from_json(const json& j) {
  if (!j.is_object()) fail(errc::config, "family must be an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    fail(errc::config, "family.kind must be a string");
  const std::string kind = j["kind"].get<std::string>();
  const double variance = j.contains("variance") ? require_number(j, "variance") : 1.0;

  if (kind == "wigner") {
    reject_unknown(j, {"kind", "variance"}, "family");
    return CovarianceFamily::wigner(variance);
  }
  if (kind == "full_correlation") {
    reject_unknown(j, {"kind", "variance"}, "family");
    return CovarianceFamily::full_correlation(variance);
  }
  if (kind == "constant_off_diagonal") {
    reject_unknown(j, {"kind", "variance", "gamma"}, "family");
    return CovarianceFamily::constant_off_diagonal(require_number(j, "gamma"), variance);
  }
  if (kind == "power_decay") {
    reject_unknown(j, {"kind", "variance", "alpha"}, "family");
    return CovarianceFamily::power_decay(require_number(j, "alpha"), variance);
  }
  if (kind == "geometric_decay") {
    reject_unknown(j, {"kind", "variance", "rho"}, "family");
    return CovarianceFamily::geometric_decay(require_number(j, "rho"), variance);
  }
  if (kind == "custom") {
    reject_unknown(j, {"kind", "matrices"}, "family");
    if (!j.contains("matrices") || !j["matrices"].is_object())
      fail(errc::config, "custom family needs a 'matrices' object");
    std::map<int, Matrix> matrices;
    for (const auto& [key, rows] : j["matrices"].items()) {
      int k = 0;
      try {
        k = std::stoi(key);
      } catch (...) {
        fail(errc::config, "custom matrix key '" + key + "' is not a vector id");
      }
      if (!rows.is_array() || rows.empty())
        fail(errc::config, "custom matrix for id " + key + " must be a non-empty array");
      const int dim = int(rows.size());
      Matrix m(dim, dim);
      for (int r = 0; r < dim; ++r) {
        if (!rows[r].is_array() || int(rows[r].size()) != dim)
          fail(errc::config, "custom matrix for id " + key + " must be square");
        for (int c = 0; c < dim; ++c) {
          if (!rows[r][c].is_number())
            fail(errc::config, "custom matrix entries must be numbers");
          m(r, c) = rows[r][c].get<double>();
        }
      }
      matrices[k] = std::move(m);
    }
    return CovarianceFamily::custom(std::move(matrices));
  }
  fail(errc::config, "unknown family kind '" + kind + "'");
}

std::string to_string(Subcommand c) {
  switch (c) {
    case Subcommand::clt_scan: return "clt-scan";
    case Subcommand::bounds_report: return "bounds-report";
    case Subcommand::oracle_check: return "oracle-check";
    case Subcommand::norm_scaling: return "norm-scaling";
    case Subcommand::sample_dump: return "sample-dump";
  }
  return "?";
}

namespace {

// --set key=value: value parsed as JSON when possible, else kept as string.
// "family.gamma" style keys write into the family object.
void apply_override(json& doc, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    fail(errc::usage, "override '" + kv + "' is not of the form key=value");
  const std::string key = kv.substr(0, eq);
  const std::string raw = kv.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (...) {
    value = raw;  // bare strings like toeplitz
  }
  const auto dot = key.find('.');
  if (dot == std::string::npos) {
    doc[key] = value;
  } else {
    const std::string outer = key.substr(0, dot);
    const std::string inner = key.substr(dot + 1);
    if (inner.empty() || inner.find('.') != std::string::npos)
      fail(errc::usage, "override key '" + key + "' nests too deep");
    if (!doc.contains(outer) || !doc[outer].is_object()) doc[outer] = json::object();
    doc[outer][inner] = value;
  }
}

std::vector<int> parse_n_list(const json& doc) {
  if (doc.contains("n") && doc.contains("n_list"))
    fail(errc::config, "give either 'n' or 'n_list', not both");
  std::vector<int> out;
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer()) fail(errc::config, "'n' must be an integer");
    out.push_back(doc["n"].get<int>());
  } else if (doc.contains("n_list")) {
    if (!doc["n_list"].is_array() || doc["n_list"].empty())
      fail(errc::config, "'n_list' must be a non-empty array");
    for (const auto& v : doc["n_list"]) {
      if (!v.is_number_integer()) fail(errc::config, "'n_list' entries must be integers");
      out.push_back(v.get<int>());
    }
  } else {
    fail(errc::config, "config needs 'n' or 'n_list'");
  }
  return out;
}

Standardization standardization_from_string(const std::string& s) {
  if (s == "auto") return Standardization::automatic;
  if (s == "exact") return Standardization::exact;
  if (s == "empirical") return Standardization::empirical;
  fail(errc::config, "standardization must be auto, exact or empirical");
}

Regime regime_from_string(const std::string& s) {
  if (s == "gamma") return Regime::gamma_floor;
  if (s == "decay") return Regime::decay;
  fail(errc::config, "regime must be gamma or decay");
}

}  // namespace

Invocation load_invocation(Subcommand subcommand, const std::string& config_path,
                           const std::string& out_dir,
                           const std::vector<std::string>& overrides, bool stamp) {
  Invocation inv;
  inv.subcommand = subcommand;
  inv.config_path = config_path;
  inv.out_dir = out_dir;
  inv.overrides = overrides;
  inv.stamp = stamp;

  std::ifstream in(config_path);
  if (!in) fail(errc::config, "cannot read config file '" + config_path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const std::exception& e) {
    fail(errc::config, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(errc::config, "config root must be an object");

  for (const auto& kv : overrides) apply_override(doc, kv);

  if (!doc.contains("schema") || !doc["schema"].is_number_integer() ||
      doc["schema"].get<int>() != 1)
    fail(errc::config, "config must declare \"schema\": 1");

  std::set<std::string> allowed = {"schema", "kind", "family", "p", "trials",
                                   "master_seed", "n", "n_list"};
  switch (subcommand) {
    case Subcommand::clt_scan:
      allowed.insert({"bins", "bin_range", "standardization", "regime",
                      "opnorm_trials", "workers", "assert_trend"});
      break;
    case Subcommand::bounds_report:
      allowed.insert({"regime", "workers"});
      break;
    case Subcommand::oracle_check:
      allowed.insert({"workers"});
      break;
    case Subcommand::norm_scaling:
      allowed.insert({"workers"});
      break;
    case Subcommand::sample_dump:
      break;
  }
  reject_unknown(doc, allowed, "config");

  ExperimentConfig& cfg = inv.experiment;
  if (!doc.contains("kind") || !doc["kind"].is_string())
    fail(errc::config, "config needs a 'kind' string");
  cfg.kind = pattern_from_string(doc["kind"].get<std::string>());
  if (!doc.contains("family")) fail(errc::config, "config needs a 'family' object");
  cfg.family = family_from_json(doc["family"]);
  cfg.n_list = parse_n_list(doc);

  if (doc.contains("p")) {
    if (!doc["p"].is_number_integer()) fail(errc::config, "'p' must be an integer");
    cfg.p = doc["p"].get<int>();
  }
  if (doc.contains("trials")) {
    if (!doc["trials"].is_number_integer())
      fail(errc::config, "'trials' must be an integer");
    cfg.trials = doc["trials"].get<std::int64_t>();
  }
  if (doc.contains("master_seed")) {
    if (!doc["master_seed"].is_number_integer())
      fail(errc::config, "'master_seed' must be an integer");
    cfg.master_seed = doc["master_seed"].get<std::uint64_t>();
  }
  if (doc.contains("bins")) cfg.bins = doc["bins"].get<int>();
  if (doc.contains("bin_range")) cfg.bin_range = require_number(doc, "bin_range");
  if (doc.contains("standardization"))
    cfg.standardization =
        standardization_from_string(doc["standardization"].get<std::string>());
  if (doc.contains("regime"))
    cfg.regime = regime_from_string(doc["regime"].get<std::string>());
  if (doc.contains("opnorm_trials"))
    cfg.opnorm_trials = doc["opnorm_trials"].get<std::int64_t>();
  if (doc.contains("workers")) cfg.workers = doc["workers"].get<int>();
  if (doc.contains("assert_trend")) {
    if (!doc["assert_trend"].is_boolean())
      fail(errc::config, "'assert_trend' must be a boolean");
    inv.assert_trend = doc["assert_trend"].get<bool>();
  }

  // domain validation before any computation; the full distributional rules
  // (trials floor, even-p guard) apply to the CLT pipeline
  if (subcommand == Subcommand::clt_scan)
    cfg.validate();
  else
    cfg.validate_base();
  return inv;
}

}  // namespace rmt

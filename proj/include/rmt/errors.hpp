#pragma once

#include <stdexcept>
#include <string>

namespace rmt {

// Error categories, grouped by the process exit code they map to:
// usage -> 2, configuration/domain validation -> 3, numerical failure -> 4.
enum class errc {
  bad_parameter,
  bad_size,
  bad_index,
  bad_address,
  cap_exceeded,
  too_small_n,
  empty_sample,
  too_few_samples,
  even_p_only,
  degenerate_variance,
  config,
  usage,
  not_psd,
  no_convergence,
  overflow,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::bad_parameter: return "BadParameter";
    case errc::bad_size: return "BadSize";
    case errc::bad_index: return "BadIndex";
    case errc::bad_address: return "BadAddress";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::too_small_n: return "TooSmallN";
    case errc::empty_sample: return "EmptySample";
    case errc::too_few_samples: return "TooFewSamples";
    case errc::even_p_only: return "EvenPOnly";
    case errc::degenerate_variance: return "DegenerateVariance";
    case errc::config: return "ConfigError";
    case errc::usage: return "UsageError";
    case errc::not_psd: return "NotPSD";
    case errc::no_convergence: return "NoConvergence";
    case errc::overflow: return "Overflow";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const { return code_; }

  int exit_code() const {
    switch (code_) {
      case errc::usage:
        return 2;
      case errc::not_psd:
      case errc::no_convergence:
      case errc::overflow:
        return 4;
      default:
        return 3;
    }
  }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace rmt

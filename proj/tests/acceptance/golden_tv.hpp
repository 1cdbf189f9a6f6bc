#pragma once

// Committed pilot thresholds for the CLT scan, produced by
//   rmt_acceptance --emit-golden tests/acceptance/golden_tv.hpp
// with master_seed = 0 and the default build flags. Keys are
// "<kind>|p<p>|<regime>"; values are the binned-TV statistic at n = 256
// with 10^4 trials. Regenerate after toolchain changes (see README).

#include <map>
#include <string>

namespace golden {

inline const std::map<std::string, double> kTv256 = {
    {"toeplitz|p1|gamma", 0.021624318829516348},
    {"toeplitz|p2|gamma", 0.033302052157255735},
    {"toeplitz|p3|gamma", 0.027481781342095807},
    {"toeplitz|p4|gamma", 0.060533152910375219},
    {"circulant|p1|gamma", 0.021624318829516348},
    {"circulant|p2|gamma", 0.021078136242344357},
    {"circulant|p3|gamma", 0.021868245973104782},
    {"circulant|p4|gamma", 0.045896527585436699},
    {"symmetric_circulant|p1|gamma", 0.021624318829516348},
    {"symmetric_circulant|p2|gamma", 0.054838351239136683},
    {"symmetric_circulant|p3|gamma", 0.029218413308400859},
    {"symmetric_circulant|p4|gamma", 0.087864031743576751},
    {"reverse_circulant|p2|gamma", 0.04525384211384164},
    {"reverse_circulant|p4|gamma", 0.083001710666820439},
    {"hankel|p2|gamma", 0.031435497513937115},
    {"hankel|p4|gamma", 0.056961056613555994},
    {"toeplitz|p1|decay", 0.021624318829516348},
    {"toeplitz|p2|decay", 0.024672095668450557},
    {"toeplitz|p3|decay", 0.019952152848496427},
    {"toeplitz|p4|decay", 0.025869856494099883},
    {"circulant|p1|decay", 0.021624318829516348},
    {"circulant|p2|decay", 0.019525850158425163},
    {"circulant|p3|decay", 0.029327768448657445},
    {"circulant|p4|decay", 0.030164999579726449},
    {"reverse_circulant|p1|decay", 0.024815288652880886},
    {"reverse_circulant|p2|decay", 0.02511919472325853},
    {"reverse_circulant|p3|decay", 0.022746010498687803},
    {"reverse_circulant|p4|decay", 0.019281697184427814},
    {"symmetric_circulant|p1|decay", 0.021624318829516348},
    {"symmetric_circulant|p2|decay", 0.028573266167611019},
    {"symmetric_circulant|p3|decay", 0.02379600083287144},
    {"symmetric_circulant|p4|decay", 0.030572908662830953},
    {"hankel|p1|decay", 0.02083600733904465},
    {"hankel|p2|decay", 0.018710613129896688},
    {"hankel|p3|decay", 0.023353060694361626},
    {"hankel|p4|decay", 0.020391944049924605},
};

}  // namespace golden

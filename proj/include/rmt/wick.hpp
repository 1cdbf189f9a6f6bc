#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rmt/sampler.hpp"

namespace rmt {

/// (2m-1)!! — the number of pair partitions of {1..2m}.
std::uint64_t pair_partition_count(int m);

/// Calls `visit` once per pair partition of {0..2m-1}. The pairing is passed
/// as a flat array p of length 2m with pairs (p[0],p[1]), (p[2],p[3]), ...
/// Throws CapExceeded for m > 8 (2m = 16 means 2,027,025 partitions).
void for_each_pair_partition(int m,
                             const std::function<void(const int*)>& visit);

/// Materialized partitions, each a list of (i, j) index pairs into 0..2m-1.
std::vector<std::vector<std::pair<int, int>>> pair_partitions(int m);

/// Isserlis/Wick evaluation: E[X_1 ... X_N] for centered jointly Gaussian
/// variables with the given covariance matrix. Odd N gives exactly 0.
double gaussian_product_moment(const Matrix& cov);

struct MomentReport {
  double mean = 0.0;
  double variance = 0.0;
  std::uint64_t tuple_count = 0;      // number of p-tuples enumerated (n^p)
  std::uint64_t partition_count = 0;  // pairings per 2p-entry Wick term, (2p-1)!!

  nlohmann::json to_json() const;
};

/// Exact E[W_n] and Var(W_n) for W_n = Tr(X_n^p) by full tuple enumeration
/// and Wick evaluation. Caps: p <= 4, n^p <= 10^6 and n^{2p} <= 3.2e8
/// (the variance enumerates pairs of tuples).
MomentReport exact_trace_moments(const SampleSpec& spec, int p, int workers = 0);

/// Checks the caps without computing anything.
bool trace_moments_within_caps(int n, int p);

/// The n^2 x n^2 covariance matrix of the UNSCALED entry array, cell order
/// row-major ((i-1)*n + j-1). The scaled matrix covariance is this over n.
/// Throws CapExceeded for n > 64.
Matrix entry_covariance_matrix(const SampleSpec& spec);

/// Gershgorin row-sum bound on ||Sigma|| for the unscaled entry covariance,
/// computed from the diagonal structure without materializing the matrix.
/// Agrees with gershgorin_norm_bound(entry_covariance_matrix(spec)).
double entry_cov_gershgorin(const SampleSpec& spec);

}  // namespace rmt

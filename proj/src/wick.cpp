#include "rmt/wick.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "rmt/errors.hpp"
#include "rmt/parallel.hpp"

namespace rmt {

namespace {

constexpr int kMaxPairHalf = 8;
constexpr std::uint64_t kTupleCap = 1000000;  // n^p
// n^{2p}: the variance enumerates pairs of tuples; 3.2e8 admits n=128 at
// p=2 (a few seconds) while refusing hour-scale enumerations
constexpr double kTuplePairCap = 3.2e8;

// Recursive pair-partition walk: repeatedly pairs the smallest free element
// with every other free element. flat[2t], flat[2t+1] hold pair t.
void walk_partitions(int m, std::uint32_t used, int depth, int* flat,
                     const std::function<void(const int*)>& visit) {
  if (depth == m) {
    visit(flat);
    return;
  }
  const int total = 2 * m;
  int first = 0;
  while (first < total && (used & (1u << first))) ++first;
  used |= 1u << first;
  flat[2 * depth] = first;
  for (int second = first + 1; second < total; ++second) {
    if (used & (1u << second)) continue;
    flat[2 * depth + 1] = second;
    walk_partitions(m, used | (1u << second), depth + 1, flat, visit);
  }
}

}  // namespace

nlohmann::json MomentReport::to_json() const {
  return nlohmann::json{{"mean", mean},
                        {"variance", variance},
                        {"tuple_count", tuple_count},
                        {"partition_count", partition_count}};
}

std::uint64_t pair_partition_count(int m) {
  std::uint64_t count = 1;
  for (int i = 3; i <= 2 * m - 1; i += 2) count *= std::uint64_t(i);
  return count;
}

void for_each_pair_partition(int m, const std::function<void(const int*)>& visit) {
  if (m < 0) fail(errc::bad_parameter, "half-size must be >= 0");
  if (m > kMaxPairHalf)
    fail(errc::cap_exceeded, "pair partitions capped at 2m = " +
                                 std::to_string(2 * kMaxPairHalf));
  if (m == 0) {
    int dummy = 0;
    visit(&dummy);
    return;
  }
  int flat[2 * kMaxPairHalf];
  walk_partitions(m, 0, 0, flat, visit);
}

std::vector<std::vector<std::pair<int, int>>> pair_partitions(int m) {
  std::vector<std::vector<std::pair<int, int>>> out;
  out.reserve(pair_partition_count(m));
  for_each_pair_partition(m, [&](const int* flat) {
    std::vector<std::pair<int, int>> pairing(m);
    for (int t = 0; t < m; ++t) pairing[t] = {flat[2 * t], flat[2 * t + 1]};
    out.push_back(std::move(pairing));
  });
  return out;
}

double gaussian_product_moment(const Matrix& cov) {
  const int size = int(cov.rows());
  if (cov.cols() != size) fail(errc::bad_parameter, "covariance must be square");
  if (size % 2 != 0) return 0.0;  // odd moments of centered Gaussians vanish
  const int m = size / 2;
  if (m == 0) return 1.0;
  double total = 0.0;
  for_each_pair_partition(m, [&](const int* flat) {
    double prod = 1.0;
    for (int t = 0; t < m; ++t) prod *= cov(flat[2 * t], flat[2 * t + 1]);
    total += prod;
  });
  return total;
}

bool trace_moments_within_caps(int n, int p) {
  if (p < 1 || p > 4) return false;
  const double np = std::pow(double(n), p);
  return np <= double(kTupleCap) && np * np <= kTuplePairCap;
}

namespace {

// Entry addresses packed as (pool-independent) slot and 0-based coordinate.
struct PackedAddr {
  std::int32_t slot;
  std::int32_t pos;
};

}  // namespace

MomentReport exact_trace_moments(const SampleSpec& spec, int p, int workers) {
  const int n = spec.n;
  if (p < 1 || p > 4)
    fail(errc::cap_exceeded, "exact moments support p in 1..4");
  if (!trace_moments_within_caps(n, p))
    fail(errc::cap_exceeded, "enumeration caps exceeded for n=" + std::to_string(n) +
                                 ", p=" + std::to_string(p));

  std::uint64_t tuple_count = 1;
  for (int t = 0; t < p; ++t) tuple_count *= std::uint64_t(n);

  // Per-tuple address lists: the p entries X_{i1 i2} ... X_{ip i1}.
  std::vector<PackedAddr> addrs(tuple_count * p);
  {
    std::vector<int> idx(p, 1);
    for (std::uint64_t t = 0; t < tuple_count; ++t) {
      for (int e = 0; e < p; ++e) {
        const int i = idx[e];
        const int j = idx[(e + 1) % p];
        addrs[t * p + e] = {spec.slot_of(i, j), spec.pos_of(i, j) - 1};
      }
      int e = p - 1;
      while (e >= 0 && ++idx[e] > n) idx[e--] = 1;
    }
  }

  // covariance lookup between two packed addresses
  const auto cov_of = [&spec](const PackedAddr& a, const PackedAddr& b) -> double {
    if (a.slot != b.slot) return 0.0;
    return spec.cov(a.slot).entries(a.pos, b.pos);
  };

  // mean: odd p vanishes term by term
  const double scale_mean = std::pow(double(n), -0.5 * p);
  double mean = 0.0;
  if (p % 2 == 0) {
    const auto pairings = pair_partitions(p / 2);
    double acc = 0.0;
    for (std::uint64_t t = 0; t < tuple_count; ++t) {
      const PackedAddr* a = &addrs[t * p];
      for (const auto& pairing : pairings) {
        double prod = 1.0;
        for (const auto& [x, y] : pairing) {
          prod *= cov_of(a[x], a[y]);
          if (prod == 0.0) break;
        }
        acc += prod;
      }
    }
    mean = scale_mean * acc;
  }

  // E[W^2]: pairs of tuples, 2p entries each. Deterministic parallel sum:
  // fixed chunking over the first tuple index, chunk sums combined in order.
  const auto pairings2 = pair_partitions(p);
  const std::uint64_t chunk_count = std::min<std::uint64_t>(tuple_count, 256);
  std::vector<double> chunk_sum(chunk_count, 0.0);
  parallel_trials(std::int64_t(chunk_count), workers, [&](std::int64_t c) {
    const std::uint64_t begin = tuple_count * std::uint64_t(c) / chunk_count;
    const std::uint64_t end = tuple_count * std::uint64_t(c + 1) / chunk_count;
    PackedAddr joint[8];
    double acc = 0.0;
    for (std::uint64_t t1 = begin; t1 < end; ++t1) {
      std::copy_n(&addrs[t1 * p], p, joint);
      for (std::uint64_t t2 = 0; t2 < tuple_count; ++t2) {
        std::copy_n(&addrs[t2 * p], p, joint + p);
        for (const auto& pairing : pairings2) {
          double prod = 1.0;
          for (const auto& [x, y] : pairing) {
            prod *= cov_of(joint[x], joint[y]);
            if (prod == 0.0) break;
          }
          acc += prod;
        }
      }
    }
    chunk_sum[c] = acc;
  });
  double second_moment = 0.0;
  for (double s : chunk_sum) second_moment += s;
  second_moment *= std::pow(double(n), -double(p));

  MomentReport report;
  report.mean = mean;
  report.variance = second_moment - mean * mean;
  report.tuple_count = tuple_count;
  report.partition_count = pair_partition_count(p);
  if (report.variance < -1e-9)
    fail(errc::degenerate_variance, "exact variance came out below the numerical floor");
  report.variance = std::max(report.variance, 0.0);
  return report;
}

Matrix entry_covariance_matrix(const SampleSpec& spec) {
  const int n = spec.n;
  if (n > 64) fail(errc::cap_exceeded, "dense entry covariance capped at n = 64");
  Matrix sigma(n * n, n * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const int row = (i - 1) * n + (j - 1);
      for (int r = 1; r <= n; ++r)
        for (int s = 1; s <= n; ++s)
          sigma(row, (r - 1) * n + (s - 1)) =
              double(n) * entry_covariance_exact(spec, i, j, r, s);
    }
  return sigma;
}

double entry_cov_gershgorin(const SampleSpec& spec) {
  // Row (i,j) of Sigma has |C_k(m, m')| once per cell of coordinate m', so
  // the row sum is sum_m' multiplicity(m') |C_k(m, m')|.
  double best = 0.0;
  for (std::size_t slot = 0; slot < spec.layout.vectors.size(); ++slot) {
    const auto& vec = spec.layout.vectors[slot];
    const Matrix& c = spec.cov(int(slot)).entries;
    std::vector<double> mult(vec.dim, 0.0);
    for (int m = 1; m <= vec.dim; ++m)
      mult[m - 1] = double(positions_of(spec.kind, spec.n, {vec.k, m}).size());
    for (int m = 0; m < vec.dim; ++m) {
      double row = 0.0;
      for (int mp = 0; mp < vec.dim; ++mp) row += mult[mp] * std::abs(c(m, mp));
      best = std::max(best, row);
    }
  }
  return best;
}

}  // namespace rmt

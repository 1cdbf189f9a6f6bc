#pragma once

#include <memory>
#include <span>
#include <vector>

#include "rmt/covariance.hpp"
#include "rmt/noise.hpp"
#include "rmt/patterns.hpp"

namespace rmt {

/// Everything needed to draw samples of one ensemble: the pattern geometry,
/// the per-diagonal covariances and their factors, plus flat lookup tables
/// from cells to (vector slot, coordinate). Immutable after make().
///
/// Each diagonal vector reserves dim(k) noise coordinates even when its
/// factor has lower rank; the surplus coordinates are drawn and discarded.
/// This keeps the noise layout (k ascending, then coordinate ascending)
/// independent of the covariance family, so series replay and coupled
/// constructions see identical streams.
struct SampleSpec {
  PatternKind kind;
  int n = 0;
  CovarianceFamily family;
  DiagonalLayout layout;
  std::vector<int> noise_offset;  // per layout slot, into the flat Z
  int noise_dim = 0;

  // covariances/factors are pooled: vectors with equal covariance share one
  // entry (all non-custom families depend on the dimension only)
  std::vector<DiagonalCovariance> cov_pool;
  std::vector<FactorMatrix> factor_pool;
  std::vector<int> pool_index;  // per layout slot

  // flattened n*n tables, row-major, 0-based: slot into layout.vectors and
  // 1-based coordinate of each cell
  std::vector<int> cell_slot;
  std::vector<int> cell_pos;

  static SampleSpec make(PatternKind kind, int n, CovarianceFamily family);

  const DiagonalCovariance& cov(int slot) const { return cov_pool[pool_index[slot]]; }
  const FactorMatrix& factor(int slot) const { return factor_pool[pool_index[slot]]; }

  int slot_of(int i, int j) const { return cell_slot[std::size_t(i - 1) * n + (j - 1)]; }
  int pos_of(int i, int j) const { return cell_pos[std::size_t(i - 1) * n + (j - 1)]; }

  /// Smallest covariance value across all diagonals (the gamma floor).
  double covariance_floor() const;
  double min_variance() const;
  double max_variance() const;
  bool unit_variance(double tol = 1e-12) const;
};

/// One sampled matrix, already scaled by n^{-1/2}, together with the flat
/// standard-normal vector that produced it.
struct PatternedMatrix {
  Matrix entries;
  std::vector<double> noise;
  const SampleSpec* spec = nullptr;

  int n() const { return int(entries.rows()); }
};

/// Draws the matrix entry (i,j) = n^{-1/2} [A_k Z_k]_m. Entries of the two
/// symmetric kinds are exactly symmetric by construction, and the same
/// (master_seed, trial) stream always reproduces the same matrix bitwise.
PatternedMatrix sample_matrix(const SampleSpec& spec, NoiseStream& stream);

/// Deterministic replay: rebuilds the matrix from a stored noise vector.
Matrix matrix_from_noise(const SampleSpec& spec, std::span<const double> z);

/// Exact Cov(X_ij, X_rs) of the scaled matrix: (1/n) c_k(m, m') when both
/// cells read the same diagonal vector, 0 otherwise.
double entry_covariance_exact(const SampleSpec& spec, int i, int j, int r, int s);

/// Tr(X^p) by matrix powers. Throws Overflow on a non-finite result.
double trace_power(const Matrix& x, int p);

}  // namespace rmt

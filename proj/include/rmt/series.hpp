#pragma once

#include <span>
#include <tuple>
#include <vector>

#include "rmt/sampler.hpp"
#include "rmt/spectral.hpp"

namespace rmt {

/// One term Z_{k,l} B_{n,k,l} of the Gaussian series. The matrix B places
/// column l of the diagonal's factor on the cells of vector k: value
/// A[m-1, l-1] at every cell of coordinate m. Cells are 0-based (i, j, value).
/// Columns past the factor rank give all-zero terms; they are kept so the
/// term list lines up with the sampler's noise layout.
struct SeriesTerm {
  int k = 0;
  int l = 0;  // 1-based column
  std::vector<std::tuple<int, int, double>> cells;
};

/// Terms ordered by (k ascending, l ascending), matching the noise layout:
/// term t multiplies noise coordinate t.
std::vector<SeriesTerm> build_series(const SampleSpec& spec);

/// n^{-1/2} sum_t z[t] B_t. With a sampled matrix's noise vector this
/// reproduces the sample to within floating-point reassociation.
Matrix evaluate_series(const SampleSpec& spec, std::span<const double> z);

/// [[0, B^T], [B, 0]] — symmetric, same spectral norm as B.
Matrix dilation(const Matrix& b);

/// sum_l B_{n,k,l}^2 for one diagonal of a symmetric kind (n x n). Computed
/// from the covariance matrix directly: sum_l B_l^2 depends on A only
/// through A A^T.
Matrix per_diagonal_square_sum(const SampleSpec& spec, int k);

/// (sum_l B B^T, sum_l B^T B) for one diagonal of any kind; the dilated
/// square sum is block-diag of these.
std::pair<Matrix, Matrix> per_diagonal_gram(const SampleSpec& spec, int k);

/// ||sum_l B^2|| (symmetric kinds) or ||sum_l dilated(B)^2|| (non-symmetric),
/// unscaled.
double per_diagonal_norm(const SampleSpec& spec, int k);

/// Matrix standard deviation parameter of the scaled series:
/// n^{-1/2} ||sum_{k,l} B^2||^{1/2}, with the dilation applied first for the
/// non-symmetric kinds.
double sigma_param(const SampleSpec& spec);

struct NuResult {
  double value = 0.0;
  bool exact = false;     // false means the value is the Gershgorin upper bound
  double residual = 0.0;  // max certified residual across covariance blocks
};

/// nu(X) = ||Cov(X)|| of the scaled matrix, exact (certified) for n <= cap,
/// otherwise the Gershgorin upper bound labelled as such.
NuResult nu_param(const SampleSpec& spec, int exact_cap = 64);

/// Exact-mode only; throws CapExceeded above the cap.
double nu_param_exact(const SampleSpec& spec, int exact_cap = 64);

/// Gershgorin upper bound on ||Cov(X)|| (scaled), valid for every n.
double nu_gershgorin_bound(const SampleSpec& spec);

}  // namespace rmt

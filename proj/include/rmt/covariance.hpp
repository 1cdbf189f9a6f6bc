#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace rmt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Covariance matrix of one diagonal vector. entries(i, j) = c_k(i+1, j+1)
/// in 1-based terms. Symmetric, PSD up to psd_tolerance(), diagonal
/// (the variances) strictly positive.
struct DiagonalCovariance {
  Matrix entries;
  double min_variance = 0.0;
  double max_variance = 0.0;

  int dim() const { return int(entries.rows()); }

  /// 1e-10 * dim * max|entry|: the slack allowed on the smallest eigenvalue.
  double psd_tolerance() const;
};

/// Parametric families for the per-diagonal covariances. All share one
/// variance scale v; the off-diagonal profile interpolates between fully
/// independent coordinates (wigner) and a single repeated value
/// (full_correlation).
class CovarianceFamily {
 public:
  enum class Kind {
    wigner,
    full_correlation,
    constant_off_diagonal,
    power_decay,
    geometric_decay,
    custom,
  };

  /// Defaults to unit-variance wigner.
  CovarianceFamily() = default;

  static CovarianceFamily wigner(double variance = 1.0);
  static CovarianceFamily full_correlation(double variance = 1.0);
  /// Off-diagonal value gamma * v, gamma in [0, 1]. Requires v >= gamma so
  /// the variances never undercut the covariance floor.
  static CovarianceFamily constant_off_diagonal(double gamma, double variance = 1.0);
  /// Off-diagonal value n^{-alpha} * v where n is the ambient matrix size.
  static CovarianceFamily power_decay(double alpha, double variance = 1.0);
  /// c(i, j) = v * rho^{|i-j|}, rho in [0, 1).
  static CovarianceFamily geometric_decay(double rho, double variance = 1.0);
  /// Explicit matrices keyed by vector id.
  static CovarianceFamily custom(std::map<int, Matrix> matrices);

  Kind kind() const { return kind_; }
  double variance() const { return variance_; }
  /// gamma, alpha or rho; 1 for full_correlation, 0 for wigner, NaN for custom.
  double shape_param() const;
  std::string name() const;

  const std::map<int, Matrix>& custom_matrices() const { return custom_; }

  /// Throws BadParameter when a parameter is out of range.
  void validate() const;

 private:
  Kind kind_ = Kind::wigner;
  double variance_ = 1.0;
  double gamma_ = 0.0;
  double alpha_ = 0.0;
  double rho_ = 0.0;
  std::map<int, Matrix> custom_;
};

/// Materializes the family's covariance at one diagonal. `ambient_n` is the
/// matrix size (used by power_decay), `k` the vector id (used by custom).
DiagonalCovariance build_diagonal_cov(const CovarianceFamily& family, int dim,
                                      int ambient_n, int k = -1);

/// dim x rank factor with A A^T equal to the covariance. Columns are ordered
/// by decreasing spectral weight; null directions are dropped.
struct FactorMatrix {
  Matrix a;

  int dim() const { return int(a.rows()); }
  int rank() const { return int(a.cols()); }
};

/// Symmetric eigendecomposition factorization. Eigenvalues within the PSD
/// tolerance of zero are clipped to zero; anything more negative throws
/// NotPSD. Deterministic for a given input.
FactorMatrix factor_psd(const DiagonalCovariance& cov);

/// Euclidean norm of each row of A; equals sqrt(variance) of the coordinate.
std::vector<double> row_norms(const FactorMatrix& factor);

}  // namespace rmt

#include "rmt/covariance.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "rmt/errors.hpp"

namespace rmt {

double DiagonalCovariance::psd_tolerance() const {
  const double scale = entries.size() > 0 ? entries.cwiseAbs().maxCoeff() : 0.0;
  return 1e-10 * dim() * scale;
}

CovarianceFamily CovarianceFamily::wigner(double variance) {
  CovarianceFamily f;
  f.kind_ = Kind::wigner;
  f.variance_ = variance;
  f.validate();
  return f;
}

CovarianceFamily CovarianceFamily::full_correlation(double variance) {
  CovarianceFamily f;
  f.kind_ = Kind::full_correlation;
  f.variance_ = variance;
  f.validate();
  return f;
}

CovarianceFamily CovarianceFamily::constant_off_diagonal(double gamma, double variance) {
  CovarianceFamily f;
  f.kind_ = Kind::constant_off_diagonal;
  f.gamma_ = gamma;
  f.variance_ = variance;
  f.validate();
  return f;
}

CovarianceFamily CovarianceFamily::power_decay(double alpha, double variance) {
  CovarianceFamily f;
  f.kind_ = Kind::power_decay;
  f.alpha_ = alpha;
  f.variance_ = variance;
  f.validate();
  return f;
}

CovarianceFamily CovarianceFamily::geometric_decay(double rho, double variance) {
  CovarianceFamily f;
  f.kind_ = Kind::geometric_decay;
  f.rho_ = rho;
  f.variance_ = variance;
  f.validate();
  return f;
}

CovarianceFamily CovarianceFamily::custom(std::map<int, Matrix> matrices) {
  CovarianceFamily f;
  f.kind_ = Kind::custom;
  f.custom_ = std::move(matrices);
  f.validate();
  return f;
}

double CovarianceFamily::shape_param() const {
  switch (kind_) {
    case Kind::wigner: return 0.0;
    case Kind::full_correlation: return 1.0;
    case Kind::constant_off_diagonal: return gamma_;
    case Kind::power_decay: return alpha_;
    case Kind::geometric_decay: return rho_;
    case Kind::custom: return std::numeric_limits<double>::quiet_NaN();
  }
  return 0.0;
}

std::string CovarianceFamily::name() const {
  switch (kind_) {
    case Kind::wigner: return "wigner";
    case Kind::full_correlation: return "full_correlation";
    case Kind::constant_off_diagonal: return "constant_off_diagonal";
    case Kind::power_decay: return "power_decay";
    case Kind::geometric_decay: return "geometric_decay";
    case Kind::custom: return "custom";
  }
  return "?";
}

void CovarianceFamily::validate() const {
  if (kind_ != Kind::custom && !(variance_ > 0.0 && std::isfinite(variance_)))
    fail(errc::bad_parameter, "variance scale must be positive and finite");
  switch (kind_) {
    case Kind::constant_off_diagonal:
      if (!(gamma_ >= 0.0 && gamma_ <= 1.0))
        fail(errc::bad_parameter, "gamma must lie in [0, 1]");
      // the covariance floor applies to the variances too
      if (variance_ < gamma_)
        fail(errc::bad_parameter, "variance scale must be >= gamma");
      break;
    case Kind::power_decay:
      if (!(alpha_ > 0.0)) fail(errc::bad_parameter, "alpha must be positive");
      break;
    case Kind::geometric_decay:
      if (!(rho_ >= 0.0 && rho_ < 1.0))
        fail(errc::bad_parameter, "rho must lie in [0, 1)");
      break;
    case Kind::custom:
      if (custom_.empty())
        fail(errc::bad_parameter, "custom family needs at least one matrix");
      break;
    default:
      break;
  }
}

namespace {

DiagonalCovariance finish(Matrix m) {
  DiagonalCovariance cov;
  cov.entries = std::move(m);
  cov.min_variance = cov.entries.diagonal().minCoeff();
  cov.max_variance = cov.entries.diagonal().maxCoeff();
  if (!(cov.min_variance > 0.0))
    fail(errc::bad_parameter, "diagonal covariance has a non-positive variance");

  // symmetry + PSD validation
  const double asym = (cov.entries - cov.entries.transpose()).cwiseAbs().maxCoeff();
  if (asym != 0.0) fail(errc::not_psd, "covariance matrix is not exactly symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(cov.entries, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -cov.psd_tolerance())
    fail(errc::not_psd, "covariance matrix has eigenvalue below -psd_tol");
  return cov;
}

}  // namespace

DiagonalCovariance build_diagonal_cov(const CovarianceFamily& family, int dim,
                                      int ambient_n, int k) {
  if (dim < 1) fail(errc::bad_parameter, "covariance dim must be >= 1");
  if (ambient_n < 1) fail(errc::bad_parameter, "ambient size must be >= 1");
  family.validate();

  const double v = family.variance();
  Matrix m(dim, dim);
  switch (family.kind()) {
    case CovarianceFamily::Kind::wigner:
      m = v * Matrix::Identity(dim, dim);
      break;
    case CovarianceFamily::Kind::full_correlation:
      m = v * Matrix::Ones(dim, dim);
      break;
    case CovarianceFamily::Kind::constant_off_diagonal: {
      const double off = family.shape_param() * v;
      m.setConstant(off);
      m.diagonal().setConstant(v);
      break;
    }
    case CovarianceFamily::Kind::power_decay: {
      const double off = std::pow(double(ambient_n), -family.shape_param()) * v;
      m.setConstant(off);
      m.diagonal().setConstant(v);
      break;
    }
    case CovarianceFamily::Kind::geometric_decay: {
      const double rho = family.shape_param();
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = v * std::pow(rho, std::abs(i - j));
      break;
    }
    case CovarianceFamily::Kind::custom: {
      const auto it = family.custom_matrices().find(k);
      if (it == family.custom_matrices().end())
        fail(errc::bad_parameter, "custom family has no matrix for vector id " +
                                      std::to_string(k));
      if (it->second.rows() != dim || it->second.cols() != dim)
        fail(errc::bad_parameter, "custom matrix for vector id " + std::to_string(k) +
                                      " has wrong dimension");
      m = it->second;
      break;
    }
  }
  return finish(std::move(m));
}

FactorMatrix factor_psd(const DiagonalCovariance& cov) {
  const int d = cov.dim();
  const double tol = cov.psd_tolerance();

  // Diagonal matrices factor exactly, and the column order then matches the
  // coordinate order, which keeps wigner series terms aligned with cells.
  bool diagonal = true;
  for (int i = 0; i < d && diagonal; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j && cov.entries(i, j) != 0.0) {
        diagonal = false;
        break;
      }
  if (diagonal) {
    FactorMatrix f;
    f.a = cov.entries.diagonal().cwiseSqrt().asDiagonal();
    return f;
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(cov.entries);
  if (es.info() != Eigen::Success)
    fail(errc::no_convergence, "eigendecomposition failed");
  const Vector& evals = es.eigenvalues();  // ascending
  if (evals.minCoeff() < -tol)
    fail(errc::not_psd, "matrix has eigenvalue " + std::to_string(evals.minCoeff()) +
                            " below -psd_tol");

  // keep strictly informative directions, largest first
  const double keep_tol = 1e-14 * d * std::max(1.0, evals.maxCoeff());
  std::vector<int> keep;
  for (int i = d - 1; i >= 0; --i)
    if (evals(i) > keep_tol) keep.push_back(i);
  if (keep.empty())
    fail(errc::not_psd, "covariance matrix is numerically zero");

  FactorMatrix f;
  f.a.resize(d, int(keep.size()));
  for (int c = 0; c < int(keep.size()); ++c)
    f.a.col(c) = es.eigenvectors().col(keep[c]) * std::sqrt(evals(keep[c]));
  return f;
}

std::vector<double> row_norms(const FactorMatrix& factor) {
  std::vector<double> norms(factor.dim());
  for (int i = 0; i < factor.dim(); ++i) norms[i] = factor.a.row(i).norm();
  return norms;
}

}  // namespace rmt

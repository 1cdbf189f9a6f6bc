#pragma once

#include <functional>

#include "rmt/covariance.hpp"

namespace rmt {

struct NormResult {
  double value = 0.0;
  double residual = 0.0;  // ||G v - lambda v|| / lambda of the final Gram iterate
  int iterations = 0;
  bool certified = false;  // residual below the certification threshold
  bool used_dense = false;

  operator double() const { return value; }
};

struct PowerIterOptions {
  double tol = 1e-10;        // relative Rayleigh-quotient change to stop
  int max_iterations = 0;    // 0 means 10 * dim
  double certify_tol = 1e-8; // relative residual accepted as certified
  int restarts = 3;
};

/// Largest eigenvalue of a symmetric PSD operator given by matvec, via power
/// iteration with a deterministic pseudo-random start. Returns the Rayleigh
/// quotient; certification is by the relative eigen-residual.
NormResult psd_operator_norm(int dim,
                             const std::function<void(const double*, double*)>& apply,
                             const PowerIterOptions& opts = {});

/// Largest singular value of a dense matrix: power iteration on X^T X with
/// dense SVD fallback for dim <= 256 when uncertified. Throws NoConvergence
/// if neither route certifies.
NormResult spectral_norm_dense(const Matrix& x, const PowerIterOptions& opts = {});

/// Largest |eigenvalue| of a symmetric matrix (power iteration on S^2, same
/// fallback policy).
NormResult sym_norm(const Matrix& s, const PowerIterOptions& opts = {});

}  // namespace rmt

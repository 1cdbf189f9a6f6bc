#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <span>
#include <vector>

namespace oracle {

// Tr(X^p) as the literal cyclic index sum over all p-tuples.
inline double trace_power_bruteforce(const Eigen::MatrixXd& x, int p) {
  const int n = int(x.rows());
  std::vector<int> idx(p, 0);
  double total = 0.0;
  while (true) {
    double term = 1.0;
    for (int t = 0; t < p; ++t) term *= x(idx[t], idx[(t + 1) % p]);
    total += term;
    int t = p - 1;
    while (t >= 0 && ++idx[t] == n) idx[t--] = 0;
    if (t < 0) break;
  }
  return total;
}

// Largest singular value by full dense SVD.
inline double spectral_norm_dense(const Eigen::MatrixXd& x) {
  return Eigen::BDCSVD<Eigen::MatrixXd>(x).singularValues()(0);
}

// Largest |eigenvalue| of a symmetric matrix by dense eigendecomposition.
inline double sym_norm_dense(const Eigen::MatrixXd& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

inline Moments sample_moments(std::span<const double> xs) {
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= double(xs.size());
  for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
  m.var /= double(xs.size() - 1);
  return m;
}

}  // namespace oracle

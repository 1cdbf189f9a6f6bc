#include "rmt/series.hpp"

#include <cmath>

#include "rmt/errors.hpp"
#include "rmt/wick.hpp"

namespace rmt {

namespace {

// cells of every coordinate of one vector, 0-based
std::vector<std::vector<std::pair<int, int>>> vector_cells(const SampleSpec& spec,
                                                           int slot) {
  const auto& vec = spec.layout.vectors[slot];
  std::vector<std::vector<std::pair<int, int>>> cells(vec.dim);
  for (int m = 1; m <= vec.dim; ++m) {
    for (const auto& [i, j] : positions_of(spec.kind, spec.n, {vec.k, m}))
      cells[m - 1].push_back({i - 1, j - 1});
  }
  return cells;
}

int slot_of_k(const SampleSpec& spec, int k) {
  const int slot = spec.layout.index_of(k);
  if (slot < 0) fail(errc::bad_address, "no diagonal with id " + std::to_string(k));
  return slot;
}

}  // namespace

std::vector<SeriesTerm> build_series(const SampleSpec& spec) {
  std::vector<SeriesTerm> terms;
  terms.reserve(spec.noise_dim);
  for (std::size_t slot = 0; slot < spec.layout.vectors.size(); ++slot) {
    const auto& vec = spec.layout.vectors[slot];
    const Matrix& a = spec.factor(int(slot)).a;
    const auto cells = vector_cells(spec, int(slot));
    for (int l = 1; l <= vec.dim; ++l) {
      SeriesTerm term;
      term.k = vec.k;
      term.l = l;
      if (l <= a.cols()) {
        for (int m = 1; m <= vec.dim; ++m) {
          const double value = a(m - 1, l - 1);
          if (value == 0.0) continue;
          for (const auto& [i, j] : cells[m - 1]) term.cells.push_back({i, j, value});
        }
      }
      terms.push_back(std::move(term));
    }
  }
  return terms;
}

Matrix evaluate_series(const SampleSpec& spec, std::span<const double> z) {
  if (int(z.size()) != spec.noise_dim)
    fail(errc::bad_parameter, "noise vector has wrong length");
  const auto terms = build_series(spec);
  Matrix x = Matrix::Zero(spec.n, spec.n);
  for (std::size_t t = 0; t < terms.size(); ++t)
    for (const auto& [i, j, value] : terms[t].cells) x(i, j) += z[t] * value;
  return x / std::sqrt(double(spec.n));
}

Matrix dilation(const Matrix& b) {
  const int n = int(b.rows());
  Matrix d = Matrix::Zero(2 * n, 2 * n);
  d.topRightCorner(n, n) = b.transpose();
  d.bottomLeftCorner(n, n) = b;
  return d;
}

// sum_l (B_l M B_l^T-style products) depend on the factor only through
// A A^T = C, so the accumulations below run over coordinate pairs weighted
// by the covariance.
Matrix per_diagonal_square_sum(const SampleSpec& spec, int k) {
  if (!is_symmetric_kind(spec.kind))
    fail(errc::bad_parameter,
         "per-diagonal square sum is for symmetric kinds; use per_diagonal_gram");
  const int slot = slot_of_k(spec, k);
  const Matrix& c = spec.cov(slot).entries;
  const auto cells = vector_cells(spec, slot);
  const int dim = int(cells.size());
  Matrix s = Matrix::Zero(spec.n, spec.n);
  for (int m = 0; m < dim; ++m)
    for (int mp = 0; mp < dim; ++mp) {
      const double w = c(m, mp);
      if (w == 0.0) continue;
      for (const auto& [i, j] : cells[m])
        for (const auto& [r, t] : cells[mp])
          if (j == r) s(i, t) += w;
    }
  return s;
}

std::pair<Matrix, Matrix> per_diagonal_gram(const SampleSpec& spec, int k) {
  const int slot = slot_of_k(spec, k);
  const Matrix& c = spec.cov(slot).entries;
  const auto cells = vector_cells(spec, slot);
  const int dim = int(cells.size());
  Matrix left = Matrix::Zero(spec.n, spec.n);   // sum_l B B^T
  Matrix right = Matrix::Zero(spec.n, spec.n);  // sum_l B^T B
  for (int m = 0; m < dim; ++m)
    for (int mp = 0; mp < dim; ++mp) {
      const double w = c(m, mp);
      if (w == 0.0) continue;
      for (const auto& [i, j] : cells[m])
        for (const auto& [r, t] : cells[mp]) {
          if (j == t) left(i, r) += w;
          if (i == r) right(j, t) += w;
        }
    }
  return {std::move(left), std::move(right)};
}

double per_diagonal_norm(const SampleSpec& spec, int k) {
  if (is_symmetric_kind(spec.kind))
    return sym_norm(per_diagonal_square_sum(spec, k)).value;
  const auto [left, right] = per_diagonal_gram(spec, k);
  return std::max(sym_norm(left).value, sym_norm(right).value);
}

double sigma_param(const SampleSpec& spec) {
  const int n = spec.n;
  if (is_symmetric_kind(spec.kind)) {
    Matrix total = Matrix::Zero(n, n);
    for (const auto& vec : spec.layout.vectors)
      total += per_diagonal_square_sum(spec, vec.k);
    return std::sqrt(sym_norm(total).value / double(n));
  }
  Matrix left = Matrix::Zero(n, n);
  Matrix right = Matrix::Zero(n, n);
  for (const auto& vec : spec.layout.vectors) {
    auto [l, r] = per_diagonal_gram(spec, vec.k);
    left += l;
    right += r;
  }
  const double norm = std::max(sym_norm(left).value, sym_norm(right).value);
  return std::sqrt(norm / double(n));
}

NuResult nu_param(const SampleSpec& spec, int exact_cap) {
  if (spec.n > exact_cap) {
    NuResult out;
    out.value = nu_gershgorin_bound(spec);
    out.exact = false;
    return out;
  }
  // Cov(X) is block diagonal over the diagonal vectors (after a cell
  // permutation), one block P C P^T / n per vector with P the cell-coordinate
  // incidence. ||P C P^T|| = ||M^{1/2} C M^{1/2}|| with M the coordinate
  // multiplicity, so the norm is the max over per-vector dense norms.
  NuResult out;
  out.exact = true;
  for (std::size_t slot = 0; slot < spec.layout.vectors.size(); ++slot) {
    const Matrix& c = spec.cov(int(slot)).entries;
    const auto cells = vector_cells(spec, int(slot));
    const int dim = int(cells.size());
    Vector root_mult(dim);
    for (int m = 0; m < dim; ++m) root_mult(m) = std::sqrt(double(cells[m].size()));
    const Matrix block =
        root_mult.asDiagonal() * c * root_mult.asDiagonal() / double(spec.n);
    const NormResult r = sym_norm(block);
    if (!r.certified)
      fail(errc::no_convergence, "nu block norm failed to certify");
    out.value = std::max(out.value, r.value);
    out.residual = std::max(out.residual, r.residual);
  }
  return out;
}

double nu_param_exact(const SampleSpec& spec, int exact_cap) {
  if (spec.n > exact_cap)
    fail(errc::cap_exceeded, "exact nu capped at n = " + std::to_string(exact_cap));
  return nu_param(spec, exact_cap).value;
}

double nu_gershgorin_bound(const SampleSpec& spec) {
  return entry_cov_gershgorin(spec) / double(spec.n);
}

}  // namespace rmt

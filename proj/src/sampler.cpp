#include "rmt/sampler.hpp"

#include <cmath>
#include <map>

#include "rmt/errors.hpp"

namespace rmt {

SampleSpec SampleSpec::make(PatternKind kind, int n, CovarianceFamily family) {
  family.validate();
  SampleSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.family = std::move(family);
  spec.layout = diagonal_layout(kind, n);

  const bool per_k = spec.family.kind() == CovarianceFamily::Kind::custom;
  std::map<int, int> pool_by_dim;

  spec.pool_index.reserve(spec.layout.vectors.size());
  spec.noise_offset.reserve(spec.layout.vectors.size());
  int offset = 0;
  for (const auto& vec : spec.layout.vectors) {
    spec.noise_offset.push_back(offset);
    offset += vec.dim;
    if (!per_k) {
      const auto it = pool_by_dim.find(vec.dim);
      if (it != pool_by_dim.end()) {
        spec.pool_index.push_back(it->second);
        continue;
      }
    }
    const int pool_slot = int(spec.cov_pool.size());
    DiagonalCovariance cov = build_diagonal_cov(spec.family, vec.dim, n, vec.k);
    spec.factor_pool.push_back(factor_psd(cov));
    spec.cov_pool.push_back(std::move(cov));
    spec.pool_index.push_back(pool_slot);
    if (!per_k) pool_by_dim[vec.dim] = pool_slot;
  }
  spec.noise_dim = offset;

  spec.cell_slot.resize(std::size_t(n) * n);
  spec.cell_pos.resize(std::size_t(n) * n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const EntryAddress addr = entry_index(kind, n, i, j);
      const int slot = spec.layout.index_of(addr.k);
      spec.cell_slot[std::size_t(i - 1) * n + (j - 1)] = slot;
      spec.cell_pos[std::size_t(i - 1) * n + (j - 1)] = addr.m;
    }
  return spec;
}

double SampleSpec::covariance_floor() const {
  double floor = cov_pool.empty() ? 0.0 : cov_pool.front().entries.minCoeff();
  for (const auto& cov : cov_pool) floor = std::min(floor, cov.entries.minCoeff());
  return floor;
}

double SampleSpec::min_variance() const {
  double v = cov_pool.empty() ? 0.0 : cov_pool.front().min_variance;
  for (const auto& cov : cov_pool) v = std::min(v, cov.min_variance);
  return v;
}

double SampleSpec::max_variance() const {
  double v = 0.0;
  for (const auto& cov : cov_pool) v = std::max(v, cov.max_variance);
  return v;
}

bool SampleSpec::unit_variance(double tol) const {
  return std::abs(min_variance() - 1.0) <= tol && std::abs(max_variance() - 1.0) <= tol;
}

PatternedMatrix sample_matrix(const SampleSpec& spec, NoiseStream& stream) {
  PatternedMatrix out;
  out.spec = &spec;
  out.noise.resize(spec.noise_dim);
  stream.fill_normal(out.noise);
  out.entries = matrix_from_noise(spec, out.noise);
  return out;
}

Matrix matrix_from_noise(const SampleSpec& spec, std::span<const double> z) {
  if (int(z.size()) != spec.noise_dim)
    fail(errc::bad_parameter, "noise vector has wrong length");
  const int n = spec.n;
  const double scale = 1.0 / std::sqrt(double(n));

  // per-vector coordinate values X_k = A_k z_k (only the first rank(k)
  // coordinates of the reserved block feed the factor)
  std::vector<Vector> coords(spec.layout.vectors.size());
  for (std::size_t s = 0; s < spec.layout.vectors.size(); ++s) {
    const FactorMatrix& f = spec.factor(int(s));
    Eigen::Map<const Vector> zk(z.data() + spec.noise_offset[s], f.rank());
    coords[s] = f.a * zk;
  }

  Matrix x(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const int slot = spec.slot_of(i, j);
      const int m = spec.pos_of(i, j);
      x(i - 1, j - 1) = scale * coords[slot](m - 1);
    }
  return x;
}

double entry_covariance_exact(const SampleSpec& spec, int i, int j, int r, int s) {
  const int n = spec.n;
  if (i < 1 || i > n || j < 1 || j > n || r < 1 || r > n || s < 1 || s > n)
    fail(errc::bad_index, "cell out of range");
  const int slot_a = spec.slot_of(i, j);
  const int slot_b = spec.slot_of(r, s);
  if (slot_a != slot_b) return 0.0;
  const int ma = spec.pos_of(i, j);
  const int mb = spec.pos_of(r, s);
  return spec.cov(slot_a).entries(ma - 1, mb - 1) / double(n);
}

double trace_power(const Matrix& x, int p) {
  if (p < 1) fail(errc::bad_parameter, "power must be >= 1");
  double result = 0.0;
  switch (p) {
    case 1:
      result = x.trace();
      break;
    case 2:
      result = x.cwiseProduct(x.transpose()).sum();
      break;
    case 3: {
      const Matrix x2 = x * x;
      result = x2.cwiseProduct(x.transpose()).sum();
      break;
    }
    case 4: {
      const Matrix x2 = x * x;
      result = x2.cwiseProduct(x2.transpose()).sum();
      break;
    }
    default: {
      Matrix acc = x;
      for (int i = 1; i < p; ++i) acc = acc * x;
      result = acc.trace();
      break;
    }
  }
  if (!std::isfinite(result))
    fail(errc::overflow, "trace power overflowed to a non-finite value");
  return result;
}

}  // namespace rmt

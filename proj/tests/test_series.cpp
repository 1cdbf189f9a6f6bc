#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rmt/errors.hpp"
#include "rmt/series.hpp"
#include "rmt/wick.hpp"

using namespace rmt;

namespace {

constexpr PatternKind kAllKinds[] = {
    PatternKind::symmetric_toeplitz, PatternKind::circulant,
    PatternKind::reverse_circulant, PatternKind::symmetric_circulant,
    PatternKind::hankel};

Matrix dense_term(const SeriesTerm& term, int n) {
  Matrix b = Matrix::Zero(n, n);
  for (const auto& [i, j, value] : term.cells) b(i, j) = value;
  return b;
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("term counts follow the layout") {
  for (const auto& family :
       {CovarianceFamily::wigner(), CovarianceFamily::full_correlation(),
        CovarianceFamily::geometric_decay(0.5)}) {
    auto spec = SampleSpec::make(PatternKind::symmetric_toeplitz, 3, family);
    const auto terms = build_series(spec);
    CHECK(terms.size() == 6);  // 3 + 2 + 1
  }
}

TEST_CASE("toeplitz terms live on their diagonal") {
  auto spec = SampleSpec::make(PatternKind::symmetric_toeplitz, 3,
                               CovarianceFamily::geometric_decay(0.5));
  int nonzero_per_k[3] = {0, 0, 0};
  for (const auto& term : build_series(spec)) {
    if (!term.cells.empty()) ++nonzero_per_k[term.k];
    for (const auto& [i, j, value] : term.cells) {
      CHECK(std::abs(i - j) == term.k);
      (void)value;
    }
  }
  // full-rank factors: three diagonal terms, two k=1 terms, one k=2 term
  CHECK(nonzero_per_k[0] == 3);
  CHECK(nonzero_per_k[1] == 2);
  CHECK(nonzero_per_k[2] == 1);
}

TEST_CASE("wigner k=0 term l has its single nonzero at (l, l)") {
  auto spec = SampleSpec::make(PatternKind::symmetric_toeplitz, 4,
                               CovarianceFamily::wigner());
  for (const auto& term : build_series(spec)) {
    if (term.k != 0) continue;
    REQUIRE(term.cells.size() == 1);
    const auto& [i, j, value] = term.cells.front();
    CHECK(i == term.l - 1);
    CHECK(j == term.l - 1);
    CHECK(value == doctest::Approx(1.0));
  }
}

TEST_CASE("series replay reproduces the sampler, all kinds") {
  for (PatternKind kind : kAllKinds)
    for (int n : {1, 2, 3, 5, 8, 12}) {
      for (const auto& family :
           {CovarianceFamily::wigner(), CovarianceFamily::full_correlation(),
            CovarianceFamily::constant_off_diagonal(0.5)}) {
        auto spec = SampleSpec::make(kind, n, family);
        NoiseStream stream(404, n * 100 + int(kind));
        const PatternedMatrix x = sample_matrix(spec, stream);
        const Matrix replay = evaluate_series(spec, x.noise);
        CAPTURE(to_string(kind));
        CAPTURE(n);
        CHECK((replay - x.entries).cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
}

TEST_CASE("dilation preserves the spectral norm") {
  NoiseStream gen(31337, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + rep % 7;
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = gen.next_normal();
    const Matrix d = dilation(b);
    CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(oracle::sym_norm_dense(d) ==
          doctest::Approx(oracle::spectral_norm_dense(b)).epsilon(1e-8));
  }
}

TEST_CASE("square sums match the literal term-by-term accumulation") {
  for (PatternKind kind :
       {PatternKind::symmetric_toeplitz, PatternKind::symmetric_circulant}) {
    auto spec = SampleSpec::make(kind, 7, CovarianceFamily::geometric_decay(0.4));
    const auto terms = build_series(spec);
    for (const auto& vec : spec.layout.vectors) {
      Matrix literal = Matrix::Zero(7, 7);
      for (const auto& term : terms) {
        if (term.k != vec.k) continue;
        const Matrix b = dense_term(term, 7);
        literal += b * b;
      }
      const Matrix fast = per_diagonal_square_sum(spec, vec.k);
      CAPTURE(to_string(kind));
      CAPTURE(vec.k);
      CHECK((fast - literal).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
  for (PatternKind kind : {PatternKind::circulant, PatternKind::hankel}) {
    auto spec = SampleSpec::make(kind, 6, CovarianceFamily::constant_off_diagonal(0.6));
    const auto terms = build_series(spec);
    for (const auto& vec : spec.layout.vectors) {
      Matrix lit_left = Matrix::Zero(6, 6), lit_right = Matrix::Zero(6, 6);
      for (const auto& term : terms) {
        if (term.k != vec.k) continue;
        const Matrix b = dense_term(term, 6);
        lit_left += b * b.transpose();
        lit_right += b.transpose() * b;
      }
      const auto [left, right] = per_diagonal_gram(spec, vec.k);
      CHECK((left - lit_left).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((right - lit_right).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("per-diagonal norms at unit variance") {
  auto spec = SampleSpec::make(PatternKind::symmetric_toeplitz, 8,
                               CovarianceFamily::full_correlation());
  CHECK(per_diagonal_norm(spec, 0) == doctest::Approx(1.0).epsilon(1e-10));
  for (int k = 1; k <= 4; ++k) CHECK(per_diagonal_norm(spec, k) <= 4.0 + 1e-8);
  for (int k = 5; k <= 7; ++k) CHECK(per_diagonal_norm(spec, k) <= 1.0 + 1e-8);

  auto spec6 = SampleSpec::make(PatternKind::symmetric_toeplitz, 6,
                                CovarianceFamily::full_correlation());
  const double k2 = per_diagonal_norm(spec6, 2);
  CHECK(k2 <= 4.0 + 1e-8);
  CHECK(k2 == doctest::Approx(oracle::sym_norm_dense(per_diagonal_square_sum(spec6, 2)))
                  .epsilon(1e-8));
}

TEST_CASE("circulant and reverse circulant gram sums are the identity") {
  for (PatternKind kind : {PatternKind::circulant, PatternKind::reverse_circulant}) {
    auto spec = SampleSpec::make(kind, 6, CovarianceFamily::constant_off_diagonal(0.5));
    const Matrix eye = Matrix::Identity(6, 6);
    for (const auto& vec : spec.layout.vectors) {
      const auto [left, right] = per_diagonal_gram(spec, vec.k);
      CHECK((left - eye).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((right - eye).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(per_diagonal_norm(spec, vec.k) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("sigma parameter values") {
  // toeplitz, unit variances: sigma <= 2
  for (const auto& family :
       {CovarianceFamily::wigner(), CovarianceFamily::full_correlation(),
        CovarianceFamily::constant_off_diagonal(0.5)}) {
    for (int n : {4, 9, 16}) {
      auto spec = SampleSpec::make(PatternKind::symmetric_toeplitz, n, family);
      CHECK(sigma_param(spec) <= 2.0 + 1e-10);
    }
  }

  // circulant / reverse circulant, unit variances: sigma = 1 exactly
  for (PatternKind kind : {PatternKind::circulant, PatternKind::reverse_circulant}) {
    auto spec = SampleSpec::make(kind, 9, CovarianceFamily::geometric_decay(0.5));
    CHECK(sigma_param(spec) == doctest::Approx(1.0).epsilon(1e-10));
  }

  // dense oracle: sigma^2 n equals the norm of the accumulated square sum
  auto spec = SampleSpec::make(PatternKind::symmetric_toeplitz, 4,
                               CovarianceFamily::wigner());
  Matrix total = Matrix::Zero(4, 4);
  for (const auto& term : build_series(spec)) {
    const Matrix b = dense_term(term, 4);
    total += b * b;
  }
  const double direct = std::sqrt(oracle::sym_norm_dense(total) / 4.0);
  CHECK(sigma_param(spec) == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("nu parameter") {
  // wigner toeplitz n=4: each off-diagonal variable occupies the two mirror
  // cells, giving 2x2 blocks [[1,1],[1,1]]/n, so the norm is 2/n
  auto wig = SampleSpec::make(PatternKind::symmetric_toeplitz, 4,
                              CovarianceFamily::wigner());
  auto nu = nu_param(wig);
  CHECK(nu.exact);
  CHECK(nu.value == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(nu.value == doctest::Approx(oracle::sym_norm_dense(
                        entry_covariance_matrix(wig) / 4.0))
                        .epsilon(1e-10));

  // without the mirror pairing (non-symmetric kind) the covariance is
  // diagonal and nu = 1/n
  auto wig_c = SampleSpec::make(PatternKind::circulant, 4, CovarianceFamily::wigner());
  CHECK(nu_param(wig_c).value == doctest::Approx(0.25).epsilon(1e-10));

  // dense oracle on the 9x9 covariance at n=3
  auto full = SampleSpec::make(PatternKind::symmetric_toeplitz, 3,
                               CovarianceFamily::full_correlation());
  const Matrix sigma = entry_covariance_matrix(full) / 3.0;
  CHECK(nu_param(full).value ==
        doctest::Approx(oracle::sym_norm_dense(sigma)).epsilon(1e-8));

  // the gershgorin bound dominates the exact value
  for (PatternKind kind : kAllKinds) {
    auto spec = SampleSpec::make(kind, 6, CovarianceFamily::power_decay(0.5));
    CHECK(nu_gershgorin_bound(spec) >= nu_param(spec).value - 1e-10);
  }

  // beyond the cap only the bound is reported
  auto big = SampleSpec::make(PatternKind::circulant, 65, CovarianceFamily::wigner());
  auto capped = nu_param(big);
  CHECK_FALSE(capped.exact);
  CHECK(capped.value == doctest::Approx(nu_gershgorin_bound(big)));
  CHECK_THROWS_AS(nu_param_exact(big), Error);
}

TEST_CASE("symmetric circulant splits into two toeplitz-like halves") {
  const int n = 9;
  auto spec = SampleSpec::make(PatternKind::symmetric_circulant, n,
                               CovarianceFamily::constant_off_diagonal(0.5));
  NoiseStream stream(606, 0);
  const PatternedMatrix x = sample_matrix(spec, stream);

  const int half = (n + 1) / 2;  // ceil(n/2)
  Matrix y = Matrix::Zero(n, n), z = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (std::abs(i - j) <= half)
        y(i, j) = x.entries(i, j);
      else
        z(i, j) = x.entries(i, j);
    }
  CHECK(((y + z) - x.entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK(oracle::sym_norm_dense(x.entries) <=
        oracle::sym_norm_dense(y) + oracle::sym_norm_dense(z) + 1e-12);
}

TEST_CASE("hankel embeds in the doubled reverse circulant") {
  const int n = 6;
  // shift-invariant family so the doubled model restricts exactly
  auto rc2n = SampleSpec::make(PatternKind::reverse_circulant, 2 * n,
                               CovarianceFamily::geometric_decay(0.5));
  auto hankel = SampleSpec::make(PatternKind::hankel, n,
                                 CovarianceFamily::geometric_decay(0.5));

  for (int trial = 0; trial < 50; ++trial) {
    NoiseStream stream(717, trial);
    const PatternedMatrix big = sample_matrix(rc2n, stream);
    // rescale both to the same (unscaled-entry) convention
    const Matrix block = big.entries.topLeftCorner(n, n);
    CHECK(oracle::spectral_norm_dense(block) <=
          oracle::spectral_norm_dense(big.entries) + 1e-12);
  }

  // the block has hankel geometry: cell (i,j) of the doubled matrix reads
  // vector i+j-1, so equal anti-diagonals share a vector
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const EntryAddress addr = entry_index(PatternKind::reverse_circulant, 2 * n, i, j);
      CHECK(addr.k == i + j - 1);
    }

  // and the entry covariances inside the block match the hankel covariances
  // up to the n vs 2n scale factor
  for (const auto& [i, j, r, s] :
       std::vector<std::array<int, 4>>{{1, 2, 2, 1}, {2, 3, 3, 2}, {1, 6, 6, 1},
                                       {3, 4, 4, 3}, {1, 1, 1, 1}, {2, 5, 4, 3}}) {
    const double hank_cov = entry_covariance_exact(hankel, i, j, r, s) * n;
    const double rc_cov = entry_covariance_exact(rc2n, i, j, r, s) * 2 * n;
    CHECK(hank_cov == doctest::Approx(rc_cov).epsilon(1e-12));
  }
}

TEST_CASE("addressing errors") {
  auto spec = SampleSpec::make(PatternKind::symmetric_toeplitz, 4,
                               CovarianceFamily::wigner());
  CHECK_THROWS_AS(per_diagonal_norm(spec, 9), Error);
  CHECK_THROWS_AS(per_diagonal_square_sum(
                      SampleSpec::make(PatternKind::circulant, 4,
                                       CovarianceFamily::wigner()),
                      1),
                  Error);
}

}  // TEST_SUITE

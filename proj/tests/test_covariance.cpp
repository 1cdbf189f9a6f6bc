#include <doctest.h>

#include <cmath>

#include "rmt/covariance.hpp"
#include "rmt/errors.hpp"

using namespace rmt;

namespace {

double reconstruction_error(const DiagonalCovariance& cov, const FactorMatrix& f) {
  return (f.a * f.a.transpose() - cov.entries).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("covariance") {

TEST_CASE("family matrices") {
  auto wig = build_diagonal_cov(CovarianceFamily::wigner(), 3, 8);
  CHECK((wig.entries - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);

  auto full = build_diagonal_cov(CovarianceFamily::full_correlation(), 2, 8);
  CHECK((full.entries - Matrix::Ones(2, 2)).cwiseAbs().maxCoeff() == 0.0);

  auto geo = build_diagonal_cov(CovarianceFamily::geometric_decay(0.5), 3, 8);
  Matrix expected(3, 3);
  expected << 1, 0.5, 0.25, 0.5, 1, 0.5, 0.25, 0.5, 1;
  CHECK((geo.entries - expected).cwiseAbs().maxCoeff() == 0.0);

  // power decay reads the ambient size, not the diagonal length
  auto pd = build_diagonal_cov(CovarianceFamily::power_decay(0.5), 3, 16);
  CHECK(pd.entries(0, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(pd.entries(0, 0) == 1.0);
}

TEST_CASE("constant off-diagonal interpolates the endpoints exactly") {
  for (int dim : {1, 2, 5, 17}) {
    auto one = build_diagonal_cov(CovarianceFamily::constant_off_diagonal(1.0), dim, 32);
    auto full = build_diagonal_cov(CovarianceFamily::full_correlation(), dim, 32);
    CHECK((one.entries - full.entries).cwiseAbs().maxCoeff() == 0.0);

    auto zero = build_diagonal_cov(CovarianceFamily::constant_off_diagonal(0.0), dim, 32);
    auto wig = build_diagonal_cov(CovarianceFamily::wigner(), dim, 32);
    CHECK((zero.entries - wig.entries).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("factor examples") {
  auto id3 = build_diagonal_cov(CovarianceFamily::wigner(), 3, 8);
  auto f = factor_psd(id3);
  CHECK(f.rank() == 3);
  CHECK(reconstruction_error(id3, f) < 1e-12);
  // diagonal input keeps the coordinate order: column l has its value at row l
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      CHECK(f.a(i, l) == (i == l ? 1.0 : 0.0));

  auto ones = build_diagonal_cov(CovarianceFamily::full_correlation(), 2, 8);
  f = factor_psd(ones);
  CHECK(f.rank() == 1);
  CHECK(reconstruction_error(ones, f) < 1e-12);
  CHECK(std::abs(std::abs(f.a(0, 0)) - 1.0) < 1e-12);
  CHECK(f.a(0, 0) == doctest::Approx(f.a(1, 0)));

  auto geo = build_diagonal_cov(CovarianceFamily::geometric_decay(0.5), 3, 8);
  f = factor_psd(geo);
  CHECK(reconstruction_error(geo, f) < 1e-8);
}

TEST_CASE("factor reconstruction and row norms across families and dims") {
  const CovarianceFamily families[] = {
      CovarianceFamily::wigner(),
      CovarianceFamily::full_correlation(),
      CovarianceFamily::constant_off_diagonal(0.5),
      CovarianceFamily::constant_off_diagonal(1.0),
      CovarianceFamily::power_decay(0.5),
      CovarianceFamily::geometric_decay(0.9),
      CovarianceFamily::wigner(2.5),
      CovarianceFamily::geometric_decay(0.5, 2.0),
  };
  for (const auto& family : families)
    for (int dim : {1, 2, 3, 7, 16, 33, 64}) {
      const auto cov = build_diagonal_cov(family, dim, 64);
      const auto f = factor_psd(cov);
      CAPTURE(family.name());
      CAPTURE(dim);
      CHECK(f.rank() <= dim);
      CHECK(reconstruction_error(cov, f) <
            1e-8 * cov.entries.cwiseAbs().maxCoeff());
      const auto norms = row_norms(f);
      const double root_m = std::sqrt(cov.max_variance);
      for (int i = 0; i < dim; ++i) {
        CHECK(norms[i] == doctest::Approx(std::sqrt(cov.entries(i, i))).epsilon(1e-8));
        CHECK(norms[i] <= root_m + 1e-8);
      }
    }
}

TEST_CASE("row norm examples") {
  auto f = factor_psd(build_diagonal_cov(CovarianceFamily::wigner(), 3, 8));
  for (double r : row_norms(f)) CHECK(r == doctest::Approx(1.0));

  f = factor_psd(build_diagonal_cov(CovarianceFamily::full_correlation(), 2, 8));
  for (double r : row_norms(f)) CHECK(r == doctest::Approx(1.0));

  f = factor_psd(build_diagonal_cov(CovarianceFamily::geometric_decay(0.5, 2.0), 4, 8));
  for (double r : row_norms(f)) CHECK(r == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("rejects a non-PSD custom matrix") {
  Matrix bad(2, 2);
  bad << 1.0, 1.5, 1.5, 1.0;
  auto family = CovarianceFamily::custom({{0, bad}});
  CHECK_THROWS_AS(build_diagonal_cov(family, 2, 4, 0), Error);
  try {
    build_diagonal_cov(family, 2, 4, 0);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_psd);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(CovarianceFamily::constant_off_diagonal(1.5), Error);
  CHECK_THROWS_AS(CovarianceFamily::constant_off_diagonal(-0.1), Error);
  CHECK_THROWS_AS(CovarianceFamily::geometric_decay(1.0), Error);
  CHECK_THROWS_AS(CovarianceFamily::power_decay(0.0), Error);
  CHECK_THROWS_AS(CovarianceFamily::wigner(0.0), Error);
  CHECK_THROWS_AS(CovarianceFamily::wigner(-1.0), Error);
  // variance scale below the covariance floor
  CHECK_THROWS_AS(CovarianceFamily::constant_off_diagonal(0.9, 0.5), Error);
  CHECK_NOTHROW(CovarianceFamily::constant_off_diagonal(0.5, 0.5));
  CHECK_THROWS_AS(build_diagonal_cov(CovarianceFamily::wigner(), 0, 4), Error);
}

TEST_CASE("custom matrices are validated per vector id") {
  Matrix good(2, 2);
  good << 1.0, 0.5, 0.5, 1.0;
  auto family = CovarianceFamily::custom({{1, good}});
  auto cov = build_diagonal_cov(family, 2, 4, 1);
  CHECK(cov.entries(0, 1) == 0.5);
  CHECK_THROWS_AS(build_diagonal_cov(family, 2, 4, 2), Error);   // missing id
  CHECK_THROWS_AS(build_diagonal_cov(family, 3, 4, 1), Error);   // wrong dim
}

}  // TEST_SUITE

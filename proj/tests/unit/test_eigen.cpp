#include <doctest.h>

#include <cmath>
#include <random>

#include "clickcorr/eigen.hpp"
#include "oracles.hpp"

using namespace clickcorr;

namespace {

Matrix<double> random_symmetric(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Matrix<double> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

double residual(const Matrix<double>& a, const SymmetricEigen& e, std::size_t k) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * e.vectors(j, k);
    worst = std::max(worst, std::abs(s - e.values[k] * e.vectors(i, k)));
  }
  return worst;
}

}  // namespace

TEST_CASE("identity") {
  Matrix<double> id(5, 5);
  for (int i = 0; i < 5; ++i) id(i, i) = 1.0;
  const auto e = jacobi_eigen(id);
  for (double v : e.values) CHECK(v == 1.0);
}

TEST_CASE("two-by-two block padded with zeros") {
  Matrix<double> m(5, 5);
  m(0, 0) = 1.0;
  m(0, 1) = m(1, 0) = 0.125;
  const auto e = jacobi_eigen(m);
  CHECK(e.values.front() == doctest::Approx((1.0 - std::sqrt(17.0 / 16.0)) / 2.0).epsilon(1e-14));
  CHECK(std::abs(e.values.front() - (-0.0153882)) < 1e-7);
}

TEST_CASE("rank-one Gram matrix has zero minimum") {
  const double p = 0.37;
  Matrix<double> m(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = std::pow(p, i + j);
  const auto e = jacobi_eigen(m);
  CHECK(std::abs(e.values.front()) < 1e-14);
}

TEST_CASE("eigenvalues agree with characteristic polynomials") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const auto m2 = random_symmetric(rng, 2);
    const auto r2 = oracle::eigen2(m2(0, 0), m2(0, 1), m2(1, 1));
    const auto e2 = jacobi_eigen(m2);
    CHECK(std::abs(e2.values[0] - r2[0]) <= 1e-10);
    CHECK(std::abs(e2.values[1] - r2[1]) <= 1e-10);

    const auto m3 = random_symmetric(rng, 3);
    std::array<std::array<double, 3>, 3> a{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = m3(i, j);
    CHECK(std::abs(jacobi_eigen(m3).values[0] - oracle::min_eigen3(a)) <= 1e-10);
  }
}

TEST_CASE("eigen residuals and orthonormality") {
  std::mt19937_64 rng(78);
  for (int n = 1; n <= 9; ++n)
    for (int trial = 0; trial < 50; ++trial) {
      const auto m = random_symmetric(rng, n);
      const auto e = jacobi_eigen(m);
      for (int k = 0; k < n; ++k) CHECK(residual(m, e, k) <= 1e-10);
      for (int k = 1; k < n; ++k) CHECK(e.values[k - 1] <= e.values[k]);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double dot = 0.0;
          for (int i = 0; i < n; ++i) dot += e.vectors(i, k) * e.vectors(i, l);
          CHECK(dot == doctest::Approx(k == l ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(jacobi_eigen(Matrix<double>(2, 3)), InvalidParameter);
  CHECK_THROWS_AS(jacobi_eigen(Matrix<double>()), InvalidParameter);
  Matrix<double> asym(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(jacobi_eigen(asym), InvalidParameter);
  Matrix<double> nan(2, 2);
  nan(0, 1) = nan(1, 0) = std::nan("");
  CHECK_THROWS_AS(jacobi_eigen(nan), InvalidParameter);
}

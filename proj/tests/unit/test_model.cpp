#include <doctest.h>

#include <random>

#include "clickcorr/model.hpp"
#include "clickcorr/simulator.hpp"

using namespace clickcorr;

namespace {

Matrix<std::uint64_t> filled(int rows, int cols, std::uint64_t v) { return Matrix<std::uint64_t>(rows, cols, v); }

}  // namespace

TEST_CASE("choose is exact") {
  CHECK(choose(8, 0) == 1);
  CHECK(choose(8, 4) == 70);
  CHECK(choose(8, 9) == 0);
  CHECK(choose(3, -1) == 0);
  CHECK(choose(62, 31) == 465428353255261088ULL);
  for (int n = 1; n <= 40; ++n)
    for (int k = 1; k < n; ++k) CHECK(choose(n, k) == choose(n - 1, k - 1) + choose(n - 1, k));
}

TEST_CASE("detector config validation") {
  CHECK_NOTHROW(DetectorConfig(8, 0.5, 0.0));
  CHECK_NOTHROW(DetectorConfig(2, 1.0, 0.999));
  CHECK_THROWS_AS(DetectorConfig(1, 0.5, 0.0), InvalidParameter);
  CHECK_THROWS_AS(DetectorConfig(8, 1.5, 0.0), InvalidParameter);
  CHECK_THROWS_AS(DetectorConfig(8, -0.1, 0.0), InvalidParameter);
  CHECK_THROWS_AS(DetectorConfig(8, 0.5, 1.0), InvalidParameter);
  CHECK_THROWS_AS(DetectorConfig(8, 0.5, -1e-3), InvalidParameter);
}

TEST_CASE("dark-click conventions are inverse to each other") {
  for (double nu : {0.0, 1e-4, 0.01, 0.3}) {
    const double rate = DetectorConfig::dark_rate_from_click_probability(nu);
    CHECK(DetectorConfig::click_probability_from_dark_rate(rate) == doctest::Approx(nu).epsilon(1e-14));
    CHECK(std::exp(-rate) == doctest::Approx(1.0 - nu).epsilon(1e-14));
  }
}

TEST_CASE("normalize") {
  SUBCASE("a 1x1 count matrix has fewer than two bins") {
    CHECK_THROWS_WITH_AS(CountMatrix(filled(1, 1, 1)), doctest::Contains("bins >= 2"), DataError);
  }
  SUBCASE("uniform 3x3") {
    const auto jcd = normalize(CountMatrix(filled(3, 3, 1)));
    for (double p : jcd.probs().flat()) CHECK(p == doctest::Approx(1.0 / 9.0));
  }
  SUBCASE("two-point distribution") {
    Matrix<std::uint64_t> c(9, 9);
    c(0, 1) = 500000;
    c(1, 0) = 500000;
    const auto jcd = normalize(CountMatrix(c));
    CHECK(jcd(0, 1) == 0.5);
    CHECK(jcd(1, 0) == 0.5);
    CHECK(jcd(0, 0) == 0.0);
    CHECK(jcd.bins_a() == 8);
  }
  SUBCASE("empty dataset") {
    CHECK_THROWS_WITH_AS(normalize(CountMatrix(filled(9, 9, 0))), "empty dataset", DataError);
  }
}

TEST_CASE("normalize is scale invariant") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> count(0, 1000);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix<std::uint64_t> c(5, 7);
    for (auto& x : c.flat()) x = count(rng);
    c(0, 0) += 1;
    for (std::uint64_t k : {2u, 3u, 17u}) {
      Matrix<std::uint64_t> scaled = c;
      for (auto& x : scaled.flat()) x *= k;
      const auto p = normalize(CountMatrix(c)).probs();
      const auto q = normalize(CountMatrix(scaled)).probs();
      for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.flat()[i] == doctest::Approx(q.flat()[i]).epsilon(1e-15));
    }
  }
}

TEST_CASE("validate_distribution") {
  Matrix<double> m(3, 3);
  m(0, 0) = 0.5;
  m(1, 1) = 0.25;
  m(2, 2) = 0.25;
  CHECK_NOTHROW(validate_distribution(m));

  Matrix<double> neg = m;
  neg(0, 0) = 0.501;
  neg(0, 1) = -1e-3;
  CHECK_THROWS_WITH_AS(validate_distribution(neg), "negative probability", DataError);

  Matrix<double> short_sum = m;
  short_sum(0, 0) = 0.4;
  CHECK_THROWS_WITH_AS(validate_distribution(short_sum), doctest::Contains("not normalized"), DataError);
  CHECK_THROWS_AS(JointClickDistribution{short_sum}, DataError);
}

TEST_CASE("raw weights are renormalized exactly") {
  Matrix<double> w(3, 3, 2.0);
  const auto jcd = JointClickDistribution::renormalized(w);
  for (double p : jcd.probs().flat()) CHECK(p == doctest::Approx(1.0 / 9.0));
  CHECK_THROWS_AS(JointClickDistribution::renormalized(Matrix<double>(3, 3)), DataError);
}

TEST_CASE("photon distribution is renormalized on construction") {
  Matrix<double> p(2, 2);
  p(0, 0) = 3.0;
  p(1, 1) = 1.0;
  const JointPhotonDistribution d(p, "test");
  CHECK(d(0, 0) == doctest::Approx(0.75));
  CHECK(d.max_a() == 1);
  Matrix<double> bad(2, 2);
  bad(0, 0) = -1.0;
  CHECK_THROWS_AS(JointPhotonDistribution(bad, "bad"), InvalidParameter);
}

TEST_CASE("sampled counts converge to the generating distribution as M^-1/2") {
  const auto jcd = joint_click_distribution(build_photon_distribution(TwoModeSqueezedVacuum::from_lambda_squared(0.3)),
                                            DetectorConfig(8, 0.4, 1e-3), DetectorConfig(8, 0.4, 1e-3));
  // Mean L1 distance over seeds, for each M; slope of log(L1) vs log(M) should be -1/2.
  const std::vector<std::uint64_t> shots = {1000, 10000, 100000, 1000000};
  std::vector<double> logm, logl1;
  for (auto m : shots) {
    double l1 = 0.0;
    const int seeds = 20;
    for (int s = 0; s < seeds; ++s) {
      const auto empirical = normalize(sample_counts(jcd, m, 1000 + s));
      for (std::size_t i = 0; i < jcd.probs().size(); ++i) {
        l1 += std::abs(empirical.probs().flat()[i] - jcd.probs().flat()[i]);
      }
    }
    logm.push_back(std::log(static_cast<double>(m)));
    logl1.push_back(std::log(l1 / seeds));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < logm.size(); ++i) {
    mx += logm[i];
    my += logl1[i];
  }
  mx /= logm.size();
  my /= logm.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < logm.size(); ++i) {
    sxy += (logm[i] - mx) * (logl1[i] - my);
    sxx += (logm[i] - mx) * (logm[i] - mx);
  }
  const double slope = sxy / sxx;
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.1));
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "clickcorr/simulator.hpp"
#include "clickcorr/stats.hpp"
#include "oracles.hpp"

using namespace clickcorr;

namespace {

JointClickDistribution ideal_split_photon() {
  const DetectorConfig ideal(8, 1.0, 0.0);
  return joint_click_distribution(build_photon_distribution(SplitPhoton::from_t_squared(0.5)), ideal, ideal);
}

std::vector<double> delta(int at, int bins) {
  std::vector<double> d(bins + 1, 0.0);
  d[at] = 1.0;
  return d;
}

}  // namespace

TEST_CASE("marginals") {
  SUBCASE("product distribution") {
    const auto pa = oracle::binomial(8, 0.2);
    const auto pb = oracle::binomial(8, 0.6);
    const auto [ma, mb] = marginals(JointClickDistribution(oracle::product(pa, pb)));
    for (int k = 0; k <= 8; ++k) {
      CHECK(ma[k] == doctest::Approx(pa[k]).epsilon(1e-14));
      CHECK(mb[k] == doctest::Approx(pb[k]).epsilon(1e-14));
    }
  }
  SUBCASE("split photon") {
    const auto [ma, mb] = marginals(ideal_split_photon());
    CHECK(ma[0] == doctest::Approx(0.5));
    CHECK(ma[1] == doctest::Approx(0.5));
  }
  SUBCASE("tmsv marginal is the thermal single-arm distribution") {
    const double l2 = 0.3;
    const DetectorConfig cfg(8, 0.4, 1e-3);
    const auto jcd = joint_click_distribution(
        build_photon_distribution(TwoModeSqueezedVacuum::from_lambda_squared(l2)), cfg, cfg);
    // Thermal photons on A alone, B in vacuum.
    int n_max = 0;
    while (std::pow(l2, n_max + 1) >= 1e-14) ++n_max;
    Matrix<double> thermal(n_max + 1, 1);
    for (int n = 0; n <= n_max; ++n) thermal(n, 0) = (1 - l2) * std::pow(l2, n);
    const auto single = joint_click_distribution(JointPhotonDistribution(thermal, "thermal"), cfg, cfg);
    const auto [ma, mb] = marginals(jcd);
    const auto [sa, sb] = marginals(single);
    for (int k = 0; k <= 8; ++k) {
      CHECK(ma[k] == doctest::Approx(sa[k]).epsilon(1e-11));
      CHECK(mb[k] == doctest::Approx(sa[k]).epsilon(1e-11));
    }
  }
}

TEST_CASE("conditional distributions") {
  const auto sp = ideal_split_photon();
  const auto given1 = conditional(sp, 1);
  CHECK(given1[0] == doctest::Approx(1.0));
  for (int b = 1; b <= 8; ++b) CHECK(given1[b] == doctest::Approx(0.0));
  CHECK_THROWS_WITH_AS(conditional(sp, 5), doctest::Contains("unsupported condition"), UndefinedStatistic);

  const auto pb = oracle::binomial(8, 0.3);
  const JointClickDistribution indep(oracle::product(oracle::binomial(8, 0.1), pb));
  for (int a = 0; a <= 8; ++a) {
    const auto c = conditional(indep, a);
    for (int b = 0; b <= 8; ++b) CHECK(c[b] == doctest::Approx(pb[b]).epsilon(1e-12));
  }
}

TEST_CASE("mean, variance, covariance") {
  const auto d = delta(1, 8);
  CHECK(mean(d) == 1.0);
  CHECK(variance(d) == 0.0);

  const std::vector<double> uniform(9, 1.0 / 9.0);
  CHECK(mean(uniform) == doctest::Approx(4.0));
  CHECK(variance(uniform) == doctest::Approx(20.0 / 3.0));

  CHECK(covariance(ideal_split_photon()) == doctest::Approx(-0.25).epsilon(1e-14));
}

TEST_CASE("normal moments") {
  SUBCASE("binomial fixed point") {
    for (int bins : {2, 5, 8, 12})
      for (double p : {0.0, 0.01, 0.37, 0.9, 1.0}) {
        const auto d = oracle::binomial(bins, p);
        for (int m = 0; m <= bins; ++m) CHECK(normal_moment(d, m) == doctest::Approx(std::pow(p, m)).epsilon(1e-12));
      }
  }
  SUBCASE("single click out of eight") {
    const auto d = delta(1, 8);
    CHECK(normal_moment(d, 1) == doctest::Approx(1.0 / 8.0));
    for (int m = 2; m <= 8; ++m) CHECK(normal_moment(d, m) == 0.0);
  }
  SUBCASE("order zero and range") {
    const auto d = oracle::binomial(8, 0.4);
    CHECK(normal_moment(d, 0) == 1.0);
    CHECK_THROWS_AS(normal_moment(d, 9), InvalidParameter);
    CHECK_THROWS_AS(normal_moment(d, -1), InvalidParameter);
  }
  SUBCASE("conditional moments of the ideal split photon") {
    const auto sp = ideal_split_photon();
    const auto m0 = conditional_normal_moments(sp, 0, 4);
    REQUIRE(m0.max_order() == 4);
    CHECK(m0.values[0] == 1.0);
    CHECK(m0.values[1] == doctest::Approx(0.125));
    for (int m = 2; m <= 4; ++m) CHECK(m0.values[m] == doctest::Approx(0.0));
    const auto m1 = conditional_normal_moments(sp, 1, 4);
    CHECK(m1.values[0] == 1.0);
    for (int m = 1; m <= 4; ++m) CHECK(m1.values[m] == doctest::Approx(0.0));
  }
  SUBCASE("independent coherent arms") {
    const double p = oracle::coherent_bin_click(1.3, 8, 0.7, 1e-3);
    const auto jcd = joint_click_distribution(build_photon_distribution(CoherentState{0.8, 1.3}),
                                              DetectorConfig(8, 0.7, 1e-3), DetectorConfig(8, 0.7, 1e-3));
    for (int a = 0; a <= 8; ++a) {
      const auto m = conditional_normal_moments(jcd, a, 4);
      for (int k = 0; k <= 4; ++k) CHECK(m.values[k] == doctest::Approx(std::pow(p, k)).epsilon(1e-9));
      CHECK(m.in_unit_range());
    }
  }
  SUBCASE("unit range flag") {
    NormalMoments m{{1.0, -0.01}};
    CHECK_FALSE(m.in_unit_range());
  }
}

TEST_CASE("second-moment identities on random distributions") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const int na = 8, nb = 8;
    const JointClickDistribution jcd(oracle::random_distribution(rng, na + 1, nb + 1, trial % 3 == 0 ? 0.5 : 0.0));
    const auto [ma, mb] = marginals(jcd);

    // Variance of the click projector from first two factorial moments.
    for (const auto* d : {&ma, &mb}) {
      const int n = static_cast<int>(d->size()) - 1;
      const double lhs = normal_moment(*d, 2) - normal_moment(*d, 1) * normal_moment(*d, 1);
      const double e = oracle::brute_mean(*d);
      const double var = oracle::brute_second(*d) - e * e;
      const double rhs = (n * var - e * (n - e)) / (double(n) * n * (n - 1));
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }

    // Joint first moment vs covariance.
    double eab = 0.0;
    for (int a = 0; a <= na; ++a)
      for (int b = 0; b <= nb; ++b) eab += a * b * jcd(a, b);
    const double lhs = na * nb * (eab / (na * nb) - normal_moment(ma, 1) * normal_moment(mb, 1));
    CHECK(std::abs(lhs - covariance(jcd)) <= 1e-12);

    // Law of total variance (conditions with c(a) > 0).
    double mean_var = 0.0, mean_e = 0.0, mean_e2 = 0.0;
    for (int a = 0; a <= na; ++a) {
      if (ma[a] == 0.0) continue;
      const auto c = conditional(jcd, a);
      const double e = mean(c);
      mean_var += ma[a] * variance(c);
      mean_e += ma[a] * e;
      mean_e2 += ma[a] * e * e;
    }
    CHECK(std::abs(variance(mb) - (mean_var + mean_e2 - mean_e * mean_e)) <= 1e-12);
  }
}

#include <doctest.h>

#include <atomic>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "clickcorr/random.hpp"

using namespace clickcorr;

TEST_CASE("derived seeds are distinct and stable") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(0, 1) != derive_seed(1, 0));
}

TEST_CASE("multinomial draw conserves trials and respects zero cells") {
  auto rng = make_engine(7, 0);
  const std::vector<double> probs = {0.0, 0.2, 0.0, 0.5, 0.3, 0.0};
  std::vector<std::uint64_t> out(probs.size(), 99);
  draw_multinomial(rng, 100000, probs, out);
  CHECK(std::accumulate(out.begin(), out.end(), std::uint64_t{0}) == 100000);
  CHECK(out[0] == 0);
  CHECK(out[2] == 0);
  CHECK(out[5] == 0);
  CHECK(out[1] == doctest::Approx(20000).epsilon(0.03));
  CHECK(out[3] == doctest::Approx(50000).epsilon(0.03));
}

TEST_CASE("multinomial draw accepts unnormalized weights") {
  auto rng = make_engine(3, 0);
  const std::vector<double> weights = {2.0, 2.0};
  std::vector<std::uint64_t> out(2);
  draw_multinomial(rng, 200000, weights, out);
  CHECK(out[0] + out[1] == 200000);
  CHECK(out[0] == doctest::Approx(100000).epsilon(0.02));
}

TEST_CASE("multinomial draw with all-zero weights yields nothing") {
  auto rng = make_engine(3, 0);
  const std::vector<double> weights = {0.0, 0.0};
  std::vector<std::uint64_t> out(2, 5);
  draw_multinomial(rng, 10, weights, out);
  CHECK(out[0] == 0);
  CHECK(out[1] == 0);
}

TEST_CASE("parallel_for visits every index once for any thread count") {
  for (unsigned threads : {0u, 1u, 2u, 7u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, threads);
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS_AS(parallel_for(
                      100,
                      [](std::size_t i) {
                        if (i == 42) throw std::runtime_error("boom");
                      },
                      4),
                  std::runtime_error);
}

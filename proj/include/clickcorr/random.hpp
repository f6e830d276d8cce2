#pragma once

// Seeding and parallel execution helpers for reproducible sampling.
//
// Every random stream is an independent std::mt19937_64 whose seed is derived
// from (root seed, stream index) with SplitMix64. Work is partitioned into
// streams by a fixed rule, so results never depend on the thread count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>

namespace clickcorr {

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of sub-stream `stream` under `root`.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

inline Engine make_engine(std::uint64_t root, std::uint64_t stream) {
  return Engine(derive_seed(root, stream));
}

/// Fresh seed from system entropy.
std::uint64_t entropy_seed();

/// Multinomial draw of `trials` outcomes over `probs` by sequential conditional
/// binomials; `out` receives the counts. `probs` must be non-negative; it need
/// not sum exactly to one.
void draw_multinomial(Engine& rng, std::uint64_t trials, std::span<const double> probs,
                      std::span<std::uint64_t> out);

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = hardware
/// concurrency). Each index is processed exactly once.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace clickcorr

#include "clickcorr/random.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace clickcorr {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  return splitmix64(splitmix64(root) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void draw_multinomial(Engine& rng, std::uint64_t trials, std::span<const double> probs,
                      std::span<std::uint64_t> out) {
  std::fill(out.begin(), out.end(), std::uint64_t{0});
  std::size_t last = probs.size();
  double remaining_mass = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) {
      remaining_mass += probs[i];
      last = i;
    }
  }
  if (last == probs.size()) return;
  std::uint64_t remaining = trials;
  for (std::size_t i = 0; i < last && remaining > 0; ++i) {
    if (!(probs[i] > 0.0)) continue;
    const double p = std::clamp(probs[i] / remaining_mass, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> binom(remaining, p);
    const std::uint64_t k = binom(rng);
    out[i] = k;
    remaining -= k;
    remaining_mass -= probs[i];
  }
  out[last] += remaining;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace clickcorr

#include "clickcorr/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "clickcorr/random.hpp"

namespace clickcorr {

namespace {

constexpr std::uint64_t kSampleChunk = 1ULL << 20;
constexpr std::uint64_t kPhysicalChunk = 1ULL << 16;

bool in_open_unit_interval(double x) { return x > 0.0 && x < 1.0; }

JointPhotonDistribution tmsv_distribution(double lambda) {
  const double l2 = lambda * lambda;
  // Tail beyond n_max is l2^(n_max + 1).
  int n_max = 0;
  double tail = l2;
  while (tail >= kTruncationTail) {
    tail *= l2;
    ++n_max;
  }
  Matrix<double> probs(n_max + 1, n_max + 1);
  double weight = 1.0 - l2;
  for (int n = 0; n <= n_max; ++n) {
    probs(n, n) = weight;
    weight *= l2;
  }
  std::ostringstream label;
  label.precision(17);
  label << "tmsv(lambda2=" << l2 << ")";
  return JointPhotonDistribution(std::move(probs), label.str());
}

}  // namespace

TwoModeSqueezedVacuum TwoModeSqueezedVacuum::from_lambda_squared(double lambda2) {
  if (!in_open_unit_interval(lambda2)) throw InvalidParameter("lambda^2 must lie in (0, 1)");
  return {std::sqrt(lambda2)};
}

SplitPhoton SplitPhoton::from_t_squared(double t2) {
  if (!in_open_unit_interval(t2)) throw InvalidParameter("t^2 must lie in (0, 1)");
  return {std::sqrt(t2)};
}

std::vector<double> truncated_poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw InvalidParameter("mean photon number must be finite and >= 0");
  }
  if (mean == 0.0) return {1.0};
  std::vector<double> pmf;
  double cdf = 0.0;
  for (int n = 0;; ++n) {
    const double logp = n * std::log(mean) - mean - std::lgamma(n + 1.0);
    const double p = std::exp(logp);
    pmf.push_back(p);
    cdf += p;
    // Past the mode the pmf decreases; stop once the remaining mass is negligible.
    if (n > mean && 1.0 - cdf < kTruncationTail) break;
    if (n > 100000) throw NumericalError("Poisson truncation did not converge");
  }
  return pmf;
}

void validate_state(const StateSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CoherentState>) {
          if (!(s.mean_a >= 0.0) || !(s.mean_b >= 0.0) || !std::isfinite(s.mean_a) ||
              !std::isfinite(s.mean_b)) {
            throw InvalidParameter("coherent mean photon numbers must be finite and >= 0");
          }
        } else if constexpr (std::is_same_v<T, TwoModeSqueezedVacuum>) {
          if (!in_open_unit_interval(s.lambda)) throw InvalidParameter("lambda must lie in (0, 1)");
        } else if constexpr (std::is_same_v<T, SplitPhoton>) {
          if (!in_open_unit_interval(s.t)) throw InvalidParameter("t must lie in (0, 1)");
        }
      },
      spec);
}

std::string describe(const StateSpec& spec) {
  std::ostringstream out;
  out.precision(6);
  std::visit(
      [&out](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CoherentState>) {
          out << "coherent(mean_a=" << s.mean_a << ", mean_b=" << s.mean_b << ")";
        } else if constexpr (std::is_same_v<T, TwoModeSqueezedVacuum>) {
          out << "tmsv(lambda2=" << s.lambda * s.lambda << ")";
        } else if constexpr (std::is_same_v<T, SplitPhoton>) {
          out << "split_photon(t2=" << s.t * s.t << ")";
        } else {
          out << "custom(" << s.distribution.label() << ")";
        }
      },
      spec);
  return out.str();
}

JointPhotonDistribution build_photon_distribution(const StateSpec& spec) {
  validate_state(spec);
  return std::visit(
      [&spec](const auto& s) -> JointPhotonDistribution {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CoherentState>) {
          const auto pa = truncated_poisson(s.mean_a);
          const auto pb = truncated_poisson(s.mean_b);
          Matrix<double> probs(pa.size(), pb.size());
          for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t j = 0; j < pb.size(); ++j) probs(i, j) = pa[i] * pb[j];
          return JointPhotonDistribution(std::move(probs), describe(spec));
        } else if constexpr (std::is_same_v<T, TwoModeSqueezedVacuum>) {
          return tmsv_distribution(s.lambda);
        } else if constexpr (std::is_same_v<T, SplitPhoton>) {
          Matrix<double> probs(2, 2);
          probs(1, 0) = s.t * s.t;
          probs(0, 1) = 1.0 - s.t * s.t;
          return JointPhotonDistribution(std::move(probs), describe(spec));
        } else {
          return s.distribution;
        }
      },
      spec);
}

std::vector<double> fock_click_kernel(int photons, const DetectorConfig& cfg) {
  if (photons < 0) throw InvalidParameter("photon number must be >= 0");
  const int bins = cfg.bins();
  const long double eta = cfg.efficiency();
  const long double stay_dark = 1.0L - static_cast<long double>(cfg.dark_click());
  std::vector<double> kernel(bins + 1);
  for (int a = 0; a <= bins; ++a) {
    long double sum = 0.0L;
    for (int j = 0; j <= a; ++j) {
      const int dark_set = bins - a + j;
      const long double miss = 1.0L - dark_set * eta / bins;
      const long double term = static_cast<long double>(choose(a, j)) *
                               std::pow(stay_dark, dark_set) *
                               std::pow(std::max(miss, 0.0L), photons);
      sum += (j % 2 == 0) ? term : -term;
    }
    // Alternating sums leave O(1e-16) negatives where the true value is zero.
    kernel[a] = static_cast<double>(std::max(0.0L, static_cast<long double>(choose(bins, a)) * sum));
  }
  return kernel;
}

Matrix<double> click_kernel_matrix(int max_photons, const DetectorConfig& cfg) {
  Matrix<double> k(max_photons + 1, cfg.bins() + 1);
  for (int n = 0; n <= max_photons; ++n) {
    const auto row = fock_click_kernel(n, cfg);
    std::copy(row.begin(), row.end(), k.row(n).begin());
  }
  return k;
}

JointClickDistribution joint_click_distribution(const JointPhotonDistribution& photons,
                                                const DetectorConfig& cfg_a,
                                                const DetectorConfig& cfg_b) {
  const auto ka = click_kernel_matrix(photons.max_a(), cfg_a);
  const auto kb = click_kernel_matrix(photons.max_b(), cfg_b);
  // t(n_A, b) = Σ_{n_B} p(n_A, n_B) K_B(b|n_B), then c(a, b) = Σ_{n_A} K_A(a|n_A) t(n_A, b).
  Matrix<double> partial(photons.max_a() + 1, cfg_b.bins() + 1);
  for (int na = 0; na <= photons.max_a(); ++na)
    for (int nb = 0; nb <= photons.max_b(); ++nb) {
      const double p = photons(na, nb);
      if (p == 0.0) continue;
      for (int b = 0; b <= cfg_b.bins(); ++b) partial(na, b) += p * kb(nb, b);
    }
  Matrix<double> c(cfg_a.bins() + 1, cfg_b.bins() + 1);
  for (int na = 0; na <= photons.max_a(); ++na)
    for (int a = 0; a <= cfg_a.bins(); ++a) {
      const double k = ka(na, a);
      if (k == 0.0) continue;
      for (int b = 0; b <= cfg_b.bins(); ++b) c(a, b) += k * partial(na, b);
    }
  return JointClickDistribution::renormalized(std::move(c));
}

CountMatrix sample_counts(const JointClickDistribution& jcd, std::uint64_t shots,
                          std::uint64_t seed, unsigned threads) {
  if (shots == 0) throw InvalidParameter("shots must be >= 1");
  const auto& probs = jcd.probs();
  const std::size_t chunks = (shots + kSampleChunk - 1) / kSampleChunk;
  std::vector<Matrix<std::uint64_t>> partial(chunks, Matrix<std::uint64_t>(probs.rows(), probs.cols()));
  parallel_for(
      chunks,
      [&](std::size_t i) {
        const std::uint64_t n = std::min(kSampleChunk, shots - i * kSampleChunk);
        auto rng = make_engine(seed, i);
        draw_multinomial(rng, n, probs.flat(), partial[i].flat());
      },
      threads);
  Matrix<std::uint64_t> total(probs.rows(), probs.cols());
  for (const auto& p : partial)
    for (std::size_t k = 0; k < p.size(); ++k) total.flat()[k] += p.flat()[k];
  return CountMatrix(std::move(total));
}

CountMatrix sample_counts_physical(const JointPhotonDistribution& photons,
                                   const DetectorConfig& cfg_a, const DetectorConfig& cfg_b,
                                   std::uint64_t shots, std::uint64_t seed, unsigned threads) {
  if (shots == 0) throw InvalidParameter("shots must be >= 1");
  const std::size_t cols = photons.probs().cols();
  const auto weights = photons.probs().flat();
  const std::size_t chunks = (shots + kPhysicalChunk - 1) / kPhysicalChunk;
  const std::size_t rows_out = cfg_a.bins() + 1;
  const std::size_t cols_out = cfg_b.bins() + 1;
  std::vector<Matrix<std::uint64_t>> partial(chunks, Matrix<std::uint64_t>(rows_out, cols_out));

  parallel_for(
      chunks,
      [&](std::size_t chunk) {
        auto rng = make_engine(seed, chunk);
        std::discrete_distribution<std::size_t> pair(weights.begin(), weights.end());
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        auto clicks = [&](int n, const DetectorConfig& cfg) {
          std::uniform_int_distribution<int> bin(0, cfg.bins() - 1);
          std::uint64_t fired = 0;
          for (int k = 0; k < n; ++k) {
            const int target = bin(rng);
            if (unit(rng) < cfg.efficiency()) fired |= std::uint64_t{1} << target;
          }
          if (cfg.dark_click() > 0.0) {
            for (int b = 0; b < cfg.bins(); ++b)
              if (unit(rng) < cfg.dark_click()) fired |= std::uint64_t{1} << b;
          }
          return std::popcount(fired);
        };
        const std::uint64_t n = std::min(kPhysicalChunk, shots - chunk * kPhysicalChunk);
        for (std::uint64_t s = 0; s < n; ++s) {
          const std::size_t idx = pair(rng);
          const int na = static_cast<int>(idx / cols);
          const int nb = static_cast<int>(idx % cols);
          const int a = clicks(na, cfg_a);
          const int b = clicks(nb, cfg_b);
          ++partial[chunk](a, b);
        }
      },
      threads);

  Matrix<std::uint64_t> total(rows_out, cols_out);
  for (const auto& p : partial)
    for (std::size_t k = 0; k < p.size(); ++k) total.flat()[k] += p.flat()[k];
  return CountMatrix(std::move(total));
}

}  // namespace clickcorr

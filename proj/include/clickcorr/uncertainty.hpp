#pragma once

// Nonparametric bootstrap of every reported statistic.

#include <cstdint>
#include <vector>

#include "clickcorr/criteria.hpp"
#include "clickcorr/model.hpp"

namespace clickcorr {

struct BootstrapConfig {
  int replicates = 1000;
  std::uint64_t seed = 0;
  /// Statistics that receive an error estimate; empty selects all.
  std::vector<Statistic> statistics;
  /// Worker threads; 0 = hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

struct BootstrapResult {
  StatisticErrors errors{};
  int replicates = 0;
  std::uint64_t seed = 0;
};

/// Replicates beyond which a statistic counts as undefined (fraction of replicates).
inline constexpr double kMaxDropFraction = 0.5;

/// Draws `replicates` multinomial resamples of the M shots from the empirical
/// distribution, recomputes every statistic on each, and reports the sample
/// standard deviation. Replicates where a statistic is undefined are dropped;
/// above kMaxDropFraction the statistic is flagged undefined.
BootstrapResult bootstrap(const CountMatrix& counts, const BootstrapConfig& cfg);

/// normalize + bootstrap + evaluate_all, with shot counts and provenance filled in.
CriteriaReport analyze_counts(const CountMatrix& counts, const BootstrapConfig& cfg,
                              double threshold = kDefaultSignificance);

}  // namespace clickcorr

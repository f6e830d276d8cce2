#pragma once

// Descriptive statistics of click distributions and extraction of normally
// ordered moments ⟨:π̂^m:⟩ from click-number distributions.

#include <span>
#include <utility>
#include <vector>

#include "clickcorr/model.hpp"

namespace clickcorr {

/// (c_A(a), c_B(b)): row and column sums of the joint distribution.
std::pair<std::vector<double>, std::vector<double>> marginals(const JointClickDistribution& jcd);

/// c(b|a) = c(a, b) / c_A(a). Throws UndefinedStatistic when c_A(a) = 0.
std::vector<double> conditional(const JointClickDistribution& jcd, int a);

/// Moments of a distribution over outcomes 0..dist.size()-1.
double mean(std::span<const double> dist);
double variance(std::span<const double> dist);
double covariance(const JointClickDistribution& jcd);

/// ⟨:π̂^m:⟩ = Σ_b [C(b, m) / C(N, m)] c(b), N = dist.size() - 1.
/// Throws InvalidParameter when m < 0 or m > N.
double normal_moment(std::span<const double> dist, int order);

/// Normally ordered moments ⟨:π̂^m:⟩, m = 0..m_max. values[0] is 1.
///
/// Moments of empirical data may leave [0, 1]; they are kept unclipped and
/// in_unit_range() reports it.
struct NormalMoments {
  std::vector<double> values;

  int max_order() const { return static_cast<int>(values.size()) - 1; }
  /// True when every value lies in [0, 1] up to rounding (1e-12).
  bool in_unit_range() const;
};

NormalMoments normal_moments(std::span<const double> dist, int max_order);

/// Moments of c(·|a) up to `max_order`.
NormalMoments conditional_normal_moments(const JointClickDistribution& jcd, int a, int max_order);

}  // namespace clickcorr

#include "clickcorr/stats.hpp"

#include <string>

namespace clickcorr {

std::pair<std::vector<double>, std::vector<double>> marginals(const JointClickDistribution& jcd) {
  std::vector<double> ca(jcd.bins_a() + 1, 0.0);
  std::vector<double> cb(jcd.bins_b() + 1, 0.0);
  for (int a = 0; a <= jcd.bins_a(); ++a)
    for (int b = 0; b <= jcd.bins_b(); ++b) {
      ca[a] += jcd(a, b);
      cb[b] += jcd(a, b);
    }
  return {std::move(ca), std::move(cb)};
}

std::vector<double> conditional(const JointClickDistribution& jcd, int a) {
  if (a < 0 || a > jcd.bins_a()) throw InvalidParameter("condition out of range");
  const auto row = jcd.probs().row(a);
  double ca = 0.0;
  for (double p : row) ca += p;
  if (!(ca > 0.0)) {
    throw UndefinedStatistic("unsupported condition: c(a=" + std::to_string(a) + ") = 0");
  }
  std::vector<double> cond(row.begin(), row.end());
  for (double& p : cond) p /= ca;
  return cond;
}

double mean(std::span<const double> dist) {
  double m = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) m += static_cast<double>(k) * dist[k];
  return m;
}

double variance(std::span<const double> dist) {
  // Two passes so that a point mass has exactly zero variance.
  const double m = mean(dist);
  double v = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    const double d = static_cast<double>(k) - m;
    v += d * d * dist[k];
  }
  return v;
}

double covariance(const JointClickDistribution& jcd) {
  const auto [ca, cb] = marginals(jcd);
  const double ma = mean(ca);
  const double mb = mean(cb);
  double cov = 0.0;
  for (int a = 0; a <= jcd.bins_a(); ++a)
    for (int b = 0; b <= jcd.bins_b(); ++b) cov += (a - ma) * (b - mb) * jcd(a, b);
  return cov;
}

double normal_moment(std::span<const double> dist, int order) {
  const int bins = static_cast<int>(dist.size()) - 1;
  if (order < 0 || order > bins) {
    throw InvalidParameter("moment order " + std::to_string(order) + " outside [0, " +
                           std::to_string(bins) + "]");
  }
  if (order == 0) return 1.0;
  const double denom = static_cast<double>(choose(bins, order));
  double m = 0.0;
  for (int b = order; b <= bins; ++b) m += static_cast<double>(choose(b, order)) * dist[b];
  return m / denom;
}

bool NormalMoments::in_unit_range() const {
  constexpr double slack = 1e-12;
  for (double v : values)
    if (v < -slack || v > 1.0 + slack) return false;
  return true;
}

NormalMoments normal_moments(std::span<const double> dist, int max_order) {
  NormalMoments out;
  out.values.reserve(max_order + 1);
  for (int m = 0; m <= max_order; ++m) out.values.push_back(normal_moment(dist, m));
  return out;
}

NormalMoments conditional_normal_moments(const JointClickDistribution& jcd, int a, int max_order) {
  if (max_order > jcd.bins_b()) throw InvalidParameter("moment order exceeds bins_b");
  return normal_moments(conditional(jcd, a), max_order);
}

}  // namespace clickcorr

#include "clickcorr/uncertainty.hpp"

#include <cmath>

#include "clickcorr/random.hpp"

namespace clickcorr {

BootstrapResult bootstrap(const CountMatrix& counts, const BootstrapConfig& cfg) {
  if (cfg.replicates < 2) throw InvalidParameter("bootstrap needs at least 2 replicates");
  const auto empirical = normalize(counts);
  const auto& probs = empirical.probs();
  const std::size_t replicates = static_cast<std::size_t>(cfg.replicates);

  std::vector<StatisticValues> samples(replicates);
  parallel_for(
      replicates,
      [&](std::size_t r) {
        auto rng = make_engine(cfg.seed, r);
        Matrix<std::uint64_t> resampled(probs.rows(), probs.cols());
        draw_multinomial(rng, counts.total(), probs.flat(), resampled.flat());
        samples[r] = compute_statistics(normalize(CountMatrix(std::move(resampled))));
      },
      cfg.threads);

  std::array<bool, kStatisticCount> selected{};
  if (cfg.statistics.empty()) {
    selected.fill(true);
  } else {
    for (Statistic s : cfg.statistics) selected[index(s)] = true;
  }

  BootstrapResult result;
  result.replicates = cfg.replicates;
  result.seed = cfg.seed;
  for (std::size_t i = 0; i < kStatisticCount; ++i) {
    StatisticError& e = result.errors[i];
    if (!selected[i]) {
      e.defined = false;
      continue;
    }
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& s : samples)
      if (s[i]) {
        sum += *s[i];
        ++n;
      }
    e.drop_fraction = 1.0 - static_cast<double>(n) / static_cast<double>(replicates);
    if (n < 2 || e.drop_fraction > kMaxDropFraction) {
      e.defined = false;
      continue;
    }
    const double m = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& s : samples)
      if (s[i]) ss += (*s[i] - m) * (*s[i] - m);
    e.std_error = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return result;
}

CriteriaReport analyze_counts(const CountMatrix& counts, const BootstrapConfig& cfg, double threshold) {
  const auto jcd = normalize(counts);
  const auto boot = bootstrap(counts, cfg);
  auto report = evaluate_all(jcd, &boot.errors, threshold);
  report.shots = counts.total();
  report.bootstrap_replicates = boot.replicates;
  report.bootstrap_seed = boot.seed;
  for (auto& c : report.conditions) c.shots = counts.row_total(c.condition);
  for (std::size_t i = 0; i < kStatisticCount; ++i) {
    const auto& e = report.statistics[i];
    if (e.value && !e.error_defined) {
      report.warnings.push_back(std::string(statistic_name(static_cast<Statistic>(i))) +
                                ": undefined on more than half of the bootstrap replicates");
    }
  }
  return report;
}

}  // namespace clickcorr

#include "clickcorr/criteria.hpp"

#include <cmath>
#include <string>

#include "clickcorr/eigen.hpp"

namespace clickcorr {

namespace {

constexpr std::array<std::string_view, kStatisticCount> kStatisticNames = {
    "summed_click_mean", "q_a",   "q_b",          "kappa",        "kappa_cl_max",
    "kappa_margin",      "gamma", "gamma_cl_max", "gamma_margin", "frak_n",
};

double marginal_b_variance(const JointClickDistribution& jcd) {
  const double var = variance(marginals(jcd).second);
  if (!(var > 0.0)) throw UndefinedStatistic("no variability in B");
  return var;
}

template <typename F>
std::optional<double> guarded(F&& f) {
  try {
    const double v = f();
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const UndefinedStatistic&) {
    return std::nullopt;
  }
}

Verdict decide(const std::optional<double>& margin, const StatisticError* error, double threshold) {
  Verdict v;
  if (!margin) {
    v.state = VerdictState::Undetermined;
    v.note = "statistic undefined";
    return v;
  }
  v.margin = margin;
  if (error) {
    if (!error->defined) {
      v.state = VerdictState::Undetermined;
      v.note = "standard error undefined";
      return v;
    }
    v.margin_std_error = error->std_error;
  }
  const double m = *margin;
  if (v.margin_std_error > 0.0) v.significance_sigmas = m / v.margin_std_error;
  const bool violated = m > threshold * v.margin_std_error && m > kMarginFloor;
  v.state = violated ? VerdictState::Violated : VerdictState::NotViolated;
  return v;
}

}  // namespace

double binomial_q(std::span<const double> marginal) {
  const double bins = static_cast<double>(marginal.size()) - 1.0;
  const double e = mean(marginal);
  if (!(e > 0.0) || !(e < bins)) throw UndefinedStatistic("degenerate marginal");
  return bins * variance(marginal) / (e * (bins - e)) - 1.0;
}

double kappa(const JointClickDistribution& jcd) {
  const double var_b = marginal_b_variance(jcd);
  const auto ca = marginals(jcd).first;
  double mean_conditional_variance = 0.0;
  for (int a = 0; a <= jcd.bins_a(); ++a) {
    if (!(ca[a] > 0.0)) continue;
    mean_conditional_variance += ca[a] * variance(conditional(jcd, a));
  }
  return 1.0 - mean_conditional_variance / var_b;
}

double kappa_cl_max(const JointClickDistribution& jcd) {
  const double var_b = marginal_b_variance(jcd);
  const auto ca = marginals(jcd).first;
  const double nb = jcd.bins_b();
  double binomial_variance = 0.0;
  for (int a = 0; a <= jcd.bins_a(); ++a) {
    if (!(ca[a] > 0.0)) continue;
    const double e = mean(conditional(jcd, a));
    binomial_variance += ca[a] * e * (nb - e);
  }
  return 1.0 - binomial_variance / (nb * var_b);
}

double pearson(const JointClickDistribution& jcd) {
  const auto [ca, cb] = marginals(jcd);
  const double var_a = variance(ca);
  const double var_b = variance(cb);
  if (!(var_a > 0.0) || !(var_b > 0.0)) throw UndefinedStatistic("zero variance in a marginal");
  return covariance(jcd) / std::sqrt(var_a * var_b);
}

double pearson_cl_max(const JointClickDistribution& jcd) {
  const auto [ca, cb] = marginals(jcd);
  const double qa = binomial_q(ca);
  const double qb = binomial_q(cb);
  const double denom_a = qa + 1.0;
  const double denom_b = qb + 1.0;
  if (std::abs(denom_a) < 1e-15 || std::abs(denom_b) < 1e-15) throw UndefinedStatistic("degenerate Q");
  const double na = jcd.bins_a();
  const double nb = jcd.bins_b();
  return std::sqrt(std::abs(na * nb * qa * qb / ((na - 1.0) * (nb - 1.0) * denom_a * denom_b)));
}

MomentMatrix moment_matrix(const JointClickDistribution& jcd, int a) {
  const int half = jcd.bins_b() / 2;
  const auto moments = conditional_normal_moments(jcd, a, 2 * half);
  MomentMatrix m{a, Matrix<double>(half + 1, half + 1)};
  for (int i = 0; i <= half; ++i)
    for (int j = 0; j <= half; ++j) m.entries(i, j) = moments.values[i + j];
  return m;
}

MinEigen min_eigenvalue(const MomentMatrix& m) {
  const auto eig = jacobi_eigen(m.entries);
  MinEigen out;
  out.value = eig.values.front();
  out.vector.resize(m.dim());
  for (int i = 0; i < m.dim(); ++i) out.vector[i] = eig.vectors(i, 0);
  return out;
}

NonclassicalityNumber conditional_nonclassicality_number(const JointClickDistribution& jcd) {
  const auto ca = marginals(jcd).first;
  NonclassicalityNumber out;
  bool any = false;
  for (int a = 0; a <= jcd.bins_a(); ++a) {
    if (!(ca[a] > 0.0)) continue;
    auto eig = min_eigenvalue(moment_matrix(jcd, a));
    if (!any || eig.value < out.value) {
      out.value = eig.value;
      out.condition = a;
    }
    any = true;
    out.per_condition.push_back({a, ca[a], std::move(eig)});
  }
  if (!any) throw UndefinedStatistic("no supported condition");
  return out;
}

std::string_view statistic_name(Statistic s) { return kStatisticNames[index(s)]; }

std::optional<Statistic> statistic_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kStatisticCount; ++i)
    if (kStatisticNames[i] == name) return static_cast<Statistic>(i);
  return std::nullopt;
}

std::string_view verdict_symbol(VerdictState s) {
  switch (s) {
    case VerdictState::Violated:
      return "✓";
    case VerdictState::NotViolated:
      return "✗";
    case VerdictState::Undetermined:
      break;
  }
  return "?";
}

StatisticValues compute_statistics(const JointClickDistribution& jcd) {
  StatisticValues v;
  const auto [ca, cb] = marginals(jcd);
  v[index(Statistic::SummedClickMean)] = mean(ca) + mean(cb);
  v[index(Statistic::QA)] = guarded([&] { return binomial_q(ca); });
  v[index(Statistic::QB)] = guarded([&] { return binomial_q(cb); });
  v[index(Statistic::Kappa)] = guarded([&] { return kappa(jcd); });
  v[index(Statistic::KappaClMax)] = guarded([&] { return kappa_cl_max(jcd); });
  if (v[index(Statistic::Kappa)] && v[index(Statistic::KappaClMax)]) {
    v[index(Statistic::KappaMargin)] = *v[index(Statistic::Kappa)] - *v[index(Statistic::KappaClMax)];
  }
  v[index(Statistic::Gamma)] = guarded([&] { return pearson(jcd); });
  v[index(Statistic::GammaClMax)] = guarded([&] { return pearson_cl_max(jcd); });
  if (v[index(Statistic::Gamma)] && v[index(Statistic::GammaClMax)]) {
    v[index(Statistic::GammaMargin)] =
        std::abs(*v[index(Statistic::Gamma)]) - *v[index(Statistic::GammaClMax)];
  }
  v[index(Statistic::FrakN)] = guarded([&] { return conditional_nonclassicality_number(jcd).value; });
  return v;
}

CriteriaReport evaluate_all(const JointClickDistribution& jcd, const StatisticErrors* errors,
                            double threshold) {
  if (!(threshold >= 0.0)) throw InvalidParameter("significance threshold must be >= 0");
  CriteriaReport report;
  report.bins_a = jcd.bins_a();
  report.bins_b = jcd.bins_b();
  report.significance_threshold = threshold;

  const auto values = compute_statistics(jcd);
  for (std::size_t i = 0; i < kStatisticCount; ++i) {
    Estimate& e = report.statistics[i];
    e.value = values[i];
    if (errors) {
      e.std_error = (*errors)[i].std_error;
      e.error_defined = (*errors)[i].defined;
      e.drop_fraction = (*errors)[i].drop_fraction;
    }
  }

  auto err = [errors](Statistic s) { return errors ? &(*errors)[index(s)] : nullptr; };
  report.kappa_test = decide(values[index(Statistic::KappaMargin)], err(Statistic::KappaMargin), threshold);
  report.pearson_test = decide(values[index(Statistic::GammaMargin)], err(Statistic::GammaMargin), threshold);
  std::optional<double> frak_margin;
  if (values[index(Statistic::FrakN)]) frak_margin = -*values[index(Statistic::FrakN)];
  report.higher_order_test = decide(frak_margin, err(Statistic::FrakN), threshold);

  const auto ca = marginals(jcd).first;
  for (int a = 0; a <= jcd.bins_a(); ++a) {
    ConditionSummary c;
    c.condition = a;
    c.probability = ca[a];
    if (ca[a] > 0.0) {
      const int half = jcd.bins_b() / 2;
      c.moments_in_unit_range = conditional_normal_moments(jcd, a, 2 * half).in_unit_range();
      c.min_eigenvalue = min_eigenvalue(moment_matrix(jcd, a)).value;
      if (!c.moments_in_unit_range) {
        report.warnings.push_back("conditional moments outside [0, 1] for a = " + std::to_string(a));
      }
    }
    report.conditions.push_back(c);
  }
  return report;
}

}  // namespace clickcorr

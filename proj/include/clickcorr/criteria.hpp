#pragma once

// Nonclassicality criteria for joint and conditional click statistics, their
// classical bounds, and the verdicts built on them.
//
// Every bound here holds for any classical state and any detector response,
// so none of the functions takes detector parameters.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clickcorr/model.hpp"
#include "clickcorr/stats.hpp"

namespace clickcorr {

/// Binomial Q parameter N Var / (E (N - E)) - 1 of a click-number marginal.
/// Negative values are sub-binomial. Throws UndefinedStatistic when E ∈ {0, N}.
double binomial_q(std::span<const double> marginal);

/// Conditional correlation coefficient κ = 1 - E_a[Var(b|a)] / Var(b).
/// Conditions with c_A(a) = 0 carry no weight. Throws UndefinedStatistic when Var(b) = 0.
double kappa(const JointClickDistribution& jcd);

/// Largest κ a classical state can reach given the measured conditional means:
/// 1 - E_a[E(b|a) (N_B - E(b|a))] / (N_B Var(b)). Can be negative.
double kappa_cl_max(const JointClickDistribution& jcd);

/// Pearson correlation coefficient of (a, b). Throws UndefinedStatistic on a zero variance.
double pearson(const JointClickDistribution& jcd);

/// Classical bound on |γ| from the two binomial Q parameters.
/// Throws UndefinedStatistic when either Q is undefined or equals -1.
double pearson_cl_max(const JointClickDistribution& jcd);

/// Conditional moment matrix (⟨:π̂_B^{m+m'}:⟩_{|a}), m, m' = 0..⌊N_B/2⌋.
struct MomentMatrix {
  int condition = 0;
  Matrix<double> entries;

  int dim() const { return static_cast<int>(entries.rows()); }
};

/// Throws UndefinedStatistic when c_A(a) = 0.
MomentMatrix moment_matrix(const JointClickDistribution& jcd, int a);

struct MinEigen {
  double value = 0.0;
  /// Unit-norm coefficient vector (f_0, ..., f_{⌊N_B/2⌋}) of the minimizing
  /// operator f̂ = Σ f_m π̂_B^m.
  std::vector<double> vector;
};

MinEigen min_eigenvalue(const MomentMatrix& m);

struct ConditionEigen {
  int condition = 0;
  double probability = 0.0;
  MinEigen eigen;
};

/// 𝔑 = min over supported conditions of λ_min(moment_matrix(a)); classical states give 𝔑 >= 0.
struct NonclassicalityNumber {
  double value = 0.0;
  int condition = 0;
  std::vector<ConditionEigen> per_condition;
};

/// Throws UndefinedStatistic when no condition is supported.
NonclassicalityNumber conditional_nonclassicality_number(const JointClickDistribution& jcd);

/// Every scalar that the reports carry, in report order.
enum class Statistic : std::size_t {
  SummedClickMean,
  QA,
  QB,
  Kappa,
  KappaClMax,
  KappaMargin,  // κ - κ^cl.max
  Gamma,
  GammaClMax,
  GammaMargin,  // |γ| - γ^cl.max
  FrakN,
  Count_
};

inline constexpr std::size_t kStatisticCount = static_cast<std::size_t>(Statistic::Count_);

std::string_view statistic_name(Statistic s);
std::optional<Statistic> statistic_from_name(std::string_view name);
constexpr std::size_t index(Statistic s) { return static_cast<std::size_t>(s); }

/// Point values; nullopt where the statistic is undefined for this distribution.
using StatisticValues = std::array<std::optional<double>, kStatisticCount>;

StatisticValues compute_statistics(const JointClickDistribution& jcd);

struct StatisticError {
  double std_error = 0.0;
  bool defined = true;
  /// Fraction of bootstrap replicates on which the statistic was undefined.
  double drop_fraction = 0.0;
};

using StatisticErrors = std::array<StatisticError, kStatisticCount>;

struct Estimate {
  std::optional<double> value;
  double std_error = 0.0;
  bool error_defined = true;
  double drop_fraction = 0.0;

  bool defined() const { return value.has_value() && error_defined; }
};

enum class VerdictState { NotViolated, Violated, Undetermined };

std::string_view verdict_symbol(VerdictState s);

/// A classical constraint test. `margin` is the amount by which the classical
/// bound is exceeded (κ - κ^cl.max, |γ| - γ^cl.max, or -𝔑).
struct Verdict {
  VerdictState state = VerdictState::Undetermined;
  /// nullopt when the statistic itself is undefined.
  std::optional<double> margin;
  double margin_std_error = 0.0;
  /// margin / σ; nullopt when σ = 0 or the margin is undefined.
  std::optional<double> significance_sigmas;
  std::string note;

  bool violated() const { return state == VerdictState::Violated; }
};

/// Margins at or below this are treated as zero. Exact classical distributions
/// reach their bounds up to rounding, which must not count as a violation.
inline constexpr double kMarginFloor = 1e-10;

inline constexpr double kDefaultSignificance = 3.0;

struct ConditionSummary {
  int condition = 0;
  double probability = 0.0;
  /// Shots with this A outcome; known only for count data.
  std::optional<std::uint64_t> shots;
  std::optional<double> min_eigenvalue;
  bool moments_in_unit_range = true;
};

struct CriteriaReport {
  int bins_a = 0;
  int bins_b = 0;
  std::array<Estimate, kStatisticCount> statistics{};
  Verdict kappa_test;
  Verdict pearson_test;
  Verdict higher_order_test;
  std::vector<ConditionSummary> conditions;
  std::vector<std::string> warnings;
  double significance_threshold = kDefaultSignificance;

  // Provenance.
  std::uint64_t shots = 0;
  int bootstrap_replicates = 0;
  std::optional<std::uint64_t> bootstrap_seed;

  const Estimate& operator[](Statistic s) const { return statistics[index(s)]; }
};

/// Fills a report from point values and (optionally) their standard errors.
/// Without errors every σ is zero, i.e. the exact-distribution analysis.
///
/// A test is violated iff margin > threshold·σ and margin > kMarginFloor. A
/// test whose margin is undefined, or whose error is flagged undefined, is
/// Undetermined rather than NotViolated.
CriteriaReport evaluate_all(const JointClickDistribution& jcd, const StatisticErrors* errors,
                            double threshold = kDefaultSignificance);

}  // namespace clickcorr

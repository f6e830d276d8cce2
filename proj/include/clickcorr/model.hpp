#pragma once

// Domain types shared by the simulator, the statistics and the criteria.
//
// All types validate on construction and are immutable afterwards.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "clickcorr/errors.hpp"

namespace clickcorr {

/// Dense row-major matrix. Row index is the A outcome, column index the B outcome.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  T& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }

  std::span<T> flat() { return values_; }
  std::span<const T> flat() const { return values_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> values_;
};

/// Largest supported number of multiplexed bins. Binomial coefficients C(N, k)
/// are kept exact in 64-bit integers, which holds up to N = 62.
inline constexpr int kMaxBins = 62;

/// Exact binomial coefficient C(n, k); zero when k < 0 or k > n.
std::uint64_t choose(int n, int k);

/// One arm of a multiplexed click counter: `bins` on-off detectors sharing the
/// light uniformly, each photon detected with probability `efficiency`, and each
/// bin clicking spontaneously with probability `dark_click`.
///
/// `dark_click` is the per-bin Bernoulli probability. A linear response
/// Γ(x) = ηx + ν_rate describes the same detector with
/// ν_rate = dark_rate_from_click_probability(dark_click) = -ln(1 - dark_click).
class DetectorConfig {
 public:
  DetectorConfig(int bins, double efficiency, double dark_click);

  int bins() const { return bins_; }
  double efficiency() const { return efficiency_; }
  double dark_click() const { return dark_click_; }

  static double dark_rate_from_click_probability(double dark_click);
  static double click_probability_from_dark_rate(double dark_rate);

  bool operator==(const DetectorConfig&) const = default;

 private:
  int bins_;
  double efficiency_;
  double dark_click_;
};

/// Truncated joint photon-number distribution p(n_A, n_B). Renormalized on
/// construction, so callers may pass truncated tails.
class JointPhotonDistribution {
 public:
  JointPhotonDistribution(Matrix<double> probs, std::string label);

  int max_a() const { return static_cast<int>(probs_.rows()) - 1; }
  int max_b() const { return static_cast<int>(probs_.cols()) - 1; }
  double operator()(int n_a, int n_b) const { return probs_(n_a, n_b); }
  const Matrix<double>& probs() const { return probs_; }
  const std::string& label() const { return label_; }

 private:
  Matrix<double> probs_;
  std::string label_;
};

/// Sum tolerance for probability matrices.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Joint click distribution c(a, b), a = 0..bins_a, b = 0..bins_b.
class JointClickDistribution {
 public:
  /// Validates (non-negative, unit sum within tolerance, bins >= 2 per arm).
  explicit JointClickDistribution(Matrix<double> probs);

  /// Renormalizes raw non-negative weights exactly instead of checking the sum.
  static JointClickDistribution renormalized(Matrix<double> weights);

  int bins_a() const { return static_cast<int>(probs_.rows()) - 1; }
  int bins_b() const { return static_cast<int>(probs_.cols()) - 1; }
  double operator()(int a, int b) const { return probs_(a, b); }
  const Matrix<double>& probs() const { return probs_; }

  /// The same distribution with the roles of the arms exchanged.
  JointClickDistribution transposed() const;

 private:
  Matrix<double> probs_;
};

/// Coincidence counts C(a, b) over `total` shots.
class CountMatrix {
 public:
  explicit CountMatrix(Matrix<std::uint64_t> counts);

  int bins_a() const { return static_cast<int>(counts_.rows()) - 1; }
  int bins_b() const { return static_cast<int>(counts_.cols()) - 1; }
  std::uint64_t operator()(int a, int b) const { return counts_(a, b); }
  std::uint64_t total() const { return total_; }
  const Matrix<std::uint64_t>& counts() const { return counts_; }

  /// Shots with outcome a in arm A.
  std::uint64_t row_total(int a) const;

  bool operator==(const CountMatrix&) const = default;

 private:
  Matrix<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// c(a, b) = C(a, b) / M. Throws DataError("empty dataset") when M = 0.
JointClickDistribution normalize(const CountMatrix& counts);

/// Throws DataError on a negative entry or a sum off unity by more than the tolerance.
void validate_distribution(const Matrix<double>& probs);
void validate_distribution(const JointClickDistribution& d);
void validate_distribution(std::span<const double> probs);

}  // namespace clickcorr

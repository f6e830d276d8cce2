#include "clickcorr/model.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace clickcorr {

namespace {

void check_bins(std::size_t rows, std::size_t cols) {
  if (rows < 3 || cols < 3) {
    throw DataError("bins >= 2 required in both arms, got a " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " matrix");
  }
  if (rows > kMaxBins + 1 || cols > kMaxBins + 1) {
    throw DataError("at most " + std::to_string(kMaxBins) + " bins per arm are supported");
  }
}

}  // namespace

std::uint64_t choose(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  // result holds C(n-k+i-1, i-1); dividing out gcd(result, i) first keeps every step exact.
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(i));
    result = (result / g) * (static_cast<std::uint64_t>(n - k + i) / (static_cast<std::uint64_t>(i) / g));
  }
  return result;
}

DetectorConfig::DetectorConfig(int bins, double efficiency, double dark_click)
    : bins_(bins), efficiency_(efficiency), dark_click_(dark_click) {
  if (bins < 2 || bins > kMaxBins) {
    throw InvalidParameter("detector bins must lie in [2, " + std::to_string(kMaxBins) +
                           "], got " + std::to_string(bins));
  }
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw InvalidParameter("detector efficiency must lie in [0, 1]");
  }
  if (!(dark_click >= 0.0 && dark_click < 1.0)) {
    throw InvalidParameter("dark-click probability must lie in [0, 1)");
  }
}

double DetectorConfig::dark_rate_from_click_probability(double dark_click) {
  return -std::log1p(-dark_click);
}

double DetectorConfig::click_probability_from_dark_rate(double dark_rate) {
  return -std::expm1(-dark_rate);
}

JointPhotonDistribution::JointPhotonDistribution(Matrix<double> probs, std::string label)
    : probs_(std::move(probs)), label_(std::move(label)) {
  if (probs_.size() == 0) throw InvalidParameter("photon distribution is empty");
  double sum = 0.0;
  for (double p : probs_.flat()) {
    if (!std::isfinite(p) || p < 0.0) {
      throw InvalidParameter("photon distribution has a negative or non-finite entry");
    }
    sum += p;
  }
  if (!(sum > 0.0)) throw InvalidParameter("photon distribution has zero mass");
  for (double& p : probs_.flat()) p /= sum;
}

JointClickDistribution::JointClickDistribution(Matrix<double> probs) : probs_(std::move(probs)) {
  check_bins(probs_.rows(), probs_.cols());
  validate_distribution(probs_);
}

JointClickDistribution JointClickDistribution::renormalized(Matrix<double> weights) {
  check_bins(weights.rows(), weights.cols());
  double sum = 0.0;
  for (double w : weights.flat()) {
    if (!std::isfinite(w) || w < 0.0) throw DataError("negative probability");
    sum += w;
  }
  if (!(sum > 0.0)) throw DataError("empty dataset");
  for (double& w : weights.flat()) w /= sum;
  return JointClickDistribution(std::move(weights));
}

JointClickDistribution JointClickDistribution::transposed() const {
  Matrix<double> t(probs_.cols(), probs_.rows());
  for (std::size_t a = 0; a < probs_.rows(); ++a)
    for (std::size_t b = 0; b < probs_.cols(); ++b) t(b, a) = probs_(a, b);
  return JointClickDistribution(std::move(t));
}

CountMatrix::CountMatrix(Matrix<std::uint64_t> counts) : counts_(std::move(counts)) {
  check_bins(counts_.rows(), counts_.cols());
  total_ = std::accumulate(counts_.flat().begin(), counts_.flat().end(), std::uint64_t{0});
}

std::uint64_t CountMatrix::row_total(int a) const {
  auto r = counts_.row(static_cast<std::size_t>(a));
  return std::accumulate(r.begin(), r.end(), std::uint64_t{0});
}

JointClickDistribution normalize(const CountMatrix& counts) {
  if (counts.total() == 0) throw DataError("empty dataset");
  const auto& c = counts.counts();
  Matrix<double> probs(c.rows(), c.cols());
  const double total = static_cast<double>(counts.total());
  for (std::size_t i = 0; i < c.size(); ++i) {
    probs.flat()[i] = static_cast<double>(c.flat()[i]) / total;
  }
  return JointClickDistribution(std::move(probs));
}

void validate_distribution(std::span<const double> probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (std::isnan(p)) throw DataError("probability is NaN");
    if (p < 0.0) throw DataError("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw DataError("not normalized: probabilities sum to " + std::to_string(sum));
  }
}

void validate_distribution(const Matrix<double>& probs) { validate_distribution(probs.flat()); }

void validate_distribution(const JointClickDistribution& d) { validate_distribution(d.probs()); }

}  // namespace clickcorr

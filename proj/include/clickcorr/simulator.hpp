#pragma once

// Exact and sampled click statistics of two-mode states measured by a pair of
// uniformly multiplexed click counters.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "clickcorr/model.hpp"

namespace clickcorr {

/// |α⟩_A |β⟩_B with mean photon numbers |α|², |β|².
struct CoherentState {
  double mean_a = 0.0;
  double mean_b = 0.0;
};

/// Two-mode squeezed vacuum, p(n, n) = (1 - λ²) λ^{2n}.
struct TwoModeSqueezedVacuum {
  double lambda = 0.0;

  static TwoModeSqueezedVacuum from_lambda_squared(double lambda2);
};

/// t|1,0⟩ + (1 - t²)^{1/2} |0,1⟩.
struct SplitPhoton {
  double t = 0.0;

  static SplitPhoton from_t_squared(double t2);
};

struct CustomState {
  JointPhotonDistribution distribution;
};

using StateSpec = std::variant<CoherentState, TwoModeSqueezedVacuum, SplitPhoton, CustomState>;

/// Tail mass discarded by every truncated infinite photon-number sum.
inline constexpr double kTruncationTail = 1e-12;

/// Poisson probabilities up to the first n whose tail beyond n is < kTruncationTail.
/// Not renormalized.
std::vector<double> truncated_poisson(double mean);

/// Throws InvalidParameter when a parameter is out of range.
void validate_state(const StateSpec& spec);

std::string describe(const StateSpec& spec);

/// Joint photon-number distribution of the state, truncated and renormalized.
JointPhotonDistribution build_photon_distribution(const StateSpec& spec);

/// Click-number distribution K(a|n), a = 0..N, of an n-photon Fock state.
///
/// A photon misses a given set of s bins with probability 1 - sη/N, and the s
/// bins stay dark with probability (1-ν)^s, so "no click on s fixed bins" has
/// probability (1-ν)^s (1 - sη/N)^n. Inclusion-exclusion over those events
/// gives K(a|n) = C(N,a) Σ_j (-1)^j C(a,j) (1-ν)^{N-a+j} (1 - (N-a+j)η/N)^n.
std::vector<double> fock_click_kernel(int photons, const DetectorConfig& cfg);

/// Rows n = 0..max_photons of fock_click_kernel.
Matrix<double> click_kernel_matrix(int max_photons, const DetectorConfig& cfg);

/// c(a, b) = Σ p(n_A, n_B) K_A(a|n_A) K_B(b|n_B).
JointClickDistribution joint_click_distribution(const JointPhotonDistribution& photons,
                                                const DetectorConfig& cfg_a,
                                                const DetectorConfig& cfg_b);

/// Multinomial sample of `shots` outcomes from `jcd`; deterministic in `seed`
/// and independent of the number of worker threads.
CountMatrix sample_counts(const JointClickDistribution& jcd, std::uint64_t shots,
                          std::uint64_t seed, unsigned threads = 0);

/// Shot-by-shot Monte Carlo of the detector: photon numbers drawn from
/// `photons`, every photon routed to a uniformly random bin and detected with
/// probability η, every bin additionally firing with probability ν.
CountMatrix sample_counts_physical(const JointPhotonDistribution& photons,
                                   const DetectorConfig& cfg_a, const DetectorConfig& cfg_b,
                                   std::uint64_t shots, std::uint64_t seed,
                                   unsigned threads = 0);

}  // namespace clickcorr

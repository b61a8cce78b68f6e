#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ftqm/analytics.hpp"
#include "ftqm/channel.hpp"
#include "ftqm/codes.hpp"
#include "ftqm/rng.hpp"

namespace ftqm::protocol {

enum class RadixPlan { FixedBinary, MixedRadix };

struct ProtocolParams {
  double gamma = 0.0;
  int t = 1;
  double epsilon = 0.0625;
  // Repetitions per bit; derived from epsilon via the Hoeffding bound when
  // unset (per bit for the encoded protocols, worst-bit for the bare one).
  std::optional<std::uint64_t> repetitions;
  RadixPlan plan = RadixPlan::FixedBinary;
};

struct EstimationResult {
  std::vector<int> digits;
  std::vector<int> radices;  // empty for fixed binary
  double phi_hat = 0.0;
  std::optional<int> aborted_at;
  std::uint64_t interrogations = 0;
  // Alternative bookkeeping where a rejection re-charges the whole
  // 2^(j-1)-step repetition; matches the closed-form overhead C(j).
  std::uint64_t interrogations_full_restart = 0;
  std::uint64_t retransmissions = 0;
};

enum class BitDecision { Zero, One, Abort };

// Places acos(2 p_hat - 1) in [0, pi] (previous bit 0) or [pi, 2 pi]
// (previous bit 1) and applies the decision inequalities with exclusion
// half-width gamma_eff. Left-closed/right-open on the 0 branch, closed on
// the 1 branch.
BitDecision decide_bit(double p_hat, int b_prev, double gamma_eff);

// P(+1 outcome) for an X measurement of (|0> + e^{i phi_j}|1>)/sqrt(2).
double ideal_plus_prob(double phi_j);

// First t bits of phi = 2 pi 0.0 b1 b2 ... (b0 = 0 convention).
std::vector<int> binary_bits(double phi, int t);
double phi_from_bits(const std::vector<int>& bits);

// How protocol-level error rates read the channel: the default substitutes
// the full error probability p for both the X and Z component rates (an
// upper bound); the exact mode uses p(p_x + p_y) and p(p_z + p_y).
enum class MarginalMode { UpperBound, ExactMarginal };

// Bare bitwise estimator.
EstimationResult run_protocol_ia(double phi_true, const ProtocolParams& params,
                                 const channel::PauliChannel& noise,
                                 std::optional<double> device_p, rng::Stream& rng,
                                 MarginalMode mode = MarginalMode::UpperBound);

// Error-detected estimator: per interrogation step, rejection with the
// noise + non-transversality acceptance, restart of the repetition on
// reject (wasted block interrogations counted), undetected-error flips on
// the logical outcome, decisions at gamma'.
EstimationResult run_protocol_ib(double phi_true, const ProtocolParams& params,
                                 const channel::PauliChannel& noise,
                                 std::optional<double> device_p, rng::Stream& rng,
                                 MarginalMode mode = MarginalMode::UpperBound);

// Fault tolerance everywhere: detection rates shifted by the FT device
// contribution and Bernoulli(p_EC) failures at the FT measurement and
// recovery points.
EstimationResult run_protocol_ic(double phi_true, const ProtocolParams& params,
                                 const channel::PauliChannel& noise, double device_p,
                                 rng::Stream& rng, MarginalMode mode = MarginalMode::UpperBound);

// Mixed-radix estimator; no excluded regions, no abort branch.
EstimationResult run_protocol_ii(double phi_true, const ProtocolParams& params,
                                 const channel::PauliChannel& noise, rng::Stream& rng,
                                 MarginalMode mode = MarginalMode::UpperBound);

// ---- error-detection Monte Carlo ------------------------------------------

enum class DetectionOutcome { Rejected, PassedClean, PassedXCorrupt, PassedZCorrupt };

// How the trial draws the error pattern: JointPauli samples the channel
// qubit-by-qubit (X and Z components correlated through XZ errors);
// IndependentXZ draws the two components as independent Bernoulli strings
// at the exact marginal rates, matching the product-form analytics.
enum class SamplingMode { JointPauli, IndependentXZ };

struct DetectionTrialDetail {
  bool x_pass = false;
  bool z_pass = false;
  bool x_nonzero = false;
  bool z_odd = false;
};

DetectionTrialDetail detection_trial_detail(const codes::QrmCode& code,
                                            const channel::PauliChannel& noise,
                                            SamplingMode mode, rng::Stream& rng);

// Single-tag classification; an undetected X pattern takes priority over an
// odd undetected Z pattern when both occur.
DetectionOutcome pauli_detection_trial(const codes::QrmCode& code,
                                       const channel::PauliChannel& noise, SamplingMode mode,
                                       rng::Stream& rng);

}  // namespace ftqm::protocol

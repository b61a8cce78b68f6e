#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ftqm/channel.hpp"
#include "ftqm/codes.hpp"
#include "ftqm/protocols.hpp"

namespace ftqm::mc {

// Serial is the reference implementation; Parallel runs the same trial
// decomposition under OpenMP. Per-trial counter-based substreams make the
// two bit-identical, which the tests rely on.
enum class Execution { Serial, Parallel };

struct DetectionStats {
  std::uint64_t trials = 0;
  std::uint64_t x_pass = 0;
  std::uint64_t z_pass = 0;
  std::uint64_t both_pass = 0;
  std::uint64_t rejected = 0;
  std::uint64_t passed_clean = 0;
  std::uint64_t passed_x_corrupt = 0;  // x undetected and nonzero (given x pass)
  std::uint64_t passed_z_corrupt = 0;  // z undetected and odd (given z pass)
  std::uint64_t x_corrupt_given_x_pass = 0;
  std::uint64_t z_corrupt_given_z_pass = 0;
};

DetectionStats run_detection_trials(const codes::QrmCode& code,
                                    const channel::PauliChannel& noise,
                                    protocol::SamplingMode mode, std::uint64_t trials,
                                    std::uint64_t seed, Execution exec);

enum class ProtocolKind { Ia, Ib, Ic, II };

struct BatchConfig {
  ProtocolKind kind = ProtocolKind::Ia;
  double phi = 0.0;
  protocol::ProtocolParams params;
  channel::PauliChannel noise;
  std::optional<double> device_p;
  protocol::MarginalMode mode = protocol::MarginalMode::UpperBound;
};

struct BatchSummary {
  std::uint64_t runs = 0;
  std::uint64_t all_bits_correct = 0;
  std::uint64_t aborted = 0;
  double mean_interrogations = 0.0;
  double mean_full_restart_interrogations = 0.0;
  double mean_retransmissions = 0.0;
};

// One independent run per trial index; results come back in index order.
std::vector<protocol::EstimationResult> run_estimation_batch(const BatchConfig& config,
                                                             std::uint64_t runs,
                                                             std::uint64_t seed, Execution exec);

// Success = no abort and every digit equal to the true expansion.
BatchSummary summarize(const BatchConfig& config, const std::vector<protocol::EstimationResult>& results);

// ---- threshold curves (pure analytics, grid-parallel) ----------------------

enum class CurveKind { Ia, Ib, IbDev, Ic };

struct CurvePoint {
  double p_prime = 0.0;
  std::optional<double> p_th;
};

// p_th over an ascending grid of device-noise values. Ia and Ib do not
// depend on p' and emit constant rows (Ia optionally couples to devices
// through the (1-p')^2 survival mode).
std::vector<CurvePoint> threshold_curve(CurveKind kind, double gamma, int t_or_j,
                                        const std::vector<double>& p_prime_grid, Execution exec,
                                        bool ia_device_mode = false);

}  // namespace ftqm::mc

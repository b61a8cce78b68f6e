#include "ftqm/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ftqm::protocol {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double wrap_2pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

void validate(const ProtocolParams& params) {
  require(params.gamma > 0.0 && params.gamma < kPi / 2.0,
          "protocol: gamma must be in (0, pi/2)");
  require(params.t >= 1, "protocol: t must be >= 1");
  require(params.epsilon > 0.0 && params.epsilon < 1.0, "protocol: epsilon must be in (0, 1)");
}

double noisy_outcome_prob(double p_ideal, double p_flip) {
  return p_ideal * (1.0 - p_flip) + (1.0 - p_ideal) * p_flip;
}

}  // namespace

double ideal_plus_prob(double phi_j) { return 0.5 * (1.0 + std::cos(phi_j)); }

std::vector<int> binary_bits(double phi, int t) {
  require(phi >= 0.0 && phi < kPi, "binary_bits: phi must be in [0, pi)");
  std::vector<int> bits;
  bits.reserve(t);
  double frac = phi / kPi;  // phi = pi * 0.b1 b2 ...
  for (int j = 0; j < t; ++j) {
    frac *= 2.0;
    const int bit = frac >= 1.0 ? 1 : 0;
    frac -= bit;
    bits.push_back(bit);
  }
  return bits;
}

double phi_from_bits(const std::vector<int>& bits) {
  double phi = 0.0;
  double scale = kPi / 2.0;
  for (int b : bits) {
    phi += b * scale;
    scale /= 2.0;
  }
  return phi;
}

BitDecision decide_bit(double p_hat, int b_prev, double gamma_eff) {
  require(p_hat >= 0.0 && p_hat <= 1.0, "decide_bit: p_hat must be in [0, 1]");
  const double c = std::clamp(2.0 * p_hat - 1.0, -1.0, 1.0);
  double phi_hat = std::acos(c);           // [0, pi]
  if (b_prev) phi_hat = kTwoPi - phi_hat;  // [pi, 2 pi]
  const double base = b_prev * kPi;
  const double x = phi_hat - base;
  if (x < kPi / 2.0 - gamma_eff) return BitDecision::Zero;
  if (x >= kPi / 2.0 + gamma_eff) return BitDecision::One;
  return BitDecision::Abort;
}

namespace {

void finish_binary(EstimationResult& result) {
  result.phi_hat = phi_from_bits(result.digits);
}

}  // namespace

EstimationResult run_protocol_ia(double phi_true, const ProtocolParams& params,
                                 const channel::PauliChannel& noise,
                                 std::optional<double> device_p, rng::Stream& rng,
                                 MarginalMode mode) {
  validate(params);
  require(phi_true >= 0.0 && phi_true < kPi, "protocol Ia: phi must be in [0, pi)");

  const double delta = analytics::delta_of_gamma(params.gamma);
  const double p = mode == MarginalMode::UpperBound
                       ? noise.p
                       : std::max(noise.marginal_x_rate(), noise.marginal_z_rate());

  // A single worst-bit repetition count; the flip probability is largest at
  // the final bit.
  std::uint64_t reps;
  if (params.repetitions) {
    reps = *params.repetitions;
  } else {
    const double pf_worst = device_p ? analytics::p_fail_ia_dev(p, params.t, *device_p)
                                     : analytics::p_fail_ia(p, params.t);
    reps = analytics::trials_required(delta, pf_worst, params.t, params.epsilon);
  }

  EstimationResult result;
  int b_prev = 0;
  for (int j = 1; j <= params.t; ++j) {
    const double phi_j = wrap_2pi(std::ldexp(phi_true, j - 1));
    const double p_ideal = ideal_plus_prob(phi_j);
    const double pf = device_p ? analytics::p_fail_ia_dev(p, j, *device_p)
                               : analytics::p_fail_ia(p, j);
    const double p_outcome = noisy_outcome_prob(p_ideal, pf);

    std::uint64_t plus = 0;
    for (std::uint64_t i = 0; i < reps; ++i) plus += rng.bernoulli(p_outcome);
    result.interrogations += reps << (j - 1);
    result.interrogations_full_restart = result.interrogations;

    const BitDecision d =
        decide_bit(static_cast<double>(plus) / static_cast<double>(reps), b_prev, params.gamma);
    if (d == BitDecision::Abort) {
      result.aborted_at = j;
      finish_binary(result);
      return result;
    }
    const int bit = d == BitDecision::One ? 1 : 0;
    result.digits.push_back(bit);
    b_prev = bit;
  }
  finish_binary(result);
  return result;
}

namespace {

struct EncodedBitModel {
  std::uint64_t steps;        // 2^(j-1)
  std::uint64_t block;        // 2^(j+2) - 1
  double gamma_eff;           // gamma'
  double x_flip, z_flip;      // undetected-corruption rates per step
  double step_reject;         // noise + non-transversality rejection per step
  double rep_flip;            // additional per-repetition flip probability
  int rep_flip_draws;         // number of Bernoulli draws for rep_flip
  std::uint64_t repetitions;
};

EstimationResult run_encoded(double phi_true, const ProtocolParams& params,
                             const channel::PauliChannel& noise, std::optional<double> device_p,
                             bool fault_tolerant_devices, rng::Stream& rng, MarginalMode mode) {
  validate(params);
  require(phi_true >= 0.0 && phi_true < kPi, "protocol: phi must be in [0, pi)");

  const double px_base =
      mode == MarginalMode::UpperBound ? noise.p : noise.marginal_x_rate();
  const double pz_base =
      mode == MarginalMode::UpperBound ? noise.p : noise.marginal_z_rate();

  EstimationResult result;
  int b_prev = 0;
  for (int j = 1; j <= params.t; ++j) {
    const int m = j + 2;
    const std::uint64_t steps = std::uint64_t{1} << (j - 1);

    double shift = 0.0, rep_flip = 0.0;
    int rep_flip_draws = 0;
    double device_log_survival = 0.0;
    if (device_p && *device_p > 0.0) {
      if (fault_tolerant_devices) {
        shift = analytics::dev_ic(*device_p, m);
        rep_flip = analytics::p_ec(*device_p, m);
        rep_flip_draws = static_cast<int>(3 * steps) + j + 1;
        device_log_survival = rep_flip_draws * std::log1p(-rep_flip);
      } else {
        shift = analytics::dev_ib(*device_p, m);
        const int points = static_cast<int>(3 * steps) + 2;
        rep_flip = -std::expm1(points * std::log1p(-*device_p));
        rep_flip_draws = 1;
        device_log_survival = points * std::log1p(-*device_p);
      }
    }

    const double pe_x = std::min(px_base + shift, 0.5);
    const double pe_z = std::min(pz_base + shift, 0.5);
    const double xe = analytics::x_err(pe_x, m);
    const double ze = analytics::z_err(pe_z, m);
    const double xp = analytics::x_pass(pe_x, m);
    const double zp = analytics::z_pass(pe_z, m);
    const double accept_rot =
        std::pow(1.0 - std::ldexp(1.0, -(j + 1)), static_cast<double>(j + 2));

    EncodedBitModel bm;
    bm.steps = steps;
    bm.block = (std::uint64_t{1} << (j + 2)) - 1;
    bm.gamma_eff = analytics::gamma_prime(params.gamma, j);
    bm.x_flip = xe;
    bm.z_flip = ze;
    bm.step_reject = 1.0 - xp * zp * accept_rot;
    bm.rep_flip = rep_flip;
    bm.rep_flip_draws = rep_flip_draws;

    if (params.repetitions) {
      bm.repetitions = *params.repetitions;
    } else {
      const double log_survive = steps * (std::log1p(-xe) + std::log1p(-ze)) +
                                 device_log_survival;
      const double pf = -std::expm1(log_survive);
      bm.repetitions = analytics::trials_required(analytics::delta_of_gamma(bm.gamma_eff), pf,
                                                  params.t, params.epsilon);
    }

    const double phi_j = wrap_2pi(std::ldexp(phi_true, j - 1));
    std::uint64_t plus = 0;
    const double p_ideal = ideal_plus_prob(phi_j);
    for (std::uint64_t rep = 0; rep < bm.repetitions; ++rep) {
      bool flip = false;
      std::uint64_t attempts = 1;
      std::uint64_t k = 0;
      while (k < bm.steps) {
        result.interrogations += bm.block;
        if (rng.bernoulli(bm.step_reject)) {
          ++result.retransmissions;
          ++attempts;
          flip = false;
          k = 0;
          continue;
        }
        flip ^= rng.bernoulli(bm.x_flip);
        flip ^= rng.bernoulli(bm.z_flip);
        ++k;
      }
      for (int i = 0; i < bm.rep_flip_draws; ++i) flip ^= rng.bernoulli(bm.rep_flip);
      result.interrogations_full_restart += attempts * bm.steps * bm.block;
      plus += rng.bernoulli(p_ideal) != flip;
    }

    const double p_hat = static_cast<double>(plus) / static_cast<double>(bm.repetitions);
    const BitDecision d = decide_bit(p_hat, b_prev, bm.gamma_eff);
    if (d == BitDecision::Abort) {
      result.aborted_at = j;
      finish_binary(result);
      return result;
    }
    const int bit = d == BitDecision::One ? 1 : 0;
    result.digits.push_back(bit);
    b_prev = bit;
  }
  finish_binary(result);
  return result;
}

}  // namespace

EstimationResult run_protocol_ib(double phi_true, const ProtocolParams& params,
                                 const channel::PauliChannel& noise,
                                 std::optional<double> device_p, rng::Stream& rng,
                                 MarginalMode mode) {
  return run_encoded(phi_true, params, noise, device_p, /*fault_tolerant_devices=*/false, rng,
                     mode);
}

EstimationResult run_protocol_ic(double phi_true, const ProtocolParams& params,
                                 const channel::PauliChannel& noise, double device_p,
                                 rng::Stream& rng, MarginalMode mode) {
  return run_encoded(phi_true, params, noise, device_p, /*fault_tolerant_devices=*/true, rng,
                     mode);
}

EstimationResult run_protocol_ii(double phi_true, const ProtocolParams& params,
                                 const channel::PauliChannel& noise, rng::Stream& rng,
                                 MarginalMode mode) {
  validate(params);
  require(phi_true >= 0.0 && phi_true < kPi, "protocol II: phi must be in [0, pi)");

  const double delta = analytics::delta_ii();
  const double p = mode == MarginalMode::UpperBound
                       ? noise.p
                       : std::max(noise.marginal_x_rate(), noise.marginal_z_rate());

  EstimationResult result;
  int v_prev = 0;
  std::uint64_t n_j = 1;  // prod_{l<j} r_l, r_0 = 1
  double radix_product = 1.0;
  for (int j = 1; j <= params.t; ++j) {
    const double pf = -std::expm1(static_cast<double>(n_j) * std::log1p(-p));
    std::uint64_t reps = params.repetitions
                             ? *params.repetitions
                             : analytics::trials_required(delta, pf, params.t, params.epsilon);

    const double phi_j = wrap_2pi(static_cast<double>(n_j) * phi_true);
    const double p_outcome = noisy_outcome_prob(ideal_plus_prob(phi_j), pf);
    std::uint64_t plus = 0;
    for (std::uint64_t i = 0; i < reps; ++i) plus += rng.bernoulli(p_outcome);
    result.interrogations += reps * n_j;
    result.interrogations_full_restart = result.interrogations;

    const double c =
        std::clamp(2.0 * static_cast<double>(plus) / static_cast<double>(reps) - 1.0, -1.0, 1.0);
    double phi_hat = std::acos(c);
    if (v_prev) phi_hat = kTwoPi - phi_hat;
    const double x = phi_hat - v_prev * kPi;

    int v, r;
    if (x < 5.0 * kPi / 12.0) {
      v = 0;
      r = 2;
    } else if (x < 7.0 * kPi / 12.0) {
      v = 1;
      r = 3;
    } else {
      v = 1;
      r = 2;
    }
    result.digits.push_back(v);
    result.radices.push_back(r);
    radix_product *= r;
    result.phi_hat += v * kPi / radix_product;

    v_prev = v;
    n_j *= r;
  }
  return result;
}

DetectionTrialDetail detection_trial_detail(const codes::QrmCode& code,
                                            const channel::PauliChannel& noise,
                                            SamplingMode mode, rng::Stream& rng) {
  codes::BitVec x_part(code.n), z_part(code.n);
  if (mode == SamplingMode::JointPauli) {
    channel::PauliErrorPattern pat = channel::sample_pattern(noise, code.n, rng);
    x_part = std::move(pat.x_part);
    z_part = std::move(pat.z_part);
  } else {
    const double qx = noise.marginal_x_rate();
    const double qz = noise.marginal_z_rate();
    for (std::size_t i = 0; i < code.n; ++i)
      if (rng.bernoulli(qx)) x_part.set(i, true);
    for (std::size_t i = 0; i < code.n; ++i)
      if (rng.bernoulli(qz)) z_part.set(i, true);
  }

  DetectionTrialDetail out;
  out.x_pass = codes::syndrome(code.h_z, x_part).is_zero();
  out.z_pass = codes::syndrome(code.h_x, z_part).is_zero();
  out.x_nonzero = !x_part.is_zero();
  out.z_odd = (z_part.weight() & 1) != 0;
  return out;
}

DetectionOutcome pauli_detection_trial(const codes::QrmCode& code,
                                       const channel::PauliChannel& noise, SamplingMode mode,
                                       rng::Stream& rng) {
  const DetectionTrialDetail d = detection_trial_detail(code, noise, mode, rng);
  if (!d.x_pass || !d.z_pass) return DetectionOutcome::Rejected;
  if (d.x_nonzero) return DetectionOutcome::PassedXCorrupt;
  if (d.z_odd) return DetectionOutcome::PassedZCorrupt;
  return DetectionOutcome::PassedClean;
}

}  // namespace ftqm::protocol

#include "ftqm/mc.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>

#include "ftqm/analytics.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace ftqm::mc {

namespace {

DetectionStats& operator+=(DetectionStats& a, const DetectionStats& b) {
  a.trials += b.trials;
  a.x_pass += b.x_pass;
  a.z_pass += b.z_pass;
  a.both_pass += b.both_pass;
  a.rejected += b.rejected;
  a.passed_clean += b.passed_clean;
  a.passed_x_corrupt += b.passed_x_corrupt;
  a.passed_z_corrupt += b.passed_z_corrupt;
  a.x_corrupt_given_x_pass += b.x_corrupt_given_x_pass;
  a.z_corrupt_given_z_pass += b.z_corrupt_given_z_pass;
  return a;
}

void tally(DetectionStats& s, const protocol::DetectionTrialDetail& d) {
  ++s.trials;
  s.x_pass += d.x_pass;
  s.z_pass += d.z_pass;
  s.both_pass += d.x_pass && d.z_pass;
  s.x_corrupt_given_x_pass += d.x_pass && d.x_nonzero;
  s.z_corrupt_given_z_pass += d.z_pass && d.z_odd;
  if (!d.x_pass || !d.z_pass)
    ++s.rejected;
  else if (d.x_nonzero)
    ++s.passed_x_corrupt;
  else if (d.z_odd)
    ++s.passed_z_corrupt;
  else
    ++s.passed_clean;
}

}  // namespace

DetectionStats run_detection_trials(const codes::QrmCode& code,
                                    const channel::PauliChannel& noise,
                                    protocol::SamplingMode mode, std::uint64_t trials,
                                    std::uint64_t seed, Execution exec) {
  DetectionStats total;
  if (exec == Execution::Serial) {
    for (std::uint64_t i = 0; i < trials; ++i) {
      rng::Stream stream = rng::Stream::substream(seed, i);
      tally(total, protocol::detection_trial_detail(code, noise, mode, stream));
    }
    return total;
  }

#if defined(_OPENMP)
#pragma omp parallel
  {
    DetectionStats local;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(trials); ++i) {
      rng::Stream stream = rng::Stream::substream(seed, static_cast<std::uint64_t>(i));
      tally(local, protocol::detection_trial_detail(code, noise, mode, stream));
    }
#pragma omp critical
    total += local;
  }
  return total;
#else
  return run_detection_trials(code, noise, mode, trials, seed, Execution::Serial);
#endif
}

namespace {

protocol::EstimationResult run_one(const BatchConfig& config, std::uint64_t index,
                                   std::uint64_t seed) {
  rng::Stream stream = rng::Stream::substream(seed, index);
  switch (config.kind) {
    case ProtocolKind::Ia:
      return protocol::run_protocol_ia(config.phi, config.params, config.noise, config.device_p,
                                       stream, config.mode);
    case ProtocolKind::Ib:
      return protocol::run_protocol_ib(config.phi, config.params, config.noise, config.device_p,
                                       stream, config.mode);
    case ProtocolKind::Ic:
      return protocol::run_protocol_ic(config.phi, config.params, config.noise,
                                       config.device_p.value_or(0.0), stream, config.mode);
    case ProtocolKind::II:
      return protocol::run_protocol_ii(config.phi, config.params, config.noise, stream,
                                       config.mode);
  }
  return {};
}

}  // namespace

std::vector<protocol::EstimationResult> run_estimation_batch(const BatchConfig& config,
                                                             std::uint64_t runs,
                                                             std::uint64_t seed, Execution exec) {
  std::vector<protocol::EstimationResult> results(runs);
  if (exec == Execution::Serial) {
    for (std::uint64_t i = 0; i < runs; ++i) results[i] = run_one(config, i, seed);
    return results;
  }

#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(runs); ++i)
    results[static_cast<std::size_t>(i)] = run_one(config, static_cast<std::uint64_t>(i), seed);
  return results;
#else
  for (std::uint64_t i = 0; i < runs; ++i) results[i] = run_one(config, i, seed);
  return results;
#endif
}

BatchSummary summarize(const BatchConfig& config,
                       const std::vector<protocol::EstimationResult>& results) {
  BatchSummary s;
  s.runs = results.size();
  const std::vector<int> truth = config.kind == ProtocolKind::II
                                     ? std::vector<int>{}
                                     : protocol::binary_bits(config.phi, config.params.t);
  for (const auto& r : results) {
    s.aborted += r.aborted_at.has_value();
    bool ok = !r.aborted_at.has_value();
    if (ok && config.kind != ProtocolKind::II) ok = r.digits == truth;
    if (ok && config.kind == ProtocolKind::II) {
      // Mixed radix has no unique digit string; success is reconstruction
      // within the final resolution pi / prod(r_l).
      double res = std::numbers::pi;
      for (int rad : r.radices) res /= rad;
      ok = std::abs(r.phi_hat - config.phi) < res;
    }
    s.all_bits_correct += ok;
    s.mean_interrogations += static_cast<double>(r.interrogations);
    s.mean_full_restart_interrogations += static_cast<double>(r.interrogations_full_restart);
    s.mean_retransmissions += static_cast<double>(r.retransmissions);
  }
  if (s.runs > 0) {
    s.mean_interrogations /= static_cast<double>(s.runs);
    s.mean_full_restart_interrogations /= static_cast<double>(s.runs);
    s.mean_retransmissions /= static_cast<double>(s.runs);
  }
  return s;
}

namespace {

std::optional<double> curve_value(CurveKind kind, double gamma, int t_or_j, double p_prime,
                                  bool ia_device_mode) {
  switch (kind) {
    case CurveKind::Ia:
      if (ia_device_mode) return analytics::threshold_ia_dev(gamma, t_or_j, p_prime);
      return analytics::threshold_ia(gamma, t_or_j);
    case CurveKind::Ib:
      return analytics::threshold_ib(gamma, t_or_j);
    case CurveKind::IbDev:
      return analytics::threshold_relation_ib(gamma, t_or_j, p_prime);
    case CurveKind::Ic:
      return analytics::threshold_relation_ic(gamma, t_or_j, p_prime);
  }
  return std::nullopt;
}

}  // namespace

std::vector<CurvePoint> threshold_curve(CurveKind kind, double gamma, int t_or_j,
                                        const std::vector<double>& p_prime_grid, Execution exec,
                                        bool ia_device_mode) {
  std::vector<CurvePoint> points(p_prime_grid.size());
  if (exec == Execution::Parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(p_prime_grid.size()); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      points[idx] = {p_prime_grid[idx],
                     curve_value(kind, gamma, t_or_j, p_prime_grid[idx], ia_device_mode)};
    }
    return points;
#endif
  }
  for (std::size_t i = 0; i < p_prime_grid.size(); ++i)
    points[i] = {p_prime_grid[i], curve_value(kind, gamma, t_or_j, p_prime_grid[i], ia_device_mode)};
  return points;
}

}  // namespace ftqm::mc

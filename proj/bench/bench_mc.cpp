// Times the Monte Carlo kernels in their serial and OpenMP forms and checks
// that both produce identical counts.

#include <chrono>
#include <cstdio>
#include <numbers>

#include "ftqm/mc.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

using namespace ftqm;

namespace {

double seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename F>
double timed(F f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return seconds(start);
}

}  // namespace

int main() {
#if defined(_OPENMP)
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not available, parallel path falls back to serial\n");
#endif

  const double pi = std::numbers::pi;

  {
    const codes::QrmCode q = codes::qrm(5);
    const auto ch = channel::make_channel(0.05);
    const std::uint64_t trials = 2000000;
    mc::DetectionStats serial_stats, parallel_stats;
    const double ts = timed([&] {
      serial_stats = mc::run_detection_trials(q, ch, protocol::SamplingMode::JointPauli, trials,
                                              7, mc::Execution::Serial);
    });
    const double tp = timed([&] {
      parallel_stats = mc::run_detection_trials(q, ch, protocol::SamplingMode::JointPauli, trials,
                                                7, mc::Execution::Parallel);
    });
    const bool same = serial_stats.x_pass == parallel_stats.x_pass &&
                      serial_stats.z_pass == parallel_stats.z_pass &&
                      serial_stats.rejected == parallel_stats.rejected;
    std::printf("detection trials (m=5, %llu trials): serial %.3f s, parallel %.3f s, "
                "speedup %.2fx, identical=%s\n",
                static_cast<unsigned long long>(trials), ts, tp, ts / tp, same ? "yes" : "NO");
  }

  {
    mc::BatchConfig cfg;
    cfg.kind = mc::ProtocolKind::Ib;
    cfg.phi = 0.95 * pi;
    cfg.params.gamma = pi / 8;
    cfg.params.t = 4;
    cfg.params.epsilon = 0.0625;
    cfg.noise = channel::make_channel(0.004);
    const std::uint64_t runs = 200;
    std::vector<protocol::EstimationResult> rs, rp;
    const double ts =
        timed([&] { rs = mc::run_estimation_batch(cfg, runs, 11, mc::Execution::Serial); });
    const double tp =
        timed([&] { rp = mc::run_estimation_batch(cfg, runs, 11, mc::Execution::Parallel); });
    bool same = rs.size() == rp.size();
    for (std::size_t i = 0; same && i < rs.size(); ++i)
      same = rs[i].digits == rp[i].digits && rs[i].interrogations == rp[i].interrogations;
    std::printf("estimation batch (encoded, %llu runs): serial %.3f s, parallel %.3f s, "
                "speedup %.2fx, identical=%s\n",
                static_cast<unsigned long long>(runs), ts, tp, ts / tp, same ? "yes" : "NO");
  }

  {
    std::vector<double> grid;
    for (int i = 0; i < 64; ++i) grid.push_back(1.2e-4 * i / 63.0);
    std::vector<mc::CurvePoint> cs, cp;
    const double ts = timed([&] {
      cs = mc::threshold_curve(mc::CurveKind::Ic, pi / 32, 4, grid, mc::Execution::Serial);
    });
    const double tp = timed([&] {
      cp = mc::threshold_curve(mc::CurveKind::Ic, pi / 32, 4, grid, mc::Execution::Parallel);
    });
    bool same = cs.size() == cp.size();
    for (std::size_t i = 0; same && i < cs.size(); ++i) same = cs[i].p_th == cp[i].p_th;
    std::printf("threshold curve (64 points): serial %.3f s, parallel %.3f s, speedup %.2fx, "
                "identical=%s\n",
                ts, tp, ts / tp, same ? "yes" : "NO");
  }
  return 0;
}

// Command-line front end: code tables, threshold curves, resource counts,
// Monte Carlo estimation runs and the built-in verification suites.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ftqm/analytics.hpp"
#include "ftqm/channel.hpp"
#include "ftqm/codes.hpp"
#include "ftqm/mc.hpp"
#include "ftqm/protocols.hpp"
#include "ftqm/statevector.hpp"

namespace {

constexpr const char* kVersion = "ftqm 1.0.0";
constexpr double kPi = 3.14159265358979323846;

using namespace ftqm;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Output {
  std::ostream* os = &std::cout;
  std::ofstream file;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);  // '\n' endings on every platform
    if (!file) throw CLI::ValidationError("--out", "cannot open " + path);
    os = &file;
  }
  std::ostream& stream() { return *os; }
};

// Comment header carried by every CSV: tool version plus the full config.
void write_header(std::ostream& os, const std::map<std::string, std::string>& config) {
  os << "# " << kVersion << "\n";
  for (const auto& [k, v] : config) os << "# " << k << "=" << v << "\n";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FTQM_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw CLI::ValidationError("FTQM_SEED", "not a valid integer seed");
    }
  }
  return 12345;
}

channel::PauliChannel parse_noise(const std::vector<double>& values) {
  if (values.empty()) return channel::make_channel(0.0);
  if (values.size() == 1) return channel::make_channel(values[0]);
  if (values.size() == 4)
    return channel::make_channel(values[0], values[1], values[2], values[3]);
  throw CLI::ValidationError("--noise", "expects p or p,px,py,pz");
}

std::vector<double> parse_grid(const std::vector<double>& spec) {
  if (spec.empty()) return {0.0};
  if (spec.size() != 3) throw CLI::ValidationError("--grid", "expects min,max,steps");
  const double lo = spec[0], hi = spec[1];
  const int steps = static_cast<int>(spec[2]);
  if (steps < 1 || hi < lo) throw CLI::ValidationError("--grid", "needs steps >= 1 and max >= min");
  std::vector<double> grid;
  for (int i = 0; i < steps; ++i)
    grid.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
  return grid;
}

void print_code_block(std::ostream& os, const std::string& name, const codes::BinaryCode& code,
                      bool with_distribution) {
  os << name << " (n=" << code.n << ", k=" << code.k() << ")\n";
  os << "generator:\n" << code.generator.to_string();
  os << "parity_check:\n" << code.parity_check.to_string();
  if (with_distribution) {
    os << "weights:";
    if (code.k() <= 24) {
      for (const auto& [w, c] : codes::weight_distribution(code).counts)
        os << " " << w << ":" << codes::count_to_string(c);
      os << "\n";
    } else {
      os << " (omitted, dimension above enumeration guard)\n";
    }
  }
}

// ---- codes -----------------------------------------------------------------

int cmd_codes(int m, const std::string& out_path) {
  Output out;
  out.open(out_path);
  std::ostream& os = out.stream();

  os << "# " << kVersion << "\n# reed-muller code family, m=" << m << "\n";
  os << "RM(1," << m << ") generator:\n" << codes::rm_generator(1, m).to_string();

  const codes::BinaryCode bar = codes::shortened_rm(m);
  const codes::BinaryCode star = codes::punctured_rm(m);
  const codes::BinaryCode ham = codes::dual(bar);
  print_code_block(os, "shortened", bar, true);
  print_code_block(os, "punctured", star, true);

  os << "hamming_dual (n=" << ham.n << ", k=" << ham.k() << ")\n";
  os << "generator:\n" << ham.generator.to_string();
  os << "parity_check:\n" << ham.parity_check.to_string();
  os << "weights:";
  if (m <= 6) {
    const auto dist = codes::macwilliams_transform(codes::weight_distribution(bar),
                                                   codes::count_t{1} << (bar.n - bar.k()));
    for (const auto& [w, c] : dist.counts) os << " " << w << ":" << codes::count_to_string(c);
    os << "\n";
  } else {
    os << " (omitted, counts exceed the exact-transform range)\n";
  }

  if (m >= 3) {
    const codes::QrmCode q = codes::qrm(m);
    os << "qrm(1," << m << ") block=" << q.n << "\n";
    os << "h_z:\n" << q.h_z.to_string();
    os << "h_x:\n" << q.h_x.to_string();
  }
  return 0;
}

// ---- threshold -------------------------------------------------------------

int cmd_threshold(const std::string& protocol, double gamma, int t_or_j,
                  const std::vector<double>& grid_spec, bool ia_device,
                  const std::string& out_path) {
  mc::CurveKind kind;
  if (protocol == "Ia")
    kind = mc::CurveKind::Ia;
  else if (protocol == "Ib")
    kind = mc::CurveKind::Ib;
  else if (protocol == "Ib-dev")
    kind = mc::CurveKind::IbDev;
  else if (protocol == "Ic")
    kind = mc::CurveKind::Ic;
  else
    throw CLI::ValidationError("--protocol", "must be Ia, Ib, Ib-dev or Ic");

  const std::vector<double> grid = parse_grid(grid_spec);
  const auto points =
      mc::threshold_curve(kind, gamma, t_or_j, grid, mc::Execution::Parallel, ia_device);

  Output out;
  out.open(out_path);
  std::ostream& os = out.stream();
  write_header(os, {{"subcommand", "threshold"},
                    {"protocol", protocol},
                    {"gamma", fmt(gamma)},
                    {protocol == "Ia" ? "t" : "j", std::to_string(t_or_j)},
                    {"grid", fmt(grid.front()) + ".." + fmt(grid.back()) + "/" +
                                 std::to_string(grid.size())},
                    {"ia_device_mode", ia_device ? "1" : "0"}});
  os << "p_prime,p_th,protocol,j,gamma\n";
  for (const auto& pt : points) {
    os << fmt(pt.p_prime) << "," << (pt.p_th ? fmt(*pt.p_th) : "") << "," << protocol << ","
       << t_or_j << "," << fmt(gamma) << "\n";
  }
  return 0;
}

// ---- resources -------------------------------------------------------------

int cmd_resources(const std::string& protocol, double gamma, int t_max, double p,
                  std::optional<double> fixed_epsilon, const std::vector<int>& radices,
                  const std::string& out_path) {
  Output out;
  out.open(out_path);
  std::ostream& os = out.stream();
  write_header(os, {{"subcommand", "resources"},
                    {"protocol", protocol},
                    {"gamma", fmt(gamma)},
                    {"t_max", std::to_string(t_max)},
                    {"noise", fmt(p)},
                    {"epsilon", fixed_epsilon ? fmt(*fixed_epsilon) : "2^-t"}});
  os << "t,N,delta_phi,protocol,status\n";
  for (int t = 1; t <= t_max; ++t) {
    const double eps = fixed_epsilon ? *fixed_epsilon : std::ldexp(1.0, -t);
    std::optional<double> n;
    if (protocol != "Ia" && protocol != "Ib" && protocol != "II")
      throw CLI::ValidationError("--protocol", "must be Ia, Ib or II");
    try {
      if (protocol == "Ia")
        n = analytics::resources_ia(gamma, t, eps, p);
      else if (protocol == "Ib")
        n = analytics::resources_ib(gamma, t, eps, p);
      else
        n = analytics::resources_ii(t, eps, p, radices);
    } catch (const analytics::NonConvergentError&) {
      n = std::nullopt;
    }
    os << t << "," << (n ? fmt(*n) : "") << "," << fmt(analytics::stddev_phi(t, eps)) << ","
       << protocol << "," << (n ? "ok" : "non-convergent") << "\n";
  }
  return 0;
}

// ---- simulate ---------------------------------------------------------------

int cmd_simulate(const std::string& protocol, double phi, double gamma, int t, double epsilon,
                 const channel::PauliChannel& noise, std::optional<double> device,
                 std::optional<std::uint64_t> repetitions, std::uint64_t runs, std::uint64_t seed,
                 bool exact_marginal, const std::string& out_path) {
  mc::BatchConfig cfg;
  if (protocol == "Ia")
    cfg.kind = mc::ProtocolKind::Ia;
  else if (protocol == "Ib")
    cfg.kind = mc::ProtocolKind::Ib;
  else if (protocol == "Ic")
    cfg.kind = mc::ProtocolKind::Ic;
  else if (protocol == "II")
    cfg.kind = mc::ProtocolKind::II;
  else
    throw CLI::ValidationError("--protocol", "must be Ia, Ib, Ic or II");
  if (cfg.kind == mc::ProtocolKind::Ic && !device)
    throw CLI::ValidationError("--device-noise", "protocol Ic requires a device noise level");

  cfg.phi = phi;
  cfg.params.gamma = gamma;
  cfg.params.t = t;
  cfg.params.epsilon = epsilon;
  cfg.params.repetitions = repetitions;
  if (protocol == "II") cfg.params.plan = protocol::RadixPlan::MixedRadix;
  cfg.noise = noise;
  cfg.device_p = device;
  cfg.mode = exact_marginal ? protocol::MarginalMode::ExactMarginal
                            : protocol::MarginalMode::UpperBound;

  const auto results = mc::run_estimation_batch(cfg, runs, seed, mc::Execution::Parallel);
  const auto summary = mc::summarize(cfg, results);

  Output out;
  out.open(out_path);
  std::ostream& os = out.stream();
  std::map<std::string, std::string> header{{"subcommand", "simulate"},
                                            {"protocol", protocol},
                                            {"phi", fmt(phi)},
                                            {"gamma", fmt(gamma)},
                                            {"t", std::to_string(t)},
                                            {"epsilon", fmt(epsilon)},
                                            {"noise", fmt(noise.p)},
                                            {"noise_split", fmt(noise.p_x) + "|" + fmt(noise.p_y) +
                                                                "|" + fmt(noise.p_z)},
                                            {"trials", std::to_string(runs)},
                                            {"seed", std::to_string(seed)}};
  if (device) header["device_noise"] = fmt(*device);
  if (repetitions) header["repetitions"] = std::to_string(*repetitions);
  header["marginal_mode"] = exact_marginal ? "exact" : "upper-bound";
  write_header(os, header);

  os << "run,bits,phi_hat,aborted_at,interrogations,retransmissions\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    std::string digits;
    for (int d : r.digits) digits.push_back(static_cast<char>('0' + d));
    os << i << "," << digits << "," << fmt(r.phi_hat) << ","
       << (r.aborted_at ? std::to_string(*r.aborted_at) : "") << "," << r.interrogations << ","
       << r.retransmissions << "\n";
  }
  os << "# success_fraction="
     << fmt(static_cast<double>(summary.all_bits_correct) / static_cast<double>(summary.runs))
     << " aborted=" << summary.aborted
     << " mean_interrogations=" << fmt(summary.mean_interrogations)
     << " mean_interrogations_full_restart="
     << fmt(summary.mean_full_restart_interrogations) << "\n";
  return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyReport {
  int failures = 0;

  void check(const std::string& name, double observed, double expected, double tol) {
    const bool ok = std::abs(observed - expected) <= tol;
    failures += !ok;
    std::printf("[%s] %-46s observed=%-14.8g expected=%-14.8g tol=%g\n", ok ? " ok " : "FAIL",
                name.c_str(), observed, expected, tol);
  }
  void check_le(const std::string& name, double observed, double bound) {
    const bool ok = observed <= bound;
    failures += !ok;
    std::printf("[%s] %-46s observed=%-14.8g bound=%-14.8g\n", ok ? " ok " : "FAIL", name.c_str(),
                observed, bound);
  }
};

void verify_lemmas(VerifyReport& report) {
  rng::Stream rng(321);
  for (int m : {3, 4, 5, 6}) {
    const codes::QrmCode q = codes::qrm(m);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double phi = rng.next_double() * 2.0 * kPi;
      const double measured = oracle::lemma_logical_phase(q, phi);
      const double predicted = analytics::logical_shift(phi, m);
      double d = std::fmod(std::abs(measured - predicted), 2.0 * kPi);
      d = std::min(d, 2.0 * kPi - d);
      worst = std::max(worst, d);
    }
    report.check("logical shift statevector vs closed form m=" + std::to_string(m), worst, 0.0,
                 1e-10);

    const double bound = 1.0 - std::pow(1.0 - std::ldexp(1.0, -(m - 1)), m);
    double max_rejection = 0.0;
    for (int i = 0; i < 64; ++i)
      max_rejection =
          std::max(max_rejection, oracle::rejection_probability(q, 2.0 * kPi * i / 64.0));
    report.check_le("postselection rejection bound m=" + std::to_string(m), max_rejection,
                    bound + 1e-12);
  }
}

void verify_enumerators(VerifyReport& report) {
  for (int m = 2; m <= 5; ++m) {
    for (const codes::BinaryCode& code : {codes::shortened_rm(m), codes::punctured_rm(m)}) {
      const auto primal = codes::weight_distribution(code);
      const auto there =
          codes::macwilliams_transform(primal, codes::count_t{1} << (code.n - code.k()));
      const auto back = codes::macwilliams_transform(there, codes::count_t{1} << code.k());
      report.check("macwilliams round trip n=" + std::to_string(code.n) +
                       " k=" + std::to_string(code.k()),
                   back.counts == primal.counts ? 0.0 : 1.0, 0.0, 0.0);
    }
  }
  for (int m : {3, 4, 5}) {
    const auto dual_dist = codes::macwilliams_transform(
        codes::weight_distribution(codes::shortened_rm(m)),
        codes::count_t{1} << ((std::size_t{1} << m) - 1 - m));
    report.check("dual minimum distance m=" + std::to_string(m),
                 static_cast<double>(dual_dist.min_nonzero_weight()), 3.0, 0.0);
  }
}

void verify_montecarlo(VerifyReport& report, std::uint64_t trials, std::uint64_t seed) {
  for (int m : {3, 4, 5}) {
    const codes::QrmCode q = codes::qrm(m);
    for (double p : {0.01, 0.05, 0.1}) {
      const auto ch = channel::make_channel(p);
      const auto s = mc::run_detection_trials(q, ch, protocol::SamplingMode::JointPauli, trials,
                                              seed + m, mc::Execution::Parallel);
      const double qx = ch.marginal_x_rate();
      const double qz = ch.marginal_z_rate();
      const double n = static_cast<double>(s.trials);
      const std::string tag = " m=" + std::to_string(m) + " p=" + fmt(p);

      const double xp = analytics::x_pass(qx, m);
      report.check("x_pass" + tag, static_cast<double>(s.x_pass) / n, xp,
                   3.0 * std::sqrt(xp * (1.0 - xp) / n));
      const double zp = analytics::z_pass(qz, m);
      report.check("z_pass" + tag, static_cast<double>(s.z_pass) / n, zp,
                   3.0 * std::sqrt(zp * (1.0 - zp) / n));
      const double xe = analytics::x_err(qx, m);
      report.check("x_err" + tag,
                   static_cast<double>(s.x_corrupt_given_x_pass) / static_cast<double>(s.x_pass),
                   xe, 3.0 * std::sqrt(xe * (1.0 - xe) / (xp * n)) + 1.0 / (xp * n));
      const double ze = analytics::z_err(qz, m);
      report.check("z_err" + tag,
                   static_cast<double>(s.z_corrupt_given_z_pass) / static_cast<double>(s.z_pass),
                   ze, 3.0 * std::sqrt(ze * (1.0 - ze) / (zp * n)) + 1.0 / (zp * n));
    }
  }
}

int cmd_verify(const std::string& suite, std::uint64_t trials, std::uint64_t seed) {
  if (suite != "lemmas" && suite != "enumerators" && suite != "montecarlo" && suite != "all")
    throw CLI::ValidationError("--suite", "must be lemmas, enumerators, montecarlo or all");
  VerifyReport report;
  if (suite == "lemmas" || suite == "all") verify_lemmas(report);
  if (suite == "enumerators" || suite == "all") verify_enumerators(report);
  if (suite == "montecarlo" || suite == "all") verify_montecarlo(report, trials, seed);
  std::printf("%s\n", report.failures == 0 ? "verification passed" : "verification FAILED");
  return report.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fault-tolerant phase estimation toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // codes
  auto* codes_cmd = app.add_subcommand("codes", "dump code matrices and weight tables");
  int codes_m = 3;
  std::string codes_out;
  codes_cmd->add_option("-m,--order", codes_m, "code order m")->check(CLI::Range(2, 8));
  codes_cmd->add_option("--out", codes_out, "output path (default stdout)");
  codes_cmd->set_config("--config", "", "flat key=value config file; flags win on conflict");

  // threshold
  auto* thr = app.add_subcommand("threshold", "threshold curves over a device-noise grid");
  std::string thr_protocol = "Ia";
  double thr_gamma = kPi / 32;
  int thr_t = 4, thr_j = 4;
  bool thr_ia_device = false;
  std::vector<double> thr_grid;
  std::string thr_out;
  thr->add_option("--protocol", thr_protocol, "Ia | Ib | Ib-dev | Ic");
  thr->add_option("--gamma", thr_gamma, "exclusion half-width (radians)");
  thr->add_option("-t,--bits", thr_t, "bit count (protocol Ia)");
  thr->add_option("-j,--bit-index", thr_j, "bit index (encoded protocols)");
  thr->add_option("--grid", thr_grid, "device-noise grid min,max,steps")->delimiter(',')->expected(3);
  thr->add_flag("--ia-device", thr_ia_device, "couple Ia to device noise via (1-p')^2");
  thr->add_option("--out", thr_out, "output path (default stdout)");
  thr->set_config("--config", "", "flat key=value config file; flags win on conflict");

  // resources
  auto* res = app.add_subcommand("resources", "interrogation counts and estimate spread");
  std::string res_protocol = "Ia";
  double res_gamma = kPi / 32;
  int res_t = 5;
  std::vector<double> res_noise;
  std::optional<double> res_epsilon;
  std::vector<int> res_radices{3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3};
  std::string res_out;
  res->add_option("--protocol", res_protocol, "Ia | Ib | II");
  res->add_option("--gamma", res_gamma, "exclusion half-width (radians)");
  res->add_option("-t,--bits", res_t, "largest bit count")->check(CLI::Range(1, 16));
  res->add_option("--noise", res_noise, "field noise p or p,px,py,pz")->delimiter(',')->expected(1, 4);
  res->add_option("--epsilon", res_epsilon, "fixed failure budget (default 2^-t per row)");
  res->add_option("--radices", res_radices, "radix sequence for protocol II")->delimiter(',');
  res->add_option("--out", res_out, "output path (default stdout)");
  res->set_config("--config", "", "flat key=value config file; flags win on conflict");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimation runs");
  std::string sim_protocol = "Ia";
  double sim_phi = 0.3 * kPi;
  double sim_gamma = kPi / 32;
  int sim_t = 4;
  double sim_epsilon = 0.0625;
  std::vector<double> sim_noise;
  std::optional<double> sim_device;
  std::optional<std::uint64_t> sim_reps;
  std::uint64_t sim_runs = 100;
  std::optional<std::uint64_t> sim_seed;
  bool sim_exact_marginal = false;
  std::string sim_out;
  sim->add_option("--protocol", sim_protocol, "Ia | Ib | Ic | II");
  sim->add_option("--phi", sim_phi, "true phase in [0, pi)");
  sim->add_option("--gamma", sim_gamma, "exclusion half-width (radians)");
  sim->add_option("-t,--bits", sim_t, "bits (or digits) to estimate")->check(CLI::Range(1, 16));
  sim->add_option("--epsilon", sim_epsilon, "failure budget");
  sim->add_option("--noise", sim_noise, "field noise p or p,px,py,pz")->delimiter(',')->expected(1, 4);
  sim->add_option("--device-noise", sim_device, "device noise p'");
  sim->add_option("-M,--repetitions", sim_reps, "repetitions per bit (default derived)");
  sim->add_flag("--exact-marginal", sim_exact_marginal,
                "use the exact X/Z marginal rates instead of the full-p upper bound");
  sim->add_option("--trials", sim_runs, "number of independent runs");
  sim->add_option("--seed", sim_seed, "random seed (or FTQM_SEED)");
  sim->add_option("--out", sim_out, "output path (default stdout)");
  sim->set_config("--config", "", "flat key=value config file; flags win on conflict");

  // verify
  auto* ver = app.add_subcommand("verify", "run the verification suites");
  std::string ver_suite = "all";
  std::uint64_t ver_trials = 1000000;
  std::optional<std::uint64_t> ver_seed;
  ver->add_option("--suite", ver_suite, "lemmas | enumerators | montecarlo | all");
  ver->add_option("--trials", ver_trials, "Monte Carlo trials per check");
  ver->add_option("--seed", ver_seed, "random seed (or FTQM_SEED)");
  ver->set_config("--config", "", "flat key=value config file; flags win on conflict");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (codes_cmd->parsed()) return cmd_codes(codes_m, codes_out);
    if (thr->parsed()) {
      const bool is_ia = thr_protocol == "Ia";
      return cmd_threshold(thr_protocol, thr_gamma, is_ia ? thr_t : thr_j, thr_grid,
                           thr_ia_device, thr_out);
    }
    if (res->parsed())
      return cmd_resources(res_protocol, res_gamma, res_t, parse_noise(res_noise).p, res_epsilon,
                           res_radices, res_out);
    if (sim->parsed())
      return cmd_simulate(sim_protocol, sim_phi, sim_gamma, sim_t, sim_epsilon,
                          parse_noise(sim_noise), sim_device, sim_reps, sim_runs,
                          sim_seed.value_or(default_seed()), sim_exact_marginal, sim_out);
    if (ver->parsed()) return cmd_verify(ver_suite, ver_trials, ver_seed.value_or(default_seed()));
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

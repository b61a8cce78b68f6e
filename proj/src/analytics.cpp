#include "ftqm/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ftqm::analytics {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// (1 - p)^n without underflow for large n.
double survival_pow(double p, double n) {
  if (p >= 1.0) return 0.0;
  return std::exp(n * std::log1p(-p));
}

double pow2d(int e) { return std::ldexp(1.0, e); }

}  // namespace

double delta_of_gamma(double gamma) {
  require(gamma > 0.0 && gamma < kPi / 2.0, "delta_of_gamma: gamma must be in (0, pi/2)");
  return std::abs(std::sin(gamma)) / 2.0;
}

double p_fail_ia(double p, int t) {
  require(p >= 0.0 && p <= 1.0, "p_fail_ia: p must be in [0, 1]");
  require(t >= 1, "p_fail_ia: t must be >= 1");
  return -std::expm1(pow2d(t - 1) * std::log1p(-p));
}

double p_fail_ia_dev(double p, int t, double p_prime) {
  require(p_prime >= 0.0 && p_prime <= 1.0, "p_fail_ia_dev: p' must be in [0, 1]");
  const double survive = survival_pow(p, pow2d(t - 1)) * (1.0 - p_prime) * (1.0 - p_prime);
  return 1.0 - survive;
}

double threshold_ia(double gamma, int t) {
  const double delta = delta_of_gamma(gamma);
  return bisect([&](double p) { return p_fail_ia(p, t) - delta; }, 0.0, 0.5);
}

std::optional<double> threshold_ia_dev(double gamma, int t, double p_prime) {
  const double delta = delta_of_gamma(gamma);
  auto f = [&](double p) { return p_fail_ia_dev(p, t, p_prime) - delta; };
  if (f(0.0) > 0.0) return std::nullopt;
  return bisect(f, 0.0, 0.5);
}

std::uint64_t trials_required(double delta, double p_f, int t, double epsilon) {
  require(t >= 1, "trials_required: t must be >= 1");
  require(epsilon > 0.0 && epsilon < 1.0, "trials_required: epsilon must be in (0, 1)");
  const double margin = delta - p_f;
  if (!(margin > 0.0))
    throw NonConvergentError("trials_required: flip probability reaches the decision margin");
  const double m = std::log(2.0 * t / epsilon) / (2.0 * margin * margin);
  return static_cast<std::uint64_t>(std::ceil(m));
}

double resources_ia(double gamma, int t, double epsilon, double p) {
  const double delta = delta_of_gamma(gamma);
  const double pf = p_fail_ia(p, t);
  const double margin = delta - pf;
  if (!(margin > 0.0)) throw NonConvergentError("resources_ia: p at or above threshold");
  return (pow2d(t) - 1.0) * std::log(2.0 * t / epsilon) / (2.0 * margin * margin);
}

double logical_shift(double phi, int m) {
  require(m >= 3, "logical_shift: m must be >= 3");
  const double phi_m = std::ldexp(phi, m - 1);
  const double blocks = pow2d(m) - 1.0;
  return phi - 2.0 * std::atan(std::sin(phi_m) / (blocks + std::cos(phi_m)));
}

double gamma_prime(double gamma, int j) {
  require(j >= 1, "gamma_prime: j must be >= 1");
  return logical_shift(gamma, j + 2);
}

double retransmit_nontransversal(int j) {
  require(j >= 1, "retransmit_nontransversal: j must be >= 1");
  const double per_syndrome = std::ldexp(1.0, -(j + 1));
  const double exponent = (j + 2) * pow2d(j - 1);
  return -std::expm1(exponent * std::log1p(-per_syndrome));
}

double x_pass(double p, int m) {
  require(p >= 0.0 && p <= 1.0, "x_pass: p must be in [0, 1]");
  require(m >= 3, "x_pass: m must be >= 3");
  const double n = pow2d(m) - 1.0;
  const double h = pow2d(m - 1);
  const double blocks = n;  // 2^m - 1 codewords at each mid weight
  return survival_pow(p, n) +
         blocks * (survival_pow(p, h) * std::pow(p, h - 1.0) +
                   survival_pow(p, h - 1.0) * std::pow(p, h)) +
         std::pow(p, n);
}

double z_pass(double p, int m) {
  require(p >= 0.0 && p <= 1.0, "z_pass: p must be in [0, 1]");
  require(m >= 3, "z_pass: m must be >= 3");
  const double s = 1.0 - 2.0 * p;
  const double blocks = pow2d(m) - 1.0;
  // Sign-safe: the exponent 2^(m-1) is even.
  const double s_pow = std::pow(std::abs(s), pow2d(m - 1));
  return (1.0 + blocks * s_pow) / pow2d(m);
}

double x_err(double p, int m) {
  require(p >= 0.0 && p <= 0.5, "x_err: p must be in [0, 0.5]");
  require(m >= 3, "x_err: m must be >= 3");
  const double n = pow2d(m) - 1.0;
  const double h = pow2d(m - 1);
  const double blocks = n;
  const double corrupt = blocks * (survival_pow(p, h) * std::pow(p, h - 1.0) +
                                   survival_pow(p, h - 1.0) * std::pow(p, h)) +
                         std::pow(p, n);
  return corrupt / (survival_pow(p, n) + corrupt);
}

double z_err(double p, int m) {
  require(p >= 0.0 && p <= 0.5, "z_err: p must be in [0, 0.5]");
  require(m >= 3, "z_err: m must be >= 3");
  const double s = 1.0 - 2.0 * p;  // in [0, 1]
  const double blocks = pow2d(m) - 1.0;
  const double h = pow2d(m - 1);
  // Numerator 1 + (2^m-1)(2p-1)^(h-1) + (2^m-1)(2p-1)^h + (2p-1)^(2^m-1),
  // regrouped as (1 - s^(2^m-1)) - (2^m-1) s^(h-1) (1 - s) to avoid the
  // catastrophic cancellation of the printed form at small p.
  double s_pow_h1;  // s^(h-1)
  double one_minus_s_n;
  if (s <= 0.0) {
    s_pow_h1 = 0.0;
    one_minus_s_n = 1.0;
  } else {
    s_pow_h1 = std::exp((h - 1.0) * std::log(s));
    one_minus_s_n = -std::expm1((2.0 * h - 1.0) * std::log(s));
  }
  const double num = one_minus_s_n - blocks * s_pow_h1 * (2.0 * p);
  const double s_pow_h = s <= 0.0 ? 0.0 : std::exp(h * std::log(s));
  const double den = 2.0 * (1.0 + blocks * s_pow_h);
  const double v = num / den;
  return v < 0.0 ? 0.0 : v;  // guard against rounding at p ~ 0
}

double p_fail_ib(double p, int j) {
  require(j >= 1, "p_fail_ib: j must be >= 1");
  const int m = j + 2;
  const double k = pow2d(j - 1);
  const double log_survive = k * (std::log1p(-x_err(p, m)) + std::log1p(-z_err(p, m)));
  return -std::expm1(log_survive);
}

double threshold_ib(double gamma, int j) {
  const double target = delta_of_gamma(gamma_prime(gamma, j));
  return bisect([&](double p) { return p_fail_ib(p, j) - target; }, 0.0, 0.5);
}

double retransmit_noise(double p, int j) {
  require(j >= 1, "retransmit_noise: j must be >= 1");
  const int m = j + 2;
  const double k = pow2d(j - 1);
  return 1.0 - std::pow(x_pass(p, m) * z_pass(p, m), k);
}

double overhead_C(int j, double p) {
  require(j >= 1, "overhead_C: j must be >= 1");
  const int m = j + 2;
  const double k = pow2d(j - 1);
  const double block = pow2d(j + 2) - 1.0;
  const double survive_noise = std::pow(x_pass(p, m) * z_pass(p, m), k);
  const double survive_rot = 1.0 - retransmit_nontransversal(j);
  return block / (survive_noise * survive_rot);
}

double resources_ib(double gamma, int t, double epsilon, double p) {
  require(t >= 1, "resources_ib: t must be >= 1");
  const double log_conf = std::log(2.0 * t / epsilon);
  double total = 0.0;
  for (int j = 1; j <= t; ++j) {
    const double margin = delta_of_gamma(gamma_prime(gamma, j)) - p_fail_ib(p, j);
    if (!(margin > 0.0))
      throw NonConvergentError("resources_ib: p at or above threshold for some bit");
    total += pow2d(j - 1) * overhead_C(j, p) * log_conf / (2.0 * margin * margin);
  }
  return total;
}

double avg_c_e(int m) {
  require(m >= 3, "avg_c_e: m must be >= 3");
  return (m + 1) * pow2d(m - 1) / (pow2d(m) - 1.0) * pow2d(m - 1);
}

double dev_ib(double p_prime, int m) {
  require(m >= 3, "dev_ib: m must be >= 3");
  require(p_prime >= 0.0 && p_prime <= 1.0, "dev_ib: p' must be in [0, 1]");
  return (avg_c_e(m) + (pow2d(m) - m - 2.0) + 1.0) * p_prime;
}

namespace {

// Shared bisection for the two-noise threshold relations. The device terms
// enter as a p-independent log-survival contribution plus a shift of the
// effective error probability fed to the detection failure rates.
std::optional<double> device_threshold(double gamma, int j, double shift, double device_log_survival) {
  const int m = j + 2;
  const double k = std::ldexp(1.0, j - 1);
  const double target = delta_of_gamma(gamma_prime(gamma, j));
  auto lhs = [&](double p) {
    const double pe = std::min(p + shift, 0.5);
    const double log_survive =
        k * (std::log1p(-x_err(pe, m)) + std::log1p(-z_err(pe, m))) + device_log_survival;
    return -std::expm1(log_survive) - target;
  };
  if (lhs(0.0) > 0.0) return std::nullopt;
  return bisect(lhs, 0.0, 0.5);
}

}  // namespace

std::optional<double> threshold_relation_ib(double gamma, int j, double p_prime) {
  require(j >= 1, "threshold_relation_ib: j must be >= 1");
  require(p_prime >= 0.0 && p_prime < 1.0, "threshold_relation_ib: p' must be in [0, 1)");
  const int m = j + 2;
  const double points = 3.0 * pow2d(j - 1) + 2.0;
  return device_threshold(gamma, j, dev_ib(p_prime, m), points * std::log1p(-p_prime));
}

double dev_ic(double p_prime, int m) {
  require(m >= 3, "dev_ic: m must be >= 3");
  require(p_prime >= 0.0 && p_prime <= 1.0, "dev_ic: p' must be in [0, 1]");
  return (3.0 * 2.0 * m + 1.0 + (pow2d(m) - m - 2.0) + 1.0) * p_prime;
}

double c0_count(int m) {
  require(m >= 3, "c0_count: m must be >= 3");
  return 3.0 * 2.0 * m * pow2d(m - 1) + pow2d(m) - 1.0;
}

double c_count(int m) {
  const double c0 = c0_count(m);
  const double n = pow2d(m) - 1.0;
  auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
  return 2.0 * c0 * c0 + choose2(2.0 * n) + 2.0 * m * choose2(pow2d(m)) + 3.0 * c0 * n + n * n;
}

double p_ec(double p_prime, int m) {
  require(p_prime >= 0.0 && p_prime <= 0.1, "p_ec: p' must be in [0, 0.1]");
  return std::min(c_count(m) * p_prime * p_prime, 1.0);
}

std::optional<double> threshold_relation_ic(double gamma, int j, double p_prime) {
  require(j >= 1, "threshold_relation_ic: j must be >= 1");
  const int m = j + 2;
  const double pec = p_ec(p_prime, m);
  if (pec >= 1.0) return std::nullopt;
  const double points = 3.0 * pow2d(j - 1) + j + 1.0;
  return device_threshold(gamma, j, dev_ic(p_prime, m), points * std::log1p(-pec));
}

double stddev_phi(int t, double epsilon) {
  require(t >= 1, "stddev_phi: t must be >= 1");
  require(epsilon >= 0.0 && epsilon < 1.0, "stddev_phi: epsilon must be in [0, 1)");
  const double est = (1.0 - epsilon) * kPi / pow2d(t + 1);
  const double rand_part = epsilon * kPi;
  return std::sqrt(est * est + rand_part * rand_part);
}

std::vector<AngleInterval> excluded_regions(double gamma, int t) {
  require(gamma > 0.0 && gamma < kPi / 2.0, "excluded_regions: gamma out of range");
  require(t >= 1, "excluded_regions: t must be >= 1");
  std::vector<AngleInterval> out;
  for (int j = 1; j <= t; ++j) {
    const double half = gamma / pow2d(j - 1);
    const std::int64_t count = std::int64_t{1} << (j - 1);
    for (std::int64_t i = 0; i < count; ++i) {
      const double centre = (2.0 * i + 1.0) * kPi / pow2d(j);
      out.push_back({j, centre - half, centre + half});
    }
  }
  return out;
}

double union_measure(const std::vector<AngleInterval>& intervals) {
  std::vector<std::pair<double, double>> spans;
  spans.reserve(intervals.size());
  for (const auto& iv : intervals) spans.emplace_back(iv.lo, iv.hi);
  std::sort(spans.begin(), spans.end());
  double measure = 0.0;
  double cur_lo = 0.0, cur_hi = -1.0;
  for (const auto& [lo, hi] : spans) {
    if (hi <= cur_hi) continue;
    if (lo > cur_hi) {
      if (cur_hi > cur_lo) measure += cur_hi - cur_lo;
      cur_lo = lo;
    }
    cur_hi = hi;
  }
  if (cur_hi > cur_lo) measure += cur_hi - cur_lo;
  return measure;
}

double delta_ii() {
  const double a = std::cos(5.0 * kPi / 24.0);
  const double b = std::cos(6.0 * kPi / 24.0);
  return std::abs(a * a - b * b);
}

double threshold_ii(int t) {
  require(t >= 1, "threshold_ii: t must be >= 1");
  const double target = delta_ii();
  const double interrogations = std::pow(3.0, t - 1);
  auto f = [&](double p) { return -std::expm1(interrogations * std::log1p(-p)) - target; };
  return bisect(f, 0.0, 0.5);
}

double resources_ii(int t, double epsilon, double p, std::span<const int> radices) {
  require(t >= 1, "resources_ii: t must be >= 1");
  require(static_cast<int>(radices.size()) >= t - 1, "resources_ii: need t - 1 radices");
  for (int r : radices.first(static_cast<std::size_t>(t > 0 ? t - 1 : 0)))
    require(r == 2 || r == 3, "resources_ii: radices must be 2 or 3");

  const double delta = delta_ii();
  const double log_conf = std::log(2.0 * t / epsilon);
  double total = 0.0;
  double interrogations = 1.0;  // prod_{l < j} r_l, r_0 = 1
  for (int j = 1; j <= t; ++j) {
    if (j > 1) interrogations *= radices[j - 2];
    const double pf = -std::expm1(interrogations * std::log1p(-p));
    const double margin = delta - pf;
    if (!(margin > 0.0))
      throw NonConvergentError("resources_ii: p at or above threshold for some digit");
    total += interrogations * log_conf / (2.0 * margin * margin);
  }
  return total;
}

}  // namespace ftqm::analytics

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace ftqm::analytics {

// Raised when p_f reaches the decision margin and the estimator cannot be
// driven to the requested confidence by repetition.
struct NonConvergentError : std::domain_error {
  using std::domain_error::domain_error;
};

// ---- estimator margins ------------------------------------------------

// delta(gamma) = |sin gamma| / 2, the probability margin that separates the
// bit decisions at exclusion half-width gamma.
double delta_of_gamma(double gamma);

// Probability that the final X measurement is flipped after 2^(t-1) noisy
// interrogations: 1 - (1 - p)^(2^(t-1)).
double p_fail_ia(double p, int t);
// Same with device survival (1 - p_prime)^2 for preparation + measurement.
double p_fail_ia_dev(double p, int t, double p_prime);

// Field-noise threshold: root of 1 - (1-p)^(2^(t-1)) = delta(gamma).
double threshold_ia(double gamma, int t);
// Device-noise variant; empty when preparation/measurement noise alone
// already exceeds the margin.
std::optional<double> threshold_ia_dev(double gamma, int t, double p_prime);

// Hoeffding repetition count ceil(ln(2t/eps) / (2 (delta - p_f)^2)).
// Throws NonConvergentError when p_f >= delta.
std::uint64_t trials_required(double delta, double p_f, int t, double epsilon);

// Total field interrogations (2^t - 1) M for the unencoded estimator.
double resources_ia(double gamma, int t, double epsilon, double p);

// ---- non-transversality ----------------------------------------------

// Logical rotation produced by a transversal rotation that is not in the
// code's transversal set, after postselecting on clean syndromes:
//   phi' = phi - 2 atan( sin(phi_m) / (2^m - 1 + cos(phi_m)) ),
// phi_m = 2^(m-1) phi.
double logical_shift(double phi, int m);

// Logical exclusion half-width for bit j (block order m = j + 2).
double gamma_prime(double gamma, int j);

// Retransmission probability due to non-transversality over the 2^(j-1)
// interrogation steps of bit j: 1 - (1 - 2^-(j+1))^((j+2) 2^(j-1)).
double retransmit_nontransversal(int j);

// ---- error-detection failure probabilities -----------------------------

// Probability that all X-error syndromes pass: weight enumerator of the
// punctured Reed-Muller code at (1-p, p).
double x_pass(double p, int m);
// Probability that all Z-error syndromes pass: weight enumerator of the
// Hamming code at (1-p, p), via MacWilliams in closed form.
double z_pass(double p, int m);

// P(logical corruption | X syndromes pass): undetected (nonzero) punctured
// Reed-Muller codewords over all undetected patterns.
double x_err(double p, int m);
// P(logical corruption | Z syndromes pass): odd-weight undetected patterns,
// closed form with the |V_Hx| / |V_Hz| = 1/2 prefactor.
double z_err(double p, int m);

// ---- protocol Ib: thresholds and resources ------------------------------

// 1 - (1 - x_err)^(2^(j-1)) (1 - z_err)^(2^(j-1)) at m = j + 2.
double p_fail_ib(double p, int j);
double threshold_ib(double gamma, int j);

// Retransmission probability due to noise over a bit-j repetition.
double retransmit_noise(double p, int j);
// Per-step interrogation overhead C(j) = (2^(j+2)-1) / ((1-p_n)(1-p_r)).
double overhead_C(int j, double p);
// Eq-level resource count: sum_j 2^(j-1) C(j) M_j.
double resources_ib(double gamma, int t, double epsilon, double p);

// ---- device noise -------------------------------------------------------

// Mean number of entangling points touching one qubit in the non-FT
// encoder: (m+1) 2^(m-1) / (2^m - 1) * 2^(m-1).
double avg_c_e(int m);
// Per-qubit detection-procedure device contribution (c_e + 2^m - m - 1) p'.
double dev_ib(double p_prime, int m);

// Threshold relation p_th(p'): root in p of
//   1 - (1-x_err')^K (1-z_err')^K (1-p')^(3K+2) = delta(gamma'), K = 2^(j-1),
// with primed rates evaluated at p + dev_ib(p'). Empty when no positive root.
std::optional<double> threshold_relation_ib(double gamma, int j, double p_prime);

// Fault-tolerant variant bookkeeping.
double dev_ic(double p_prime, int m);
double c0_count(int m);  // failure points per FT syndrome + recovery block
double c_count(int m);   // two-error combinations between FT rounds
double p_ec(double p_prime, int m);  // ~ c p'^2

// Root of 1 - (1-x_err'')^K (1-z_err'')^K (1-p_EC)^(3K+j+1) = delta(gamma').
std::optional<double> threshold_relation_ic(double gamma, int j, double p_prime);

// ---- performance --------------------------------------------------------

// sqrt((1-eps)^2 pi^2 / 2^(2(t+1)) + eps^2 pi^2).
double stddev_phi(int t, double epsilon);

struct AngleInterval {
  int bit;
  double lo;
  double hi;
};

// Exclusion intervals for each bit: bit j contributes 2^(j-1) intervals of
// half-width gamma / 2^(j-1) centred at odd multiples of pi / 2^j.
std::vector<AngleInterval> excluded_regions(double gamma, int t);

// Measure of the union of intervals (handles overlap).
double union_measure(const std::vector<AngleInterval>& intervals);

// ---- mixed-radix estimator ----------------------------------------------

// Fixed margin |cos^2(5 pi/24) - cos^2(pi/4)| of the three-way decision.
double delta_ii();
// Root of 1 - (1 - p)^(3^(t-1)) = delta_ii().
double threshold_ii(int t);
// N = sum_j n_j M_j with n_j = prod_{l<j} r_l and per-digit p_f from n_j.
double resources_ii(int t, double epsilon, double p, std::span<const int> radices);

// ---- shared root finder ---------------------------------------------------

// Monotone bisection on [lo, hi], 200 iterations.
template <typename F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace ftqm::analytics

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ftqm/codes.hpp"
#include "ftqm/rng.hpp"

namespace ftqm::channel {

// Single-qubit Pauli channel: with probability p an error occurs, split into
// X, XZ (=Y up to phase) and Z with conditional weights p_x, p_y, p_z.
struct PauliChannel {
  double p = 0.0;
  double p_x = 1.0 / 3.0;
  double p_y = 1.0 / 3.0;
  double p_z = 1.0 / 3.0;

  // Per-qubit probability of an X component (X or XZ).
  double marginal_x_rate() const { return p * (p_x + p_y); }
  // Per-qubit probability of a Z component (Z or XZ).
  double marginal_z_rate() const { return p * (p_z + p_y); }
};

// Throws std::invalid_argument unless p in [0,1], weights nonnegative and
// summing to 1 within 1e-12.
PauliChannel make_channel(double p, double p_x, double p_y, double p_z);
PauliChannel make_channel(double p);  // symmetric split 1/3 each

// n-qubit Pauli error as X/Z component vectors; both bits set means XZ.
struct PauliErrorPattern {
  std::size_t n = 0;
  codes::BitVec x_part;
  codes::BitVec z_part;
};

// Independent per-qubit draw: identity w.p. 1-p, X w.p. p*p_x,
// XZ w.p. p*p_y, Z w.p. p*p_z. One uniform consumed per qubit.
PauliErrorPattern sample_pattern(const PauliChannel& channel, std::size_t n, rng::Stream& rng);

}  // namespace ftqm::channel

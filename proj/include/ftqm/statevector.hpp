#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "ftqm/codes.hpp"

namespace ftqm::oracle {

using cplx = std::complex<double>;

// State restricted to shifted cosets of the shortened Reed-Muller code:
// all operations used here (diagonal rotations, stabilizer projectors)
// keep the support inside at most 2^(m+1) basis labels, so verification
// stays cheap at any block size up to 63 qubits.
struct SparseState {
  int m = 0;
  std::size_t n = 0;                // 2^m - 1 qubits, label bits 0..n-1
  std::map<std::uint64_t, cplx> amp;

  double norm_sq() const;
  void normalize();
};

// Dense cross-check representation, n <= 15 qubits.
struct DenseState {
  std::size_t n = 0;
  std::vector<cplx> amp;  // size 2^n

  double norm_sq() const;
  void normalize();
};

// |x_L> = uniform superposition over {y + x*1 : y in shortened RM}.
SparseState prepare_logical(const codes::QrmCode& code, int x);
// (|0_L> + |1_L>) / sqrt(2).
SparseState prepare_plus(const codes::QrmCode& code);

DenseState prepare_logical_dense(const codes::QrmCode& code, int x);
DenseState prepare_plus_dense(const codes::QrmCode& code);

// Transversal R_z(theta) = diag(e^{-i theta/2}, e^{+i theta/2}) per qubit:
// label y picks up exp(i theta (wt(y) - n/2)).
void apply_transversal_rz(SparseState& state, double theta);
void apply_transversal_rz(DenseState& state, double theta);

// Sequentially applies (I + S)/2 for every Z then every X stabilizer
// generator; returns the acceptance probability and renormalizes (the
// state is zeroed when the acceptance vanishes).
double project_code_space(SparseState& state, const codes::QrmCode& code);
double project_code_space(DenseState& state, const codes::QrmCode& code);

// arg<1_L|state> - arg<0_L|state> in [0, 2pi). Throws when either logical
// component has (numerically) zero overlap.
double measure_relative_phase(const SparseState& state, const codes::QrmCode& code);
double measure_relative_phase(const DenseState& state, const codes::QrmCode& code);

// 1 - acceptance of the code-space projection after transversal R_z(-phi)
// on the logical plus state.
double rejection_probability(const codes::QrmCode& code, double phi);

// Relative phase produced by transversal R_z(-phi) followed by projection,
// the statevector counterpart of the closed-form logical shift.
double lemma_logical_phase(const codes::QrmCode& code, double phi);

}  // namespace ftqm::oracle

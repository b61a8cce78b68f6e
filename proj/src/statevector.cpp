#include "ftqm/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ftqm::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t row_mask(const codes::BinaryMatrix& mat, std::size_t r) {
  // Codes here never exceed 63 columns, so one word suffices.
  if (mat.cols > 64) throw std::invalid_argument("statevector: block too large");
  return mat.row(r)[0];
}

std::vector<std::uint64_t> coset_labels(const codes::QrmCode& code, int x) {
  std::vector<std::uint64_t> labels;
  const std::uint64_t ones = (code.n == 64) ? ~0ULL : ((1ULL << code.n) - 1);
  for (const codes::BitVec& w : codes::codewords(code.rm_bar.generator)) {
    std::uint64_t label = w.words[0];
    if (x) label ^= ones;
    labels.push_back(label);
  }
  return labels;
}

double wrap_2pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

}  // namespace

double SparseState::norm_sq() const {
  double s = 0.0;
  for (const auto& [label, a] : amp) s += std::norm(a);
  return s;
}

void SparseState::normalize() {
  const double s = std::sqrt(norm_sq());
  if (s == 0.0) return;
  for (auto& [label, a] : amp) a /= s;
}

double DenseState::norm_sq() const {
  double s = 0.0;
  for (const cplx& a : amp) s += std::norm(a);
  return s;
}

void DenseState::normalize() {
  const double s = std::sqrt(norm_sq());
  if (s == 0.0) return;
  for (cplx& a : amp) a /= s;
}

SparseState prepare_logical(const codes::QrmCode& code, int x) {
  SparseState st;
  st.m = code.m;
  st.n = code.n;
  const auto labels = coset_labels(code, x);
  const double a = 1.0 / std::sqrt(static_cast<double>(labels.size()));
  for (std::uint64_t label : labels) st.amp[label] = a;
  return st;
}

SparseState prepare_plus(const codes::QrmCode& code) {
  SparseState st = prepare_logical(code, 0);
  const SparseState one = prepare_logical(code, 1);
  for (const auto& [label, a] : one.amp) st.amp[label] += a;
  st.normalize();
  return st;
}

DenseState prepare_logical_dense(const codes::QrmCode& code, int x) {
  if (code.n > 15) throw std::invalid_argument("dense oracle limited to 15 qubits");
  DenseState st;
  st.n = code.n;
  st.amp.assign(std::size_t{1} << code.n, cplx{0.0, 0.0});
  const auto labels = coset_labels(code, x);
  const double a = 1.0 / std::sqrt(static_cast<double>(labels.size()));
  for (std::uint64_t label : labels) st.amp[label] = a;
  return st;
}

DenseState prepare_plus_dense(const codes::QrmCode& code) {
  DenseState st = prepare_logical_dense(code, 0);
  const DenseState one = prepare_logical_dense(code, 1);
  for (std::size_t i = 0; i < st.amp.size(); ++i) st.amp[i] += one.amp[i];
  st.normalize();
  return st;
}

void apply_transversal_rz(SparseState& state, double theta) {
  const double half_n = 0.5 * static_cast<double>(state.n);
  for (auto& [label, a] : state.amp) {
    const double w = static_cast<double>(std::popcount(label));
    a *= std::polar(1.0, theta * (w - half_n));
  }
}

void apply_transversal_rz(DenseState& state, double theta) {
  const double half_n = 0.5 * static_cast<double>(state.n);
  for (std::size_t label = 0; label < state.amp.size(); ++label) {
    const double w = static_cast<double>(std::popcount(label));
    state.amp[label] *= std::polar(1.0, theta * (w - half_n));
  }
}

double project_code_space(SparseState& state, const codes::QrmCode& code) {
  double acceptance = 1.0;

  // Z stabilizers are diagonal: (I + S^Z)/2 keeps labels with even overlap.
  for (std::size_t r = 0; r < code.h_z.rows; ++r) {
    const std::uint64_t mask = row_mask(code.h_z, r);
    double kept = 0.0;
    for (auto it = state.amp.begin(); it != state.amp.end();) {
      if (std::popcount(it->first & mask) & 1) {
        it = state.amp.erase(it);
      } else {
        kept += std::norm(it->second);
        ++it;
      }
    }
    acceptance *= kept;
    if (kept == 0.0) {
      state.amp.clear();
      return 0.0;
    }
    const double inv = 1.0 / std::sqrt(kept);
    for (auto& [label, a] : state.amp) a *= inv;
  }

  // X stabilizers permute labels: new[y] = (old[y] + old[y ^ s]) / 2.
  for (std::size_t r = 0; r < code.h_x.rows; ++r) {
    const std::uint64_t mask = row_mask(code.h_x, r);
    std::map<std::uint64_t, cplx> next;
    for (const auto& [label, a] : state.amp) {
      next[label] += 0.5 * a;
      next[label ^ mask] += 0.5 * a;
    }
    double kept = 0.0;
    for (auto it = next.begin(); it != next.end();) {
      const double mag = std::norm(it->second);
      if (mag < 1e-30) {
        it = next.erase(it);
      } else {
        kept += mag;
        ++it;
      }
    }
    acceptance *= kept;
    if (kept == 0.0) {
      state.amp.clear();
      return 0.0;
    }
    const double inv = 1.0 / std::sqrt(kept);
    for (auto& [label, a] : next) a *= inv;
    state.amp = std::move(next);
  }
  return acceptance;
}

double project_code_space(DenseState& state, const codes::QrmCode& code) {
  double acceptance = 1.0;

  for (std::size_t r = 0; r < code.h_z.rows; ++r) {
    const std::uint64_t mask = row_mask(code.h_z, r);
    double kept = 0.0;
    for (std::size_t label = 0; label < state.amp.size(); ++label) {
      if (std::popcount(label & mask) & 1)
        state.amp[label] = 0.0;
      else
        kept += std::norm(state.amp[label]);
    }
    acceptance *= kept;
    if (kept == 0.0) return 0.0;
    const double inv = 1.0 / std::sqrt(kept);
    for (cplx& a : state.amp) a *= inv;
  }

  for (std::size_t r = 0; r < code.h_x.rows; ++r) {
    const std::uint64_t mask = row_mask(code.h_x, r);
    std::vector<cplx> next(state.amp.size());
    double kept = 0.0;
    for (std::size_t label = 0; label < state.amp.size(); ++label) {
      next[label] = 0.5 * (state.amp[label] + state.amp[label ^ mask]);
      kept += std::norm(next[label]);
    }
    acceptance *= kept;
    if (kept == 0.0) return 0.0;
    const double inv = 1.0 / std::sqrt(kept);
    for (cplx& a : next) a *= inv;
    state.amp = std::move(next);
  }
  return acceptance;
}

namespace {

template <typename Getter>
double relative_phase(const codes::QrmCode& code, Getter get) {
  const double scale = 1.0 / std::sqrt(std::ldexp(1.0, code.m));
  cplx zero_overlap{0.0, 0.0}, one_overlap{0.0, 0.0};
  for (std::uint64_t label : coset_labels(code, 0)) zero_overlap += scale * get(label);
  for (std::uint64_t label : coset_labels(code, 1)) one_overlap += scale * get(label);
  if (std::abs(zero_overlap) < 1e-14 || std::abs(one_overlap) < 1e-14)
    throw std::domain_error("measure_relative_phase: zero overlap with a logical component");
  return wrap_2pi(std::arg(one_overlap) - std::arg(zero_overlap));
}

}  // namespace

double measure_relative_phase(const SparseState& state, const codes::QrmCode& code) {
  return relative_phase(code, [&](std::uint64_t label) {
    auto it = state.amp.find(label);
    return it == state.amp.end() ? cplx{0.0, 0.0} : it->second;
  });
}

double measure_relative_phase(const DenseState& state, const codes::QrmCode& code) {
  return relative_phase(code, [&](std::uint64_t label) { return state.amp[label]; });
}

double rejection_probability(const codes::QrmCode& code, double phi) {
  SparseState st = prepare_plus(code);
  apply_transversal_rz(st, -phi);
  const double acceptance = project_code_space(st, code);
  return 1.0 - acceptance;
}

double lemma_logical_phase(const codes::QrmCode& code, double phi) {
  SparseState st = prepare_plus(code);
  apply_transversal_rz(st, -phi);
  project_code_space(st, code);
  return measure_relative_phase(st, code);
}

}  // namespace ftqm::oracle

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ftqm::codes {

// Exact codeword counts; Reed-Muller second-order distributions overflow
// 64 bits well before the supported range runs out.
using count_t = unsigned __int128;

std::string count_to_string(count_t v);

// Packed GF(2) vector, 64 entries per word.
struct BitVec {
  std::size_t n = 0;
  std::vector<std::uint64_t> words;

  BitVec() = default;
  explicit BitVec(std::size_t length) : n(length), words((length + 63) / 64, 0) {}

  bool get(std::size_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      words[i >> 6] |= mask;
    else
      words[i >> 6] &= ~mask;
  }
  void xor_with(const BitVec& other);
  std::size_t weight() const;
  bool is_zero() const;
  bool operator==(const BitVec& other) const { return n == other.n && words == other.words; }
  bool operator<(const BitVec& other) const;
  std::string to_string() const;
};

// Row-major bit-packed GF(2) matrix.
struct BinaryMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t row_words = 0;
  std::vector<std::uint64_t> bits;

  BinaryMatrix() = default;
  BinaryMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), row_words((c + 63) / 64), bits(r * row_words, 0) {}

  static BinaryMatrix identity(std::size_t n);

  bool get(std::size_t r, std::size_t c) const {
    return (bits[r * row_words + (c >> 6)] >> (c & 63)) & 1;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    if (v)
      bits[r * row_words + (c >> 6)] |= mask;
    else
      bits[r * row_words + (c >> 6)] &= ~mask;
  }

  std::uint64_t* row(std::size_t r) { return bits.data() + r * row_words; }
  const std::uint64_t* row(std::size_t r) const { return bits.data() + r * row_words; }

  BitVec row_vec(std::size_t r) const;
  void xor_rows(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  std::size_t rank() const;
  // In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref();
  // Canonical (RREF) basis of the right null space.
  BinaryMatrix null_space() const;
  // this * other^T over GF(2).
  BinaryMatrix multiply_transpose(const BinaryMatrix& other) const;

  bool operator==(const BinaryMatrix& other) const;
  std::string to_string() const;  // one row per line, '0'/'1'
};

// Linear code as generator + parity check, with G * H^T = 0.
struct BinaryCode {
  std::size_t n = 0;
  BinaryMatrix generator;
  BinaryMatrix parity_check;

  std::size_t k() const { return generator.rows; }
};

// Builds the parity check as the canonical null-space basis of the generator.
BinaryCode make_code(BinaryMatrix generator);

struct WeightDistribution {
  std::size_t n = 0;
  std::map<std::size_t, count_t> counts;

  count_t total() const;
  count_t at(std::size_t w) const;
  // Smallest nonzero weight with a positive count; 0 if only the zero word exists.
  std::size_t min_nonzero_weight() const;
};

// Generator of RM(r, m): evaluation vectors over all 2^m inputs of the
// degree <= r monomials, graded order within each degree, all-ones row last.
// The variable读 order makes rm_generator(1, 3) reproduce the classic
//   00001111 / 00110011 / 01010101 / 11111111
// basis.
BinaryMatrix rm_generator(int r, int m);

// Shortened first-order Reed-Muller code: keep codewords starting with 0,
// drop the first coordinate. Length 2^m - 1, dimension m.
BinaryCode shortened_rm(int m);

// Punctured first-order Reed-Muller code: the shortened code plus the
// all-ones row. Length 2^m - 1, dimension m + 1.
BinaryCode punctured_rm(int m);

// Swaps generator and parity check; involutive by construction.
BinaryCode dual(const BinaryCode& code);

// All codewords of the row space. Guarded at rank <= 24 (2^k enumeration).
std::vector<BitVec> codewords(const BinaryMatrix& generator);

WeightDistribution weight_distribution(const BinaryCode& code);

// W(x, y) = sum_w A_w x^(n-w) y^w, compensated summation.
double weight_enum_eval(const WeightDistribution& dist, double x, double y);

// Dual distribution through the MacWilliams identity, exact integer
// arithmetic (Krawtchouk expansion). dual_size must equal 2^n / |C|.
WeightDistribution macwilliams_transform(const WeightDistribution& dist, count_t dual_size);

// Closed-form weight distribution of RM(2, m).
WeightDistribution rm2_weight_distribution(int m);

// h * error^T over GF(2); zero iff the error is undetected.
BitVec syndrome(const BinaryMatrix& h, const BitVec& error);

// CSS code from the punctured/shortened Reed-Muller pair. h_z (parity check
// of the punctured code) detects X errors; h_x (parity check of the dual of
// the shortened code, i.e. the shortened code's generator) detects Z errors.
struct QrmCode {
  int m = 0;
  std::size_t n = 0;
  BinaryCode rm_bar;
  BinaryCode rm_star;
  BinaryMatrix h_z;
  BinaryMatrix h_x;
};

QrmCode qrm(int m);

// Exhaustive minimum distance, same enumeration guard as codewords().
std::size_t min_distance(const BinaryCode& code);

}  // namespace ftqm::codes

#include "ftqm/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ftqm::codes {

namespace {

constexpr std::size_t kEnumerationGuard = 24;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

std::string count_to_string(count_t v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

void BitVec::xor_with(const BitVec& other) {
  for (std::size_t i = 0; i < words.size(); ++i) words[i] ^= other.words[i];
}

std::size_t BitVec::weight() const {
  std::size_t w = 0;
  for (std::uint64_t word : words) w += std::popcount(word);
  return w;
}

bool BitVec::is_zero() const {
  for (std::uint64_t word : words)
    if (word) return false;
  return true;
}

bool BitVec::operator<(const BitVec& other) const {
  // Lexicographic in coordinate order (coordinate 0 most significant).
  for (std::size_t i = 0; i < n; ++i) {
    const bool a = get(i), b = other.get(i);
    if (a != b) return b;
  }
  return false;
}

std::string BitVec::to_string() const {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
  BinaryMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitVec BinaryMatrix::row_vec(std::size_t r) const {
  BitVec v(cols);
  for (std::size_t w = 0; w < row_words; ++w) v.words[w] = row(r)[w];
  return v;
}

void BinaryMatrix::xor_rows(std::size_t dst, std::size_t src) {
  for (std::size_t w = 0; w < row_words; ++w) row(dst)[w] ^= row(src)[w];
}

void BinaryMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t w = 0; w < row_words; ++w) std::swap(row(a)[w], row(b)[w]);
}

std::vector<std::size_t> BinaryMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (get(i, c)) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    swap_rows(r, pivot);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i != r && get(i, c)) xor_rows(i, r);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t BinaryMatrix::rank() const {
  BinaryMatrix copy = *this;
  return copy.rref().size();
}

BinaryMatrix BinaryMatrix::null_space() const {
  BinaryMatrix work = *this;
  const std::vector<std::size_t> pivots = work.rref();
  const std::size_t r = pivots.size();

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  BinaryMatrix basis(free_cols.size(), cols);
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    const std::size_t f = free_cols[i];
    basis.set(i, f, true);
    for (std::size_t p = 0; p < r; ++p) {
      if (work.get(p, f)) basis.set(i, pivots[p], true);
    }
  }
  // Already one basis vector per free column; reduce once more so the
  // output is the canonical RREF basis regardless of input row order.
  basis.rref();
  return basis;
}

BinaryMatrix BinaryMatrix::multiply_transpose(const BinaryMatrix& other) const {
  require(cols == other.cols, "multiply_transpose: column mismatch");
  BinaryMatrix out(rows, other.rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < other.rows; ++j) {
      std::uint64_t acc = 0;
      for (std::size_t w = 0; w < row_words; ++w) acc ^= row(i)[w] & other.row(j)[w];
      out.set(i, j, std::popcount(acc) & 1);
    }
  }
  return out;
}

bool BinaryMatrix::operator==(const BinaryMatrix& other) const {
  return rows == other.rows && cols == other.cols && bits == other.bits;
}

std::string BinaryMatrix::to_string() const {
  std::string s;
  s.reserve(rows * (cols + 1));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) s.push_back(get(r, c) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

BinaryCode make_code(BinaryMatrix generator) {
  BinaryCode code;
  code.n = generator.cols;
  code.parity_check = generator.null_space();
  code.generator = std::move(generator);
  if (code.generator.rank() != code.generator.rows)
    throw std::invalid_argument("make_code: generator rows are dependent");
  return code;
}

count_t WeightDistribution::total() const {
  count_t t = 0;
  for (const auto& [w, c] : counts) t += c;
  return t;
}

count_t WeightDistribution::at(std::size_t w) const {
  auto it = counts.find(w);
  return it == counts.end() ? 0 : it->second;
}

std::size_t WeightDistribution::min_nonzero_weight() const {
  for (const auto& [w, c] : counts)
    if (w > 0 && c > 0) return w;
  return 0;
}

BinaryMatrix rm_generator(int r, int m) {
  require(m >= 0 && m <= 16, "rm_generator: m out of range");
  require(r >= 0 && r <= m, "rm_generator: requires 0 <= r <= m");
  const std::size_t n = std::size_t{1} << m;

  // Monomial masks by degree; variable i reads bit (m - 1 - i) of the input
  // index, so single variables come out in the order x1, x2, ..., xm.
  std::vector<std::uint32_t> masks;
  for (int d = 1; d <= r; ++d) {
    for (std::uint32_t t = 1; t < (1u << m); ++t) {
      if (std::popcount(t) == d) masks.push_back(t);
    }
  }

  BinaryMatrix g(masks.size() + 1, n);
  for (std::size_t row = 0; row < masks.size(); ++row) {
    const std::uint32_t t = masks[row];
    for (std::size_t y = 0; y < n; ++y) {
      // Reverse bit order so mask bit i corresponds to variable x_{i+1}.
      std::uint32_t vars = 0;
      for (int b = 0; b < m; ++b)
        if ((y >> (m - 1 - b)) & 1) vars |= 1u << b;
      if ((vars & t) == t) g.set(row, y, true);
    }
  }
  for (std::size_t y = 0; y < n; ++y) g.set(masks.size(), y, true);
  return g;
}

BinaryCode shortened_rm(int m) {
  require(m >= 2, "shortened_rm: requires m >= 2");
  require(m <= 16, "shortened_rm: m out of range");
  const BinaryMatrix full = rm_generator(1, m);
  // Degree-one rows all evaluate to 0 at input 0, so dropping the first
  // coordinate of those rows spans exactly the codewords starting with 0.
  BinaryMatrix g(static_cast<std::size_t>(m), full.cols - 1);
  for (int row = 0; row < m; ++row)
    for (std::size_t c = 1; c < full.cols; ++c) g.set(row, c - 1, full.get(row, c));
  return make_code(std::move(g));
}

BinaryCode punctured_rm(int m) {
  require(m >= 2, "punctured_rm: requires m >= 2");
  require(m <= 16, "punctured_rm: m out of range");
  const BinaryCode bar = shortened_rm(m);
  BinaryMatrix g(bar.k() + 1, bar.n);
  for (std::size_t row = 0; row < bar.k(); ++row)
    for (std::size_t w = 0; w < g.row_words; ++w) g.row(row)[w] = bar.generator.row(row)[w];
  for (std::size_t c = 0; c < bar.n; ++c) g.set(bar.k(), c, true);
  return make_code(std::move(g));
}

BinaryCode dual(const BinaryCode& code) {
  BinaryCode d;
  d.n = code.n;
  d.generator = code.parity_check;
  d.parity_check = code.generator;
  return d;
}

std::vector<BitVec> codewords(const BinaryMatrix& generator) {
  const std::size_t k = generator.rows;
  require(k <= kEnumerationGuard, "codewords: dimension exceeds enumeration guard (k <= 24)");
  const std::size_t total = std::size_t{1} << k;
  std::vector<BitVec> words;
  words.reserve(total);

  // Gray-code walk: successive subsets differ by one generator row.
  BitVec current(generator.cols);
  words.push_back(current);
  for (std::size_t i = 1; i < total; ++i) {
    const std::size_t flip = std::countr_zero(i);
    current.xor_with(generator.row_vec(flip));
    words.push_back(current);
  }
  return words;
}

WeightDistribution weight_distribution(const BinaryCode& code) {
  const std::size_t k = code.k();
  require(k <= kEnumerationGuard,
          "weight_distribution: dimension exceeds enumeration guard (k <= 24)");
  WeightDistribution dist;
  dist.n = code.n;
  const std::size_t total = std::size_t{1} << k;

  BitVec current(code.n);
  dist.counts[0] += 1;
  for (std::size_t i = 1; i < total; ++i) {
    const std::size_t flip = std::countr_zero(i);
    current.xor_with(code.generator.row_vec(flip));
    dist.counts[current.weight()] += 1;
  }
  return dist;
}

double weight_enum_eval(const WeightDistribution& dist, double x, double y) {
  double sum = 0.0, comp = 0.0;
  for (const auto& [w, count] : dist.counts) {
    const double term = static_cast<double>(static_cast<long double>(count)) *
                        std::pow(x, static_cast<double>(dist.n - w)) *
                        std::pow(y, static_cast<double>(w));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

namespace {

// Signed 128-bit binomial table, n <= 64.
std::vector<std::vector<__int128>> binomial_table(std::size_t n) {
  std::vector<std::vector<__int128>> c(n + 1, std::vector<__int128>(n + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (std::size_t j = 1; j <= i; ++j)
      c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
  }
  return c;
}

}  // namespace

WeightDistribution macwilliams_transform(const WeightDistribution& dist, count_t dual_size) {
  const std::size_t n = dist.n;
  require(n >= 1 && n <= 64, "macwilliams_transform: length must be in [1, 64]");
  const count_t size = dist.total();
  require(size > 0, "macwilliams_transform: empty distribution");

  count_t full = 1;
  for (std::size_t i = 0; i < n; ++i) full *= 2;
  require(size * dual_size == full, "macwilliams_transform: inconsistent dual_size");

  const auto binom = binomial_table(n);
  WeightDistribution out;
  out.n = n;
  for (std::size_t j = 0; j <= n; ++j) {
    // Krawtchouk K_j(w) = sum_i (-1)^i C(w, i) C(n - w, j - i)
    __int128 acc = 0;
    for (const auto& [w, count] : dist.counts) {
      __int128 k = 0;
      for (std::size_t i = 0; i <= j && i <= w; ++i) {
        if (j - i > n - w) continue;
        const __int128 term = binom[w][i] * binom[n - w][j - i];
        k += (i & 1) ? -term : term;
      }
      acc += static_cast<__int128>(count) * k;
    }
    if (acc == 0) continue;
    require(acc > 0, "macwilliams_transform: negative count, input not a code distribution");
    const __int128 divided = acc / static_cast<__int128>(size);
    require(divided * static_cast<__int128>(size) == acc,
            "macwilliams_transform: non-integral count, input not a code distribution");
    out.counts[j] = static_cast<count_t>(divided);
  }
  return out;
}

WeightDistribution rm2_weight_distribution(int m) {
  require(m >= 4, "rm2_weight_distribution: requires m >= 4");
  require(m <= 15, "rm2_weight_distribution: counts exceed 128-bit range beyond m = 15");

  const std::size_t n = std::size_t{1} << m;
  const std::size_t half = n / 2;
  WeightDistribution dist;
  dist.n = n;

  // Total 2^(1 + m + C(m,2)); weights only at 2^(m-1) and 2^(m-1) +/- 2^(m-1-h).
  count_t total = 1;
  for (int i = 0; i < 1 + m + m * (m - 1) / 2; ++i) total *= 2;

  count_t middle = total;
  dist.counts[0] = 1;
  dist.counts[n] = 1;
  middle -= 2;

  const int h_max = (m + 1) / 2;  // ceil(m/2); larger h has a vanishing factor
  for (int h = 1; h <= h_max; ++h) {
    // A = 2^(h(h+1)) * prod_{i=0}^{2h-1} (2^(m-i) - 1) / prod_{i=1}^{h} (2^(2i) - 1)
    count_t num = 1;
    bool zero = false;
    for (int i = 0; i < 2 * h; ++i) {
      if (m - i <= 0) {
        zero = true;
        break;
      }
      num *= (count_t{1} << (m - i)) - 1;
    }
    if (zero) continue;
    count_t den = 1;
    for (int i = 1; i <= h; ++i) den *= (count_t{1} << (2 * i)) - 1;
    count_t a = num / den;
    require(a * den == num, "rm2_weight_distribution: non-integral coefficient");
    for (int i = 0; i < h * (h + 1); ++i) a *= 2;
    if (a == 0) continue;

    const std::size_t offset = std::size_t{1} << (m - 1 - h);
    dist.counts[half - offset] += a;
    dist.counts[half + offset] += a;
    middle -= 2 * a;
  }
  dist.counts[half] = middle;
  return dist;
}

BitVec syndrome(const BinaryMatrix& h, const BitVec& error) {
  require(error.n == h.cols, "syndrome: length mismatch");
  BitVec s(h.rows);
  for (std::size_t r = 0; r < h.rows; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < h.row_words; ++w) acc ^= h.row(r)[w] & error.words[w];
    if (std::popcount(acc) & 1) s.set(r, true);
  }
  return s;
}

QrmCode qrm(int m) {
  require(m >= 3, "qrm: requires m >= 3");
  require(m <= 16, "qrm: m out of range");
  QrmCode q;
  q.m = m;
  q.n = (std::size_t{1} << m) - 1;
  q.rm_bar = shortened_rm(m);
  q.rm_star = punctured_rm(m);
  q.h_z = q.rm_star.parity_check;
  q.h_x = dual(q.rm_bar).parity_check;  // generator of the shortened code
  return q;
}

std::size_t min_distance(const BinaryCode& code) {
  std::size_t best = code.n + 1;
  for (const BitVec& w : codewords(code.generator)) {
    const std::size_t wt = w.weight();
    if (wt > 0 && wt < best) best = wt;
  }
  return best;
}

}  // namespace ftqm::codes

#include "pbt/partitions.hpp"

#include "pbt/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pbt {

Partition::Partition(std::vector<int> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] <= 0) throw std::invalid_argument("partition rows must be positive");
    if (i > 0 && rows_[i] > rows_[i - 1])
      throw std::invalid_argument("partition rows must be weakly decreasing");
    size_ += rows_[i];
  }
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < rows_.size(); ++i) os << (i ? "," : "") << rows_[i];
  os << ')';
  return os.str();
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (int r : p.rows()) h ^= static_cast<std::size_t>(r) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

namespace {

// Depth-first generation in descending-lex order; `rows` holds the prefix.
template <typename Fn>
void visit(int remaining, int max_part, int rows_left, std::vector<int>& rows, Fn& fn) {
  if (remaining == 0) {
    fn(std::span<const int>(rows.data(), rows.size()));
    return;
  }
  if (rows_left == 0) return;
  const int top = std::min(remaining, max_part);
  for (int part = top; part >= 1; --part) {
    // the remaining boxes must still fit under this row
    if (static_cast<long long>(part) * rows_left < remaining) break;
    rows.push_back(part);
    visit(remaining - part, part, rows_left - 1, rows, fn);
    rows.pop_back();
  }
}

template <typename Fn>
void visit_partitions(int n, int d, Fn&& fn) {
  if (n < 0) throw std::invalid_argument("partition size must be nonnegative");
  if (d < 1) throw std::invalid_argument("height bound must be positive");
  std::vector<int> rows;
  rows.reserve(static_cast<std::size_t>(std::min(n, d)));
  visit(n, n, d, rows, fn);
}

// Weyl-form numerator prod_{i<j<d} (l_i - l_j + j - i) for the padded rows.
mpz_class weyl_numerator(std::span<const int> rows, int d) {
  mpz_class num = 1;
  const int h = static_cast<int>(rows.size());
  for (int i = 0; i < d; ++i) {
    const long ri = i < h ? rows[static_cast<std::size_t>(i)] : 0;
    for (int j = i + 1; j < d; ++j) {
      const long rj = j < h ? rows[static_cast<std::size_t>(j)] : 0;
      num *= static_cast<unsigned long>(ri - rj + j - i);
    }
  }
  return num;
}

// prod_{i<j<d} (j - i) = prod_{k<d} k!
mpz_class weyl_denominator(int d) {
  mpz_class den = 1;
  for (int k = 2; k < d; ++k) den *= factorial(k);
  return den;
}

mpz_class mult_from_rows(std::span<const int> rows, int d) {
  if (static_cast<int>(rows.size()) > d) return 0;
  // hook-content product grouped by rows; it collapses to the Weyl form
  const mpz_class num = weyl_numerator(rows, d);
  const mpz_class den = weyl_denominator(d);
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

// Fixed-width accumulator for sums of squares of 128-bit integers.
class WideAccumulator {
 public:
  void add_square(unsigned __int128 v) {
    const std::uint64_t lo = static_cast<std::uint64_t>(v);
    const std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
    const unsigned __int128 ll = static_cast<unsigned __int128>(lo) * lo;
    const unsigned __int128 lh = static_cast<unsigned __int128>(lo) * hi;
    const unsigned __int128 hh = static_cast<unsigned __int128>(hi) * hi;
    add_at(0, ll);
    add_at(1, lh);
    add_at(1, lh);
    add_at(2, hh);
  }

  mpz_class value() const {
    mpz_class out;
    mpz_import(out.get_mpz_t(), limbs_.size(), -1, sizeof(std::uint64_t), 0, 0, limbs_.data());
    return out;
  }

 private:
  void add_at(std::size_t limb, unsigned __int128 v) {
    unsigned __int128 carry = v;
    for (std::size_t i = limb; i < limbs_.size() && carry != 0; ++i) {
      const unsigned __int128 s = static_cast<unsigned __int128>(limbs_[i]) + static_cast<std::uint64_t>(carry);
      limbs_[i] = static_cast<std::uint64_t>(s);
      carry = (carry >> 64) + (s >> 64);
    }
    if (carry != 0) throw std::overflow_error("square-sum accumulator overflow");
  }

  std::array<std::uint64_t, 6> limbs_{};
};

mpq_class square_sum_direct(int n, int d) {
  // sum m^2 = (sum num^2) / den^2 with a common Weyl denominator
  const mpz_class den = weyl_denominator(d);
  WideAccumulator fast;
  mpz_class slow = 0;
  visit_partitions(n, d, [&](std::span<const int> rows) {
    const int h = static_cast<int>(rows.size());
    unsigned __int128 num = 1;
    bool overflow = false;
    for (int i = 0; i < d && !overflow; ++i) {
      const int ri = i < h ? rows[static_cast<std::size_t>(i)] : 0;
      for (int j = i + 1; j < d; ++j) {
        const int rj = j < h ? rows[static_cast<std::size_t>(j)] : 0;
        const auto factor = static_cast<unsigned __int128>(ri - rj + j - i);
        if (__builtin_mul_overflow(num, factor, &num)) {
          overflow = true;
          break;
        }
      }
    }
    // squares of values past 2^120 could overflow the accumulator's headroom
    if (!overflow && (num >> 120) == 0) {
      fast.add_square(num);
    } else {
      const mpz_class big = weyl_numerator(rows, d);
      mpz_addmul(slow.get_mpz_t(), big.get_mpz_t(), big.get_mpz_t());
    }
  });
  mpz_class total = fast.value() + slow;
  mpz_class den2 = den * den;
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), total.get_mpz_t(), den2.get_mpz_t());
  return mpq_class(out);
}

mpq_class square_sum_cycles(int n, int d) {
  if (n > 9) throw GuardError("cycle_sum enumerates S(n) and is limited to n <= 9");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<long long> by_cycles(static_cast<std::size_t>(n) + 1, 0);
  do {
    unsigned seen = 0;
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
      if (seen & (1u << i)) continue;
      ++cycles;
      for (int j = i; !(seen & (1u << j)); j = perm[static_cast<std::size_t>(j)]) seen |= 1u << j;
    }
    ++by_cycles[static_cast<std::size_t>(cycles)];
  } while (std::next_permutation(perm.begin(), perm.end()));

  mpz_class total = 0;
  for (int l = 0; l <= n; ++l) {
    if (by_cycles[static_cast<std::size_t>(l)] == 0) continue;
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(2 * l));
    total += term * mpz_class(static_cast<long>(by_cycles[static_cast<std::size_t>(l)]));
  }
  mpq_class out(total, factorial(n));
  out.canonicalize();
  return out;
}

}  // namespace

const mpz_class& factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  thread_local std::deque<mpz_class> cache{mpz_class(1)};
  while (static_cast<int>(cache.size()) <= n)
    cache.push_back(cache.back() * static_cast<unsigned long>(cache.size()));
  return cache[static_cast<std::size_t>(n)];
}

void for_each_partition(int n, int d, const std::function<void(std::span<const int>)>& fn) {
  visit_partitions(n, d, fn);
}

std::vector<Partition> enumerate_partitions(int n, int d) {
  std::vector<Partition> out;
  visit_partitions(n, d, [&](std::span<const int> rows) {
    out.emplace_back(std::vector<int>(rows.begin(), rows.end()));
  });
  return out;
}

mpz_class dim_sn(const Partition& lambda) {
  const int h = lambda.height();
  // n! / prod(hooks), with the hook product taken row by row:
  // prod(hooks) = prod_i l_i! / prod_{i<j} (l_i - l_j),  l_i = lambda_i + h - 1 - i
  std::vector<int> l(static_cast<std::size_t>(h));
  for (int i = 0; i < h; ++i) l[static_cast<std::size_t>(i)] = lambda.row(i) + h - 1 - i;
  mpz_class num = factorial(lambda.size());
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j)
      num *= static_cast<unsigned long>(l[static_cast<std::size_t>(i)] - l[static_cast<std::size_t>(j)]);
  mpz_class den = 1;
  for (int li : l) den *= factorial(li);
  mpz_class out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

mpz_class mult_natural(const Partition& lambda, int d) {
  if (d < 1) throw std::invalid_argument("local dimension must be positive");
  return mult_from_rows(lambda.rows(), d);
}

IrrepData irrep_data(const Partition& lambda, int d) {
  return IrrepData{lambda, dim_sn(lambda), mult_natural(lambda, d)};
}

mpq_class normalized_char_transposition(const Partition& lambda) {
  const int n = lambda.size();
  if (n < 2) throw std::invalid_argument("transposition character needs at least two boxes");
  // content sum over boxes: sum_j lambda_j (lambda_j - 2j + 1) / 2, j 1-based
  long content = 0;
  for (int j = 1; j <= lambda.height(); ++j) {
    const long r = lambda.row(j - 1);
    content += r * (r - 2 * j + 1) / 2;
  }
  mpq_class out(mpz_class(content), mpz_class(static_cast<long>(n) * (n - 1) / 2));
  out.canonicalize();
  return out;
}

std::vector<Partition> branch_add(const Partition& alpha, int d) {
  if (d < 1) throw std::invalid_argument("local dimension must be positive");
  if (alpha.height() > d) throw std::invalid_argument("diagram taller than local dimension");
  std::vector<Partition> out;
  const int h = alpha.height();
  for (int i = 0; i <= h && i < d; ++i) {
    if (i > 0 && alpha.row(i - 1) <= alpha.row(i)) continue;
    std::vector<int> rows = alpha.rows();
    if (i == h) rows.push_back(1);
    else ++rows[static_cast<std::size_t>(i)];
    out.emplace_back(std::move(rows));
  }
  return out;
}

std::vector<Partition> branch_remove(const Partition& mu) {
  if (mu.size() < 1) throw std::invalid_argument("cannot remove a box from the empty diagram");
  std::vector<Partition> out;
  for (int i = 0; i < mu.height(); ++i) {
    if (mu.row(i) <= mu.row(i + 1)) continue;
    std::vector<int> rows = mu.rows();
    if (--rows[static_cast<std::size_t>(i)] == 0) rows.pop_back();
    out.emplace_back(std::move(rows));
  }
  return out;
}

mpq_class mult_square_sum(int n, int d, SquareSumMethod method) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (d < 1) throw std::invalid_argument("local dimension must be positive");
  return method == SquareSumMethod::direct ? square_sum_direct(n, d) : square_sum_cycles(n, d);
}

}  // namespace pbt

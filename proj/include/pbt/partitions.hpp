#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace pbt {

/// Young diagram stored as weakly decreasing positive row lengths.
///
/// The empty diagram is the unique partition of 0. Equality is row-list
/// equality.
class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument unless rows are positive and weakly decreasing.
  explicit Partition(std::vector<int> rows);
  Partition(std::initializer_list<int> rows) : Partition(std::vector<int>(rows)) {}

  const std::vector<int>& rows() const { return rows_; }
  int size() const { return size_; }
  int height() const { return static_cast<int>(rows_.size()); }
  bool empty() const { return rows_.empty(); }

  /// Length of row i (0-based); zero below the last row.
  int row(int i) const { return i < height() ? rows_[static_cast<std::size_t>(i)] : 0; }

  /// "(3,1)"; the empty diagram renders as "()".
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> rows_;
  int size_ = 0;
};

/// Canonical table order: (4) before (3,1) before (2,2).
struct DescendingLex {
  bool operator()(const Partition& a, const Partition& b) const { return a.rows() > b.rows(); }
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

/// A diagram with its S(n) irrep dimension and its multiplicity in (C^d)^{⊗n}.
struct IrrepData {
  Partition partition;
  mpz_class dim;
  mpz_class mult;
};

/// alpha ⊢ n-2 and mu ⊢ n-1 where mu is alpha plus one box, both of height <= d.
struct BranchPair {
  Partition alpha;
  Partition mu;

  friend bool operator==(const BranchPair&, const BranchPair&) = default;
};

/// Calls fn(rows) for every partition of n with at most d rows, in
/// descending-lex order. The span is only valid during the call.
void for_each_partition(int n, int d, const std::function<void(std::span<const int>)>& fn);

/// All partitions of n with height <= d, descending-lex.
std::vector<Partition> enumerate_partitions(int n, int d);

/// Number of standard Young tableaux of the given shape.
mpz_class dim_sn(const Partition& lambda);

/// Number of semistandard tableaux of the given shape with entries in {1..d};
/// zero when the shape has more than d rows.
mpz_class mult_natural(const Partition& lambda, int d);

IrrepData irrep_data(const Partition& lambda, int d);

/// chi^lambda(12) / dim_sn(lambda). Requires |lambda| >= 2.
mpq_class normalized_char_transposition(const Partition& lambda);

/// Diagrams obtained by adding one box to alpha while keeping height <= d.
std::vector<Partition> branch_add(const Partition& alpha, int d);

/// Diagrams obtained by deleting one removable corner, top row first.
std::vector<Partition> branch_remove(const Partition& mu);

enum class SquareSumMethod { direct, cycle_sum };

/// Sum over nu ⊢ n, h(nu) <= d of mult_natural(nu, d)^2.
///
/// `direct` sums the squared multiplicities; `cycle_sum` averages
/// d^(2·cycles(sigma)) over all of S(n) and is limited to n <= 9.
mpq_class mult_square_sum(int n, int d, SquareSumMethod method);

/// n! from a per-thread cache.
const mpz_class& factorial(int n);

}  // namespace pbt

#include "pbt/partitions.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <vector>

using pbt::Partition;

namespace {

using Grid = std::vector<std::vector<int>>;

mpq_class frac(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Every weakly decreasing row list of n with at most d rows, by recursion on
// the first row; independent of the library enumerator.
std::vector<std::vector<int>> brute_partitions(int n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == d) return;
    for (int r = std::min(left, cap); r >= 1; --r) {
      cur.push_back(r);
      rec(left - r, r);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::vector<std::pair<int, int>> cells_of(const std::vector<int>& rows) {
  std::vector<std::pair<int, int>> cells;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < rows[i]; ++j) cells.emplace_back(static_cast<int>(i), j);
  return cells;
}

// Backtracking fill in reading order. Standard: entries 1..n once each,
// increasing along rows and columns. Semistandard: entries 1..d, weak in rows,
// strict in columns.
void for_each_filling(const std::vector<int>& rows, int max_entry, bool standard, const std::function<void(const Grid&)>& fn) {
  Grid fill(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) fill[i].assign(static_cast<std::size_t>(rows[i]), 0);
  std::vector<bool> used(static_cast<std::size_t>(max_entry) + 1, false);
  const auto cells = cells_of(rows);
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == cells.size()) {
      fn(fill);
      return;
    }
    const auto [i, j] = cells[c];
    const auto ui = static_cast<std::size_t>(i);
    const auto uj = static_cast<std::size_t>(j);
    for (int v = 1; v <= max_entry; ++v) {
      if (standard && used[static_cast<std::size_t>(v)]) continue;
      if (j > 0 && (standard ? fill[ui][uj - 1] >= v : fill[ui][uj - 1] > v)) continue;
      if (i > 0 && fill[ui - 1][uj] >= v) continue;
      used[static_cast<std::size_t>(v)] = true;
      fill[ui][uj] = v;
      rec(c + 1);
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(0);
}

int box_count(const std::vector<int>& rows) {
  int n = 0;
  for (int r : rows) n += r;
  return n;
}

long count_standard(const std::vector<int>& rows) {
  long count = 0;
  for_each_filling(rows, box_count(rows), true, [&](const Grid&) { ++count; });
  return count;
}

long count_semistandard(const std::vector<int>& rows, int d) {
  long count = 0;
  for_each_filling(rows, d, false, [&](const Grid&) { ++count; });
  return count;
}

// chi(12) = #(2 right of 1) - #(2 below 1) over standard tableaux.
long char_transposition_by_tableaux(const std::vector<int>& rows) {
  long out = 0;
  for_each_filling(rows, box_count(rows), true, [&](const Grid& g) {
    out += (g[0].size() > 1 && g[0][1] == 2) ? 1 : -1;
  });
  return out;
}

}  // namespace

TEST(Partitions, EnumerationExamples) {
  EXPECT_EQ(pbt::enumerate_partitions(0, 2), std::vector<Partition>{Partition{}});
  EXPECT_EQ(pbt::enumerate_partitions(2, 2), (std::vector<Partition>{{2}, {1, 1}}));
  EXPECT_EQ(pbt::enumerate_partitions(4, 2), (std::vector<Partition>{{4}, {3, 1}, {2, 2}}));
}

TEST(Partitions, EnumerationMatchesBruteForce) {
  for (int d = 1; d <= 6; ++d)
    for (int n = 0; n <= 14; ++n) {
      std::vector<std::vector<int>> got;
      for (const Partition& p : pbt::enumerate_partitions(n, d)) got.push_back(p.rows());
      auto expected = brute_partitions(n, d);
      std::sort(expected.begin(), expected.end(), std::greater<>());
      EXPECT_EQ(got, expected) << "n=" << n << " d=" << d;
    }
}

TEST(Partitions, ForEachAgreesWithEnumerate) {
  std::vector<std::vector<int>> seen;
  pbt::for_each_partition(9, 3, [&](std::span<const int> rows) { seen.emplace_back(rows.begin(), rows.end()); });
  std::vector<std::vector<int>> listed;
  for (const Partition& p : pbt::enumerate_partitions(9, 3)) listed.push_back(p.rows());
  EXPECT_EQ(seen, listed);
}

TEST(Partitions, RejectsInvalidRows) {
  EXPECT_THROW(Partition({1, 2}), std::invalid_argument);
  EXPECT_THROW(Partition({2, 0}), std::invalid_argument);
  EXPECT_EQ(Partition({3, 1}).to_string(), "(3,1)");
  EXPECT_EQ(Partition{}.to_string(), "()");
}

TEST(Partitions, DimensionExamples) {
  EXPECT_EQ(pbt::dim_sn({2, 1}), 2);
  EXPECT_EQ(pbt::dim_sn({3, 1}), 3);
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(pbt::dim_sn(Partition({n})), 1);
  EXPECT_EQ(pbt::dim_sn(Partition{}), 1);
}

TEST(Partitions, DimensionMatchesStandardTableauxCount) {
  for (int n = 1; n <= 8; ++n)
    for (const auto& rows : brute_partitions(n, n))
      EXPECT_EQ(pbt::dim_sn(Partition(rows)), count_standard(rows)) << Partition(rows).to_string();
}

TEST(Partitions, MultiplicityExamples) {
  EXPECT_EQ(pbt::mult_natural({2}, 2), 3);
  EXPECT_EQ(pbt::mult_natural({1, 1}, 2), 1);
  for (int d = 1; d <= 9; ++d) EXPECT_EQ(pbt::mult_natural({1}, d), d);
  EXPECT_EQ(pbt::mult_natural({1, 1, 1}, 2), 0);
  EXPECT_EQ(pbt::mult_natural(Partition{}, 4), 1);
}

TEST(Partitions, MultiplicityMatchesSemistandardCount) {
  for (int d = 1; d <= 4; ++d)
    for (int n = 1; n <= 7; ++n)
      for (const auto& rows : brute_partitions(n, n))
        EXPECT_EQ(pbt::mult_natural(Partition(rows), d), count_semistandard(rows, d))
            << Partition(rows).to_string() << " d=" << d;
}

TEST(Partitions, CharacterExamples) {
  EXPECT_EQ(pbt::normalized_char_transposition({2}), 1);
  EXPECT_EQ(pbt::normalized_char_transposition({1, 1}), -1);
  EXPECT_EQ(pbt::normalized_char_transposition({2, 1}), 0);
}

TEST(Partitions, CharacterMatchesTableauxCount) {
  for (int n = 2; n <= 8; ++n)
    for (const auto& rows : brute_partitions(n, n)) {
      const Partition p(rows);
      const mpq_class expected = frac(char_transposition_by_tableaux(rows), count_standard(rows));
      EXPECT_EQ(pbt::normalized_char_transposition(p), expected) << p.to_string();
    }
}

TEST(Partitions, CharacterBoundsAndExtremes) {
  for (int n = 2; n <= 20; ++n) {
    for (const Partition& p : pbt::enumerate_partitions(n, n)) {
      const mpq_class c = pbt::normalized_char_transposition(p);
      EXPECT_LE(c, 1);
      EXPECT_GE(c, -1);
    }
    EXPECT_EQ(pbt::normalized_char_transposition(Partition({n})), 1);
    EXPECT_EQ(pbt::normalized_char_transposition(Partition(std::vector<int>(static_cast<std::size_t>(n), 1))), -1);
  }
}

TEST(Partitions, BranchExamples) {
  EXPECT_EQ(pbt::branch_add(Partition{}, 2), std::vector<Partition>{Partition{1}});
  EXPECT_EQ(pbt::branch_add({2}, 2), (std::vector<Partition>{{3}, {2, 1}}));
  EXPECT_EQ(pbt::branch_add({1, 1}, 2), std::vector<Partition>{Partition({2, 1})});
  EXPECT_EQ(pbt::branch_remove({2, 1}), (std::vector<Partition>{{1, 1}, {2}}));
  EXPECT_EQ(pbt::branch_remove({3}), std::vector<Partition>{Partition{2}});
  EXPECT_EQ(pbt::branch_remove({2, 2}), std::vector<Partition>{Partition({2, 1})});
}

TEST(Partitions, BranchAddMatchesBoxInsertion) {
  // add a box to every row (and a new row) and keep valid diagrams
  for (int d = 1; d <= 4; ++d)
    for (int n = 0; n <= 8; ++n)
      for (const Partition& a : pbt::enumerate_partitions(n, d)) {
        std::vector<Partition> expected;
        for (int i = 0; i <= a.height(); ++i) {
          std::vector<int> rows = a.rows();
          if (i == a.height()) rows.push_back(1);
          else ++rows[static_cast<std::size_t>(i)];
          if (static_cast<int>(rows.size()) > d) continue;
          if (std::is_sorted(rows.begin(), rows.end(), std::greater<>())) expected.emplace_back(rows);
        }
        std::sort(expected.begin(), expected.end(), pbt::DescendingLex{});
        EXPECT_EQ(pbt::branch_add(a, d), expected) << a.to_string();
      }
}

TEST(Partitions, BranchingConsistency) {
  for (int n = 1; n <= 16; ++n)
    for (const Partition& mu : pbt::enumerate_partitions(n, n)) {
      mpz_class sum = 0;
      for (const Partition& a : pbt::branch_remove(mu)) sum += pbt::dim_sn(a);
      EXPECT_EQ(sum, pbt::dim_sn(mu)) << mu.to_string();
    }
}

TEST(Partitions, Completeness) {
  for (int d = 1; d <= 6; ++d) {
    mpz_class power = 1;
    for (int n = 0; n <= 30; ++n) {
      mpz_class sum = 0;
      for (const Partition& p : pbt::enumerate_partitions(n, d)) sum += pbt::dim_sn(p) * pbt::mult_natural(p, d);
      EXPECT_EQ(sum, power) << "n=" << n << " d=" << d;
      power *= d;
    }
  }
}

TEST(Partitions, SquareSumExamples) {
  using M = pbt::SquareSumMethod;
  EXPECT_EQ(pbt::mult_square_sum(2, 2, M::direct), 10);
  EXPECT_EQ(pbt::mult_square_sum(2, 2, M::cycle_sum), 10);
  for (int d = 1; d <= 7; ++d) EXPECT_EQ(pbt::mult_square_sum(1, d, M::direct), d * d);
}

TEST(Partitions, SquareSumMatchesExplicitSquares) {
  for (int d = 1; d <= 5; ++d)
    for (int n = 0; n <= 20; ++n) {
      mpz_class sum = 0;
      for (const Partition& p : pbt::enumerate_partitions(n, d)) {
        const mpz_class m = pbt::mult_natural(p, d);
        sum += m * m;
      }
      EXPECT_EQ(pbt::mult_square_sum(n, d, pbt::SquareSumMethod::direct), sum) << "n=" << n << " d=" << d;
    }
}

TEST(Partitions, CycleIdentity) {
  for (int d = 1; d <= 4; ++d)
    for (int n = 1; n <= 8; ++n)
      EXPECT_EQ(pbt::mult_square_sum(n, d, pbt::SquareSumMethod::direct),
                pbt::mult_square_sum(n, d, pbt::SquareSumMethod::cycle_sum))
          << "n=" << n << " d=" << d;
  EXPECT_THROW(pbt::mult_square_sum(10, 2, pbt::SquareSumMethod::cycle_sum), std::exception);
}

TEST(Partitions, RatioIdentity) {
  for (int d = 1; d <= 6; ++d)
    for (int n = 1; n <= 30; ++n) {
      const mpq_class ratio = pbt::mult_square_sum(n, d, pbt::SquareSumMethod::direct) /
                              pbt::mult_square_sum(n - 1, d, pbt::SquareSumMethod::direct);
      EXPECT_EQ(ratio, frac(d * d + n - 1, n)) << "n=" << n << " d=" << d;
    }
}

TEST(Partitions, Factorial) {
  mpz_class f = 1;
  for (int n = 0; n <= 40; ++n) {
    if (n > 0) f *= n;
    EXPECT_EQ(pbt::factorial(n), f);
  }
}

TEST(Partitions, IrrepDataBundles) {
  const pbt::IrrepData data = pbt::irrep_data({2, 1}, 3);
  EXPECT_EQ(data.partition, Partition({2, 1}));
  EXPECT_EQ(data.dim, 2);
  EXPECT_EQ(data.mult, count_semistandard({2, 1}, 3));
}

#include "pbt/errors.hpp"
#include "pbt/symrep.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using pbt::Partition;
using pbt::Permutation;
using pbt::symrep::Matrix;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// All of S(n) through std::next_permutation, independent of the SJT listing.
std::vector<Permutation> lexicographic_perms(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int cycles_by_walk(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = true;
  }
  return c;
}

Matrix image_by_adjacent_word(const pbt::symrep::IrrepMatrixRep& rep, const Permutation& sigma) {
  return rep.image_of_word(pbt::adjacent_word(sigma));
}

}  // namespace

TEST(Permutation, ComposeInverseAndTransposition) {
  const Permutation s = {1, 2, 0};
  const Permutation t = {0, 2, 1};
  EXPECT_EQ(pbt::compose(s, t), (Permutation{1, 0, 2}));
  EXPECT_EQ(pbt::compose(s, pbt::inverse(s)), pbt::identity_permutation(3));
  EXPECT_EQ(pbt::transposition(4, 2, 4), (Permutation{0, 3, 2, 1}));
  EXPECT_EQ(pbt::transposition(4, 3, 3), pbt::identity_permutation(4));
  EXPECT_TRUE(pbt::is_permutation(s));
  EXPECT_FALSE(pbt::is_permutation({0, 0, 1}));
  EXPECT_EQ(pbt::cycle_type({1, 0, 2}), (std::vector<int>{2, 1}));
}

TEST(Permutation, CycleCountMatchesWalk) {
  for (const Permutation& p : lexicographic_perms(6)) EXPECT_EQ(pbt::cycle_count(p), cycles_by_walk(p));
}

TEST(Permutation, WordsReproducePermutation) {
  for (int n = 1; n <= 6; ++n)
    for (const Permutation& p : lexicographic_perms(n)) {
      for (const auto& word : {pbt::adjacent_word(p), pbt::adjacent_word_by_values(p)}) {
        Permutation acc = pbt::identity_permutation(n);
        for (int k : word) acc = pbt::compose(acc, pbt::transposition(n, k + 1, k + 2));
        EXPECT_EQ(acc, p);
      }
    }
}

TEST(Permutation, JohnsonTrotterListsEveryPermutationOnce) {
  for (int n = 1; n <= 7; ++n) {
    std::vector<int> steps;
    const auto all = pbt::all_permutations(n, &steps);
    std::set<Permutation> unique(all.begin(), all.end());
    const auto expected = lexicographic_perms(n);
    EXPECT_EQ(unique, std::set<Permutation>(expected.begin(), expected.end()));
    EXPECT_EQ(all.size(), expected.size());
    ASSERT_EQ(steps.size() + 1, all.size());
    for (std::size_t i = 0; i < steps.size(); ++i)
      EXPECT_EQ(all[i + 1], pbt::compose(all[i], pbt::transposition(n, steps[i] + 1, steps[i] + 2)));
  }
}

TEST(YoungOrthogonal, SmallExamples) {
  const auto triv = pbt::symrep::young_orthogonal_rep({2});
  ASSERT_EQ(triv.dimension(), 1);
  EXPECT_DOUBLE_EQ(triv.generator(0)(0, 0), 1.0);
  const auto sign = pbt::symrep::young_orthogonal_rep({1, 1});
  EXPECT_DOUBLE_EQ(sign.generator(0)(0, 0), -1.0);
  const auto std3 = pbt::symrep::young_orthogonal_rep({2, 1});
  ASSERT_EQ(std3.dimension(), 2);
  for (int a = 1; a <= 3; ++a)
    for (int b = a + 1; b <= 3; ++b) {
      const Matrix m = std3.image(pbt::transposition(3, a, b));
      EXPECT_NEAR(m.trace(), 0.0, 1e-12);
      EXPECT_LT(max_abs(m.transpose() * m - Matrix::Identity(2, 2)), 1e-12);
    }
}

TEST(YoungOrthogonal, DimensionAndBlocks) {
  for (int n = 1; n <= 7; ++n)
    for (const Partition& mu : pbt::enumerate_partitions(n, n)) {
      const auto rep = pbt::symrep::young_orthogonal_rep(mu);
      EXPECT_EQ(rep.dimension(), pbt::dim_sn(mu).get_si());
      // blocks tile the basis, one per removable corner, descending-lex
      auto expected = pbt::branch_remove(mu);
      std::sort(expected.begin(), expected.end(), pbt::DescendingLex{});
      ASSERT_EQ(rep.blocks().size(), expected.size());
      int offset = 0;
      for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(rep.blocks()[i].alpha, expected[i]);
        EXPECT_EQ(rep.blocks()[i].offset, offset);
        EXPECT_EQ(rep.blocks()[i].size, pbt::dim_sn(expected[i]).get_si());
        offset += rep.blocks()[i].size;
      }
      EXPECT_EQ(offset, rep.dimension());
    }
}

TEST(YoungOrthogonal, HomomorphismOnAllPairs) {
  for (const Partition& mu : pbt::enumerate_partitions(4, 4)) {
    const auto rep = pbt::symrep::young_orthogonal_rep(mu);
    const auto perms = lexicographic_perms(4);
    for (const Permutation& s : perms)
      for (const Permutation& t : perms)
        EXPECT_LT(max_abs(rep.image(s) * rep.image(t) - rep.image(pbt::compose(s, t))), 1e-12) << mu.to_string();
  }
}

TEST(YoungOrthogonal, CharacterOrthogonality) {
  // sum_g chi_a(g) chi_b(g) = n! delta_ab, independent of any class tables
  for (int n = 2; n <= 6; ++n) {
    const auto parts = pbt::enumerate_partitions(n, n);
    const auto perms = lexicographic_perms(n);
    std::vector<std::vector<double>> chars;
    for (const Partition& mu : parts) {
      const auto rep = pbt::symrep::young_orthogonal_rep(mu);
      std::vector<double> row;
      for (const Permutation& p : perms) row.push_back(rep.image(p).trace());
      chars.push_back(row);
    }
    const double order = static_cast<double>(perms.size());
    for (std::size_t a = 0; a < parts.size(); ++a)
      for (std::size_t b = 0; b < parts.size(); ++b) {
        double s = 0;
        for (std::size_t g = 0; g < perms.size(); ++g) s += chars[a][g] * chars[b][g];
        EXPECT_NEAR(s, a == b ? order : 0.0, 1e-9);
      }
  }
}

TEST(YoungOrthogonal, WordIndependence) {
  std::mt19937_64 rng(7);
  for (const Partition& mu : pbt::enumerate_partitions(6, 6)) {
    const auto rep = pbt::symrep::young_orthogonal_rep(mu);
    Permutation p = pbt::identity_permutation(6);
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(p.begin(), p.end(), rng);
      EXPECT_LT(max_abs(image_by_adjacent_word(rep, p) - rep.image_of_word(pbt::adjacent_word_by_values(p))), 1e-12);
    }
  }
}

TEST(YoungOrthogonal, Guard) {
  EXPECT_THROW(pbt::symrep::young_orthogonal_rep({5, 4}), pbt::GuardError);
  EXPECT_NO_THROW(pbt::symrep::young_orthogonal_rep({5, 3}));
}

TEST(Prir, BlockViewReassembles) {
  const auto rep = pbt::symrep::young_orthogonal_rep({3, 2, 1});
  const pbt::symrep::PrirBlockView view(rep, pbt::transposition(6, 2, 6));
  EXPECT_LT(max_abs(view.reassemble() - view.full()), 1e-15);
  EXPECT_EQ(view.labels().size(), 3u);
}

TEST(Prir, SumRuleScalars) {
  // sum_{a<n} of the diagonal restriction block alpha of (a n)
  auto block_sum = [](const Partition& mu, std::size_t block) {
    const auto rep = pbt::symrep::young_orthogonal_rep(mu);
    const int n = mu.size();
    const auto& b = rep.blocks().at(block);
    Matrix s = Matrix::Zero(b.size, b.size);
    for (int a = 1; a < n; ++a)
      s += rep.image(pbt::transposition(n, a, n)).block(b.offset, b.offset, b.size, b.size);
    return s;
  };
  // (2,1) with block (2): hand value -1
  const auto rep21 = pbt::symrep::young_orthogonal_rep({2, 1});
  ASSERT_EQ(rep21.blocks()[0].alpha, Partition{2});
  EXPECT_NEAR(block_sum({2, 1}, 0)(0, 0), -1.0, 1e-12);
  for (int n = 2; n <= 7; ++n) EXPECT_NEAR(block_sum(Partition({n}), 0)(0, 0), n - 1.0, 1e-12);
  EXPECT_NEAR(block_sum({1, 1}, 0)(0, 0), -1.0, 1e-12);
}

TEST(Prir, OrthogonalityExample) {
  // mu=(2,1), alpha=gamma=(2), beta=(1,1): sum over a=1..3 of the product of
  // blocks (alpha beta)(beta gamma) equals n d_beta / d_mu = 3/2
  const auto rep = pbt::symrep::young_orthogonal_rep({2, 1});
  double s = 0;
  double off = 0;
  for (int a = 1; a <= 3; ++a) {
    const pbt::symrep::PrirBlockView v(rep, pbt::transposition(3, a, 3));
    s += (v.block(0, 1) * v.block(1, 0))(0, 0);
    off += (v.block(0, 0) * v.block(0, 1))(0, 0);
  }
  EXPECT_NEAR(s, 1.5, 1e-12);
  EXPECT_NEAR(off, 0.0, 1e-12);
}

TEST(Prir, BlockTranspositionTraceValues) {
  EXPECT_EQ(pbt::symrep::block_transposition_trace({2, 1}, {2}), mpq_class(-1, 2));
  for (int n = 2; n <= 6; ++n) EXPECT_EQ(pbt::symrep::block_transposition_trace(Partition({n}), Partition({n - 1})), 1);
  EXPECT_EQ(pbt::symrep::block_transposition_trace({1, 1}, {1}), -1);
  // numerical trace of the (2) block of (1 3) in the explicit rep
  const auto rep = pbt::symrep::young_orthogonal_rep({2, 1});
  EXPECT_NEAR(rep.image(pbt::transposition(3, 1, 3))(0, 0), -0.5, 1e-12);
}

TEST(Prir, AllReportsPassUpToSeven) {
  for (int n = 1; n <= 7; ++n)
    for (const Partition& mu : pbt::enumerate_partitions(n, n)) {
      for (const auto& r : {pbt::symrep::verify_generator_relations(mu, 3), pbt::symrep::verify_prir_sum_rule(mu),
                            pbt::symrep::verify_prir_orthogonality(mu),
                            pbt::symrep::verify_trace_class_invariance(mu)}) {
        EXPECT_TRUE(r.pass()) << r.check << " worst " << (r.worst() ? r.worst()->label : "");
      }
    }
  EXPECT_THROW(pbt::symrep::verify_prir_orthogonality({4, 4}), pbt::GuardError);
}

TEST(OperatorE, SymmetrizerOnTwoQubits) {
  const auto E = pbt::symrep::operator_E({2}, 0, 0, 2);
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1;
  swap(1, 2) = swap(2, 1) = 1;
  const Matrix sym = (Matrix::Identity(4, 4) + swap) / 2;
  EXPECT_LT(max_abs(E.m - sym), 1e-12);
  EXPECT_NEAR(E.m.trace(), 3.0, 1e-12);
  const auto A = pbt::symrep::operator_E({1, 1}, 0, 0, 2);
  EXPECT_LT(max_abs(E.m + A.m - Matrix::Identity(4, 4)), 1e-12);
  EXPECT_LT(max_abs(E.m * E.m - E.m), 1e-12);
}

TEST(OperatorE, CompletenessForThreeSystems) {
  Matrix total = Matrix::Zero(27, 27);
  for (const Partition& a : pbt::enumerate_partitions(3, 3)) {
    const int da = static_cast<int>(pbt::dim_sn(a).get_si());
    for (int i = 0; i < da; ++i) total += pbt::symrep::operator_E(a, i, i, 3).m;
  }
  EXPECT_LT(max_abs(total - Matrix::Identity(27, 27)), 1e-12);
}

TEST(OperatorE, FamilyReports) {
  for (auto [k, d] : {std::pair{2, 2}, {3, 2}, {4, 2}, {3, 3}}) {
    const auto r = pbt::symrep::verify_operator_E(k, d);
    EXPECT_TRUE(r.pass()) << r.check << " " << (r.worst() ? r.worst()->label : "");
  }
}

TEST(OperatorF, TwoBoxExamples) {
  // S(1) is trivial, so F^(2)_11 is the identity on the first two systems
  const auto F = pbt::symrep::operator_F_mu_ij({2}, 0, 0, 3, 2);
  EXPECT_LT(max_abs(F.m - Matrix::Identity(4, 4)), 1e-12);
  const auto G = pbt::symrep::operator_F_mu_ij({1, 1}, 0, 0, 3, 2);
  EXPECT_LT(max_abs(G.m - Matrix::Identity(4, 4)), 1e-12);
}

TEST(OperatorF, ReconstructionReports) {
  for (auto [n, d] : {std::pair{3, 2}, {4, 2}, {5, 2}, {4, 3}}) {
    const auto r = pbt::symrep::verify_operator_F(n, d);
    EXPECT_TRUE(r.pass()) << r.check << " " << (r.worst() ? r.worst()->label : "");
  }
}

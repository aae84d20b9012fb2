#include "pbt/symrep.hpp"

#include "pbt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pbt::symrep {

namespace {

constexpr double algebraic_tol = 1e-12;
constexpr double summed_tol = 1e-10;

std::vector<Tableau> standard_tableaux(const Partition& mu) {
  if (mu.empty()) return {Tableau{}};
  std::vector<Partition> alphas = branch_remove(mu);
  std::sort(alphas.begin(), alphas.end(), DescendingLex{});
  std::vector<Tableau> out;
  for (const Partition& alpha : alphas) {
    int r = 0;
    while (alpha.row(r) == mu.row(r)) ++r;
    for (Tableau t : standard_tableaux(alpha)) {
      t.row.push_back(r);
      t.col.push_back(mu.row(r) - 1);
      out.push_back(std::move(t));
    }
  }
  return out;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Permutation random_permutation(int n, std::mt19937_64& rng) {
  Permutation p = identity_permutation(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

Matrix IrrepMatrixRep::image_of_word(const std::vector<int>& word) const {
  Matrix out = Matrix::Identity(dimension(), dimension());
  for (int k : word) out = out * generator(k);
  return out;
}

Matrix IrrepMatrixRep::image(const Permutation& sigma) const {
  if (static_cast<int>(sigma.size()) != degree()) throw std::invalid_argument("permutation degree does not match the irrep");
  return image_of_word(adjacent_word(sigma));
}

IrrepMatrixRep young_orthogonal_rep(const Partition& mu) {
  if (mu.size() > max_rep_size)
    throw GuardError("orthogonal form limited to diagrams of at most " + std::to_string(max_rep_size) + " boxes");
  IrrepMatrixRep rep;
  rep.shape_ = mu;
  rep.basis_ = standard_tableaux(mu);
  const int n = mu.size();
  const int dim = static_cast<int>(rep.basis_.size());

  if (n >= 1) {
    std::vector<Partition> alphas = branch_remove(mu);
    std::sort(alphas.begin(), alphas.end(), DescendingLex{});
    int offset = 0;
    for (const Partition& alpha : alphas) {
      const int size = static_cast<int>(dim_sn(alpha).get_si());
      rep.blocks_.push_back({alpha, offset, size});
      offset += size;
    }
  }

  std::map<std::vector<int>, int> index;
  for (int t = 0; t < dim; ++t) index.emplace(rep.basis_[static_cast<std::size_t>(t)].row, t);

  for (int k = 0; k + 1 < n; ++k) {
    Matrix g = Matrix::Zero(dim, dim);
    for (int t = 0; t < dim; ++t) {
      const Tableau& T = rep.basis_[static_cast<std::size_t>(t)];
      const auto a = static_cast<std::size_t>(k);
      const auto b = static_cast<std::size_t>(k + 1);
      if (T.row[a] == T.row[b]) {
        g(t, t) = 1.0;
      } else if (T.col[a] == T.col[b]) {
        g(t, t) = -1.0;
      } else {
        const double r = T.content(k + 1) - T.content(k);
        g(t, t) = 1.0 / r;
        std::vector<int> swapped = T.row;
        std::swap(swapped[a], swapped[b]);
        g(index.at(swapped), t) = std::sqrt(1.0 - 1.0 / (r * r));
      }
    }
    rep.generators_.push_back(std::move(g));
  }
  return rep;
}

PrirBlockView::PrirBlockView(const IrrepMatrixRep& rep, const Permutation& sigma)
    : labels_(rep.blocks()), full_(rep.image(sigma)) {
  for (std::size_t a = 0; a < labels_.size(); ++a)
    for (std::size_t b = 0; b < labels_.size(); ++b)
      blocks_.emplace(std::make_pair(a, b),
                      full_.block(labels_[a].offset, labels_[b].offset, labels_[a].size, labels_[b].size));
}

Matrix PrirBlockView::reassemble() const {
  Matrix out = Matrix::Zero(full_.rows(), full_.cols());
  for (const auto& [key, m] : blocks_)
    out.block(labels_[key.first].offset, labels_[key.second].offset, m.rows(), m.cols()) = m;
  return out;
}

OracleReport verify_generator_relations(const Partition& mu, unsigned long long seed) {
  OracleReport report{"generator relations " + mu.to_string(), {}};
  const IrrepMatrixRep rep = young_orthogonal_rep(mu);
  const int n = rep.degree();
  const Matrix id = Matrix::Identity(rep.dimension(), rep.dimension());
  for (int k = 0; k + 1 < n; ++k) {
    const Matrix& s = rep.generator(k);
    const std::string tag = "s" + std::to_string(k + 1);
    report.add(tag + " involution", max_abs(s * s - id), algebraic_tol);
    report.add(tag + " orthogonal", max_abs(s.transpose() * s - id), algebraic_tol);
    for (int l = k + 2; l + 1 < n; ++l)
      report.add(tag + " commutes with s" + std::to_string(l + 1), max_abs(s * rep.generator(l) - rep.generator(l) * s),
                 algebraic_tol);
    if (k + 2 < n) {
      const Matrix& t = rep.generator(k + 1);
      report.add(tag + " braid", max_abs(s * t * s - t * s * t), algebraic_tol);
    }
  }
  if (n >= 2) {
    const double expected = mpq_class(normalized_char_transposition(mu) * dim_sn(mu)).get_d();
    for (int a = 1; a < n; ++a)
      report.add("character of (" + std::to_string(a) + " " + std::to_string(n) + ")",
                 std::abs(rep.image(transposition(n, a, n)).trace() - expected), summed_tol);
  }
  // restriction to S(n-1) is block diagonal with blocks equal to the smaller forms
  if (n >= 2) {
    for (int k = 0; k + 2 < n; ++k) {
      Matrix expected = Matrix::Zero(rep.dimension(), rep.dimension());
      for (const RestrictionBlock& b : rep.blocks()) {
        const IrrepMatrixRep sub = young_orthogonal_rep(b.alpha);
        expected.block(b.offset, b.offset, b.size, b.size) = sub.generator(k);
      }
      report.add("restriction of s" + std::to_string(k + 1), max_abs(rep.generator(k) - expected), algebraic_tol);
    }
  }
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 8 && n >= 2; ++trial) {
    const Permutation sigma = random_permutation(n, rng);
    const Permutation tau = random_permutation(n, rng);
    const Matrix a = rep.image(sigma);
    report.add("word independence", max_abs(a - rep.image_of_word(adjacent_word_by_values(sigma))), algebraic_tol);
    report.add("homomorphism", max_abs(a * rep.image(tau) - rep.image(compose(sigma, tau))), algebraic_tol);
  }
  return report;
}

OracleReport verify_prir_sum_rule(const Partition& mu) {
  OracleReport report{"prir sum rule " + mu.to_string(), {}};
  const IrrepMatrixRep rep = young_orthogonal_rep(mu);
  const int n = rep.degree();
  Matrix sum = Matrix::Zero(rep.dimension(), rep.dimension());
  for (int a = 1; a < n; ++a) sum += rep.image(transposition(n, a, n));
  const mpq_class mu_coeff(n * (n - 1), 2);
  const mpq_class alpha_coeff((n - 1) * (n - 2), 2);
  for (const RestrictionBlock& b : rep.blocks()) {
    mpq_class scalar = 0;
    if (mu_coeff != 0) scalar += mu_coeff * normalized_char_transposition(mu);
    if (alpha_coeff != 0) scalar -= alpha_coeff * normalized_char_transposition(b.alpha);
    Matrix expected = Matrix::Zero(b.size, rep.dimension());
    expected.block(0, b.offset, b.size, b.size) = scalar.get_d() * Matrix::Identity(b.size, b.size);
    report.add("block " + b.alpha.to_string(), max_abs(sum.middleRows(b.offset, b.size) - expected), summed_tol);
  }
  return report;
}

OracleReport verify_prir_orthogonality(const Partition& mu) {
  if (mu.size() > 7) throw GuardError("bilinear sum rule check limited to 7 boxes");
  OracleReport report{"prir orthogonality " + mu.to_string(), {}};
  const IrrepMatrixRep rep = young_orthogonal_rep(mu);
  const int n = rep.degree();
  std::vector<PrirBlockView> views;
  for (int a = 1; a <= n; ++a) views.emplace_back(rep, transposition(n, a, n));
  const auto& labels = rep.blocks();
  const double dmu = static_cast<double>(rep.dimension());
  for (std::size_t x = 0; x < labels.size(); ++x)
    for (std::size_t y = 0; y < labels.size(); ++y)
      for (std::size_t z = 0; z < labels.size(); ++z) {
        Matrix sum = Matrix::Zero(labels[x].size, labels[z].size);
        for (const PrirBlockView& v : views) sum += v.block(x, y) * v.block(y, z);
        Matrix expected = Matrix::Zero(labels[x].size, labels[z].size);
        if (x == z) expected.setIdentity(), expected *= n * labels[y].size / dmu;
        report.add(labels[x].alpha.to_string() + labels[y].alpha.to_string() + labels[z].alpha.to_string(),
                   max_abs(sum - expected), summed_tol);
      }
  return report;
}

mpq_class block_transposition_trace(const Partition& mu, const Partition& alpha) {
  const int n = mu.size();
  if (n < 2) throw std::invalid_argument("block trace needs at least two boxes");
  // chi(12) = d * normalized character
  mpq_class out = mpq_class(n, 2) * mpq_class(dim_sn(alpha)) * normalized_char_transposition(mu);
  if (n - 2 > 0) out -= mpq_class(n - 2, 2) * mpq_class(dim_sn(alpha)) * normalized_char_transposition(alpha);
  out.canonicalize();
  return out;
}

OracleReport verify_trace_class_invariance(const Partition& mu) {
  OracleReport report{"trace class invariance " + mu.to_string(), {}};
  const IrrepMatrixRep rep = young_orthogonal_rep(mu);
  const int n = rep.degree();
  if (n < 2) return report;
  std::vector<Matrix> images;
  for (int a = 1; a < n; ++a) images.push_back(rep.image(transposition(n, a, n)));
  for (const RestrictionBlock& b : rep.blocks()) {
    const double reference = images.front().block(b.offset, b.offset, b.size, b.size).trace();
    const double expected = block_transposition_trace(mu, b.alpha).get_d();
    double spread = 0.0;
    double off = 0.0;
    for (const Matrix& m : images) {
      const double tr = m.block(b.offset, b.offset, b.size, b.size).trace();
      spread = std::max(spread, std::abs(tr - reference));
      off = std::max(off, std::abs(tr - expected));
    }
    report.add("block " + b.alpha.to_string() + " spread", spread, summed_tol);
    report.add("block " + b.alpha.to_string() + " common value", off, summed_tol);
  }
  return report;
}

std::vector<oracle::DenseOperator> operator_E_family(const Partition& alpha, int d, long max_dim) {
  const int k = alpha.size();
  const long side = oracle::guarded_dimension(k, d, max_dim);
  const IrrepMatrixRep rep = young_orthogonal_rep(alpha);
  const int da = rep.dimension();
  std::vector<oracle::DenseOperator> out(static_cast<std::size_t>(da) * da,
                                         oracle::DenseOperator{k, d, oracle::Matrix::Zero(side, side)});
  std::vector<int> steps;
  const std::vector<Permutation> group = all_permutations(k, &steps);
  const double scale = da / factorial(k).get_d();
  Matrix D = Matrix::Identity(da, da);
  for (std::size_t g = 0; g < group.size(); ++g) {
    if (g > 0) D = D * rep.generator(steps[g - 1]);
    const std::vector<long> map = oracle::perm_index_map(group[g], d);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j) {
        const double w = scale * D(i, j);
        if (w == 0.0) continue;
        oracle::Matrix& m = out[static_cast<std::size_t>(i * da + j)].m;
        for (long c = 0; c < side; ++c) m(map[static_cast<std::size_t>(c)], c) += w;
      }
  }
  return out;
}

oracle::DenseOperator operator_E(const Partition& alpha, int i, int j, int d, long max_dim) {
  const int da = static_cast<int>(dim_sn(alpha).get_si());
  if (i < 0 || j < 0 || i >= da || j >= da) throw std::invalid_argument("irrep index out of range");
  return operator_E_family(alpha, d, max_dim)[static_cast<std::size_t>(i * da + j)];
}

namespace {

std::vector<oracle::DenseOperator> F_family(const IrrepMatrixRep& rep, int n, int d, long max_dim) {
  if (rep.degree() != n - 1) throw std::invalid_argument("mu must have n-1 boxes");
  if (n < 2) throw std::invalid_argument("need at least two systems");
  const long side = oracle::guarded_dimension(n - 2, d, max_dim);
  const int dm = rep.dimension();
  std::vector<oracle::DenseOperator> small(static_cast<std::size_t>(dm) * dm,
                                           oracle::DenseOperator{n - 2, d, oracle::Matrix::Zero(side, side)});
  std::vector<int> steps;
  const std::vector<Permutation> group = all_permutations(n - 2, &steps);
  Matrix D = Matrix::Identity(dm, dm);
  for (std::size_t g = 0; g < group.size(); ++g) {
    if (g > 0) D = D * rep.generator(steps[g - 1]);
    const std::vector<long> map = oracle::perm_index_map(group[g], d);
    for (int i = 0; i < dm; ++i)
      for (int j = 0; j < dm; ++j) {
        if (D(i, j) == 0.0) continue;
        oracle::Matrix& m = small[static_cast<std::size_t>(i * dm + j)].m;
        for (long c = 0; c < side; ++c) m(map[static_cast<std::size_t>(c)], c) += D(i, j);
      }
  }
  std::vector<oracle::DenseOperator> out;
  out.reserve(small.size());
  for (const auto& op : small) out.push_back(oracle::embed(op, n - 1));
  return out;
}

}  // namespace

oracle::DenseOperator operator_F_mu_ij(const Partition& mu, int i, int j, int n, int d, long max_dim) {
  oracle::guarded_dimension(n - 1, d, max_dim);
  const IrrepMatrixRep rep = young_orthogonal_rep(mu);
  const int dm = rep.dimension();
  if (i < 0 || j < 0 || i >= dm || j >= dm) throw std::invalid_argument("irrep index out of range");
  return F_family(rep, n, d, max_dim)[static_cast<std::size_t>(i * dm + j)];
}

OracleReport verify_operator_E(int k, int d, long max_dim) {
  OracleReport report{"operator E k=" + std::to_string(k) + " d=" + std::to_string(d), {}};
  const long side = oracle::guarded_dimension(k, d, max_dim);
  struct Family {
    Partition alpha;
    int dim;
    std::vector<oracle::DenseOperator> ops;
  };
  std::vector<Family> families;
  for (const Partition& alpha : enumerate_partitions(k, k))
    families.push_back({alpha, static_cast<int>(dim_sn(alpha).get_si()), operator_E_family(alpha, d, max_dim)});

  Matrix completeness = Matrix::Zero(side, side);
  for (const Family& f : families)
    for (int i = 0; i < f.dim; ++i) completeness += f.ops[static_cast<std::size_t>(i * f.dim + i)].m;
  report.add("completeness", max_abs(completeness - Matrix::Identity(side, side)), summed_tol);

  for (const Family& f : families) {
    const std::string tag = f.alpha.to_string();
    const double m_alpha = mult_natural(f.alpha, d).get_d();
    const Matrix P = oracle::young_projector(f.alpha, k, k, d, max_dim).m;
    double composition = 0.0;
    double hs = 0.0;
    double trace_p = 0.0;
    for (int i = 0; i < f.dim; ++i)
      for (int j = 0; j < f.dim; ++j) {
        const Matrix& Eij = f.ops[static_cast<std::size_t>(i * f.dim + j)].m;
        trace_p = std::max(trace_p, std::abs((Eij * P).trace() - (i == j ? m_alpha : 0.0)));
        for (int q = 0; q < f.dim; ++q)
          for (int l = 0; l < f.dim; ++l) {
            const Matrix& Eql = f.ops[static_cast<std::size_t>(q * f.dim + l)].m;
            const Matrix expected = j == q ? f.ops[static_cast<std::size_t>(i * f.dim + l)].m : Matrix::Zero(side, side);
            composition = std::max(composition, max_abs(Eij * Eql - expected));
            const double hs_expected = (i == q && j == l) ? m_alpha : 0.0;
            hs = std::max(hs, std::abs((Eij.transpose() * Eql).trace() - hs_expected));
          }
      }
    report.add(tag + " composition", composition, summed_tol);
    report.add(tag + " hilbert-schmidt", hs, summed_tol);
    report.add(tag + " trace against P", trace_p, summed_tol);
  }
  // distinct irreps compose to zero
  double cross = 0.0;
  for (std::size_t a = 0; a < families.size(); ++a)
    for (std::size_t b = 0; b < families.size(); ++b) {
      if (a == b) continue;
      cross = std::max(cross, max_abs(families[a].ops.front().m * families[b].ops.front().m));
    }
  report.add("cross-irrep composition", cross, summed_tol);
  return report;
}

OracleReport verify_operator_F(int n, int d, long max_dim) {
  OracleReport report{"operator F n=" + std::to_string(n) + " d=" + std::to_string(d), {}};
  if (n < 3) throw std::invalid_argument("F operators need n >= 3");
  const long side = oracle::guarded_dimension(n - 1, d, max_dim);
  const double group_order = factorial(n - 2).get_d();
  for (const Partition& mu : enumerate_partitions(n - 1, n - 1)) {
    const std::string tag = mu.to_string();
    const IrrepMatrixRep rep = young_orthogonal_rep(mu);
    const int dm = rep.dimension();
    const std::vector<oracle::DenseOperator> F = F_family(rep, n, d, max_dim);

    Matrix rebuilt = Matrix::Zero(side, side);
    for (int a = 1; a <= n - 1; ++a) {
      const Permutation t = transposition(n - 1, a, n - 1);
      const Matrix phi = rep.image(t);
      const std::vector<long> map = oracle::perm_index_map(t, d);
      Matrix inner = Matrix::Zero(side, side);
      for (int i = 0; i < dm; ++i)
        for (int j = 0; j < dm; ++j)
          if (phi(i, j) != 0.0) inner += phi(i, j) * F[static_cast<std::size_t>(i * dm + j)].m;
      // V(a, n-1) inner permutes rows
      for (long r = 0; r < side; ++r) rebuilt.row(map[static_cast<std::size_t>(r)]) += inner.row(r);
    }
    rebuilt *= dm / factorial(n - 1).get_d();
    const Matrix P = oracle::young_projector(mu, n - 1, n - 1, d, max_dim).m;
    report.add(tag + " reconstruction", max_abs(rebuilt - P), summed_tol);

    double block_dev = 0.0;
    for (const RestrictionBlock& bi : rep.blocks()) {
      const std::vector<oracle::DenseOperator> E = operator_E_family(bi.alpha, d, max_dim);
      for (const RestrictionBlock& bj : rep.blocks())
        for (int i = 0; i < bi.size; ++i)
          for (int j = 0; j < bj.size; ++j) {
            const Matrix& Fij = F[static_cast<std::size_t>((bi.offset + i) * dm + bj.offset + j)].m;
            Matrix expected = Matrix::Zero(side, side);
            if (&bi == &bj)
              expected = oracle::embed(E[static_cast<std::size_t>(i * bi.size + j)], n - 1).m * (group_order / bi.size);
            block_dev = std::max(block_dev, max_abs(Fij - expected));
          }
    }
    report.add(tag + " block form", block_dev, summed_tol);
  }
  return report;
}

}  // namespace pbt::symrep

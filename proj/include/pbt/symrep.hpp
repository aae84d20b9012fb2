#pragma once

#include "pbt/dense.hpp"
#include "pbt/partitions.hpp"
#include "pbt/permutation.hpp"
#include "pbt/report.hpp"

#include <Eigen/Dense>

#include <map>
#include <utility>
#include <vector>

namespace pbt::symrep {

using Matrix = Eigen::MatrixXd;

inline constexpr int max_rep_size = 8;

/// Standard tableau stored as the row and column of each entry 0..n-1.
struct Tableau {
  std::vector<int> row;
  std::vector<int> col;

  int content(int entry) const { return col[static_cast<std::size_t>(entry)] - row[static_cast<std::size_t>(entry)]; }
  friend bool operator==(const Tableau&, const Tableau&) = default;
};

/// One restriction block: the diagram with the box holding n removed, and the
/// range of basis indices it occupies.
struct RestrictionBlock {
  Partition alpha;
  int offset = 0;
  int size = 0;
};

/// Young's orthogonal form of the irrep mu of S(n).
///
/// Basis tableaux are grouped by the position of n, groups in descending-lex
/// order of the remaining diagram, each group ordered recursively the same
/// way. Restricting to S(n-1) is therefore block diagonal with each block
/// equal to the orthogonal form of that smaller diagram.
class IrrepMatrixRep {
 public:
  const Partition& shape() const { return shape_; }
  int degree() const { return shape_.size(); }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<Tableau>& basis() const { return basis_; }
  const std::vector<RestrictionBlock>& blocks() const { return blocks_; }

  /// Image of s_k = (k+1 k+2) in 1-based labels, k = 0..n-2.
  const Matrix& generator(int k) const { return generators_.at(static_cast<std::size_t>(k)); }

  /// Image of a word s_{w[0]} s_{w[1]} ...
  Matrix image_of_word(const std::vector<int>& word) const;
  Matrix image(const Permutation& sigma) const;

 private:
  friend IrrepMatrixRep young_orthogonal_rep(const Partition& mu);

  Partition shape_;
  std::vector<Tableau> basis_;
  std::vector<RestrictionBlock> blocks_;
  std::vector<Matrix> generators_;
};

/// Throws GuardError when |mu| exceeds max_rep_size.
IrrepMatrixRep young_orthogonal_rep(const Partition& mu);

/// The matrix of sigma cut into restriction blocks (alpha, beta).
class PrirBlockView {
 public:
  PrirBlockView(const IrrepMatrixRep& rep, const Permutation& sigma);

  const std::vector<RestrictionBlock>& labels() const { return labels_; }
  const Matrix& block(std::size_t a, std::size_t b) const { return blocks_.at({a, b}); }
  const Matrix& full() const { return full_; }
  Matrix reassemble() const;

 private:
  std::vector<RestrictionBlock> labels_;
  std::map<std::pair<std::size_t, std::size_t>, Matrix> blocks_;
  Matrix full_;
};

/// Involution, orthogonality, commutation and braid relations; character
/// of a transposition against normalized_char_transposition; word
/// independence of image() on random permutations.
OracleReport verify_generator_relations(const Partition& mu, unsigned long long seed = 0);

OracleReport verify_prir_sum_rule(const Partition& mu);
OracleReport verify_prir_orthogonality(const Partition& mu);
OracleReport verify_trace_class_invariance(const Partition& mu);

/// Common trace of the diagonal restriction block alpha on every (a n),
/// (n/2)(d_alpha/d_mu) chi^mu(12) - ((n-2)/2) chi^alpha(12).
mpq_class block_transposition_trace(const Partition& mu, const Partition& alpha);

/// E^alpha_ij = (d_alpha/k!) sum_g D^alpha_ji(g^-1) V(g) for the natural
/// action of S(k) on (C^d)^{⊗k}, indices 0-based. One entry per (i, j),
/// row-major in i.
std::vector<oracle::DenseOperator> operator_E_family(const Partition& alpha, int d, long max_dim = oracle::default_max_dim);
oracle::DenseOperator operator_E(const Partition& alpha, int i, int j, int d, long max_dim = oracle::default_max_dim);

/// F^mu_ij = sum_{pi in S(n-2)} phi^mu_ji(pi^-1) V(pi) for mu ⊢ n-1, acting
/// on n-1 systems (identity on system n-1). Indices 0-based.
oracle::DenseOperator operator_F_mu_ij(const Partition& mu, int i, int j, int n, int d,
                                       long max_dim = oracle::default_max_dim);

/// E family composition, completeness, Hilbert-Schmidt orthogonality and
/// tr[E_ij P_alpha] = delta_ij m_alpha, for the natural action of S(k).
OracleReport verify_operator_E(int k, int d, long max_dim = oracle::default_max_dim);

/// Reconstruction of every P_mu (mu ⊢ n-1) from the F_ij and the block form
/// F_ij = ((n-2)!/d_beta) E^beta.
OracleReport verify_operator_F(int n, int d, long max_dim = oracle::default_max_dim);

}  // namespace pbt::symrep

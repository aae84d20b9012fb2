#pragma once

#include "pbt/partitions.hpp"
#include "pbt/permutation.hpp"

#include <Eigen/Dense>

#include <vector>

namespace pbt::oracle {

using Matrix = Eigen::MatrixXd;

inline constexpr long default_max_dim = 16384;

/// Real operator on (C^d)^{⊗n} in the product basis; system 1 is the most
/// significant digit of the row/column index.
struct DenseOperator {
  int n = 0;
  int d = 0;
  Matrix m;

  long side() const { return static_cast<long>(m.rows()); }
};

/// d^n, throwing GuardError when it exceeds max_dim.
long guarded_dimension(int n, int d, long max_dim = default_max_dim);

/// V(sigma) e_c = e_{map[c]}: the basis index map of the tensor-factor
/// permutation that moves the content of slot k to slot sigma(k).
std::vector<long> perm_index_map(const Permutation& sigma, int d);

DenseOperator perm_operator(const Permutation& sigma, int d, long max_dim = default_max_dim);

/// V op V^T for the permutation with the given index map.
Matrix conjugate(const Matrix& op, const std::vector<long>& map);

DenseOperator partial_transpose_last(const DenseOperator& op);

/// Trace over the listed systems (1-based); the result acts on the rest in
/// their original order. Tracing everything leaves a 1x1 matrix.
DenseOperator partial_trace(const DenseOperator& op, const std::vector<int>& systems);

/// op ⊗ 1 on n systems, with op acting on the leading op.n systems.
DenseOperator embed(const DenseOperator& op, int n);

/// Unnormalized projector onto sum_i |ii> on two systems, with square d P+.
DenseOperator max_entangled(int d);

/// sum_{a=1}^{n-1} V^{t_n}(a, n).
DenseOperator eta_operator(int n, int d, long max_dim = default_max_dim);

/// Young projector of lambda ⊢ k on the first k of n systems. Uses the
/// character sum over S(k) for k <= 8 and the spectral route above that.
DenseOperator young_projector(const Partition& lambda, int k, int n, int d, long max_dim = default_max_dim);

/// Young projector as the Lagrange interpolant of the class sum of
/// transpositions, on k systems. Needs distinct content sums among the
/// admissible diagrams of size k; throws GuardError otherwise.
DenseOperator young_projector_spectral(const Partition& lambda, int d, long max_dim = default_max_dim);

/// Largest eigenvalue magnitude and min eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& m);
double max_eigenvalue(const Matrix& m);

/// Max absolute entry of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace pbt::oracle

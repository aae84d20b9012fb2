#include "pbt/dense.hpp"

#include "pbt/errors.hpp"
#include "pbt/symrep.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace pbt::oracle {

namespace {

long ipow(int d, int n) {
  long out = 1;
  for (int i = 0; i < n; ++i) out *= d;
  return out;
}

long content_sum(const Partition& lambda) {
  long out = 0;
  for (int i = 0; i < lambda.height(); ++i)
    for (int j = 0; j < lambda.row(i); ++j) out += j - i;
  return out;
}

}  // namespace

long guarded_dimension(int n, int d, long max_dim) {
  if (n < 0 || d < 1) throw std::invalid_argument("bad system count or local dimension");
  long side = 1;
  for (int i = 0; i < n; ++i) {
    side *= d;
    if (side > max_dim)
      throw GuardError("d^n = " + std::to_string(d) + "^" + std::to_string(n) + " exceeds the dimension guard " +
                       std::to_string(max_dim));
  }
  return side;
}

std::vector<long> perm_index_map(const Permutation& sigma, int d) {
  if (!is_permutation(sigma)) throw std::invalid_argument("not a permutation");
  const int n = static_cast<int>(sigma.size());
  const long side = ipow(d, n);
  // weight of slot k in the flat index; slot 0 is the most significant digit
  std::vector<long> weight(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) weight[static_cast<std::size_t>(k)] = ipow(d, n - 1 - k);
  std::vector<long> map(static_cast<std::size_t>(side));
  for (long c = 0; c < side; ++c) {
    long rest = c;
    long r = 0;
    for (int k = n - 1; k >= 0; --k) {
      const long digit = rest % d;
      rest /= d;
      r += digit * weight[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])];
    }
    map[static_cast<std::size_t>(c)] = r;
  }
  return map;
}

DenseOperator perm_operator(const Permutation& sigma, int d, long max_dim) {
  const int n = static_cast<int>(sigma.size());
  const long side = guarded_dimension(n, d, max_dim);
  DenseOperator out{n, d, Matrix::Zero(side, side)};
  const std::vector<long> map = perm_index_map(sigma, d);
  for (long c = 0; c < side; ++c) out.m(map[static_cast<std::size_t>(c)], c) = 1.0;
  return out;
}

Matrix conjugate(const Matrix& op, const std::vector<long>& map) {
  const long side = op.rows();
  Matrix out(side, side);
  for (long c = 0; c < side; ++c) {
    const long mc = map[static_cast<std::size_t>(c)];
    for (long r = 0; r < side; ++r) out(map[static_cast<std::size_t>(r)], mc) = op(r, c);
  }
  return out;
}

DenseOperator partial_transpose_last(const DenseOperator& op) {
  const long d = op.d;
  const long side = op.side();
  DenseOperator out{op.n, op.d, Matrix(side, side)};
  for (long c = 0; c < side; ++c) {
    const long c_hi = c - c % d;
    const long b = c % d;
    for (long r = 0; r < side; ++r) {
      const long a = r % d;
      out.m(r - a + b, c_hi + a) = op.m(r, c);
    }
  }
  return out;
}

DenseOperator partial_trace(const DenseOperator& op, const std::vector<int>& systems) {
  std::vector<char> traced(static_cast<std::size_t>(op.n), 0);
  for (int s : systems) {
    if (s < 1 || s > op.n) throw std::invalid_argument("system label out of range");
    traced[static_cast<std::size_t>(s - 1)] = 1;
  }
  std::vector<int> keep;
  std::vector<int> gone;
  for (int k = 0; k < op.n; ++k) (traced[static_cast<std::size_t>(k)] ? gone : keep).push_back(k);
  const int nk = static_cast<int>(keep.size());
  const long d = op.d;
  const long keep_side = ipow(op.d, nk);
  const long gone_side = ipow(op.d, static_cast<int>(gone.size()));

  // flat index of (kept digits x, traced digits t)
  auto compose_index = [&](long x, long t) {
    long idx = 0;
    long xr = x;
    long tr = t;
    std::vector<long> digit(static_cast<std::size_t>(op.n));
    for (int i = nk - 1; i >= 0; --i) {
      digit[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])] = xr % d;
      xr /= d;
    }
    for (int i = static_cast<int>(gone.size()) - 1; i >= 0; --i) {
      digit[static_cast<std::size_t>(gone[static_cast<std::size_t>(i)])] = tr % d;
      tr /= d;
    }
    for (int k = 0; k < op.n; ++k) idx = idx * d + digit[static_cast<std::size_t>(k)];
    return idx;
  };
  std::vector<long> table(static_cast<std::size_t>(keep_side * gone_side));
  for (long x = 0; x < keep_side; ++x)
    for (long t = 0; t < gone_side; ++t) table[static_cast<std::size_t>(x * gone_side + t)] = compose_index(x, t);

  DenseOperator out{nk, op.d, Matrix::Zero(keep_side, keep_side)};
  for (long y = 0; y < keep_side; ++y)
    for (long x = 0; x < keep_side; ++x) {
      double s = 0.0;
      for (long t = 0; t < gone_side; ++t)
        s += op.m(table[static_cast<std::size_t>(x * gone_side + t)], table[static_cast<std::size_t>(y * gone_side + t)]);
      out.m(x, y) = s;
    }
  return out;
}

DenseOperator embed(const DenseOperator& op, int n) {
  if (n < op.n) throw std::invalid_argument("cannot embed into fewer systems");
  const long tail = ipow(op.d, n - op.n);
  const long side = op.side() * tail;
  DenseOperator out{n, op.d, Matrix::Zero(side, side)};
  for (long c = 0; c < op.side(); ++c)
    for (long r = 0; r < op.side(); ++r) {
      const double v = op.m(r, c);
      if (v == 0.0) continue;
      for (long t = 0; t < tail; ++t) out.m(r * tail + t, c * tail + t) = v;
    }
  return out;
}

DenseOperator max_entangled(int d) {
  DenseOperator out{2, d, Matrix::Zero(static_cast<long>(d) * d, static_cast<long>(d) * d)};
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) out.m(i * d + i, j * d + j) = 1.0;
  return out;
}

DenseOperator eta_operator(int n, int d, long max_dim) {
  if (n < 2) throw std::invalid_argument("eta needs at least two systems");
  const long side = guarded_dimension(n, d, max_dim);
  DenseOperator sum{n, d, Matrix::Zero(side, side)};
  for (int a = 1; a < n; ++a) {
    const std::vector<long> map = perm_index_map(transposition(n, a, n), d);
    for (long c = 0; c < side; ++c) sum.m(map[static_cast<std::size_t>(c)], c) += 1.0;
  }
  return partial_transpose_last(sum);
}

DenseOperator young_projector(const Partition& lambda, int k, int n, int d, long max_dim) {
  if (lambda.size() != k) throw std::invalid_argument("diagram size must equal the system prefix");
  if (k > n) throw std::invalid_argument("prefix longer than the system count");
  guarded_dimension(n, d, max_dim);
  if (k > 8) return embed(young_projector_spectral(lambda, d, max_dim), n);

  const long side = ipow(d, k);
  DenseOperator small{k, d, Matrix::Zero(side, side)};
  if (lambda.height() <= d) {
    const symrep::IrrepMatrixRep rep = symrep::young_orthogonal_rep(lambda);
    std::map<std::vector<int>, double> by_class;
    const double scale = rep.dimension() / factorial(k).get_d();
    for (const Permutation& sigma : all_permutations(k)) {
      const std::vector<int> type = cycle_type(sigma);
      auto it = by_class.find(type);
      if (it == by_class.end()) it = by_class.emplace(type, rep.image(sigma).trace()).first;
      const double w = scale * it->second;
      if (w == 0.0) continue;
      const std::vector<long> map = perm_index_map(sigma, d);
      for (long c = 0; c < side; ++c) small.m(map[static_cast<std::size_t>(c)], c) += w;
    }
  }
  return embed(small, n);
}

DenseOperator young_projector_spectral(const Partition& lambda, int d, long max_dim) {
  const int k = lambda.size();
  const long side = guarded_dimension(k, d, max_dim);
  DenseOperator out{k, d, Matrix::Zero(side, side)};
  if (lambda.height() > d) return out;

  Matrix C = Matrix::Zero(side, side);
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      const std::vector<long> map = perm_index_map(transposition(k, i, j), d);
      for (long c = 0; c < side; ++c) C(map[static_cast<std::size_t>(c)], c) += 1.0;
    }
  const long target = content_sum(lambda);
  Matrix P = Matrix::Identity(side, side);
  for (const Partition& nu : enumerate_partitions(k, d)) {
    if (nu == lambda) continue;
    const long c_nu = content_sum(nu);
    if (c_nu == target)
      throw GuardError("content sums of " + lambda.to_string() + " and " + nu.to_string() + " coincide");
    Matrix factor = C;
    factor.diagonal().array() -= static_cast<double>(c_nu);
    P = (factor * P) / static_cast<double>(target - c_nu);
  }
  out.m = P;
  return out;
}

double min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace pbt::oracle

#include "pbt/oracle.hpp"

#include "pbt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbt::oracle {

namespace {

long ipow(int d, int k) {
  long out = 1;
  for (int i = 0; i < k; ++i) out *= d;
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Matrix apply_max_entangled_last_pair(const Matrix& M, int d) {
  // rows (x, i, j) of the result are delta_ij sum_k M[(x, k, k), :]
  const long pair = static_cast<long>(d) * d;
  const long outer = M.rows() / pair;
  Matrix out = Matrix::Zero(M.rows(), M.cols());
  for (long x = 0; x < outer; ++x) {
    Eigen::RowVectorXd s = Eigen::RowVectorXd::Zero(M.cols());
    for (long k = 0; k < d; ++k) s += M.row(x * pair + k * d + k);
    for (long i = 0; i < d; ++i) out.row(x * pair + i * d + i) = s;
  }
  return out;
}

OracleContext::OracleContext(int n, int d, OracleOptions options) : n_(n), d_(d), options_(options) {
  if (n < 2) throw std::invalid_argument("the oracle needs at least two systems");
  if (d < 2) throw std::invalid_argument("local dimension d must be at least 2");
  side_ = guarded_dimension(n, d, options.max_dim);
  eta_ = eta_operator(n, d, options.max_dim);
  Eigen::SelfAdjointEigenSolver<Matrix> es(eta_.m);
  if (es.info() != Eigen::Success) throw VerificationError("eigendecomposition of eta failed");
  eigenvalues_ = es.eigenvalues();
  eigenvectors_ = es.eigenvectors();

  for (const Partition& mu : enumerate_partitions(n - 1, d)) {
    mus_.push_back(irrep_data(mu, d));
    p_mu_small_.push_back(young_projector(mu, n - 1, n - 1, d, options.max_dim).m);
    p_mu_.push_back(embed(DenseOperator{n - 1, d, p_mu_small_.back()}, n).m);
  }
  for (const Partition& alpha : enumerate_partitions(n - 2, d)) {
    alphas_.push_back(irrep_data(alpha, d));
    p_alpha_small_.push_back(young_projector(alpha, n - 2, n - 2, d, options.max_dim).m);
    p_alpha_.push_back(embed(DenseOperator{n - 2, d, p_alpha_small_.back()}, n).m);
  }

  const Matrix pplus = max_entangled(d).m;
  const int N = n - 1;
  for (std::size_t ai = 0; ai < alphas_.size(); ++ai) {
    // eta(alpha) = sum_a V(a, n-1) (P_alpha ⊗ P+) V(a, n-1)
    const Matrix seed = kron(p_alpha_small_[ai], pplus);
    Matrix eta_alpha = Matrix::Zero(side_, side_);
    for (int a = 1; a <= n - 1; ++a) eta_alpha += conjugate(seed, swap_map(a, n - 1));
    for (const Partition& mu : branch_add(alphas_[ai].partition, d)) {
      const std::size_t mi = mu_index(mu);
      const Matrix& P = p_mu_[mi];
      Matrix X = P * eta_alpha * P;
      Block block;
      block.alpha = alphas_[ai];
      block.mu = mus_[mi];
      block.gamma_exact = mpq_class(mpz_class(N) * block.mu.mult * block.alpha.dim, block.alpha.mult * block.mu.dim);
      block.gamma_exact.canonicalize();
      block.gamma = X.squaredNorm() / X.trace();
      block.F = X / block.gamma;
      blocks_.push_back(std::move(block));
    }
  }
}

std::size_t OracleContext::mu_index(const Partition& mu) const {
  for (std::size_t i = 0; i < mus_.size(); ++i)
    if (mus_[i].partition == mu) return i;
  throw std::out_of_range("diagram " + mu.to_string() + " not in the context");
}

std::size_t OracleContext::alpha_index(const Partition& alpha) const {
  for (std::size_t i = 0; i < alphas_.size(); ++i)
    if (alphas_[i].partition == alpha) return i;
  throw std::out_of_range("diagram " + alpha.to_string() + " not in the context");
}

const std::vector<long>& OracleContext::swap_map(int a, int b) const {
  if (swap_maps_.empty()) swap_maps_.resize(static_cast<std::size_t>(n_ * n_));
  std::vector<long>& slot = swap_maps_[static_cast<std::size_t>((a - 1) * n_ + (b - 1))];
  if (slot.empty()) slot = perm_index_map(transposition(n_, a, b), d_);
  return slot;
}

Matrix OracleContext::eta_inverse_sqrt(double cutoff) const {
  const double threshold = cutoff * eigenvalues_.maxCoeff();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(eigenvalues_.size());
  for (long i = 0; i < eigenvalues_.size(); ++i)
    if (eigenvalues_(i) > threshold) w(i) = 1.0 / std::sqrt(eigenvalues_(i));
  return eigenvectors_ * w.asDiagonal() * eigenvectors_.transpose();
}

Matrix OracleContext::eta_support(double cutoff) const {
  const double threshold = cutoff * eigenvalues_.maxCoeff();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(eigenvalues_.size());
  for (long i = 0; i < eigenvalues_.size(); ++i)
    if (eigenvalues_(i) > threshold) w(i) = 1.0;
  return eigenvectors_ * w.asDiagonal() * eigenvectors_.transpose();
}

double fidelity_direct(const OracleContext& ctx, double cutoff) {
  const Matrix A = ctx.eta_inverse_sqrt(cutoff);
  const Matrix B = apply_max_entangled_last_pair(A, ctx.d());
  // tr(B B)
  const double trace = B.cwiseProduct(B.transpose()).sum();
  return ctx.N() * trace / std::pow(static_cast<double>(ctx.d()), ctx.N() + 2);
}

double fidelity_direct(const OracleContext& ctx) { return fidelity_direct(ctx, ctx.options().pinv_cutoff); }

ChannelResult simulate_deterministic_channel(const OracleContext& ctx) {
  const int n = ctx.n();
  const int N = ctx.N();
  const long d = ctx.d();
  const long side = ctx.side();
  const double cutoff = ctx.options().pinv_cutoff;

  const Matrix A = ctx.eta_inverse_sqrt(cutoff);
  // Pi_{n-1} = eta^{-1/2} V^t(n-1, n) eta^{-1/2}; the others are conjugates
  // by V(a, n-1), under which eta is invariant.
  const Matrix last = A * apply_max_entangled_last_pair(A, ctx.d());
  const Matrix completion = (Matrix::Identity(side, side) - ctx.eta_support(cutoff)) / N;

  std::vector<Matrix> povm;
  Matrix total = Matrix::Zero(side, side);
  for (int a = 1; a <= N; ++a) {
    povm.push_back(conjugate(last, ctx.swap_map(a, n - 1)) + completion);
    total += povm.back();
  }
  ChannelResult out;
  out.completeness_residual = max_abs_diff(total, Matrix::Identity(side, side));
  if (!(out.completeness_residual <= 1e-10))
    throw VerificationError("square-root measurement is not complete: residual " +
                            std::to_string(out.completeness_residual));
  // every Pi_a is a permutation similarity of Pi_{n-1}, so one spectrum covers all
  out.min_povm_eigenvalue = min_eigenvalue(povm.back());

  // Lambda(|i><j|) = d^-N sum_a (tr_{A != a} <j|_C Pi_a |i>_C)^T, C the last system
  const long ports = side / d;
  const double norm = std::pow(static_cast<double>(d), -N);
  std::vector<Matrix> channel(static_cast<std::size_t>(d * d), Matrix::Zero(d, d));
  for (int a = 1; a <= N; ++a) {
    const Matrix& Pi = povm[static_cast<std::size_t>(a - 1)];
    const long weight = ipow(static_cast<int>(d), N - a);
    for (long x = 0; x < ports; ++x) {
      // x runs over port digits with digit a free: skip unless that digit is 0
      if ((x / weight) % d != 0) continue;
      for (long p = 0; p < d; ++p)
        for (long q = 0; q < d; ++q) {
          const long row_port = x + p * weight;
          const long col_port = x + q * weight;
          for (long i = 0; i < d; ++i)
            for (long j = 0; j < d; ++j)
              channel[static_cast<std::size_t>(i * d + j)](q, p) += norm * Pi(row_port * d + j, col_port * d + i);
        }
    }
  }
  double F = 0.0;
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) {
      const Matrix& out_ij = channel[static_cast<std::size_t>(i * d + j)];
      F += out_ij(i, j);
      out.trace_residual = std::max(out.trace_residual, std::abs(out_ij.trace() - (i == j ? 1.0 : 0.0)));
    }
  out.fidelity = F / static_cast<double>(d * d);
  return out;
}

}  // namespace pbt::oracle

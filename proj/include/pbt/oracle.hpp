#pragma once

#include "pbt/dense.hpp"
#include "pbt/formulas.hpp"
#include "pbt/partitions.hpp"
#include "pbt/report.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace pbt::oracle {

struct OracleOptions {
  long max_dim = default_max_dim;
  double pinv_cutoff = 1e-10;  // relative to the largest eigenvalue of eta
  std::uint64_t seed = 0;
};

/// F_mu(alpha) with the eigenvalue recovered from the dense operator.
struct Block {
  IrrepData alpha;
  IrrepData mu;
  mpq_class gamma_exact;
  double gamma = 0.0;  // ||P_mu eta(alpha) P_mu||_F^2 / tr(P_mu eta(alpha) P_mu)
  Matrix F;
};

/// Every dense operator the checks share, built once for (n, d).
class OracleContext {
 public:
  OracleContext(int n, int d, OracleOptions options = {});

  int n() const { return n_; }
  int N() const { return n_ - 1; }
  int d() const { return d_; }
  long side() const { return side_; }
  const OracleOptions& options() const { return options_; }

  const DenseOperator& eta() const { return eta_; }
  const Eigen::VectorXd& eta_eigenvalues() const { return eigenvalues_; }
  const Matrix& eta_eigenvectors() const { return eigenvectors_; }

  const std::vector<IrrepData>& mus() const { return mus_; }
  const std::vector<IrrepData>& alphas() const { return alphas_; }
  /// Young projectors of mu ⊢ n-1 (on n-1 systems) and alpha ⊢ n-2 (on n-2 systems).
  const Matrix& P_mu_small(std::size_t i) const { return p_mu_small_.at(i); }
  const Matrix& P_alpha_small(std::size_t i) const { return p_alpha_small_.at(i); }
  /// The same projectors tensored with identity up to n systems.
  const Matrix& P_mu(std::size_t i) const { return p_mu_.at(i); }
  const Matrix& P_alpha(std::size_t i) const { return p_alpha_.at(i); }
  std::size_t mu_index(const Partition& mu) const;
  std::size_t alpha_index(const Partition& alpha) const;

  const std::vector<Block>& blocks() const { return blocks_; }

  /// eta^{-1/2} on its support, with the given relative cutoff.
  Matrix eta_inverse_sqrt(double cutoff) const;
  /// Projector onto the support of eta.
  Matrix eta_support(double cutoff) const;

  /// V(a, b) with 1-based labels on n systems, as an index map.
  const std::vector<long>& swap_map(int a, int b) const;

 private:
  int n_;
  int d_;
  long side_;
  OracleOptions options_;
  DenseOperator eta_;
  Eigen::VectorXd eigenvalues_;
  Matrix eigenvectors_;
  std::vector<IrrepData> mus_;
  std::vector<IrrepData> alphas_;
  std::vector<Matrix> p_mu_small_;
  std::vector<Matrix> p_alpha_small_;
  std::vector<Matrix> p_mu_;
  std::vector<Matrix> p_alpha_;
  std::vector<Block> blocks_;
  mutable std::vector<std::vector<long>> swap_maps_;
};

/// (1 ⊗ P+_{n-1,n}) M with unnormalized P+, using the sparsity of P+.
Matrix apply_max_entangled_last_pair(const Matrix& M, int d);

/// Nonzero eigenvalues of eta against the table; defaults to spectrum(n-1, d).
OracleReport verify_spectrum(const OracleContext& ctx);
OracleReport verify_spectrum(const OracleContext& ctx, const SpectrumTable& table);

/// Young projectors, F_mu(alpha) projectors and the reconstruction of eta.
OracleReport verify_projectors(const OracleContext& ctx);

/// The partial-trace and sandwich identities of the projector calculus.
OracleReport verify_partial_trace_facts(const OracleContext& ctx);

/// (N/d^{N+2}) tr[V^t(n-1,n) eta^{-1/2} V^t(n-1,n) eta^{-1/2}].
double fidelity_direct(const OracleContext& ctx, double cutoff);
double fidelity_direct(const OracleContext& ctx);

struct ChannelResult {
  double fidelity = 0.0;
  double completeness_residual = 0.0;  // max |sum_a Pi_a - 1|
  double min_povm_eigenvalue = 0.0;
  double trace_residual = 0.0;         // max |tr Lambda(|i><j|) - delta_ij|
};

/// Square-root measurement plus port selection applied to half of a maximally
/// entangled pair. Throws VerificationError if the POVM is not complete.
ChannelResult simulate_deterministic_channel(const OracleContext& ctx);

/// Closed form against the direct value at three pseudo-inverse cutoffs.
OracleReport verify_fidelity(const OracleContext& ctx);

/// Channel simulation against the closed form, plus POVM and trace residuals.
OracleReport verify_channel(const OracleContext& ctx);

OracleReport verify_zeta(const OracleContext& ctx);
OracleReport verify_sdp_epr(const OracleContext& ctx);
OracleReport verify_sdp_optimal(const OracleContext& ctx);

}  // namespace pbt::oracle

#pragma once

#include "pbt/high_precision.hpp"
#include "pbt/partitions.hpp"

#include <gmpxx.h>

#include <map>
#include <vector>

namespace pbt {

/// One eigenvalue block of the PBT operator, labelled by (alpha, mu).
struct SpectrumEntry {
  BranchPair pair;
  mpq_class gamma;      // eigenvalue of eta = sum_a V^{t_n}(a, n)
  mpq_class lambda;     // gamma / d^N, eigenvalue of rho
  mpz_class degeneracy; // d_mu * m_alpha
};

struct SpectrumTable {
  int N = 0;
  int d = 0;
  std::vector<SpectrumEntry> entries;

  /// sum gamma * degeneracy, which must equal N * d^N.
  mpq_class weighted_trace() const;
};

/// Eigenvalues gamma_mu(alpha) = N m_mu d_alpha / (m_alpha d_mu) over every
/// height-capped branch pair, alpha descending-lex then mu descending-lex.
SpectrumTable spectrum(int N, int d);

/// Same table with gamma from the transposition characters of mu and alpha.
SpectrumTable spectrum_char_form(int N, int d);

/// Entanglement fidelity of deterministic PBT,
/// d^-(N+2) sum_alpha (sum_{mu in alpha} sqrt(d_mu m_mu))^2.
/// The result carries `precision_bits` bits and a relative error below
/// 2^-(precision_bits - 8).
HighPrecision fidelity_deterministic(int N, int d, int precision_bits = 128);

/// f = (F d + 1) / (d + 1). Throws std::domain_error unless 0 <= F <= 1.
HighPrecision average_fidelity(const HighPrecision& F, int d);

/// Success probability of probabilistic PBT with maximally entangled ports,
/// d^-N sum_alpha m_alpha^2 min_{mu in alpha} d_mu / m_mu.
mpq_class prob_success_epr(int N, int d);

/// d^-N sum_alpha m_alpha d_alpha min_{mu in alpha} 1/gamma_mu(alpha).
/// This is the per-port value; prob_success_epr equals N times it.
mpq_class epr_per_port_minima_sum(int N, int d);

/// N / (N + d^2 - 1).
mpq_class prob_success_optimal(int N, int d);

/// sum_{alpha ⊢ N-1} m_alpha^2 / sum_{nu ⊢ N} m_nu^2.
mpq_class prob_success_optimal_ratio(int N, int d);

enum class ResourceVariant { epr_resource, optimized_resource };

using CoefficientMap = std::map<Partition, mpq_class, DescendingLex>;

struct PairCoefficient {
  BranchPair pair;
  mpq_class value;
};

/// Primal and dual certificates of the probabilistic-PBT semidefinite programs.
struct OptimalSolution {
  ResourceVariant variant = ResourceVariant::epr_resource;
  int N = 0;
  int d = 0;
  CoefficientMap state_coeffs;              // c_mu, optimized variant only
  CoefficientMap povm_coeffs;               // x_alpha (epr) or u(alpha) (optimized)
  std::vector<PairCoefficient> dual_coeffs; // x_{mu*}(alpha) (epr) or x_mu(alpha) (optimized)
  mpq_class dual_b;                         // optimized variant only
  mpq_class g_N;                            // 1 / sum_{nu ⊢ N} m_nu^2
  mpq_class primal_value;
  mpq_class dual_value;
};

/// Coefficient families of the optimal POVM, resource state and dual witness.
/// Among tied maximal gamma the descending-lex first mu is used as mu*.
OptimalSolution optimal_solution(int N, int d, ResourceVariant variant);

/// The mu in branch_add(alpha, d) with largest gamma_mu(alpha), ties broken
/// toward the descending-lex first diagram.
Partition mu_star(const Partition& alpha, int d);

struct PerformanceReport {
  int N = 0;
  int d = 0;
  HighPrecision F;
  HighPrecision f;
  mpq_class p_epr;
  mpq_class p_opt;
  int precision_bits = 128;
};

PerformanceReport performance(int N, int d, int precision_bits = 128);

}  // namespace pbt

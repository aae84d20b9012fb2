#include "pbt/formulas.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <unordered_map>

namespace pbt {

namespace {

void check_args(int N, int d) {
  if (N < 1) throw std::invalid_argument("number of ports N must be at least 1");
  if (d < 2) throw std::invalid_argument("local dimension d must be at least 2");
}

mpz_class power(int base, int exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exponent));
  return out;
}

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Every alpha ⊢ N-1 with its admissible mu ⊢ N, dimensions and multiplicities
// computed once per diagram.
class BranchTable {
 public:
  struct Node {
    IrrepData alpha;
    std::vector<const IrrepData*> mus;
  };

  BranchTable(int N, int d) : N_(N), d_(d) {
    check_args(N, d);
    for (Partition& alpha : enumerate_partitions(N - 1, d)) {
      Node node{irrep_data(alpha, d), {}};
      for (Partition& mu : branch_add(node.alpha.partition, d)) node.mus.push_back(&lookup(std::move(mu)));
      nodes_.push_back(std::move(node));
    }
  }

  int N() const { return N_; }
  int d() const { return d_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::size_t distinct_mus() const { return mus_.size(); }

  mpq_class gamma(const IrrepData& alpha, const IrrepData& mu) const {
    return ratio(mpz_class(N_) * mu.mult * alpha.dim, alpha.mult * mu.dim);
  }

  // First mu (descending-lex) maximizing gamma, i.e. maximizing m_mu / d_mu.
  const IrrepData& mu_star(const Node& node) const {
    const IrrepData* best = node.mus.front();
    for (const IrrepData* mu : node.mus) {
      // m_mu / d_mu > m_best / d_best
      if (mu->mult * best->dim > best->mult * mu->dim) best = mu;
    }
    return *best;
  }

 private:
  const IrrepData& lookup(Partition mu) {
    auto it = mus_.find(mu);
    if (it == mus_.end()) {
      IrrepData data = irrep_data(mu, d_);
      it = mus_.emplace(std::move(mu), std::move(data)).first;
    }
    return it->second;
  }

  int N_;
  int d_;
  std::vector<Node> nodes_;
  std::unordered_map<Partition, IrrepData, PartitionHash> mus_;
};

// Streams alpha |- N-1 without building the branching table. With
// l_i = alpha_i + d - 1 - i, the hook and Weyl forms give
//   d_alpha m_alpha = (N-1)! prod_{i<j} (l_i - l_j)^2 / (prod_i l_i! prod_i (d-1-i)!)
// and for mu = alpha + box in row i
//   d_mu m_mu / (d_alpha m_alpha) = N R_i^2 / (l_i + 1),
//   R_i = prod_{j != i} |l_i + 1 - l_j| / |l_i - l_j|,
// so only small integers ever meet the MPFR accumulators.
class FidelityStream {
 public:
  FidelityStream(int N, int d, int precision_bits) : N_(N), d_(d) {
    check_args(N, d);
    if (precision_bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
    const std::size_t du = static_cast<std::size_t>(d);
    // every step rounds once on positive operands: k steps cost at most k ulps
    const std::size_t per_term = 8 * du * du + 32;
    const long double terms = count_terms();
    const int term_bits = static_cast<int>(std::ceil(std::log2(terms + 1.0L)));
    working_ = precision_bits + 16 + term_bits + static_cast<int>(std::bit_width(per_term));
    top_ = N + d;
    flush_limit_ = std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(top_ + 1);

    inv_fact_.reserve(static_cast<std::size_t>(top_ + 1));
    inv_sqrt_.reserve(static_cast<std::size_t>(top_ + 1));
    for (int l = 0; l <= top_; ++l) {
      HighPrecision f(factorial(l), working_);
      mpfr_ui_div(f.get(), 1, f.get(), MPFR_RNDN);
      inv_fact_.push_back(std::move(f));
      HighPrecision r(working_);
      if (l > 0) mpfr_rec_sqrt(r.get(), HighPrecision(static_cast<long>(l), working_).get(), MPFR_RNDN);
      inv_sqrt_.push_back(std::move(r));
    }
    mpz_class base = factorial(N - 1) * N;
    mpz_class den = 1;
    for (int i = 0; i < d; ++i) den *= factorial(d - 1 - i);
    scale_ = HighPrecision(ratio(base, den), working_);
  }

  HighPrecision run(int precision_bits) {
    total_ = HighPrecision(working_);
    inner_ = HighPrecision(working_);
    branch_ = HighPrecision(working_);
    partial_.assign(static_cast<std::size_t>(d_ + 1), HighPrecision(working_));
    partial_[0] = scale_;
    l_.assign(static_cast<std::size_t>(d_), 0);
    descend(0, N_ - 1, N_ - 1);
    total_ /= power(d_, N_ + 2);
    return total_.rounded(precision_bits);
  }

 private:
  // Rows are fixed one at a time in descending-lex order; partial_[k] holds the
  // weight factors of rows < k, so a leaf only pays for its last row.
  void descend(int k, int remaining, int cap) {
    const int rows_left = d_ - k;
    int hi = std::min(cap, remaining);
    int lo = (remaining + rows_left - 1) / rows_left;
    if (k == d_ - 1) lo = hi = remaining;
    for (int row = hi; row >= lo; --row) {
      const int lk = row + d_ - 1 - k;
      l_[static_cast<std::size_t>(k)] = lk;
      HighPrecision& w = partial_[static_cast<std::size_t>(k + 1)];
      mpfr_mul(w.get(), partial_[static_cast<std::size_t>(k)].get(), inv_fact_[static_cast<std::size_t>(lk)].get(),
               MPFR_RNDN);
      // squared Vandermonde factors against earlier rows
      for (int pass = 0; pass < 2; ++pass) {
        Chunk vandermonde(w, flush_limit_);
        for (int j = 0; j < k; ++j) vandermonde.mul(l_[static_cast<std::size_t>(j)] - lk);
        vandermonde.flush();
      }
      if (k + 1 < d_)
        descend(k + 1, remaining - row, row);
      else
        leaf();
    }
  }

  void leaf() {
    mpfr_set_ui(inner_.get(), 0, MPFR_RNDN);
    for (int i = 0; i < d_; ++i) {
      const int li = l_[static_cast<std::size_t>(i)];
      if (i > 0 && l_[static_cast<std::size_t>(i - 1)] <= li + 1) continue;  // row i not addable
      mpfr_set(branch_.get(), inv_sqrt_[static_cast<std::size_t>(li + 1)].get(), MPFR_RNDN);
      Chunk num(branch_, flush_limit_);
      Chunk den(branch_, flush_limit_, true);
      for (int j = 0; j < d_; ++j) {
        if (j == i) continue;
        const int lj = l_[static_cast<std::size_t>(j)];
        num.mul(std::abs(li + 1 - lj));
        den.mul(std::abs(li - lj));
      }
      num.flush();
      den.flush();
      mpfr_add(inner_.get(), inner_.get(), branch_.get(), MPFR_RNDN);
    }
    mpfr_sqr(inner_.get(), inner_.get(), MPFR_RNDN);
    mpfr_mul(inner_.get(), inner_.get(), partial_[static_cast<std::size_t>(d_)].get(), MPFR_RNDN);
    mpfr_add(total_.get(), total_.get(), inner_.get(), MPFR_RNDN);
  }

  // Collects small factors in a machine word before touching the MPFR value.
  class Chunk {
   public:
    Chunk(HighPrecision& target, std::uint64_t limit, bool divide = false)
        : target_(target), limit_(limit), divide_(divide) {}
    void mul(int factor) {
      if (acc_ > limit_) flush();
      acc_ *= static_cast<std::uint64_t>(factor);
    }
    void flush() {
      if (acc_ == 1) return;
      if (divide_)
        mpfr_div_ui(target_.get(), target_.get(), acc_, MPFR_RNDN);
      else
        mpfr_mul_ui(target_.get(), target_.get(), acc_, MPFR_RNDN);
      acc_ = 1;
    }

   private:
    HighPrecision& target_;
    std::uint64_t limit_;
    bool divide_;
    std::uint64_t acc_ = 1;
  };

  // partitions of N-1 with at most d parts, in floating point (only its size matters)
  long double count_terms() const {
    const int n = N_ - 1;
    std::vector<long double> ways(static_cast<std::size_t>(n + 1), 0.0L);
    ways[0] = 1.0L;
    // conjugation: at most d parts <-> parts of size at most d
    for (int part = 1; part <= d_; ++part)
      for (int m = part; m <= n; ++m) ways[static_cast<std::size_t>(m)] += ways[static_cast<std::size_t>(m - part)];
    return ways[static_cast<std::size_t>(n)];
  }

  int N_;
  int d_;
  int working_ = 0;
  int top_ = 0;
  std::uint64_t flush_limit_ = 0;
  std::vector<HighPrecision> inv_fact_;
  std::vector<HighPrecision> inv_sqrt_;
  HighPrecision scale_;
  HighPrecision total_, inner_, branch_;
  std::vector<HighPrecision> partial_;
  std::vector<int> l_;
};

mpq_class epr_from_table(const BranchTable& table) {
  mpq_class sum = 0;
  for (const auto& node : table.nodes()) {
    const IrrepData& best = table.mu_star(node);
    sum += ratio(node.alpha.mult * node.alpha.mult * best.dim, best.mult);
  }
  sum /= power(table.d(), table.N());
  sum.canonicalize();
  return sum;
}

SpectrumTable make_spectrum(const BranchTable& table, bool char_form) {
  SpectrumTable out;
  out.N = table.N();
  out.d = table.d();
  const int n = table.N() + 1;
  const mpz_class dN = power(table.d(), table.N());
  const mpq_class mu_coeff(mpz_class((n - 1) * static_cast<long>(n - 2)), 2);
  const mpq_class alpha_coeff(mpz_class((n - 2) * static_cast<long>(n - 3)), 2);
  for (const auto& node : table.nodes()) {
    // the character terms only enter when their prefactor is nonzero
    const mpq_class alpha_term =
        (char_form && node.alpha.partition.size() >= 2) ? alpha_coeff * normalized_char_transposition(node.alpha.partition)
                                                        : mpq_class(0);
    for (const IrrepData* mu : node.mus) {
      SpectrumEntry entry;
      entry.pair = BranchPair{node.alpha.partition, mu->partition};
      if (char_form) {
        const mpq_class mu_term =
            mu->partition.size() >= 2 ? mu_coeff * normalized_char_transposition(mu->partition) : mpq_class(0);
        entry.gamma = mpq_class(table.d()) + mu_term - alpha_term;
        entry.gamma.canonicalize();
      } else {
        entry.gamma = table.gamma(node.alpha, *mu);
      }
      entry.lambda = entry.gamma / dN;
      entry.lambda.canonicalize();
      entry.degeneracy = mu->dim * node.alpha.mult;
      out.entries.push_back(std::move(entry));
    }
  }
  return out;
}

}  // namespace

mpq_class SpectrumTable::weighted_trace() const {
  mpq_class sum = 0;
  for (const auto& e : entries) sum += e.gamma * mpq_class(e.degeneracy);
  sum.canonicalize();
  return sum;
}

SpectrumTable spectrum(int N, int d) { return make_spectrum(BranchTable(N, d), false); }

SpectrumTable spectrum_char_form(int N, int d) { return make_spectrum(BranchTable(N, d), true); }

HighPrecision fidelity_deterministic(int N, int d, int precision_bits) {
  return FidelityStream(N, d, precision_bits).run(precision_bits);
}

HighPrecision average_fidelity(const HighPrecision& F, int d) {
  if (d < 2) throw std::invalid_argument("local dimension d must be at least 2");
  if (F < HighPrecision(0L, F.bits()) || HighPrecision(1L, F.bits()) < F)
    throw std::domain_error("entanglement fidelity must lie in [0, 1]");
  HighPrecision f = F;
  f *= d;
  f += 1;
  f /= static_cast<long>(d + 1);
  return f;
}

mpq_class prob_success_epr(int N, int d) { return epr_from_table(BranchTable(N, d)); }

mpq_class epr_per_port_minima_sum(int N, int d) {
  const BranchTable table(N, d);
  mpq_class sum = 0;
  for (const auto& node : table.nodes()) {
    const mpq_class gamma_max = table.gamma(node.alpha, table.mu_star(node));
    sum += mpq_class(node.alpha.mult * node.alpha.dim) / gamma_max;
  }
  sum /= power(d, N);
  sum.canonicalize();
  return sum;
}

mpq_class prob_success_optimal(int N, int d) {
  check_args(N, d);
  return ratio(mpz_class(N), mpz_class(N) + mpz_class(d) * d - 1);
}

mpq_class prob_success_optimal_ratio(int N, int d) {
  check_args(N, d);
  mpq_class out = mult_square_sum(N - 1, d, SquareSumMethod::direct) / mult_square_sum(N, d, SquareSumMethod::direct);
  out.canonicalize();
  return out;
}

Partition mu_star(const Partition& alpha, int d) {
  const std::vector<Partition> mus = branch_add(alpha, d);
  if (mus.empty()) throw std::invalid_argument("diagram has no admissible extension");
  const IrrepData* best = nullptr;
  std::vector<IrrepData> data;
  data.reserve(mus.size());
  for (const Partition& mu : mus) data.push_back(irrep_data(mu, d));
  best = &data.front();
  for (const IrrepData& mu : data)
    if (mu.mult * best->dim > best->mult * mu.dim) best = &mu;
  return best->partition;
}

OptimalSolution optimal_solution(int N, int d, ResourceVariant variant) {
  const BranchTable table(N, d);
  OptimalSolution out;
  out.variant = variant;
  out.N = N;
  out.d = d;
  out.g_N = 1 / mult_square_sum(N, d, SquareSumMethod::direct);
  out.g_N.canonicalize();
  const mpz_class dN = power(d, N);
  const mpz_class dN1 = dN * d;

  if (variant == ResourceVariant::epr_resource) {
    mpq_class primal = 0;
    mpq_class dual = 0;
    for (const auto& node : table.nodes()) {
      const IrrepData& best = table.mu_star(node);
      // x_alpha = d min_mu 1/gamma_mu(alpha)
      mpq_class x_alpha = mpq_class(d) / table.gamma(node.alpha, best);
      x_alpha.canonicalize();
      // x_{mu*}(alpha) = d m_alpha / m_{mu*}
      const mpq_class x_dual = ratio(mpz_class(d) * node.alpha.mult, best.mult);
      primal += x_alpha * mpq_class(node.alpha.dim * node.alpha.mult);
      dual += x_dual * mpq_class(best.dim * node.alpha.mult);
      out.povm_coeffs.emplace(node.alpha.partition, x_alpha);
      out.dual_coeffs.push_back({BranchPair{node.alpha.partition, best.partition}, x_dual});
    }
    out.primal_value = primal * N / dN1;
    out.dual_value = dual / dN1;
  } else {
    // c_mu over every mu ⊢ N with height <= d
    for (const Partition& mu : enumerate_partitions(N, d)) {
      const IrrepData data = irrep_data(mu, d);
      mpq_class c = mpq_class(dN * data.mult) * out.g_N / data.dim;
      c.canonicalize();
      out.state_coeffs.emplace(mu, c);
    }
    const mpq_class denom = mpq_class(mpz_class(N) + mpz_class(d) * d - 1);
    mpq_class primal = 0;
    for (const auto& node : table.nodes()) {
      // u(alpha) = d^{N+1} g m_alpha / (N d_alpha)
      mpq_class u = mpq_class(dN1 * node.alpha.mult) * out.g_N / mpq_class(mpz_class(N) * node.alpha.dim);
      u.canonicalize();
      primal += u * mpq_class(node.alpha.dim * node.alpha.mult);
      out.povm_coeffs.emplace(node.alpha.partition, u);
      for (const IrrepData* mu : node.mus) {
        mpq_class x = mpq_class(d) * table.gamma(node.alpha, *mu) / denom;
        x.canonicalize();
        out.dual_coeffs.push_back({BranchPair{node.alpha.partition, mu->partition}, x});
      }
    }
    out.dual_b = mpq_class(N) / (mpq_class(dN) * denom);
    out.dual_b.canonicalize();
    out.primal_value = primal * N / dN1;
    out.dual_value = out.dual_b * dN;
  }
  out.primal_value.canonicalize();
  out.dual_value.canonicalize();
  return out;
}

PerformanceReport performance(int N, int d, int precision_bits) {
  PerformanceReport out{N, d, fidelity_deterministic(N, d, precision_bits), HighPrecision(precision_bits),
                        prob_success_epr(N, d), prob_success_optimal(N, d), precision_bits};
  out.f = average_fidelity(out.F, d);
  return out;
}

}  // namespace pbt

#include "pbt/oracle.hpp"

#include "pbt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

namespace pbt::oracle {

namespace {

constexpr double elementwise_tol = 1e-10;
constexpr double eigen_rel_tol = 1e-8;
constexpr double fidelity_tol = 1e-9;

double exact_gap(const mpq_class& a, const mpq_class& b) { return a == b ? 0.0 : 1.0; }

double rel_gap(double value, double expected) {
  return std::abs(value - expected) / std::max(std::abs(expected), 1e-300);
}

double psd_violation(const Matrix& m) { return std::max(0.0, -min_eigenvalue(m)); }

// tr_{a,n}[(P+_{a,n}/d) Omega] for a = 1..n-1, as an operator on the other n-2 systems.
Matrix reduced_on_pair(const OracleContext& ctx, const Matrix& omega, int a) {
  const Matrix moved = a == ctx.n() - 1 ? omega : conjugate(omega, ctx.swap_map(a, ctx.n() - 1));
  const Matrix applied = apply_max_entangled_last_pair(moved, ctx.d()) / ctx.d();
  return partial_trace(DenseOperator{ctx.n(), ctx.d(), applied}, {ctx.n() - 1, ctx.n()}).m;
}

// sum_a P+_{a,n}/d ⊗ Theta_{abar} for Theta on the first n-2 systems
Matrix port_sum(const OracleContext& ctx, const Matrix& theta) {
  Matrix pplus = max_entangled(ctx.d()).m / ctx.d();
  Matrix seed(ctx.side(), ctx.side());
  const long inner = pplus.rows();
  for (long i = 0; i < theta.rows(); ++i)
    for (long j = 0; j < theta.cols(); ++j) seed.block(i * inner, j * inner, inner, inner) = theta(i, j) * pplus;
  Matrix out = Matrix::Zero(ctx.side(), ctx.side());
  for (int a = 1; a <= ctx.n() - 1; ++a) out += a == ctx.n() - 1 ? seed : conjugate(seed, ctx.swap_map(a, ctx.n() - 1));
  return out;
}

const Block& find_block(const OracleContext& ctx, const BranchPair& pair) {
  for (const Block& b : ctx.blocks())
    if (b.alpha.partition == pair.alpha && b.mu.partition == pair.mu) return b;
  throw std::out_of_range("no block for " + pair.alpha.to_string() + pair.mu.to_string());
}

std::string pair_label(const Block& b) { return b.alpha.partition.to_string() + b.mu.partition.to_string(); }

}  // namespace

OracleReport verify_spectrum(const OracleContext& ctx) { return verify_spectrum(ctx, spectrum(ctx.N(), ctx.d())); }

OracleReport verify_spectrum(const OracleContext& ctx, const SpectrumTable& table) {
  OracleReport report{"spectrum n=" + std::to_string(ctx.n()) + " d=" + std::to_string(ctx.d()), {}};
  const Eigen::VectorXd& ev = ctx.eta_eigenvalues();
  const double top = ev.maxCoeff();
  report.add("eta positive semidefinite", std::max(0.0, -ev.minCoeff()) / top, elementwise_tol);

  std::vector<double> numeric;
  for (long i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > 1e-10 * top) numeric.push_back(ev(i));
  std::sort(numeric.begin(), numeric.end(), std::greater<>());
  std::vector<std::pair<double, long>> groups;
  for (double v : numeric) {
    if (!groups.empty() && std::abs(v - groups.back().first) <= eigen_rel_tol * groups.back().first)
      ++groups.back().second;
    else
      groups.emplace_back(v, 1);
  }

  // coinciding gamma from different pairs share one eigenspace
  std::map<mpq_class, mpz_class, std::greater<>> expected;
  for (const SpectrumEntry& e : table.entries) expected[e.gamma] += e.degeneracy;

  report.add("distinct eigenvalue count", std::abs(static_cast<double>(groups.size()) - static_cast<double>(expected.size())),
             0.0);
  std::size_t k = 0;
  for (const auto& [gamma, deg] : expected) {
    const std::string tag = "gamma=" + gamma.get_str();
    if (k >= groups.size()) {
      report.add(tag + " missing", 1.0, 0.0);
      continue;
    }
    report.add(tag + " value", rel_gap(groups[k].first, gamma.get_d()), eigen_rel_tol);
    report.add(tag + " degeneracy", std::abs(static_cast<double>(groups[k].second) - deg.get_d()), 0.0);
    ++k;
  }
  return report;
}

OracleReport verify_projectors(const OracleContext& ctx) {
  OracleReport report{"projectors n=" + std::to_string(ctx.n()) + " d=" + std::to_string(ctx.d()), {}};

  auto family = [&](const std::vector<IrrepData>& labels, auto getter, const std::string& name) {
    if (labels.empty()) return;
    const Matrix& first = getter(0);
    Matrix total = Matrix::Zero(first.rows(), first.cols());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const Matrix& P = getter(i);
      const std::string tag = name + " " + labels[i].partition.to_string();
      report.add(tag + " idempotent", max_abs_diff(P * P, P), elementwise_tol);
      report.add(tag + " symmetric", max_abs_diff(P, P.transpose()), elementwise_tol);
      report.add(tag + " trace", rel_gap(P.trace(), mpz_class(labels[i].dim * labels[i].mult).get_d()), elementwise_tol);
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        report.add(tag + " orthogonal to " + labels[j].partition.to_string(), max_abs_diff(P * getter(j), Matrix::Zero(P.rows(), P.cols())),
                   elementwise_tol);
      total += P;
    }
    report.add(name + " completeness", max_abs_diff(total, Matrix::Identity(total.rows(), total.cols())), elementwise_tol);
  };
  family(ctx.mus(), [&](std::size_t i) -> const Matrix& { return ctx.P_mu_small(i); }, "P_mu");
  family(ctx.alphas(), [&](std::size_t i) -> const Matrix& { return ctx.P_alpha_small(i); }, "P_alpha");

  Matrix rebuilt = Matrix::Zero(ctx.side(), ctx.side());
  const auto& blocks = ctx.blocks();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    const std::string tag = "F" + pair_label(b);
    report.add(tag + " idempotent", max_abs_diff(b.F * b.F, b.F), elementwise_tol);
    report.add(tag + " symmetric", max_abs_diff(b.F, b.F.transpose()), elementwise_tol);
    // trace of a projector is its rank, d_mu m_alpha; compared relative to the rank
    report.add(tag + " rank", rel_gap(b.F.trace(), mpz_class(b.mu.dim * b.alpha.mult).get_d()), elementwise_tol);
    report.add(tag + " gamma", rel_gap(b.gamma, b.gamma_exact.get_d()), elementwise_tol);
    const Matrix& P = ctx.P_mu(ctx.mu_index(b.mu.partition));
    report.add(tag + " inside P_mu", max_abs_diff(P * b.F, b.F), elementwise_tol);
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      report.add(tag + " orthogonal to F" + pair_label(blocks[j]),
                 max_abs_diff(b.F * blocks[j].F, Matrix::Zero(ctx.side(), ctx.side())), elementwise_tol);
    }
    rebuilt += b.gamma_exact.get_d() * b.F;
  }
  report.add("sum gamma F = eta", max_abs_diff(rebuilt, ctx.eta().m), elementwise_tol);
  return report;
}

OracleReport verify_partial_trace_facts(const OracleContext& ctx) {
  OracleReport report{"partial trace facts n=" + std::to_string(ctx.n()) + " d=" + std::to_string(ctx.d()), {}};
  const int n = ctx.n();
  const int d = ctx.d();

  for (const Block& b : ctx.blocks()) {
    const std::string tag = pair_label(b);
    // tr_{n-1,n}[V^t(n-1,n) F] = (m_mu/m_alpha) P_alpha
    const Matrix lhs5 =
        partial_trace(DenseOperator{n, d, apply_max_entangled_last_pair(b.F, d)}, {n - 1, n}).m;
    const Matrix& Pa = ctx.P_alpha_small(ctx.alpha_index(b.alpha.partition));
    report.add("trace over last pair " + tag, max_abs_diff(lhs5, (mpq_class(b.mu.mult, b.alpha.mult)).get_d() * Pa),
               elementwise_tol);
    // tr_n F = (m_alpha/m_mu) P_mu
    const Matrix lhs10 = partial_trace(DenseOperator{n, d, b.F}, {n}).m;
    const Matrix& Pm = ctx.P_mu_small(ctx.mu_index(b.mu.partition));
    report.add("trace over last system " + tag, max_abs_diff(lhs10, mpq_class(b.alpha.mult, b.mu.mult).get_d() * Pm),
               elementwise_tol);
  }

  // M_alpha V^t(n-1,n) = P_alpha V^t(n-1,n)
  for (std::size_t ai = 0; ai < ctx.alphas().size(); ++ai) {
    Matrix M = Matrix::Zero(ctx.side(), ctx.side());
    for (const Block& b : ctx.blocks())
      if (b.alpha.partition == ctx.alphas()[ai].partition) M += b.F;
    const Matrix lhs = apply_max_entangled_last_pair(M.transpose(), d).transpose();
    const Matrix rhs = apply_max_entangled_last_pair(ctx.P_alpha(ai).transpose(), d).transpose();
    report.add("M_alpha V^t " + ctx.alphas()[ai].partition.to_string(), max_abs_diff(lhs, rhs), elementwise_tol);
  }

  // sum_k V(k,n-1) P_mu V(k,n-1) = (n-1) P_mu on n-1 systems
  if (n - 1 >= 1) {
    for (std::size_t mi = 0; mi < ctx.mus().size(); ++mi) {
      const Matrix& P = ctx.P_mu_small(mi);
      Matrix sum = Matrix::Zero(P.rows(), P.cols());
      for (int k = 1; k <= n - 1; ++k) sum += conjugate(P, perm_index_map(transposition(n - 1, k, n - 1), d));
      report.add("central sum " + ctx.mus()[mi].partition.to_string(), max_abs_diff(sum, (n - 1) * P), elementwise_tol);
    }
  }

  // (1 ⊗ P+) V(k, n-1) (1 ⊗ P+) = (1 ⊗ P+) or d (1 ⊗ P+)
  {
    const Matrix Q = apply_max_entangled_last_pair(Matrix::Identity(ctx.side(), ctx.side()), d);
    for (int k = 1; k <= n - 1; ++k) {
      Matrix VQ(ctx.side(), ctx.side());
      const std::vector<long>& map = ctx.swap_map(k, n - 1);
      for (long r = 0; r < ctx.side(); ++r) VQ.row(map[static_cast<std::size_t>(r)]) = Q.row(r);
      const Matrix sandwich = apply_max_entangled_last_pair(VQ, d);
      const Matrix expected = (k == n - 1 ? static_cast<double>(d) : 1.0) * Q;
      report.add("entangled sandwich k=" + std::to_string(k), max_abs_diff(sandwich, expected), elementwise_tol);
    }
  }

  // tr_n V^{t_n}(sigma) = tr_n V(sigma), equal to d V(sigma|) or V(bypass)
  {
    std::vector<Permutation> sample;
    if (n <= 5) {
      sample = all_permutations(n);
    } else {
      std::mt19937_64 rng(ctx.options().seed);
      sample.push_back(identity_permutation(n));
      for (int a = 1; a < n; ++a) sample.push_back(transposition(n, a, n));
      for (int t = 0; t < 24; ++t) {
        Permutation p = identity_permutation(n);
        std::shuffle(p.begin(), p.end(), rng);
        sample.push_back(p);
      }
    }
    double transpose_dev = 0.0;
    double closure_dev = 0.0;
    for (const Permutation& sigma : sample) {
      const DenseOperator V = perm_operator(sigma, d, ctx.options().max_dim);
      const Matrix lhs = partial_trace(partial_transpose_last(V), {n}).m;
      const Matrix plain = partial_trace(V, {n}).m;
      transpose_dev = std::max(transpose_dev, max_abs_diff(lhs, plain));
      const int last = n - 1;
      Permutation reduced(static_cast<std::size_t>(n - 1));
      double factor = 1.0;
      if (sigma[static_cast<std::size_t>(last)] == last) {
        for (int k = 0; k < n - 1; ++k) reduced[static_cast<std::size_t>(k)] = sigma[static_cast<std::size_t>(k)];
        factor = d;
      } else {
        for (int k = 0; k < n - 1; ++k) {
          const int img = sigma[static_cast<std::size_t>(k)];
          reduced[static_cast<std::size_t>(k)] = img == last ? sigma[static_cast<std::size_t>(last)] : img;
        }
      }
      const Matrix expected = factor * perm_operator(reduced, d, ctx.options().max_dim).m;
      closure_dev = std::max(closure_dev, max_abs_diff(lhs, expected));
    }
    report.add("partial trace of transposed permutations", transpose_dev, elementwise_tol);
    report.add("partial trace closure", closure_dev, elementwise_tol);
  }
  return report;
}

OracleReport verify_fidelity(const OracleContext& ctx) {
  OracleReport report{"fidelity n=" + std::to_string(ctx.n()) + " d=" + std::to_string(ctx.d()), {}};
  const double closed = fidelity_deterministic(ctx.N(), ctx.d(), 128).to_double();
  const double direct = fidelity_direct(ctx);
  report.add("direct vs closed form", std::abs(direct - closed), fidelity_tol);
  for (double cutoff : {1e-8, 1e-12}) {
    char label[64];
    std::snprintf(label, sizeof label, "cutoff %.0e vs 1e-10", cutoff);
    report.add(label, std::abs(fidelity_direct(ctx, cutoff) - direct), fidelity_tol);
  }
  return report;
}

OracleReport verify_channel(const OracleContext& ctx) {
  OracleReport report{"channel n=" + std::to_string(ctx.n()) + " d=" + std::to_string(ctx.d()), {}};
  const double closed = fidelity_deterministic(ctx.N(), ctx.d(), 128).to_double();
  try {
    const ChannelResult channel = simulate_deterministic_channel(ctx);
    report.add("channel vs closed form", std::abs(channel.fidelity - closed), fidelity_tol);
    report.add("channel vs direct", std::abs(channel.fidelity - fidelity_direct(ctx)), fidelity_tol);
    report.add("povm completeness", channel.completeness_residual, elementwise_tol);
    report.add("povm positivity", std::max(0.0, -channel.min_povm_eigenvalue), elementwise_tol);
    report.add("trace preservation", channel.trace_residual, elementwise_tol);
  } catch (const VerificationError& e) {
    report.add(std::string("channel construction: ") + e.what(), 1.0, 0.0);
  }
  return report;
}

OracleReport verify_zeta(const OracleContext& ctx) {
  OracleReport report{"zeta n=" + std::to_string(ctx.n()) + " d=" + std::to_string(ctx.d()), {}};
  const auto& blocks = ctx.blocks();
  const int n = ctx.n();
  std::vector<Matrix> G;
  for (const Block& b : blocks) G.push_back(apply_max_entangled_last_pair(b.F, ctx.d()));
  double reassembled = 0.0;
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (std::size_t l = 0; l < blocks.size(); ++l) {
      const Block& x = blocks[k];
      const Block& y = blocks[l];
      const double zeta = G[k].cwiseProduct(G[l].transpose()).sum();
      const std::string tag = pair_label(x) + " " + pair_label(y);
      if (x.alpha.partition == y.alpha.partition) {
        mpq_class expected = mpq_class(x.mu.dim * y.mu.dim * x.alpha.mult) * x.gamma_exact * y.gamma_exact /
                             mpq_class(mpz_class((n - 1) * (n - 1)) * x.alpha.dim);
        report.add(tag, rel_gap(zeta, expected.get_d()), eigen_rel_tol);
      } else {
        report.add(tag + " cross", std::abs(zeta), elementwise_tol);
      }
      reassembled += zeta / std::sqrt(x.gamma_exact.get_d() * y.gamma_exact.get_d());
    }
  reassembled *= ctx.N() / std::pow(static_cast<double>(ctx.d()), ctx.N() + 2);
  report.add("reassembled fidelity", std::abs(reassembled - fidelity_direct(ctx)), fidelity_tol);
  return report;
}

OracleReport verify_sdp_epr(const OracleContext& ctx) {
  OracleReport report{"sdp epr n=" + std::to_string(ctx.n()) + " d=" + std::to_string(ctx.d()), {}};
  const int N = ctx.N();
  const int d = ctx.d();
  const OptimalSolution sol = optimal_solution(N, d, ResourceVariant::epr_resource);
  const mpq_class p = prob_success_epr(N, d);
  const double scale = std::pow(static_cast<double>(d), N + 1);

  Matrix theta = Matrix::Zero(ctx.P_alpha_small(0).rows(), ctx.P_alpha_small(0).cols());
  for (const auto& [alpha, x] : sol.povm_coeffs) theta += x.get_d() * ctx.P_alpha_small(ctx.alpha_index(alpha));
  report.add("Theta positive", psd_violation(theta), elementwise_tol);
  const double top = max_eigenvalue(port_sum(ctx, theta));
  report.add("port sum below identity", std::max(0.0, top - 1.0), elementwise_tol);
  report.add("port sum saturated", std::abs(top - 1.0), elementwise_tol);
  report.add("primal value", std::abs(N * theta.trace() / scale - p.get_d()), elementwise_tol);
  report.add("exact primal value", exact_gap(sol.primal_value, p), 0.0);

  Matrix omega = Matrix::Zero(ctx.side(), ctx.side());
  for (const PairCoefficient& c : sol.dual_coeffs) omega += c.value.get_d() * find_block(ctx, c.pair).F;
  report.add("Omega positive", psd_violation(omega), elementwise_tol);
  for (int a = 1; a <= ctx.n() - 1; ++a)
    report.add("dual constraint a=" + std::to_string(a),
               std::max(0.0, 1.0 - min_eigenvalue(reduced_on_pair(ctx, omega, a))), elementwise_tol);
  report.add("dual value", std::abs(omega.trace() / scale - p.get_d()), elementwise_tol);
  report.add("exact dual value", exact_gap(sol.dual_value, p), 0.0);
  return report;
}

OracleReport verify_sdp_optimal(const OracleContext& ctx) {
  OracleReport report{"sdp optimal n=" + std::to_string(ctx.n()) + " d=" + std::to_string(ctx.d()), {}};
  const int N = ctx.N();
  const int d = ctx.d();
  const OptimalSolution sol = optimal_solution(N, d, ResourceVariant::optimized_resource);
  const mpq_class p = prob_success_optimal(N, d);
  const double dN = std::pow(static_cast<double>(d), N);
  const long side = ctx.side();

  Matrix X = Matrix::Zero(ctx.P_mu_small(0).rows(), ctx.P_mu_small(0).cols());
  mpq_class exact_trace = 0;
  for (const auto& [mu, c] : sol.state_coeffs) {
    const std::size_t mi = ctx.mu_index(mu);
    X += c.get_d() * ctx.P_mu_small(mi);
    exact_trace += c * mpq_class(ctx.mus()[mi].dim * ctx.mus()[mi].mult);
  }
  report.add("tr X_A", rel_gap(X.trace(), dN), elementwise_tol);
  report.add("exact tr X_A", exact_gap(exact_trace, mpq_class(mpz_class(static_cast<long>(dN)))), 0.0);
  report.add("X_A positive", psd_violation(X), elementwise_tol);

  Matrix theta = Matrix::Zero(ctx.P_alpha_small(0).rows(), ctx.P_alpha_small(0).cols());
  for (const auto& [alpha, u] : sol.povm_coeffs) theta += u.get_d() * ctx.P_alpha_small(ctx.alpha_index(alpha));
  report.add("Theta positive", psd_violation(theta), elementwise_tol);
  const Matrix Z = embed(DenseOperator{ctx.n() - 1, d, X}, ctx.n()).m - port_sum(ctx, theta);
  report.add("X_A ⊗ 1 - port sum positive", psd_violation(Z), elementwise_tol);
  double consistency = 0.0;
  for (const Block& b : ctx.blocks()) {
    report.add("binding block " + pair_label(b), max_abs_diff(Z * b.F, Matrix::Zero(side, side)), elementwise_tol);
    const mpq_class u = sol.povm_coeffs.at(b.alpha.partition);
    const mpq_class c = sol.state_coeffs.at(b.mu.partition);
    consistency = std::max(consistency, exact_gap(u, mpq_class(d) / b.gamma_exact * c));
  }
  report.add("u(alpha) = (d/gamma) c_mu", consistency, 0.0);
  report.add("primal value", std::abs(N * theta.trace() / (dN * d) - p.get_d()), elementwise_tol);
  report.add("exact primal value", exact_gap(sol.primal_value, p), 0.0);

  Matrix omega = Matrix::Zero(side, side);
  for (const PairCoefficient& c : sol.dual_coeffs) omega += c.value.get_d() * find_block(ctx, c.pair).F;
  const double ratio = static_cast<double>(d) / (N + d * d - 1);
  report.add("Omega proportional to eta", max_abs_diff(omega, ratio * ctx.eta().m), elementwise_tol);
  report.add("Omega positive", psd_violation(omega), elementwise_tol);
  for (int a = 1; a <= ctx.n() - 1; ++a) {
    const Matrix r = reduced_on_pair(ctx, omega, a);
    report.add("dual equality a=" + std::to_string(a), max_abs_diff(r, Matrix::Identity(r.rows(), r.cols())),
               elementwise_tol);
  }
  const Matrix trn = partial_trace(DenseOperator{ctx.n(), d, omega}, {ctx.n()}).m;
  report.add("tr_n Omega", max_abs_diff(trn, ratio * N * Matrix::Identity(trn.rows(), trn.cols())), elementwise_tol);
  const double b = sol.dual_b.get_d();
  const Matrix slack = b * Matrix::Identity(trn.rows(), trn.cols()) - trn / (dN * d);
  report.add("b 1 - tr_n Omega / d^{N+1} positive", psd_violation(slack) / b, elementwise_tol);
  report.add("dual value", std::abs(dN * b - p.get_d()), elementwise_tol);
  report.add("exact dual value", exact_gap(sol.dual_value, p), 0.0);
  return report;
}

}  // namespace pbt::oracle

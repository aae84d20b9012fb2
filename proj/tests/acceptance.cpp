// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// Failure details go to stderr.

#include "pbt/cli.hpp"
#include "pbt/formulas.hpp"
#include "pbt/oracle.hpp"
#include "pbt/partitions.hpp"
#include "pbt/symrep.hpp"

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using pbt::HighPrecision;
using pbt::OracleReport;
using pbt::Partition;
using pbt::SpectrumTable;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

long peak_rss_mb() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss / 1024;  // kilobytes on Linux
}

mpq_class frac(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// Collects failures for one criterion; several sections may feed the same one.
class Criterion {
 public:
  Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      ++failures_;
      if (failures_ <= 20) std::cerr << "  criterion " << number_ << " failed: " << what << "\n";
    }
  }

  void report(const OracleReport& r) {
    const pbt::CheckItem* worst = r.worst();
    std::string what = r.check;
    if (worst) {
      std::ostringstream s;
      s << " [" << worst->label << " deviation=" << worst->deviation << " tolerance=" << worst->tolerance << "]";
      what += s.str();
    }
    expect(r.pass() && !r.items.empty(), what);
  }

  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }

  bool finish() const {
    std::cout << (failures_ == 0 ? "PASS" : "FAIL") << " criterion " << number_ << ": " << title_ << "  (checks=" << checks_
              << " failed=" << failures_;
    if (!notes_.empty()) std::cout << "; " << notes_;
    std::cout << ")" << std::endl;
    return failures_ == 0;
  }

 private:
  int number_;
  std::string title_;
  long checks_ = 0;
  long failures_ = 0;
  std::string notes_;
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pbt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = pbt::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string grid_label(int N, int d) { return "N=" + std::to_string(N) + " d=" + std::to_string(d); }

// Dense grid shared by the oracle-based criteria, as (d, largest n).
const std::vector<std::pair<int, int>> dense_grid = {{2, 10}, {3, 6}, {4, 5}};

using Criteria = std::map<int, Criterion>;

void performance_timing(Criterion& c) {
  const struct {
    int N, d;
    double limit;
  } cases[] = {{1000, 2, 5.0}, {100, 6, 60.0}};
  for (const auto& k : cases) {
    const auto start = Clock::now();
    const CliResult r = cli({"perf", "--n", std::to_string(k.N), "--d", std::to_string(k.d)});
    const double t = seconds_since(start);
    std::ostringstream s;
    s << "perf " << grid_label(k.N, k.d) << " " << std::fixed << std::setprecision(2) << t << "s";
    c.expect(r.code == 0 && t < k.limit, s.str() + " over limit");
    c.note(s.str());
  }
}

// Exact spectrum tables feed both the two-form comparison and the identities.
void exact_grid(Criterion& forms, Criterion& identities) {
  double spectrum_time = 0.0;
  for (int d = 2; d <= 6; ++d) {
    for (int N = 1; N <= 60; ++N) {
      const auto start = Clock::now();
      const SpectrumTable a = pbt::spectrum(N, d);
      const SpectrumTable b = pbt::spectrum_char_form(N, d);
      bool same = a.entries.size() == b.entries.size();
      for (std::size_t i = 0; same && i < a.entries.size(); ++i) {
        const auto& x = a.entries[i];
        const auto& y = b.entries[i];
        same = x.pair == y.pair && x.gamma == y.gamma && x.lambda == y.lambda && x.degeneracy == y.degeneracy;
      }
      spectrum_time += seconds_since(start);
      forms.expect(same, "forms differ at " + grid_label(N, d));

      mpz_class dN;
      mpz_ui_pow_ui(dN.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(N));
      identities.expect(a.weighted_trace() == mpq_class(dN * N), "trace identity at " + grid_label(N, d));
      // (1/m_mu) sum_{alpha in mu} gamma m_alpha = N for every mu
      std::map<Partition, mpq_class, pbt::DescendingLex> per_mu;
      for (const auto& e : a.entries) per_mu[e.pair.mu] += e.gamma * mpq_class(pbt::mult_natural(e.pair.alpha, d));
      for (auto& [mu, sum] : per_mu) {
        mpq_class v = sum / mpq_class(pbt::mult_natural(mu, d));
        v.canonicalize();
        identities.expect(v == N, "box-removal identity at " + grid_label(N, d) + " mu=" + mu.to_string());
      }
    }
  }
  forms.expect(spectrum_time < 30.0, "runtime " + std::to_string(spectrum_time) + "s over 30s");
  forms.note("time " + std::to_string(static_cast<long>(spectrum_time)) + "s");
}

void optimal_closed_form(Criterion& c) {
  for (int d = 2; d <= 6; ++d) {
    std::vector<mpq_class> squares;
    for (int n = 0; n <= 200; ++n) squares.push_back(pbt::mult_square_sum(n, d, pbt::SquareSumMethod::direct));
    for (int N = 1; N <= 200; ++N) {
      mpq_class r = squares[static_cast<std::size_t>(N - 1)] / squares[static_cast<std::size_t>(N)];
      r.canonicalize();
      c.expect(r == pbt::prob_success_optimal(N, d), "ratio at " + grid_label(N, d));
    }
  }
  c.expect(pbt::prob_success_optimal(2, 2) == frac(2, 5), "p_opt(2,2) = 2/5");
  c.expect(pbt::prob_success_optimal(3, 2) == frac(1, 2), "p_opt(3,2) = 1/2");
}

void ordering(Criterion& c) {
  for (int d = 2; d <= 6; ++d)
    for (int N = 1; N <= 60; ++N)
      c.expect(pbt::prob_success_epr(N, d) <= pbt::prob_success_optimal(N, d), "p_epr <= p_opt at " + grid_label(N, d));
  const mpq_class bound = frac(999, 1000);
  for (int N = 3000; N <= 3000000; N = N < 10000 ? N + 1 : N * 2)
    c.expect(pbt::prob_success_optimal(N, 2) > bound, "p_opt > 0.999 at N=" + std::to_string(N));
  for (int d : {2, 3, 4, 10}) {
    HighPrecision previous = pbt::fidelity_deterministic(1, d);
    for (int N = 2; N <= 100; ++N) {
      HighPrecision F = pbt::fidelity_deterministic(N, d);
      c.expect(previous <= F, "F non-decreasing at " + grid_label(N, d));
      previous = std::move(F);
    }
  }
}

void closed_form_memory(Criterion& c) {
  // every closed-form path has run by now, so the peak covers them all
  const long mb = peak_rss_mb();
  c.expect(mb < 2048, "peak rss " + std::to_string(mb) + " MB");
  c.note("peak rss " + std::to_string(mb) + " MB");
}

void dense_grid_checks(Criteria& c) {
  for (const auto& [d, max_n] : dense_grid) {
    for (int n = 3; n <= max_n; ++n) {
      const pbt::oracle::OracleContext ctx(n, d);
      const int N = n - 1;
      c.at(1).report(pbt::oracle::verify_spectrum(ctx));
      c.at(3).report(pbt::oracle::verify_fidelity(ctx));
      c.at(3).report(pbt::oracle::verify_channel(ctx));
      c.at(4).report(pbt::oracle::verify_sdp_epr(ctx));
      c.at(5).report(pbt::oracle::verify_sdp_optimal(ctx));
      c.at(7).report(pbt::oracle::verify_partial_trace_facts(ctx));
      c.at(7).report(pbt::oracle::verify_projectors(ctx));
      c.at(7).report(pbt::oracle::verify_zeta(ctx));

      const auto epr = pbt::optimal_solution(N, d, pbt::ResourceVariant::epr_resource);
      const mpq_class p_epr = pbt::prob_success_epr(N, d);
      c.at(4).expect(epr.primal_value == p_epr && epr.dual_value == p_epr, "certificate values at " + grid_label(N, d));
      const auto opt = pbt::optimal_solution(N, d, pbt::ResourceVariant::optimized_resource);
      const mpq_class p_opt = pbt::prob_success_optimal(N, d);
      c.at(5).expect(opt.primal_value == p_opt && opt.dual_value == p_opt, "certificate values at " + grid_label(N, d));
    }
  }
}

void anchors(Criteria& c) {
  HighPrecision root(3L, 256);
  mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
  root += 2;
  root /= 8L;
  const auto near = [](const HighPrecision& a, const HighPrecision& b) {
    return std::abs((a - b).to_double()) <= 1e-9;
  };
  c.at(3).expect(near(pbt::fidelity_deterministic(2, 2, 256), root), "F(2,2) = (2+sqrt 3)/8");
  c.at(3).expect(near(pbt::fidelity_deterministic(3, 2, 256), HighPrecision(frac(5, 8), 256)), "F(3,2) = 5/8");
  for (int d = 2; d <= 10; ++d)
    c.at(3).expect(near(pbt::fidelity_deterministic(1, d, 256), HighPrecision(frac(1, d * d), 256)),
                   "F(1,d) = 1/d^2 at d=" + std::to_string(d));
  c.at(4).expect(pbt::prob_success_epr(2, 2) == frac(1, 3), "p_epr(2,2) = 1/3");
  c.at(4).expect(pbt::prob_success_epr(3, 2) == frac(13, 32), "p_epr(3,2) = 13/32");
}

void symrep_suite(Criterion& c) {
  // n = 1 has no transpositions (a n), so every report would be empty
  for (int n = 2; n <= 7; ++n) {
    for (const Partition& mu : pbt::enumerate_partitions(n, n)) {
      c.report(pbt::symrep::verify_prir_sum_rule(mu));
      c.report(pbt::symrep::verify_prir_orthogonality(mu));
      // includes the closed-form common trace of each diagonal block
      c.report(pbt::symrep::verify_trace_class_invariance(mu));
    }
  }
}

void determinism(Criterion& c) {
  const std::vector<std::vector<std::string>> commands = {
      {"spectrum", "--n", "6", "--d", "3"},
      {"spectrum", "--n", "5", "--d", "2", "--format", "json", "--digits", "30"},
      {"perf", "--n", "40", "--d", "4", "--digits", "40", "--precision-bits", "200"},
      {"perf", "--n", "20", "--d", "3", "--format", "json"},
      {"sweep", "--d", "2,3,5", "--n-max", "25", "--format", "csv"},
      {"sweep", "--d", "4", "--n-min", "3", "--n-max", "30", "--n-step", "3", "--format", "json", "--digits", "20"},
      {"verify", "--d", "2", "--max-n", "5", "--format", "json"},
      {"verify", "--checks", "prir,operators", "--d", "2", "--max-n", "5"},
  };
  for (const auto& args : commands) {
    std::string joined;
    for (const auto& a : args) joined += " " + a;
    const CliResult first = cli(args);
    const CliResult second = cli(args);
    c.expect(first.code == 0, "exit code " + std::to_string(first.code) + " for" + joined);
    c.expect(first.out == second.out && first.err == second.err && first.code == second.code,
             "output differs for" + joined);
  }
}

}  // namespace

int main() {
  Criteria c;
  c.emplace(1, Criterion(1, "dense eigenvalue multiset matches the spectrum table"));
  c.emplace(2, Criterion(2, "spectrum and character forms agree exactly, d<=6 N<=60"));
  c.emplace(3, Criterion(3, "fidelity: closed form, direct operator and channel within 1e-9, anchors"));
  c.emplace(4, Criterion(4, "probabilistic EPR value equals SDP primal and dual certificates, anchors"));
  c.emplace(5, Criterion(5, "optimal value equals multiplicity ratio (d<=6 N<=200) and SDP certificates, anchors"));
  c.emplace(6, Criterion(6, "p_epr <= p_opt, p_opt(N,2) > 0.999 for N >= 3000, F monotone in N"));
  c.emplace(7, Criterion(7, "representation identities, box-removal and trace identities, partial-trace facts"));
  c.emplace(8, Criterion(8, "perf timing and closed-form memory"));
  c.emplace(9, Criterion(9, "byte-identical output across repeated runs"));

  // closed-form work first so the memory peak reflects only those paths
  performance_timing(c.at(8));
  exact_grid(c.at(2), c.at(7));
  optimal_closed_form(c.at(5));
  ordering(c.at(6));
  closed_form_memory(c.at(8));

  dense_grid_checks(c);
  anchors(c);
  symrep_suite(c.at(7));
  determinism(c.at(9));

  long failed = 0;
  for (const auto& [number, criterion] : c) failed += criterion.finish() ? 0 : 1;
  std::cout << "acceptance: " << c.size() << " criteria, " << failed << " failed" << std::endl;
  return failed == 0 ? 0 : 1;
}

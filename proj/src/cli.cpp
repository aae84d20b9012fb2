#include "pbt/cli.hpp"

#include "pbt/errors.hpp"
#include "pbt/formulas.hpp"
#include "pbt/oracle.hpp"
#include "pbt/symrep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <climits>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pbt::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int default_precision_bits = 128;
constexpr int default_digits = 12;
const std::vector<std::string> quantity_order = {"F", "f", "p_epr", "p_opt"};
const std::vector<std::string> check_order = {"spectrum", "zeta",    "projectors", "facts", "fidelity",
                                              "channel",  "sdp_epr", "sdp_opt",    "prir",  "operators"};
constexpr int prir_cap = 7;

int env_precision() {
  const char* raw = std::getenv("PBT_PRECISION_BITS");
  if (raw == nullptr || *raw == '\0') return default_precision_bits;
  const char* end = raw + std::strlen(raw);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value < 64) throw UsageError("PBT_PRECISION_BITS must be an integer >= 64");
  return value;
}

// Digits that `bits` of working precision can back.
int max_digits(int bits) { return static_cast<int>((bits - 8) * 0.30102999566398120); }

void check_precision(int bits, int digits) {
  if (bits < 64) throw UsageError("--precision-bits must be at least 64");
  if (digits < 1 || digits > max_digits(bits))
    throw UsageError("--digits must lie in [1, " + std::to_string(max_digits(bits)) + "] at " + std::to_string(bits) +
                     " bits");
}

std::string quoted(const Partition& p) { return "\"" + p.to_string() + "\""; }

mpz_class power(int base, int exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exponent));
  return out;
}

// Output target: --out when given, otherwise the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw IoError("cannot open '" + path + "' for writing");
    path_ = path;
  }

  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

  void check() {
    if (!stream()) throw IoError(path_.empty() ? "write to standard output failed" : "write to '" + path_ + "' failed");
  }

  void finish() {
    stream().flush();
    check();
    if (file_.is_open()) {
      file_.close();
      if (file_.fail()) throw IoError("closing '" + path_ + "' failed");
    }
  }

 private:
  std::ostream& fallback_;
  std::ofstream file_;
  std::string path_;
};

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(int N, int d, const std::string& format, int digits, Sink& sink) {
  const SpectrumTable table = spectrum(N, d);
  const mpq_class trace = table.weighted_trace();
  const mpq_class expected(N * power(d, N));
  const bool ok = trace == expected;
  std::ostream& os = sink.stream();
  if (format == "json") {
    json rows = json::array();
    for (const SpectrumEntry& e : table.entries) {
      rows.push_back({{"alpha", e.pair.alpha.to_string()},
                      {"mu", e.pair.mu.to_string()},
                      {"gamma_num", e.gamma.get_num().get_str()},
                      {"gamma_den", e.gamma.get_den().get_str()},
                      {"lambda", to_decimal(e.lambda, digits)},
                      {"degeneracy", e.degeneracy.get_str()}});
    }
    const json doc = {{"N", N},
                      {"d", d},
                      {"rows", rows},
                      {"trace", {{"value", trace.get_str()}, {"expected", expected.get_str()}, {"ok", ok}}}};
    os << doc.dump(2) << '\n';
  } else {
    os << "alpha,mu,gamma_num,gamma_den,lambda,degeneracy\n";
    for (const SpectrumEntry& e : table.entries) {
      os << quoted(e.pair.alpha) << ',' << quoted(e.pair.mu) << ',' << e.gamma.get_num().get_str() << ','
         << e.gamma.get_den().get_str() << ',' << to_decimal(e.lambda, digits) << ',' << e.degeneracy.get_str()
         << '\n';
    }
    os << "# trace " << trace.get_str() << " expected " << expected.get_str() << (ok ? " ok" : " MISMATCH") << '\n';
  }
  sink.finish();
  return ok ? exit_ok : exit_verification;
}

// ---------------------------------------------------------------- perf

int cmd_perf(int N, int d, int bits, int digits, const std::string& format, Sink& sink) {
  const PerformanceReport r = performance(N, d, bits);
  const std::string F = r.F.to_decimal(digits);
  const std::string f = r.f.to_decimal(digits);
  const std::string pe = to_decimal(r.p_epr, digits);
  const std::string po = to_decimal(r.p_opt, digits);
  std::ostream& os = sink.stream();
  if (format == "json") {
    const json doc = {{"N", N},
                      {"d", d},
                      {"precision_bits", bits},
                      {"F", F},
                      {"f", f},
                      {"p_epr", r.p_epr.get_str()},
                      {"p_epr_decimal", pe},
                      {"p_opt", r.p_opt.get_str()},
                      {"p_opt_decimal", po}};
    os << doc.dump(2) << '\n';
  } else if (format == "csv") {
    os << "N,d,precision_bits,F,f,p_epr,p_epr_decimal,p_opt,p_opt_decimal\n";
    os << N << ',' << d << ',' << bits << ',' << F << ',' << f << ',' << r.p_epr.get_str() << ',' << pe << ','
       << r.p_opt.get_str() << ',' << po << '\n';
  } else {
    os << "N = " << N << '\n'
       << "d = " << d << '\n'
       << "precision_bits = " << bits << '\n'
       << "F = " << F << '\n'
       << "f = " << f << '\n'
       << "p_epr = " << r.p_epr.get_str() << " = " << pe << '\n'
       << "p_opt = " << r.p_opt.get_str() << " = " << po << '\n';
  }
  sink.finish();
  return exit_ok;
}

// ---------------------------------------------------------------- sweep

struct SweepPoint {
  int d;
  int N;
};

std::vector<std::string> sweep_values(const SweepPoint& pt, const std::vector<std::string>& quantities, int bits,
                                      int digits) {
  // p_epr walks the full branching table, so only pay for what was asked
  std::optional<HighPrecision> F;
  auto fidelity = [&]() -> const HighPrecision& {
    if (!F) F = fidelity_deterministic(pt.N, pt.d, bits);
    return *F;
  };
  std::vector<std::string> out;
  for (const std::string& q : quantities) {
    if (q == "F") out.push_back(fidelity().to_decimal(digits));
    else if (q == "f") out.push_back(average_fidelity(fidelity(), pt.d).to_decimal(digits));
    else if (q == "p_epr") out.push_back(to_decimal(prob_success_epr(pt.N, pt.d), digits));
    else out.push_back(to_decimal(prob_success_optimal(pt.N, pt.d), digits));
  }
  return out;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs job over items with bounded parallelism; emit sees results in input order.
template <class Item, class Result>
void ordered_parallel(const std::vector<Item>& items, const std::function<Result(const Item&)>& job,
                      const std::function<void(Result&&)>& emit) {
  const std::size_t workers = worker_count();
  std::deque<std::future<Result>> pending;
  std::size_t next = 0;
  while (next < items.size() || !pending.empty()) {
    while (next < items.size() && pending.size() < workers) {
      pending.push_back(std::async(std::launch::async, job, std::cref(items[next])));
      ++next;
    }
    Result r = pending.front().get();
    pending.pop_front();
    emit(std::move(r));
  }
}

int cmd_sweep(const std::vector<int>& ds, int n_min, int n_max, int n_step, std::vector<std::string> quantities,
              int bits, int digits, const std::string& format, Sink& sink) {
  if (n_max < n_min) throw UsageError("--n-max must be at least --n-min");
  for (const std::string& q : quantities)
    if (std::find(quantity_order.begin(), quantity_order.end(), q) == quantity_order.end())
      throw UsageError("unknown quantity '" + q + "'; expected a subset of F,f,p_epr,p_opt");
  std::vector<std::string> ordered;
  for (const std::string& q : quantity_order)
    if (quantities.empty() || std::find(quantities.begin(), quantities.end(), q) != quantities.end())
      ordered.push_back(q);

  std::vector<int> d_sorted = ds;
  std::sort(d_sorted.begin(), d_sorted.end());
  d_sorted.erase(std::unique(d_sorted.begin(), d_sorted.end()), d_sorted.end());
  std::vector<SweepPoint> points;
  for (int d : d_sorted)
    for (long N = n_min; N <= n_max; N += n_step) points.push_back({d, static_cast<int>(N)});

  std::ostream& os = sink.stream();
  const bool as_json = format == "json";
  json records = json::array();
  if (!as_json) {
    os << "d,N";
    for (const std::string& q : ordered) os << ',' << q;
    os << '\n';
  }
  const std::function<std::vector<std::string>(const SweepPoint&)> job = [&](const SweepPoint& pt) {
    return sweep_values(pt, ordered, bits, digits);
  };
  std::size_t index = 0;
  const std::function<void(std::vector<std::string>&&)> emit = [&](std::vector<std::string>&& values) {
    const SweepPoint& pt = points[index++];
    if (as_json) {
      json rec = {{"d", pt.d}, {"N", pt.N}};
      // numbers when a double carries every printed digit, strings beyond that
      for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (digits <= 15) rec[ordered[i]] = std::stod(values[i]);
        else rec[ordered[i]] = values[i];
      }
      records.push_back(std::move(rec));
      return;
    }
    os << pt.d << ',' << pt.N;
    for (const std::string& v : values) os << ',' << v;
    os << '\n';
    sink.check();
  };
  ordered_parallel(points, job, emit);
  if (as_json) os << records.dump(2) << '\n';
  sink.finish();
  return exit_ok;
}

// ---------------------------------------------------------------- verify

struct VerifySpec {
  std::map<int, int> max_n;  // d -> largest n
  std::vector<std::string> checks;
  std::uint64_t seed = 0;
  long max_dim = oracle::default_max_dim;
  double perturb_gamma = 0.0;
  int prir_max_n = prir_cap;
};

int default_max_n(int d) {
  if (d == 2) return 10;
  if (d == 3) return 6;
  if (d == 4) return 5;
  int n = 3;
  while (oracle::guarded_dimension(n, d, LONG_MAX) * d <= 1024) ++n;
  return n;
}

bool selected(const VerifySpec& spec, const std::string& check) {
  return std::find(spec.checks.begin(), spec.checks.end(), check) != spec.checks.end();
}

OracleReport failed_report(const std::string& name, const std::string& what) {
  OracleReport r{name, {}};
  r.add("exception: " + what, 1.0, 0.0);
  return r;
}

// Runs one check; anything but a guard violation becomes a failing report.
OracleReport guarded(const std::string& name, const std::function<OracleReport()>& fn) {
  try {
    return fn();
  } catch (const GuardError&) {
    throw;
  } catch (const std::exception& e) {
    return failed_report(name, e.what());
  }
}

SpectrumTable perturbed_table(int N, int d, double eps) {
  SpectrumTable table = spectrum(N, d);
  if (eps != 0.0 && !table.entries.empty()) {
    mpq_class factor(1 + eps);
    table.entries.front().gamma *= factor;
    table.entries.front().gamma.canonicalize();
  }
  return table;
}

std::vector<OracleReport> verify_point(const VerifySpec& spec, int n, int d) {
  const std::string where = " n=" + std::to_string(n) + " d=" + std::to_string(d);
  oracle::OracleOptions options;
  options.max_dim = spec.max_dim;
  options.seed = spec.seed;
  std::optional<oracle::OracleContext> ctx;
  try {
    ctx.emplace(n, d, options);
  } catch (const GuardError&) {
    throw;
  } catch (const std::exception& e) {
    return {failed_report("oracle context" + where, e.what())};
  }
  std::vector<OracleReport> out;
  using Fn = OracleReport (*)(const oracle::OracleContext&);
  const std::vector<std::pair<std::string, Fn>> table = {
      {"zeta", oracle::verify_zeta},           {"projectors", oracle::verify_projectors},
      {"facts", oracle::verify_partial_trace_facts}, {"fidelity", oracle::verify_fidelity},
      {"channel", oracle::verify_channel},     {"sdp_epr", oracle::verify_sdp_epr},
      {"sdp_opt", oracle::verify_sdp_optimal}};
  if (selected(spec, "spectrum")) {
    out.push_back(guarded("spectrum" + where, [&] {
      return oracle::verify_spectrum(*ctx, perturbed_table(n - 1, d, spec.perturb_gamma));
    }));
  }
  for (const auto& [name, fn] : table)
    if (selected(spec, name)) out.push_back(guarded(name + where, [&, f = fn] { return f(*ctx); }));
  return out;
}

std::vector<OracleReport> verify_prir(const VerifySpec& spec) {
  std::vector<OracleReport> out;
  for (int k = 1; k <= spec.prir_max_n; ++k) {
    for (const Partition& mu : enumerate_partitions(k, k)) {
      out.push_back(guarded("generator relations " + mu.to_string(),
                            [&] { return symrep::verify_generator_relations(mu, spec.seed); }));
      out.push_back(guarded("prir sum rule " + mu.to_string(), [&] { return symrep::verify_prir_sum_rule(mu); }));
      out.push_back(
          guarded("prir orthogonality " + mu.to_string(), [&] { return symrep::verify_prir_orthogonality(mu); }));
      out.push_back(guarded("trace class invariance " + mu.to_string(),
                            [&] { return symrep::verify_trace_class_invariance(mu); }));
    }
  }
  return out;
}

// The E and F operator families are quartic in the irrep dimension, so they
// run on a smaller slice of the grid.
constexpr long operator_side_cap = 256;

std::vector<OracleReport> verify_operators(const VerifySpec& spec, int d, int max_n) {
  std::vector<OracleReport> out;
  for (int k = 2; k <= std::min(max_n - 1, 5); ++k) {
    if (oracle::guarded_dimension(k, d, LONG_MAX) > operator_side_cap) break;
    out.push_back(guarded("operator E k=" + std::to_string(k) + " d=" + std::to_string(d),
                          [&] { return symrep::verify_operator_E(k, d, spec.max_dim); }));
  }
  for (int n = 3; n <= std::min(max_n, 6); ++n) {
    if (oracle::guarded_dimension(n - 1, d, LONG_MAX) > operator_side_cap) break;
    out.push_back(guarded("operator F n=" + std::to_string(n) + " d=" + std::to_string(d),
                          [&] { return symrep::verify_operator_F(n, d, spec.max_dim); }));
  }
  return out;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

int cmd_verify(const VerifySpec& spec, const std::string& format, Sink& sink, std::ostream& err) {
  const bool point_checks = std::any_of(spec.checks.begin(), spec.checks.end(), [](const std::string& c) {
    return c != "prir" && c != "operators";
  });
  // guard violations are usage errors, so surface them before any work
  if (point_checks)
    for (const auto& [d, max_n] : spec.max_n)
      for (int n = 3; n <= max_n; ++n) oracle::guarded_dimension(n, d, spec.max_dim);

  std::vector<std::function<std::vector<OracleReport>()>> jobs;
  if (point_checks)
    for (const auto& [d, max_n] : spec.max_n)
      for (int n = 3; n <= max_n; ++n) jobs.push_back([&spec, n, d = d] { return verify_point(spec, n, d); });
  if (selected(spec, "prir")) jobs.push_back([&spec] { return verify_prir(spec); });
  if (selected(spec, "operators"))
    for (const auto& [d, max_n] : spec.max_n)
      jobs.push_back([&spec, d = d, m = max_n] { return verify_operators(spec, d, m); });

  std::vector<OracleReport> reports;
  using Job = std::function<std::vector<OracleReport>()>;
  const std::function<std::vector<OracleReport>(const Job&)> run = [](const Job& job) { return job(); };
  const std::function<void(std::vector<OracleReport>&&)> collect = [&](std::vector<OracleReport>&& batch) {
    for (OracleReport& r : batch) reports.push_back(std::move(r));
  };
  ordered_parallel(jobs, run, collect);

  std::size_t failed = 0;
  for (const OracleReport& r : reports) failed += r.pass() ? 0 : 1;
  std::ostream& os = sink.stream();
  if (format == "json") {
    json list = json::array();
    for (const OracleReport& r : reports) {
      json items = json::array();
      for (const CheckItem& item : r.items)
        items.push_back({{"label", item.label},
                         {"deviation", item.deviation},
                         {"tolerance", item.tolerance},
                         {"pass", item.pass()}});
      list.push_back({{"check", r.check}, {"pass", r.pass()}, {"max_deviation", r.max_deviation()}, {"items", items}});
    }
    const json doc = {{"pass", failed == 0},
                      {"checks", reports.size()},
                      {"failed", failed},
                      {"seed", spec.seed},
                      {"reports", list}};
    os << doc.dump(2) << '\n';
  } else {
    for (const OracleReport& r : reports) {
      os << (r.pass() ? "PASS " : "FAIL ") << r.check << "  items=" << r.items.size()
         << "  max_deviation=" << sci(r.max_deviation()) << '\n';
      for (const CheckItem& item : r.items)
        if (!item.pass())
          os << "  failed: " << item.label << "  deviation=" << sci(item.deviation)
             << "  tolerance=" << sci(item.tolerance) << '\n';
    }
    os << "summary: " << reports.size() << " checks, " << failed << " failed\n";
  }
  sink.finish();
  if (failed > 0) {
    for (const OracleReport& r : reports)
      if (!r.pass()) err << "verification failed: " << r.check << '\n';
    return exit_verification;
  }
  return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  int bits = default_precision_bits;
  try {
    bits = env_precision();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  CLI::App app{"Exact port-based teleportation performance and its brute-force verification", "pbt"};
  app.require_subcommand(1);

  int N = 0;
  int d = 0;
  int digits = default_digits;
  std::string format;
  std::string out_path;

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Eigenvalues of the PBT operator with degeneracies");
  spectrum_cmd->add_option("--n", N, "Number of ports N")->required()->check(CLI::Range(1, INT_MAX));
  spectrum_cmd->add_option("--d", d, "Local dimension")->required()->check(CLI::Range(2, INT_MAX));
  spectrum_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  spectrum_cmd->add_option("--digits", digits, "Significant digits of lambda")->check(CLI::Range(1, 1000));
  spectrum_cmd->add_option("--out", out_path, "Write to this file instead of stdout");

  auto* perf_cmd = app.add_subcommand("perf", "F, f, p_epr and p_opt at one point");
  perf_cmd->add_option("--n", N, "Number of ports N")->required()->check(CLI::Range(1, INT_MAX));
  perf_cmd->add_option("--d", d, "Local dimension")->required()->check(CLI::Range(2, INT_MAX));
  perf_cmd->add_option("--precision-bits", bits, "MPFR working precision (default $PBT_PRECISION_BITS or 128)");
  perf_cmd->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  perf_cmd->add_option("--digits", digits, "Significant digits of decimals");
  perf_cmd->add_option("--out", out_path, "Write to this file instead of stdout");

  std::vector<int> sweep_ds;
  int n_min = 1;
  int n_max = 1;
  int n_step = 1;
  std::vector<std::string> quantities;
  auto* sweep_cmd = app.add_subcommand("sweep", "Figure-ready table over d and N");
  sweep_cmd->add_option("--d", sweep_ds, "Local dimensions, comma separated")
      ->required()
      ->delimiter(',')
      ->check(CLI::Range(2, INT_MAX));
  sweep_cmd->add_option("--n-min", n_min, "Smallest N")->check(CLI::Range(1, INT_MAX));
  sweep_cmd->add_option("--n-max", n_max, "Largest N")->required()->check(CLI::Range(1, INT_MAX));
  sweep_cmd->add_option("--n-step", n_step, "Step in N")->check(CLI::Range(1, INT_MAX));
  sweep_cmd->add_option("--quantities", quantities, "Subset of F,f,p_epr,p_opt (default all)")->delimiter(',');
  sweep_cmd->add_option("--precision-bits", bits, "MPFR working precision (default $PBT_PRECISION_BITS or 128)");
  sweep_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--digits", digits, "Significant digits of decimals");
  sweep_cmd->add_option("--out", out_path, "Write to this file instead of stdout");

  std::vector<int> verify_ds;
  std::optional<int> verify_max_n;
  std::vector<std::string> checks;
  VerifySpec spec;
  auto* verify_cmd = app.add_subcommand("verify", "Compare closed forms against dense brute-force operators");
  verify_cmd->add_option("--checks", checks, "Subset of " + [] {
    std::string s;
    for (const std::string& c : check_order) s += (s.empty() ? "" : ",") + c;
    return s;
  }())->delimiter(',')->check(CLI::IsMember(check_order));
  verify_cmd->add_option("--d", verify_ds, "Local dimensions, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(2, INT_MAX));
  verify_cmd->add_option("--max-n", verify_max_n, "Largest number of systems n = N+1")->check(CLI::Range(2, INT_MAX));
  verify_cmd->add_option("--seed", spec.seed, "Seed of randomized spot checks");
  verify_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--max-dim-guard", spec.max_dim, "Largest dense side d^n allowed")
      ->check(CLI::Range(1L, LONG_MAX));
  verify_cmd->add_option("--perturb-gamma", spec.perturb_gamma,
                         "Scale the first tabulated eigenvalue by 1+x before the spectrum check (harness self-test)");
  verify_cmd->add_option("--out", out_path, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*spectrum_cmd) {
      if (format.empty()) format = "csv";
      Sink sink(out_path, out);
      return cmd_spectrum(N, d, format, digits, sink);
    }
    if (*perf_cmd) {
      if (format.empty()) format = "text";
      check_precision(bits, digits);
      Sink sink(out_path, out);
      return cmd_perf(N, d, bits, digits, format, sink);
    }
    if (*sweep_cmd) {
      if (format.empty()) format = "csv";
      check_precision(bits, digits);
      Sink sink(out_path, out);
      return cmd_sweep(sweep_ds, n_min, n_max, n_step, quantities, bits, digits, format, sink);
    }
    if (*verify_cmd) {
      if (format.empty()) format = "text";
      if (!std::isfinite(spec.perturb_gamma) || spec.perturb_gamma <= -1.0)
        throw UsageError("--perturb-gamma must be finite and greater than -1");
      for (const std::string& c : check_order)
        if (checks.empty() || std::find(checks.begin(), checks.end(), c) != checks.end()) spec.checks.push_back(c);
      if (verify_ds.empty())
        spec.max_n = {{2, 10}, {3, 6}, {4, 5}};
      else
        for (int dv : verify_ds) spec.max_n[dv] = default_max_n(dv);
      if (verify_max_n)
        for (auto& [dv, m] : spec.max_n) m = *verify_max_n;
      if (verify_max_n && selected(spec, "prir")) {
        spec.prir_max_n = std::min(*verify_max_n, prir_cap);
        if (*verify_max_n > prir_cap)
          err << "note: prir checks stop at n=" << prir_cap << " (dense S(n) sums beyond that)\n";
      }
      Sink sink(out_path, out);
      return cmd_verify(spec, format, sink, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_verification;
  }
  return exit_usage;
}

}  // namespace pbt::cli

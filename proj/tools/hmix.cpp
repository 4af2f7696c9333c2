// hmix: command-line driver for the Heisenberg-walk experiments.
//
//   hmix spectrum --n 150
//   hmix mix --n 15 --kmax 1000
//   hmix bound --n 301 --xi-range 1:150
//   hmix center --p 7 --k 40
//   hmix repcheck --n 12
//   hmix simulate return --k 100 --trials 1000000 --seed 7
//
// Every dataset is preceded by a metadata block (tool version, resolved
// configuration, seed, wall time). Only the wall time varies between runs.
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hmix/common.hpp"
#include "hmix/dirichlet.hpp"
#include "hmix/group.hpp"
#include "hmix/harper.hpp"
#include "hmix/io.hpp"
#include "hmix/mixing.hpp"
#include "hmix/representation.hpp"
#include "hmix/walk_sim.hpp"

namespace {

using hmix::Index;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "hmix 1.0.0";

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

struct Output {
  hmix::io::Metadata meta;
  std::vector<Table> tables;
  std::optional<json> record;  // single-result experiments
};

std::string cell_text(const json& v) {
  if (v.is_number_float()) return hmix::io::fmt_real(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

void write_csv(std::ostream& os, const Output& out) {
  hmix::io::write_metadata_comment(os, out.meta);
  if (out.record) {
    std::string header, row;
    for (auto it = out.record->begin(); it != out.record->end(); ++it) {
      if (!header.empty()) header += ',', row += ',';
      header += it.key();
      row += cell_text(it.value());
    }
    os << header << '\n' << row << '\n';
  }
  for (const auto& t : out.tables) {
    if (out.tables.size() > 1) os << "# table: " << t.name << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
      os << '\n';
    }
  }
}

void write_json(std::ostream& os, const Output& out) {
  json doc = out.record ? *out.record : json::object();
  json meta = json::object();
  for (const auto& [k, v] : out.meta) meta[k] = v;
  doc["metadata"] = meta;
  for (const auto& t : out.tables) {
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back(r);
    doc["tables"][t.name] = {{"columns", t.columns}, {"rows", rows}};
  }
  os << doc.dump(2) << '\n';
}

// Common flags.
struct Options {
  std::vector<Index> n;
  Index p = 0;
  std::string xi_range;
  double alpha = 0.0;
  long long kmax = 0;
  long long k = -1;
  std::vector<double> eta_grid;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;
  std::string format = "csv";
  std::string profile = "cosine";
  std::string profile_file;
  std::string table_out;
  bool gram = false;
};

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::pair<Index, Index> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) fail("--xi-range must look like a:b");
  const Index lo = hmix::io::parse_int(std::string_view(s).substr(0, colon));
  const Index hi = hmix::io::parse_int(std::string_view(s).substr(colon + 1));
  if (lo > hi) fail("--xi-range: empty range " + s);
  return {lo, hi};
}

Index single_n(const Options& o) {
  if (o.n.size() != 1) fail("--n takes exactly one value for this subcommand");
  return o.n.front();
}

std::string join(const std::vector<Index>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + hmix::io::fmt_real(x);
  return s;
}

// ---------------------------------------------------------------------------

Output run_spectrum(const Options& o) {
  const Index n = single_n(o);
  if (n < 3) fail("spectrum: --n must be >= 3");
  auto [lo, hi] = o.xi_range.empty() ? std::pair<Index, Index>{1, n - 1} : parse_range(o.xi_range);
  const auto sweep = hmix::spectrum_sweep(n, lo, hi, o.alpha, o.jobs);

  double worst = sweep.base.max_residual();
  for (const auto& r : sweep.rows) worst = std::max(worst, r.max_residual);
  if (!(worst <= 1e-10)) throw hmix::NumericalError("spectrum: eigenpair residual " + hmix::io::fmt_real(worst) + " exceeds 1e-10");

  Output out;
  out.meta = {{"xi_range", std::to_string(lo) + ":" + std::to_string(hi)},
              {"alpha", hmix::io::fmt_real(o.alpha)},
              {"max_residual", hmix::io::fmt_real(worst)}};
  Table rows{"sweep", {"xi", "beta_top", "beta_bottom", "beta_star"}, {}};
  for (const auto& r : sweep.rows) rows.rows.push_back({r.xi, r.beta_top, r.beta_bottom, r.beta_star});
  Table base{"spectrum", {"index", "eigenvalue"}, {}};
  for (Index i = 0; i < sweep.base.values.size(); ++i) base.rows.push_back({i, sweep.base.values(i)});
  out.tables = {std::move(rows), std::move(base)};
  return out;
}

void dump_table(const hmix::DistributionTable& t, const std::string& path) {
  const bool binary = path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) fail("cannot open " + path);
  binary ? hmix::write_binary(f, t) : hmix::write_csv(f, t);
}

Output run_mix(const Options& o) {
  if (o.n.empty()) fail("mix: --n is required");
  Output out;
  out.meta = {{"kmax", std::to_string(o.kmax)}, {"budget", std::to_string(hmix::exact_state_budget())}};

  if (!o.eta_grid.empty()) {
    for (Index n : o.n)
      if (n < 3 || n % 2 == 0) fail("mix: --n values must be odd and >= 3");
    const auto fit = hmix::theorem1_constants(o.n, o.eta_grid);
    Table t{"theorem1", {"n", "eta", "k", "tv_exact", "ratio"}, {}};
    for (const auto& p : fit.points) t.rows.push_back({p.n, p.eta, p.k, p.tv, p.ratio});
    out.meta.push_back({"c_spread", hmix::io::fmt_real(fit.c_spread)});
    out.meta.push_back({"a_spread", hmix::io::fmt_real(fit.a_spread)});
    out.meta.push_back({"max_eta_spread", hmix::io::fmt_real(fit.max_eta_spread)});
    out.meta.push_back({"stable", fit.stable() ? "true" : "false"});
    out.tables.push_back(std::move(t));
    return out;
  }

  if (o.kmax < 0) fail("mix: --kmax must be nonnegative");
  const Index n = single_n(o);
  if (n < 3 || n % 2 == 0) fail("mix: --n must be odd and >= 3");
  const bool exact = static_cast<std::int64_t>(n) * n * n <= hmix::exact_state_budget();
  out.meta.push_back({"mode", exact ? "exact" : "fourier"});

  if (exact) {
    Table t{"tv", {"n", "k", "eta", "tv_exact", "ub_fourier", "lb_projection"}, {}};
    for (const auto& r : hmix::exact_tv_curve(n, o.kmax)) {
      if (r.lb_projection > r.tv_exact + 1e-12 || r.tv_exact > r.ub_fourier + 1e-12)
        throw hmix::NumericalError("mix: bound sandwich violated at k = " + std::to_string(r.k));
      t.rows.push_back({r.n, r.k, r.eta, r.tv_exact, r.ub_fourier, r.lb_projection});
    }
    out.tables.push_back(std::move(t));
  } else {
    const hmix::UpperBoundLemma ub(n);
    Table t{"bound", {"n", "k", "term_I", "term_II", "bound_tv"}, {}};
    for (long long k = 0; k <= o.kmax; ++k) {
      const auto terms = ub.terms(k);
      t.rows.push_back({n, k, terms.term_I, terms.term_II, terms.tv_bound()});
    }
    out.tables.push_back(std::move(t));
  }
  if (!o.table_out.empty()) {
    if (!exact) fail("mix: --table needs n^3 within the exact budget");
    dump_table(hmix::convolution_power(hmix::WalkMeasure::canonical(n), static_cast<int>(o.kmax)), o.table_out);
  }
  return out;
}

Eigen::VectorXd read_profile(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail("cannot open profile file " + path);
  std::vector<double> v;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (const auto& cell : hmix::io::split_csv_line(line))
      if (!cell.empty()) v.push_back(hmix::io::parse_real(cell));
  }
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
}

Output run_bound(const Options& o) {
  Output out;
  out.meta = {{"profile", o.profile}};
  Table t{"bound", {"n", "xi", "bound_upper", "beta1_exact", "gap_ratio", "bound_lower", "betamin_exact"}, {}};
  std::size_t violations = 0;

  if (o.profile == "file") {
    if (o.profile_file.empty()) fail("bound: --profile file needs --profile-file");
    const auto m = hmix::build_general(read_profile(o.profile_file));
    const auto ev = hmix::eigenvalues(m);
    const auto up = hmix::upper_bound_generic(m);
    const auto low = hmix::lower_bound_generic(m);
    if (up.bound_M < ev(0) || low.bound > ev(ev.size() - 1)) ++violations;
    t.rows.push_back({m.size(), nullptr, up.bound_M, ev(0), (1.0 - up.bound_M) / (1.0 - ev(0)), low.bound, ev(ev.size() - 1)});
    out.meta.push_back({"profile_file", o.profile_file});
  } else if (o.profile == "cosine") {
    const Index n = single_n(o);
    if (n < 3) fail("bound: --n must be >= 3");
    auto [lo, hi] = o.xi_range.empty() ? std::pair<Index, Index>{1, (n - 1) / 2} : parse_range(o.xi_range);
    if (lo < 1 || 2 * hi >= n) fail("bound: xi must satisfy 1 <= xi < n/2");
    t.rows.resize(static_cast<std::size_t>(hi - lo + 1));
    std::vector<char> bad(t.rows.size(), 0);
    hmix::parallel_for(t.rows.size(), o.jobs, [&](std::size_t i) {
      const Index xi = lo + static_cast<Index>(i);
      const auto ev = hmix::eigenvalues(hmix::build_harper(n, xi));
      const auto up = hmix::upper_bound_beta1(n, xi);
      const auto low = n % 2 ? hmix::lower_bound_betamin(n, xi) : hmix::lower_bound_betamin_even(n, xi);
      const double top = ev(0), bottom = ev(ev.size() - 1);
      bad[i] = up.bound_M < top || low.bound > bottom;
      t.rows[i] = {n, xi, up.bound_M, top, (1.0 - up.bound_M) / (1.0 - top), low.bound, bottom};
    });
    for (char b : bad) violations += b;
    out.meta.push_back({"xi_range", std::to_string(lo) + ":" + std::to_string(hi)});
  } else {
    fail("bound: --profile must be cosine or file");
  }
  out.meta.push_back({"violations", std::to_string(violations)});
  out.tables.push_back(std::move(t));
  if (violations) throw hmix::NumericalError("bound: " + std::to_string(violations) + " validity violations");
  return out;
}

Output run_center(const Options& o) {
  if (o.k < 0) fail("center: --k is required and must be nonnegative");
  const Index p = o.p;
  if (!hmix::is_prime(p) || p == 2) fail("center: --p must be an odd prime");
  const auto probs = hmix::center_distribution(p, o.k);
  const bool exact = static_cast<std::int64_t>(p) * p * p <= hmix::exact_state_budget();
  std::vector<double> marginal;
  if (exact) marginal = hmix::convolution_power(hmix::WalkMeasure::canonical(p), static_cast<int>(o.k)).center_marginal();

  Output out;
  out.meta = {{"p", std::to_string(p)}, {"k", std::to_string(o.k)}};
  Table t{"center", {"p", "k", "z", "prob", "prob_exact"}, {}};
  for (Index z = 0; z < p; ++z) {
    const auto zi = static_cast<std::size_t>(z);
    t.rows.push_back({p, o.k, z, probs[zi], exact ? json(marginal[zi]) : json(nullptr)});
  }
  out.tables.push_back(std::move(t));
  return out;
}

Output run_repcheck(const Options& o) {
  const Index n = single_n(o);
  if (n < 1) fail("repcheck: --n must be positive");
  const auto labels = hmix::enumerate_irreps(n);
  const auto dsum = hmix::dimension_square_sum(n);
  if (dsum != static_cast<std::int64_t>(n) * n * n) throw hmix::NumericalError("repcheck: dimension count mismatch");

  Output out;
  out.meta = {{"labels", std::to_string(labels.size())}, {"dimension_square_sum", std::to_string(dsum)}};
  if (o.gram) {
    const auto g = hmix::character_gram(n);
    const double dev = (g - hmix::ComplexMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
    out.meta.push_back({"gram_deviation", hmix::io::fmt_real(dev)});
    if (!(dev <= 1e-9)) throw hmix::NumericalError("repcheck: character Gram deviation " + hmix::io::fmt_real(dev));
  }
  Table t{"irreps", {"m", "a", "b", "c", "dim"}, {}};
  for (const auto& l : labels) t.rows.push_back({l.m, l.a, l.b, l.c, l.dim()});
  out.tables.push_back(std::move(t));
  return out;
}

Output run_simulate(const Options& o, const std::string& mode) {
  if (o.k < 0) fail("simulate: --k is required");
  if (o.trials == 0) fail("simulate: --trials must be positive");
  Output out;
  json r;
  r["k"] = o.k;
  r["trials"] = o.trials;
  r["seed"] = o.seed;
  if (mode == "return") {
    if (o.k % 2) fail("simulate return: --k must be even");
    const auto counts = hmix::count_returns(o.k, o.trials, o.seed, o.jobs);
    const auto full = hmix::binomial_estimate(counts.full, counts.trials);
    const auto planar = hmix::binomial_estimate(counts.planar, counts.trials);
    const double k = static_cast<double>(o.k);
    r["estimate"] = full.value;
    r["stderr"] = full.stderr_;
    r["k2_scaled"] = k * k * full.value;
    r["c_conjectured"] = hmix::conjectured_constant();
    r["planar_estimate"] = planar.value;
    r["planar_stderr"] = planar.stderr_;
    r["planar_pik_scaled"] = std::numbers::pi * k * planar.value;
  } else {
    const auto z = hmix::zn_limit_test(o.k, o.trials, o.seed, o.jobs, true);
    r["ks_half"] = z.ks_half;
    r["ks_full"] = z.ks_full;
    r["median"] = z.median;
    r["variance"] = z.variance;
    r["levy_mass"] = z.levy_mass;
  }
  out.record = std::move(r);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Random walk on the finite Heisenberg group: spectra, mixing, bounds, simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "Output file (default stdout)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--jobs", o.jobs, "Worker threads; results do not depend on it")->check(CLI::PositiveNumber);
  };

  auto* spectrum = app.add_subcommand("spectrum", "Harper spectra sweep over xi and the full spectrum of M(1)");
  spectrum->add_option("--n", o.n, "Matrix size")->required()->expected(1);
  spectrum->add_option("--xi-range", o.xi_range, "a:b (default 1:n-1)");
  spectrum->add_option("--alpha", o.alpha, "Diagonal phase shift");
  add_common(spectrum);

  auto* mix = app.add_subcommand("mix", "Exact TV curve with Fourier and projection bounds");
  mix->add_option("--n", o.n, "Odd modulus (several with --eta-grid)")->required()->delimiter(',');
  mix->add_option("--kmax", o.kmax, "Last step count")->check(CLI::NonNegativeNumber);
  mix->add_option("--eta-grid", o.eta_grid, "Comma-separated eta = k/n^2 values")->delimiter(',');
  mix->add_option("--table", o.table_out, "Also dump Q^{*kmax} (.bin for binary, otherwise CSV)");
  add_common(mix);

  auto* bound = app.add_subcommand("bound", "Path bounds on beta_1 and beta_n against exact eigenvalues");
  bound->add_option("--n", o.n, "Matrix size")->expected(1);
  bound->add_option("--xi-range", o.xi_range, "a:b (default 1:(n-1)/2)");
  bound->add_option("--profile", o.profile, "cosine or file")->check(CLI::IsMember({"cosine", "file"}));
  bound->add_option("--profile-file", o.profile_file, "Diagonal values, one per line or comma separated");
  add_common(bound);

  auto* center = app.add_subcommand("center", "Distribution of the central coordinate via the Fourier formula");
  center->add_option("--p", o.p, "Odd prime")->required();
  center->add_option("--k", o.k, "Step count")->required()->check(CLI::NonNegativeNumber);
  add_common(center);

  auto* repcheck = app.add_subcommand("repcheck", "Irreducible representation table");
  repcheck->add_option("--n", o.n, "Modulus")->required()->expected(1);
  repcheck->add_flag("--gram", o.gram, "Also verify character orthogonality (n <= 30)");
  add_common(repcheck);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo experiments on H(Z)");
  simulate->require_subcommand(1);
  std::string sim_mode;
  for (const char* name : {"return", "levy"}) {
    auto* sub = simulate->add_subcommand(name, name == std::string("return") ? "Return probabilities" : "Z_k / k against the Levy-area law");
    sub->add_option("--k", o.k, "Step count")->required()->check(CLI::NonNegativeNumber);
    sub->add_option("--trials", o.trials, "Number of walks");
    sub->add_option("--seed", o.seed, "RNG seed");
    add_common(sub);
    sub->callback([&sim_mode, name] { sim_mode = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    Output out;
    std::string command;
    if (spectrum->parsed()) command = "spectrum", out = run_spectrum(o);
    else if (mix->parsed()) command = "mix", out = run_mix(o);
    else if (bound->parsed()) command = "bound", out = run_bound(o);
    else if (center->parsed()) command = "center", out = run_center(o);
    else if (repcheck->parsed()) command = "repcheck", out = run_repcheck(o);
    else command = "simulate " + sim_mode, out = run_simulate(o, sim_mode);

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    hmix::io::Metadata meta = {{"version", kVersion}, {"command", command}};
    if (!o.n.empty()) meta.push_back({"n", join(o.n)});
    if (!o.eta_grid.empty()) meta.push_back({"eta_grid", join(o.eta_grid)});
    if (command.rfind("simulate", 0) == 0) {
      meta.push_back({"trials", std::to_string(o.trials)});
      meta.push_back({"seed", std::to_string(o.seed)});
    }
    meta.push_back({"jobs", std::to_string(o.jobs)});
    meta.push_back({"format", o.format});
    meta.insert(meta.end(), out.meta.begin(), out.meta.end());
    std::ostringstream wall_text;
    wall_text.precision(3);
    wall_text << std::fixed << wall;
    meta.push_back({"wall_time_s", wall_text.str()});
    out.meta = std::move(meta);

    std::ofstream file;
    if (!o.out.empty()) {
      file.open(o.out);
      if (!file) throw std::invalid_argument("cannot open " + o.out);
    }
    std::ostream& os = o.out.empty() ? std::cout : file;
    o.format == "json" ? write_json(os, out) : write_csv(os, out);
    return 0;
  } catch (const hmix::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

// Acceptance run: one PASS/FAIL line per criterion. Criterion 12 is
// Monte-Carlo against a conjectured constant and never fails the run.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "hmix/dirichlet.hpp"
#include "hmix/harper.hpp"
#include "hmix/mixing.hpp"
#include "hmix/representation.hpp"
#include "hmix/walk_sim.hpp"

using namespace hmix;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome completeness() {
  for (Index n = 1; n <= 200; ++n)
    if (dimension_square_sum(n) != std::int64_t(n) * n * n) return {false, fmt("n=%td", n)};
  return {true, "n <= 200"};
}

Outcome orthogonality() {
  double worst = 0.0;
  for (Index n : {4, 5, 6, 9, 12, 15}) {
    const auto g = character_gram(n);
    worst = std::max(worst, (g - ComplexMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-9, fmt("max |G - I| = %.2e", worst)};
}

Outcome inversion() {
  double worst = 0.0;
  for (Index n : {5, 7}) {
    const auto q = canonical_measure(n);
    const auto table = fourier_table(q);
    auto exact = DistributionTable::point_mass(GroupElement::identity(n));
    for (long long k = 1; k <= 100; ++k) {
      exact = convolve(exact, q);
      const auto inv = fourier_inversion_table(power_table(table, k));
      for (std::size_t i = 0; i < exact.size(); ++i) worst = std::max(worst, std::abs(inv[i] - exact[i]));
    }
  }
  return {worst <= 1e-10, fmt("max error %.2e", worst)};
}

Outcome ub_lemma() {
  std::size_t violations = 0, checked = 0;
  for (Index n : {5, 9, 15}) {
    const long long kmax = 5 * n * n;
    const auto curve = exact_tv_curve(n, kmax);
    const UpperBoundLemma ubl(n);
    for (long long k = 0; k <= kmax; ++k, ++checked) {
      const double tv = curve[static_cast<std::size_t>(k)].tv_exact;
      if (4.0 * tv * tv > ubl.terms(k).total() * (1.0 + 1e-12) + 1e-300) ++violations;
    }
  }
  return {violations == 0, fmt("%zu violations in %zu checks", violations, checked)};
}

Outcome theorem1() {
  const auto fit = theorem1_constants({9, 15, 21}, {0.25, 0.5, 1.0, 2.0});
  return {fit.stable(2.0), fmt("C spread %.3f, A spread %.3f, per-eta spread %.3f", fit.c_spread, fit.a_spread,
                               fit.max_eta_spread)};
}

Outcome center() {
  double worst = 0.0;
  for (Index p : {5, 7, 11}) {
    const auto q = canonical_measure(p);
    auto t = DistributionTable::point_mass(GroupElement::identity(p));
    for (long long k = 1; k <= 200; ++k) {
      t = convolve(t, q);
      const auto marginal = t.center_marginal();
      for (Index z = 0; z < p; ++z)
        worst = std::max(worst, std::abs(center_distribution_fourier(p, k, z) - marginal[static_cast<std::size_t>(z)]));
    }
  }
  return {worst <= 1e-10, fmt("max error %.2e", worst)};
}

Outcome prop41() {
  std::size_t configs = 0, violations = 0;
  for (Index n : {6, 7, 8, 9, 10, 11, 12, 15, 16, 21})
    for (Index xi : {Index(1), Index(2), n / 3})
      for (Index k : {2, 3})
        for (double alpha : {0.0, 0.3}) {
          ++configs;
          if (!check_prop41(n, xi, k, alpha).all_ok()) ++violations;
        }
  return {violations == 0, fmt("%zu violations over %zu configurations", violations, configs)};
}

Outcome path_bounds() {
  std::size_t violations = 0, checked = 0;
  for (Index n : {51, 101, 151, 301})
    for (Index xi = 1; 2 * xi < n; ++xi, ++checked) {
      const auto ev = eigenvalues(build_harper(n, xi));
      if (upper_bound_beta1(n, xi).bound_M < ev(0)) ++violations;
      if (lower_bound_betamin(n, xi).bound > ev(ev.size() - 1)) ++violations;
    }
  return {violations == 0, fmt("%zu violations over %zu (n, xi)", violations, checked)};
}

Outcome scaling() {
  double theta_min = 1e300;
  for (Index n : {201, 501, 1001})
    for (Index xi : {1, 2, 5}) {
      const auto r = path_constant(AbsorbingChain(build_harper(n, xi)), build_paths_small_xi(n, xi));
      theta_min = std::min(theta_min, (1.0 - r.bound_M) * std::pow(double(n) / double(xi), 4.0 / 3.0));
    }
  const auto large = path_constant(AbsorbingChain(build_harper(1001, 250)), build_paths_large_xi(1001, 250));
  const double gap = 1.0 - large.bound_M;
  const double target = 0.6 * std::pow(250.0 / 1001.0, 2);
  return {theta_min > 0.05 && gap >= target,
          fmt("min theta %.4f; 1 - bound %.4f vs %.4f at n=1001 xi=250", theta_min, gap, target)};
}

Outcome dft() {
  double worst = 0.0;
  bool ok = true;
  for (Index n : {3, 8, 64, 150, 256}) {
    const double c = dft_commutator(n);
    ok = ok && c < 1e-10 * n;
    worst = std::max(worst, c / n);
  }
  return {ok, fmt("max ||[F, M]|| / n = %.2e", worst)};
}

Outcome figures() {
  const Index n = 150;
  const auto sweep = spectrum_sweep(n);
  bool ok = sweep.rows.size() == 149;
  double residual = 0.0;
  for (const auto& r : sweep.rows) {
    const auto& mirror = sweep.rows[static_cast<std::size_t>(n - r.xi - 1)];
    ok = ok && r.beta_top == mirror.beta_top && r.beta_bottom == mirror.beta_bottom;
    residual = std::max(residual, r.max_residual);
  }
  residual = std::max(residual, sweep.base.max_residual());
  return {ok && residual <= 1e-10, fmt("%zu rows, max residual %.2e", sweep.rows.size(), residual)};
}

Outcome monte_carlo() {
  const double c = conjectured_constant();
  const auto full = return_probability(100, 10'000'000, 1);
  const double scaled = 1e4 * full.value, band = 3.0 * 1e4 * full.stderr_ + 0.15 * c;
  const auto planar = count_returns(400, 1'000'000, 2);
  const double pik = binomial_estimate(planar.planar, planar.trials).value * std::numbers::pi * 400.0;
  const bool ok = std::abs(scaled - c) <= band && pik >= 0.9 && pik <= 1.1;
  return {ok, fmt("k^2 P = %.3f vs c = %.3f (band %.3f); pi k P_planar = %.3f", scaled, c, band, pik)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "representation completeness", completeness},
      {2, "character orthogonality", orthogonality},
      {3, "Fourier inversion vs convolution", inversion},
      {4, "Upper Bound Lemma validity", ub_lemma},
      {5, "mixing constants stable across n", theorem1},
      {6, "center formula vs exact marginal", center},
      {7, "Harper spectral identities", prop41},
      {8, "path bound validity", path_bounds},
      {9, "path bound scaling", scaling},
      {10, "DFT commutation", dft},
      {11, "spectrum sweep n=150", figures},
      {12, "Monte-Carlo heuristics (informational)", monte_carlo},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass && c.id != 12) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

#include "hmix/harper.hpp"

#include <complex>
#include <limits>

namespace hmix {

double beta_star(Index n, Index xi) {
  if (xi < 1 || xi > n - 1) throw std::invalid_argument("beta_star: xi must lie in [1, n-1]");
  const auto values = eigenvalues(build_harper(n, xi));
  return std::max(values(0), -values(values.size() - 1));
}

double multiset_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<double> sa(a.data(), a.data() + a.size());
  std::vector<double> sb(b.data(), b.data() + b.size());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double gap = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) gap = std::max(gap, std::abs(sa[i] - sb[i]));
  return gap;
}

double inclusion_gap(const Eigen::VectorXd& small, const Eigen::VectorXd& large) {
  if (small.size() > large.size()) return std::numeric_limits<double>::infinity();
  std::vector<double> ss(small.data(), small.data() + small.size());
  std::vector<double> sl(large.data(), large.data() + large.size());
  std::sort(ss.begin(), ss.end());
  std::sort(sl.begin(), sl.end());
  std::vector<bool> used(sl.size(), false);
  double gap = 0.0;
  for (double v : ss) {
    std::size_t best = sl.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sl.size(); ++i) {
      if (used[i]) continue;
      const double dist = std::abs(sl[i] - v);
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    used[best] = true;
    gap = std::max(gap, best_dist);
  }
  return gap;
}

double clause_a_entry_gap(Index n, Index xi) {
  if (xi < 1 || xi > n - 1) throw std::invalid_argument("clause (a): xi must lie in [1, n-1]");
  return (build_harper(n, xi).dense() - build_harper(n, n - xi).dense()).cwiseAbs().maxCoeff();
}

double clause_b_gap(Index n, Index xi, Index k, double alpha) {
  if (k < 1) throw std::invalid_argument("clause (b): k must be a positive integer");
  return inclusion_gap(eigenvalues(build_harper(n, xi, alpha)), eigenvalues(build_harper(k * n, k * xi, alpha)));
}

double clause_c_gap(Index n, Index xi, double alpha) {
  if (n % 2 != 0) throw std::invalid_argument("clause (c): n must be even");
  if (xi < 1) throw std::invalid_argument("clause (c): xi must be positive");
  const double shift = static_cast<double>(n) / (2.0 * static_cast<double>(xi));
  return multiset_distance(eigenvalues(build_harper(n, xi, alpha)), -eigenvalues(build_harper(n, xi, alpha + shift)));
}

double clause_d_gap(Index n, Index xi, double alpha) {
  if (n % 2 == 0) throw std::invalid_argument("clause (d): n must be odd");
  if (xi < 1) throw std::invalid_argument("clause (d): xi must be positive");
  const double shift = static_cast<double>(n) / (2.0 * static_cast<double>(xi));
  return inclusion_gap(eigenvalues(build_harper(n, xi, alpha)), -eigenvalues(build_harper(2 * n, 2 * xi, alpha + shift)));
}

Prop41Report check_prop41(Index n, Index xi, Index k, double alpha, double inclusion_tol, double symmetry_tol) {
  Prop41Report r;
  r.a_gap = clause_a_entry_gap(n, xi);
  r.a_ok = r.a_gap == 0.0;
  r.b_gap = clause_b_gap(n, xi, k, alpha);
  r.b_ok = r.b_gap <= inclusion_tol;
  if (n % 2 == 0) {
    r.c_gap = clause_c_gap(n, xi, alpha);
    r.c_ok = *r.c_gap <= symmetry_tol;
  } else {
    r.d_gap = clause_d_gap(n, xi, alpha);
    r.d_ok = *r.d_gap <= inclusion_tol;
  }
  return r;
}

double dft_commutator(Index n) {
  if (n < 3) throw std::invalid_argument("dft_commutator: n must be >= 3");
  Eigen::MatrixXcd f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      f(j, k) = std::polar(scale, angle);
    }
  const Eigen::MatrixXcd m = build_harper(n, 1).dense().cast<std::complex<double>>();
  return (f * m - m * f).norm();
}

SpectrumSweep spectrum_sweep(Index n, Index xi_lo, Index xi_hi, double alpha, unsigned jobs) {
  if (n < 3) throw std::invalid_argument("spectrum_sweep: n must be >= 3");
  if (xi_lo < 1 || xi_hi > n - 1 || xi_lo > xi_hi) throw std::invalid_argument("spectrum_sweep: xi range must lie in [1, n-1]");
  SpectrumSweep out;
  out.n = n;
  out.alpha = alpha;
  out.rows.resize(static_cast<std::size_t>(xi_hi - xi_lo + 1));
  parallel_for(out.rows.size(), jobs, [&](std::size_t i) {
    const Index xi = xi_lo + static_cast<Index>(i);
    const auto s = spectrum(build_harper(n, xi, alpha));
    out.rows[i] = {xi, s.top(), s.bottom(), std::max(s.top(), -s.bottom()), s.max_residual()};
  });
  out.base = spectrum(build_harper(n, 1, alpha));
  return out;
}

}  // namespace hmix

// Mixing of the simple walk on H(n): exact total variation curves, Fourier
// upper bounds, the projection lower bound and the distribution of the
// central coordinate.
#pragma once

#include <cstdint>
#include <vector>

#include "hmix/group.hpp"
#include "hmix/representation.hpp"

namespace hmix {

struct TVReport {
  Index n = 0;
  long long k = 0;
  double eta = 0.0;            ///< k / n^2
  double tv_exact = 0.0;
  double ub_fourier = 0.0;     ///< sqrt(term_I + term_II) / 2
  double lb_projection = 0.0;  ///< TV of the x coordinate alone
};

/// Largest number of group elements (n^3) the exact pipeline accepts. The
/// default 9261 = 21^3 can be overridden with the HMIX_BUDGET environment variable.
std::int64_t exact_state_budget();

/// Exact TV, Fourier bound and projection bound for k = 0..k_max. Requires n
/// odd and n^3 within exact_state_budget().
std::vector<TVReport> exact_tv_curve(Index n, long long k_max);

/// Exact TV to uniform of the lazy walk on Z/n with P(+-1) = 1/4, P(0) = 1/2.
double projection_lower_bound(Index n, long long k);
/// Same, for every k in [0, k_max].
std::vector<double> projection_lower_bound_curve(Index n, long long k_max);

bool is_prime(Index p);

/// P{Z_k = z} for the walk on H(p), p an odd prime, through
///   1/p + (1/p) sum_{xi=1}^{p-1} e^{-2 pi i xi z/p} sum_j (\hat Q(rho_{0,0,xi})^k)_{0,j}.
/// Throws std::invalid_argument for composite or even p.
double center_distribution_fourier(Index p, long long k, Index z);

/// All p values of the center distribution at once.
std::vector<double> center_distribution(Index p, long long k);

/// Sum of the first row of \hat Q(rho_{0,0,xi})^k, the quantity the center
/// formula weights by e^{-2 pi i xi z/p}.
Complex center_row_sum(Index p, Index xi, long long k);

struct Theorem1Point {
  Index n;
  double eta;
  long long k;   ///< ceil(eta n^2)
  double tv;
  double ratio;  ///< tv / exp(-2 pi^2 eta)
};

struct Theorem1Fit {
  std::vector<Theorem1Point> points;
  std::vector<Index> ns;
  std::vector<double> c_estimate;  ///< per n: sup over eta of ratio
  std::vector<double> a_estimate;  ///< per n: inf over eta of ratio
  double c_spread = 0.0;           ///< max/min of c_estimate across n
  double a_spread = 0.0;
  double max_eta_spread = 0.0;     ///< worst max/min of ratio across n at fixed eta

  /// Every ratio finite and positive, every spread within `factor`.
  bool stable(double factor = 2.0) const;
};

Theorem1Fit theorem1_constants(const std::vector<Index>& ns, const std::vector<double>& eta_grid);

/// Least-squares slope of -log tv_exact against k over [k_lo, k_hi].
double fitted_decay_rate(const std::vector<TVReport>& curve, long long k_lo, long long k_hi);

}  // namespace hmix

#include "hmix/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hmix/common.hpp"

namespace hmix {

std::int64_t exact_state_budget() {
  constexpr std::int64_t kDefault = 21 * 21 * 21;
  const char* env = std::getenv("HMIX_BUDGET");
  if (env == nullptr || *env == '\0') return kDefault;
  try {
    const long long v = std::stoll(env);
    if (v > 0) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("HMIX_BUDGET must be a positive integer");
}

std::vector<double> projection_lower_bound_curve(Index n, long long k_max) {
  if (n < 1) throw std::invalid_argument("projection bound: n must be positive");
  if (k_max < 0) throw std::invalid_argument("projection bound: k must be nonnegative");
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> p(un, 0.0), next(un);
  p[0] = 1.0;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  const double u = 1.0 / static_cast<double>(n);
  auto tv = [&] {
    double s = 0.0;
    for (double v : p) s += std::abs(v - u);
    return 0.5 * s;
  };
  out.push_back(tv());
  for (long long k = 1; k <= k_max; ++k) {
    for (std::size_t j = 0; j < un; ++j)
      next[j] = 0.5 * p[j] + 0.25 * (p[(j + 1) % un] + p[(j + un - 1) % un]);
    p.swap(next);
    out.push_back(tv());
  }
  return out;
}

double projection_lower_bound(Index n, long long k) { return projection_lower_bound_curve(n, k).back(); }

std::vector<TVReport> exact_tv_curve(Index n, long long k_max) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("exact_tv_curve: n must be odd and >= 3");
  if (k_max < 0) throw std::invalid_argument("exact_tv_curve: k_max must be nonnegative");
  if (static_cast<std::int64_t>(n) * n * n > exact_state_budget())
    throw std::invalid_argument("exact_tv_curve: n^3 = " + std::to_string(n * n * n) + " exceeds the exact-TV budget");

  const auto q = WalkMeasure::canonical(n);
  const UpperBoundLemma ub(n);
  const auto projection = projection_lower_bound_curve(n, k_max);
  auto table = DistributionTable::point_mass(GroupElement::identity(n));
  std::vector<TVReport> curve;
  curve.reserve(static_cast<std::size_t>(k_max) + 1);
  for (long long k = 0; k <= k_max; ++k) {
    if (k > 0) table = convolve(table, q);
    TVReport r;
    r.n = n;
    r.k = k;
    r.eta = static_cast<double>(k) / static_cast<double>(n * n);
    r.tv_exact = tv_distance(table);
    r.ub_fourier = ub.terms(k).tv_bound();
    r.lb_projection = projection[static_cast<std::size_t>(k)];
    curve.push_back(r);
  }
  return curve;
}

bool is_prime(Index p) {
  if (p < 2) return false;
  for (Index d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Complex center_row_sum(Index p, Index xi, long long k) {
  const auto q = WalkMeasure::canonical(p);
  const ComplexMatrix power = hermitian_power(fourier_transform(q, {p, p, 0, 0, xi}), k);
  return power.row(0).sum();
}

std::vector<double> center_distribution(Index p, long long k) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) throw std::invalid_argument("center distribution: p must be an odd prime");
  if (k < 0) throw std::invalid_argument("center distribution: k must be nonnegative");
  std::vector<Complex> row_sums;
  row_sums.reserve(static_cast<std::size_t>(p - 1));
  for (Index xi = 1; xi < p; ++xi) row_sums.push_back(center_row_sum(p, xi, k));

  const double inv_p = 1.0 / static_cast<double>(p);
  std::vector<double> out(static_cast<std::size_t>(p));
  for (Index z = 0; z < p; ++z) {
    Complex acc{0.0, 0.0};
    for (Index xi = 1; xi < p; ++xi) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((xi * z) % p) / static_cast<double>(p);
      acc += std::polar(1.0, angle) * row_sums[static_cast<std::size_t>(xi - 1)];
    }
    acc *= inv_p;
    if (std::abs(acc.imag()) > 1e-10) throw NumericalError("center distribution: non-real result");
    out[static_cast<std::size_t>(z)] = inv_p + acc.real();
  }
  return out;
}

double center_distribution_fourier(Index p, long long k, Index z) {
  return center_distribution(p, k)[static_cast<std::size_t>(mod(z, p))];
}

bool Theorem1Fit::stable(double factor) const {
  for (const auto& pt : points)
    if (!(pt.ratio > 0.0) || !std::isfinite(pt.ratio)) return false;
  return c_spread <= factor && a_spread <= factor && max_eta_spread <= factor;
}

Theorem1Fit theorem1_constants(const std::vector<Index>& ns, const std::vector<double>& eta_grid) {
  if (ns.empty() || eta_grid.empty()) throw std::invalid_argument("theorem1_constants: empty grid");
  Theorem1Fit fit;
  fit.ns = ns;
  const double max_eta = *std::max_element(eta_grid.begin(), eta_grid.end());
  for (Index n : ns) {
    const auto n2 = static_cast<double>(n * n);
    const auto curve = exact_tv_curve(n, static_cast<long long>(std::ceil(max_eta * n2)));
    double c_est = 0.0;
    double a_est = std::numeric_limits<double>::infinity();
    for (double eta : eta_grid) {
      const auto k = static_cast<long long>(std::ceil(eta * n2));
      const double tv = curve[static_cast<std::size_t>(k)].tv_exact;
      const double ratio = tv / std::exp(-2.0 * std::numbers::pi * std::numbers::pi * eta);
      fit.points.push_back({n, eta, k, tv, ratio});
      c_est = std::max(c_est, ratio);
      a_est = std::min(a_est, ratio);
    }
    fit.c_estimate.push_back(c_est);
    fit.a_estimate.push_back(a_est);
  }
  auto spread = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi / *lo;
  };
  fit.c_spread = spread(fit.c_estimate);
  fit.a_spread = spread(fit.a_estimate);
  for (std::size_t e = 0; e < eta_grid.size(); ++e) {
    std::vector<double> across;
    for (std::size_t i = 0; i < ns.size(); ++i) across.push_back(fit.points[i * eta_grid.size() + e].ratio);
    fit.max_eta_spread = std::max(fit.max_eta_spread, spread(across));
  }
  return fit;
}

double fitted_decay_rate(const std::vector<TVReport>& curve, long long k_lo, long long k_hi) {
  if (k_lo < 0 || k_hi <= k_lo || k_hi >= static_cast<long long>(curve.size()))
    throw std::invalid_argument("fitted_decay_rate: bad k window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(k_hi - k_lo + 1);
  for (long long k = k_lo; k <= k_hi; ++k) {
    const double x = static_cast<double>(k);
    const double y = -std::log(curve[static_cast<std::size_t>(k)].tv_exact);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

}  // namespace hmix

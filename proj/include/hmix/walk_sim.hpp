// Monte-Carlo experiments for the simple walk on H(Z) and H(n): return
// probabilities, the central-coordinate limit law and the Levy-area density.
//
// A walk with steps (e_1, d_1, 0), ..., (e_k, d_k, 0) uniform on
// {(+-1,0,0), (0,+-1,0)} ends at the product (e_k, d_k, 0) ... (e_1, d_1, 0):
//
//   X_k = sum e_i,  Y_k = sum d_i,  Z_k = sum_i e_i (d_1 + ... + d_{i-1}).
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "hmix/group.hpp"

namespace hmix {

struct Step {
  int dx;
  int dy;
};

struct WalkSample {
  long long k = 0;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;
};

/// Generator for trial stream `stream` under `seed`. Streams are derived with
/// SplitMix64 so any chunk of trials can be replayed independently.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream);

std::vector<Step> draw_steps(std::mt19937_64& rng, long long k);

/// Endpoint by the closed coordinate formulas; reduced mod `modulus` if given.
WalkSample endpoint(std::span<const Step> steps, std::optional<Index> modulus = std::nullopt);

WalkSample sample_walk(long long k, std::optional<Index> modulus, std::uint64_t seed, std::uint64_t stream = 0);

struct ReturnCounts {
  long long k = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t full = 0;    ///< (X, Y, Z) = (0, 0, 0)
  std::uint64_t planar = 0;  ///< (X, Y) = (0, 0)
};

/// Trials are processed in fixed chunks, chunk c on stream c, so counts depend
/// only on (k, trials, seed) and not on `jobs`.
ReturnCounts count_returns(long long k, std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;  ///< binomial standard error
};

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t trials);

/// P{(X_k, Y_k, Z_k) = 0} on H(Z). Requires k even.
Estimate return_probability(long long k, std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1);

/// c = 4 Gamma(1/4)^2 / pi^2, the conjectured constant in Q^{*k}(id) ~ c / k^2.
double conjectured_constant();

/// f(s) = pi^{-3/2} Gamma(1/2) 2^{3/2} Gamma(1/4 + is/2) Gamma(1/4 - is/2), as
/// displayed for the density of int B_1 dB_2. Requires |s| <= 50.
double levy_density(double s);

/// Integral of levy_density over [-50, 50].
double levy_density_mass();

/// CDF of int_0^1 B_1 dB_2 (scale = 1) or of scale * int B_1 dB_2, using the
/// displayed density renormalised to unit mass and tabulated on [-50, 50].
class LevyCdf {
 public:
  LevyCdf();
  double operator()(double x, double scale = 1.0) const;
  double mass() const { return mass_; }

 private:
  double step_;
  double mass_;
  std::vector<double> grid_cdf_;
};

struct ZnLimitResult {
  long long k = 0;
  std::uint64_t trials = 0;
  double ks_half = 0.0;  ///< against 1/2 int B_1 dB_2, density 2 f(2x)
  double ks_full = 0.0;  ///< against int B_1 dB_2
  double median = 0.0;
  double variance = 0.0;  ///< of Z_k / k
  double levy_mass = 0.0;
};

/// Kolmogorov-Smirnov distance between the empirical law of Z_k / k and both
/// candidate limits. Requires k >= 1000 unless `allow_short` is set.
ZnLimitResult zn_limit_test(long long k, std::uint64_t trials, std::uint64_t seed, unsigned jobs = 1,
                            bool allow_short = false);

/// KS distance between sorted samples and a continuous CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace hmix

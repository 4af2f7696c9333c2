#include "hmix/walk_sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hmix/common.hpp"
#include "hmix/special.hpp"

namespace hmix {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Two random bits select a generator: 0 -> (1,0), 1 -> (-1,0), 2 -> (0,1), 3 -> (0,-1).
constexpr std::array<int, 4> kDx = {1, -1, 0, 0};
constexpr std::array<int, 4> kDy = {0, 0, 1, -1};

constexpr std::uint64_t kChunk = 1ULL << 16;

struct Endpoint {
  std::int64_t x, y, z;
};

Endpoint run_walk(std::mt19937_64& rng, long long k) {
  std::int64_t x = 0, y = 0, z = 0;
  long long remaining = k;
  while (remaining > 0) {
    std::uint64_t bits = rng();
    const int batch = static_cast<int>(std::min<long long>(remaining, 32));
    for (int s = 0; s < batch; ++s) {
      const auto b = static_cast<std::size_t>(bits & 3U);
      bits >>= 2;
      z += kDx[b] * y;
      x += kDx[b];
      y += kDy[b];
    }
    remaining -= batch;
  }
  return {x, y, z};
}

}  // namespace

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state) ^ (stream * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL);
  std::array<std::uint32_t, 8> words{};
  for (std::size_t i = 0; i < words.size(); i += 2) {
    const std::uint64_t w = splitmix64(mixed);
    words[i] = static_cast<std::uint32_t>(w);
    words[i + 1] = static_cast<std::uint32_t>(w >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

std::vector<Step> draw_steps(std::mt19937_64& rng, long long k) {
  if (k < 0) throw std::invalid_argument("draw_steps: k must be nonnegative");
  std::vector<Step> steps;
  steps.reserve(static_cast<std::size_t>(k));
  long long remaining = k;
  while (remaining > 0) {
    std::uint64_t bits = rng();
    const int batch = static_cast<int>(std::min<long long>(remaining, 32));
    for (int s = 0; s < batch; ++s) {
      const auto b = static_cast<std::size_t>(bits & 3U);
      bits >>= 2;
      steps.push_back({kDx[b], kDy[b]});
    }
    remaining -= batch;
  }
  return steps;
}

WalkSample endpoint(std::span<const Step> steps, std::optional<Index> modulus) {
  WalkSample out;
  out.k = static_cast<long long>(steps.size());
  for (const auto& s : steps) {
    out.z += s.dx * out.y;
    out.x += s.dx;
    out.y += s.dy;
  }
  if (modulus) {
    if (*modulus < 1) throw std::invalid_argument("endpoint: modulus must be positive");
    out.x = mod(out.x, *modulus);
    out.y = mod(out.y, *modulus);
    out.z = mod(out.z, *modulus);
  }
  return out;
}

WalkSample sample_walk(long long k, std::optional<Index> modulus, std::uint64_t seed, std::uint64_t stream) {
  auto rng = stream_rng(seed, stream);
  const auto steps = draw_steps(rng, k);
  return endpoint(steps, modulus);
}

ReturnCounts count_returns(long long k, std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
  if (k < 0) throw std::invalid_argument("count_returns: k must be nonnegative");
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::array<std::uint64_t, 2>> per_chunk(static_cast<std::size_t>(chunks), {0, 0});
  parallel_for(static_cast<std::size_t>(chunks), jobs, [&](std::size_t c) {
    auto rng = stream_rng(seed, c);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(trials, begin + kChunk);
    std::uint64_t full = 0, planar = 0;
    for (std::uint64_t t = begin; t < end; ++t) {
      const auto e = run_walk(rng, k);
      if (e.x == 0 && e.y == 0) {
        ++planar;
        if (e.z == 0) ++full;
      }
    }
    per_chunk[c] = {full, planar};
  });
  ReturnCounts out{k, trials, seed, 0, 0};
  for (const auto& c : per_chunk) {
    out.full += c[0];
    out.planar += c[1];
  }
  return out;
}

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("binomial_estimate: no trials");
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

Estimate return_probability(long long k, std::uint64_t trials, std::uint64_t seed, unsigned jobs) {
  if (k % 2 != 0) throw std::invalid_argument("return_probability: k must be even");
  const auto counts = count_returns(k, trials, seed, jobs);
  return binomial_estimate(counts.full, counts.trials);
}

double conjectured_constant() {
  const double g = special::gamma({0.25, 0.0}).real();
  return 4.0 * g * g / (std::numbers::pi * std::numbers::pi);
}

double levy_density(double s) {
  if (!(std::abs(s) <= 50.0)) throw std::invalid_argument("levy_density: |s| must be <= 50");
  const std::complex<double> z{0.25, 0.5 * s};
  // pi^{-3/2} Gamma(1/2) 2^{3/2} = 2^{3/2} / pi.
  const double prefactor = 2.0 * std::numbers::sqrt2 / std::numbers::pi;
  return prefactor * (special::gamma(z) * special::gamma(std::conj(z))).real();
}

double levy_density_mass() { return special::integrate(levy_density, -50.0, 50.0, 1e-10); }

LevyCdf::LevyCdf() : step_(0.01) {
  constexpr double kLo = -50.0;
  const auto intervals = static_cast<std::size_t>(std::llround(100.0 / step_));
  grid_cdf_.resize(intervals + 1);
  grid_cdf_[0] = 0.0;
  double f_left = levy_density(kLo);
  for (std::size_t i = 0; i < intervals; ++i) {
    const double a = kLo + static_cast<double>(i) * step_;
    const double f_mid = levy_density(a + 0.5 * step_);
    const double f_right = levy_density(std::min(50.0, a + step_));
    grid_cdf_[i + 1] = grid_cdf_[i] + step_ / 6.0 * (f_left + 4.0 * f_mid + f_right);
    f_left = f_right;
  }
  mass_ = grid_cdf_.back();
}

double LevyCdf::operator()(double x, double scale) const {
  if (!(scale > 0.0)) throw std::invalid_argument("LevyCdf: scale must be positive");
  const double u = x / scale;
  if (u <= -50.0) return 0.0;
  if (u >= 50.0) return 1.0;
  const double pos = (u + 50.0) / step_;
  const auto i = std::min(static_cast<std::size_t>(pos), grid_cdf_.size() - 2);
  const double t = pos - static_cast<double>(i);
  // Cubic Hermite using the density as derivative of the CDF.
  const double a = -50.0 + static_cast<double>(i) * step_;
  const double f0 = levy_density(a) * step_;
  const double f1 = levy_density(std::min(50.0, a + step_)) * step_;
  const double c0 = grid_cdf_[i];
  const double c1 = grid_cdf_[i + 1];
  const double t2 = t * t, t3 = t2 * t;
  const double value = (2 * t3 - 3 * t2 + 1) * c0 + (t3 - 2 * t2 + t) * f0 + (-2 * t3 + 3 * t2) * c1 + (t3 - t2) * f1;
  return value / mass_;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const auto count = static_cast<double>(samples.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double f = cdf(samples[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / count), std::abs(f - static_cast<double>(j) / count)});
    i = j;
  }
  return d;
}

ZnLimitResult zn_limit_test(long long k, std::uint64_t trials, std::uint64_t seed, unsigned jobs, bool allow_short) {
  if (k < 1 || (!allow_short && k < 1000)) throw std::invalid_argument("zn_limit_test: k must be >= 1000");
  if (trials == 0) throw std::invalid_argument("zn_limit_test: no trials");
  std::vector<double> scaled(static_cast<std::size_t>(trials));
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  parallel_for(static_cast<std::size_t>(chunks), jobs, [&](std::size_t c) {
    auto rng = stream_rng(seed, c);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(trials, begin + kChunk);
    for (std::uint64_t t = begin; t < end; ++t)
      scaled[static_cast<std::size_t>(t)] = static_cast<double>(run_walk(rng, k).z) / static_cast<double>(k);
  });

  ZnLimitResult out;
  out.k = k;
  out.trials = trials;
  double mean = 0.0;
  for (double v : scaled) mean += v;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double v : scaled) var += (v - mean) * (v - mean);
  out.variance = var / static_cast<double>(trials);

  const LevyCdf cdf;
  out.levy_mass = cdf.mass();
  // Z_k / k tends to (1/2) int B_1 dB_2: density 2 f(2x).
  out.ks_half = ks_statistic(scaled, [&](double x) { return cdf(x, 0.5); });
  out.ks_full = ks_statistic(scaled, [&](double x) { return cdf(x, 1.0); });
  std::nth_element(scaled.begin(), scaled.begin() + static_cast<std::ptrdiff_t>(scaled.size() / 2), scaled.end());
  out.median = scaled[scaled.size() / 2];
  return out;
}

}  // namespace hmix

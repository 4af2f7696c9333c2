#include "hmix/dirichlet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hmix {

AbsorbingChain::AbsorbingChain(const HarperMatrixd& m) : n_(m.size()), hold_(m.size()), kill_(m.size()) {
  for (Index j = 0; j < n_; ++j) {
    const double d = m.diagonal()(j);
    if (!(std::abs(d) <= 0.5)) throw std::invalid_argument("absorbing chain: diagonal entry outside [-1/2, 1/2]");
    hold_(j) = (1.0 + 2.0 * d) / 3.0;
    kill_(j) = (1.0 - 2.0 * d) / 3.0;
  }
}

double AbsorbingChain::operator()(Index from, Index to) const {
  if (from < 0 || from > n_ || to < 0 || to > n_) throw std::out_of_range("absorbing chain: state out of range");
  if (from == n_) return to == n_ ? 1.0 : 0.0;
  if (to == n_) return kill_(from);
  if (to == from) return hold_(from);
  if (to == mod(from + 1, n_) || to == mod(from - 1, n_)) return kNeighbor;
  return 0.0;
}

Eigen::MatrixXd AbsorbingChain::dense() const {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n_ + 1, n_ + 1);
  for (Index i = 0; i <= n_; ++i)
    for (Index j = 0; j <= n_; ++j) k(i, j) = (*this)(i, j);
  return k;
}

void validate_paths(const AbsorbingChain& chain, const PathSystem& system) {
  const Index n = chain.size();
  if (system.n != n || static_cast<Index>(system.paths.size()) != n)
    throw std::invalid_argument("path system: expected exactly one path per state");
  for (Index z = 0; z < n; ++z) {
    const auto& path = system.paths[static_cast<std::size_t>(z)];
    if (path.size() < 2 || path.front() != z || path.back() != chain.absorbing())
      throw std::invalid_argument("path system: path " + std::to_string(z) + " must run from its state to the absorbing state");
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      if (path[i] == chain.absorbing()) throw std::invalid_argument("path system: path continues past the absorbing state");
      if (!(chain(path[i], path[i + 1]) > 0.0))
        throw std::invalid_argument("path system: path " + std::to_string(z) + " uses an edge with K = 0");
    }
  }
}

namespace {

// Directed edges out of each transient state: to j-1, j, j+1, inf.
int edge_slot(Index from, Index to, Index n) {
  if (to == n) return 3;
  if (to == from) return 1;
  if (to == mod(from + 1, n)) return 2;
  return 0;
}

Index slot_target(Index from, int slot, Index n) {
  switch (slot) {
    case 0: return mod(from - 1, n);
    case 1: return from;
    case 2: return mod(from + 1, n);
    default: return n;
  }
}

}  // namespace

BoundReport path_constant(const AbsorbingChain& chain, const PathSystem& system) {
  validate_paths(chain, system);
  const Index n = chain.size();
  std::vector<std::array<double, 4>> load(static_cast<std::size_t>(n), {0.0, 0.0, 0.0, 0.0});
  for (Index z = 0; z < n; ++z) {
    const auto& path = system.paths[static_cast<std::size_t>(z)];
    const auto len = static_cast<double>(path.size() - 1);
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      load[static_cast<std::size_t>(path[i])][static_cast<std::size_t>(edge_slot(path[i], path[i + 1], n))] += len;
  }

  BoundReport report;
  report.construction = system.construction;
  report.A = -1.0;
  for (Index from = 0; from < n; ++from)
    for (int slot = 0; slot < 4; ++slot) {
      const double used = load[static_cast<std::size_t>(from)][static_cast<std::size_t>(slot)];
      if (used == 0.0) continue;
      const Index to = slot_target(from, slot, n);
      const double value = 2.0 / chain(from, to) * used;
      if (value > report.A) {
        report.A = value;
        report.witness = {from, to};
      }
    }
  report.bound_L = 1.0 - 1.0 / report.A;
  report.bound_M = 1.0 - 1.5 / report.A;
  return report;
}

// ---------------------------------------------------------------------------

std::vector<Index> group_anchors(Index n, Index xi, double alpha) {
  if (xi < 1 || 2 * xi > n) throw std::invalid_argument("group_anchors: need 1 <= xi <= n/2");
  std::vector<Index> anchors;
  anchors.reserve(static_cast<std::size_t>(xi));
  const double period = static_cast<double>(n) / static_cast<double>(xi);
  for (Index l = 0; l < xi; ++l) {
    // Round half up; the epsilon keeps exact ties from rounding down.
    const double peak = static_cast<double>(l) * period - alpha;
    anchors.push_back(mod(static_cast<Index>(std::floor(peak + 0.5 + 1e-9)), n));
  }
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  return anchors;
}

namespace {

// Walk `steps` states in direction `dir` from `start`, then keep walking while
// the current state cannot be absorbed, then jump to inf.
Path horizontal_path(const AbsorbingChain& chain, Index start, Index steps, int dir) {
  const Index n = chain.size();
  Path path{start};
  Index cur = start;
  for (Index s = 0; s < steps; ++s) {
    cur = mod(cur + dir, n);
    path.push_back(cur);
  }
  for (Index guard = 0; !(chain.kill(cur) > 0.0); ++guard) {
    if (guard >= n) throw std::invalid_argument("path construction: no state with positive absorption");
    cur = mod(cur + dir, n);
    path.push_back(cur);
  }
  path.push_back(n);
  return path;
}

PathSystem grouped_paths(Index n, Index xi, double alpha, Index x, std::string name) {
  const AbsorbingChain chain(build_harper(n, xi, alpha));
  const auto anchors = group_anchors(n, xi, alpha);
  PathSystem system;
  system.n = n;
  system.construction = std::move(name);
  system.paths.resize(static_cast<std::size_t>(n));
  for (std::size_t g = 0; g < anchors.size(); ++g) {
    const Index start = anchors[g];
    const Index next = anchors[(g + 1) % anchors.size()];
    Index size = mod(next - start, n);
    if (size == 0) size = n;
    for (Index r = 0; r < size; ++r) {
      const Index state = mod(start + r, n);
      const Index to_next_peak = size - r;
      Path path;
      if (r < x)
        path = horizontal_path(chain, state, x, +1);
      else if (to_next_peak < x)
        path = horizontal_path(chain, state, x, -1);
      else
        path = horizontal_path(chain, state, 0, +1);
      system.paths[static_cast<std::size_t>(state)] = std::move(path);
    }
  }
  return system;
}

void require_cosine_range(Index n, Index xi) {
  if (n < 3) throw std::invalid_argument("path construction: n must be >= 3");
  if (xi < 1 || 2 * xi >= n) throw std::invalid_argument("path construction: need 1 <= xi < n/2");
}

}  // namespace

PathSystem build_paths_small_xi(Index n, Index xi, double alpha) {
  require_cosine_range(n, xi);
  const double ratio = static_cast<double>(n) / static_cast<double>(xi);
  // pow(1000, 2/3) lands just below 100; nudge exact cubes up.
  const auto x = std::max<Index>(1, static_cast<Index>(std::floor(std::pow(ratio, 2.0 / 3.0) + 1e-9)));
  return grouped_paths(n, xi, alpha, x, "small-xi");
}

PathSystem build_paths_large_xi(Index n, Index xi, double alpha) {
  require_cosine_range(n, xi);
  const AbsorbingChain chain(build_harper(n, xi, alpha));
  PathSystem system;
  system.n = n;
  system.construction = "large-xi";
  system.paths.resize(static_cast<std::size_t>(n));
  // Fraction of the cosine period elapsed since the last peak.
  auto phase = [&](Index j) {
    const double period = static_cast<double>(n);
    double t = static_cast<double>(xi) * (alpha + static_cast<double>(j));
    t -= period * std::floor(t / period);
    return t / period;
  };
  // Stop once K(., inf) >= 1/4, i.e. cos <= 1/4; this window is wider than half
  // a period, so every walk ends within a quarter period.
  auto strong = [&](Index j) { return chain.kill(j) >= 0.25; };
  for (Index j = 0; j < n; ++j) {
    const int dir = phase(j) < 0.5 ? +1 : -1;
    Path path{j};
    Index cur = j;
    while (!strong(cur)) {
      cur = mod(cur + dir, n);
      path.push_back(cur);
      if (static_cast<Index>(path.size()) > n) throw std::logic_error("large-xi paths: no strong state reached");
    }
    if (!(chain.kill(cur) > 0.0)) throw std::logic_error("large-xi paths: jump from a state with K(., inf) = 0");
    path.push_back(n);
    system.paths[static_cast<std::size_t>(j)] = std::move(path);
  }
  return system;
}

PathSystem build_paths_generic(const AbsorbingChain& chain) {
  const Index n = chain.size();
  const double strongest = chain.kill_rates().maxCoeff();
  if (!(strongest > 0.0)) throw std::invalid_argument("generic paths: no state with positive absorption");
  const double threshold = std::min(1.0 / 3.0, strongest);
  std::vector<bool> strong(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) strong[static_cast<std::size_t>(j)] = chain.kill(j) >= threshold;

  PathSystem system;
  system.n = n;
  system.construction = "generic";
  system.paths.resize(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    Index offset = 0;
    int dir = +1;
    for (Index d = 0; d < n; ++d) {
      if (strong[static_cast<std::size_t>(mod(j + d, n))]) {
        offset = d;
        dir = +1;
        break;
      }
      if (strong[static_cast<std::size_t>(mod(j - d, n))]) {
        offset = d;
        dir = -1;
        break;
      }
    }
    Path path{j};
    for (Index s = 1; s <= offset; ++s) path.push_back(mod(j + dir * s, n));
    path.push_back(n);
    system.paths[static_cast<std::size_t>(j)] = std::move(path);
  }
  return system;
}

BoundReport upper_bound_beta1(Index n, Index xi, double alpha) {
  require_cosine_range(n, xi);
  const AbsorbingChain chain(build_harper(n, xi, alpha));
  const double threshold = static_cast<double>(n) / std::log(static_cast<double>(n));
  const double x = static_cast<double>(xi);
  const bool small = x <= threshold;
  const bool overlap = x >= threshold / 2.0 && x <= 2.0 * threshold;

  BoundReport best = path_constant(chain, small ? build_paths_small_xi(n, xi, alpha) : build_paths_large_xi(n, xi, alpha));
  if (overlap) {
    BoundReport other = path_constant(chain, small ? build_paths_large_xi(n, xi, alpha) : build_paths_small_xi(n, xi, alpha));
    if (other.A < best.A) best = std::move(other);
  }
  return best;
}

BoundReport upper_bound_generic(const HarperMatrixd& m) {
  const AbsorbingChain chain(m);
  return path_constant(chain, build_paths_generic(chain));
}

HarperMatrixd lower_bound_matrix(Index n, Index xi) {
  if (xi < 1) throw std::invalid_argument("lower_bound_matrix: xi must be positive");
  return build_harper(2 * n, 2 * xi, static_cast<double>(n) / (2.0 * static_cast<double>(xi)));
}

HarperMatrixd cyclic_shift(const HarperMatrixd& m, Index shift) {
  const Index n = m.size();
  Eigen::VectorXd d(n);
  for (Index j = 0; j < n; ++j) d(j) = m.diagonal()(mod(j + shift, n));
  return HarperMatrixd::general(std::move(d));
}

LowerBoundReport lower_bound_betamin(Index n, Index xi) {
  if (n % 2 == 0) throw std::invalid_argument("lower_bound_betamin: n must be odd (use lower_bound_betamin_even)");
  require_cosine_range(n, xi);
  LowerBoundReport out;
  out.upper = upper_bound_beta1(2 * n, 2 * xi, static_cast<double>(n) / (2.0 * static_cast<double>(xi)));
  out.bound = -out.upper.bound_M;
  return out;
}

LowerBoundReport lower_bound_betamin_even(Index n, Index xi) {
  if (n % 2 != 0) throw std::invalid_argument("lower_bound_betamin_even: n must be even");
  require_cosine_range(n, xi);
  LowerBoundReport out;
  out.upper = upper_bound_beta1(n, xi, static_cast<double>(n) / (2.0 * static_cast<double>(xi)));
  out.bound = -out.upper.bound_M;
  return out;
}

LowerBoundReport lower_bound_generic(const HarperMatrixd& m) {
  const Index n = m.size();
  Eigen::VectorXd doubled(2 * n);
  for (Index j = 0; j < 2 * n; ++j) doubled(j) = -m.diagonal()(j % n);
  LowerBoundReport out;
  out.upper = upper_bound_generic(HarperMatrixd::general(std::move(doubled)));
  out.bound = -out.upper.bound_M;
  return out;
}

}  // namespace hmix

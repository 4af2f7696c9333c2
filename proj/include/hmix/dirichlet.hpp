// Geometric path bounds on the extreme eigenvalues of Harper matrices.
//
// For a Harper matrix M with |d_j| <= 1/2, L = I/3 + 2M/3 is substochastic.
// Adding an absorbing state "inf" that takes the missing row mass gives the
// chain K with
//
//   K(j, j +- 1) = 1/6,  K(j, j) = (1 + 2 d_j)/3,  K(j, inf) = (1 - 2 d_j)/3.
//
// Given one path from every state to inf along K-positive steps, the path
// constant
//
//   A = max over edges e of (2 / K(e)) * sum_{z : e in gamma_z} |gamma_z|
//
// bounds the top eigenvalue of L by 1 - 1/A, hence beta_1(M) <= 1 - 3/(2A).
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hmix/harper.hpp"

namespace hmix {

class AbsorbingChain {
 public:
  static constexpr double kNeighbor = 1.0 / 6.0;

  /// Throws std::invalid_argument if some |d_j| > 1/2.
  explicit AbsorbingChain(const HarperMatrixd& m);

  /// Number of transient states; the absorbing state has index size().
  Index size() const { return n_; }
  Index absorbing() const { return n_; }

  double hold(Index j) const { return hold_(j); }
  double kill(Index j) const { return kill_(j); }
  const Eigen::VectorXd& kill_rates() const { return kill_; }

  /// K(from, to) for from, to in [0, n] (n is the absorbing state).
  double operator()(Index from, Index to) const;

  /// The (n+1) x (n+1) stochastic matrix.
  Eigen::MatrixXd dense() const;

 private:
  Index n_;
  Eigen::VectorXd hold_;
  Eigen::VectorXd kill_;
};

inline AbsorbingChain build_absorbing_chain(const HarperMatrixd& m) { return AbsorbingChain(m); }

/// States visited, ending at the absorbing state.
using Path = std::vector<Index>;

struct PathSystem {
  Index n = 0;
  std::vector<Path> paths;  ///< paths[z] starts at z
  std::string construction;

  std::size_t length(Index z) const { return paths[static_cast<std::size_t>(z)].size() - 1; }
};

/// Throws std::invalid_argument unless every state has one path to the
/// absorbing state and every step has K > 0.
void validate_paths(const AbsorbingChain& chain, const PathSystem& paths);

struct Edge {
  Index from = 0;
  Index to = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct BoundReport {
  double A = 0.0;
  double bound_L = 0.0;  ///< 1 - 1/A, top eigenvalue of L
  double bound_M = 0.0;  ///< 1 - 3/(2A), top eigenvalue of the Harper matrix the chain was built from
  Edge witness;          ///< an edge attaining A
  std::string construction;
};

/// Exact evaluation of the path constant over every edge used by a path.
BoundReport path_constant(const AbsorbingChain& chain, const PathSystem& paths);

// ---------------------------------------------------------------------------
// Path constructions for the cosine family M(n, xi, alpha). States are split
// into xi groups, one per cosine period, anchored at the states nearest the
// peaks j = l n / xi - alpha (ties to the right). In each group the x points
// nearest the left peak walk x steps right and jump to inf, the points within
// x of the next peak walk x steps left and jump, and the rest jump directly.
// A jump from a state with K(., inf) = 0 continues one more step in the same
// direction.

/// Anchor states of the xi groups, ascending.
std::vector<Index> group_anchors(Index n, Index xi, double alpha = 0.0);

/// x = floor((n/xi)^{2/3}); for 1 <= xi <= n / log n.
PathSystem build_paths_small_xi(Index n, Index xi, double alpha = 0.0);
/// For n / log n <= xi < n/2. States near a peak (cos > 1/4) walk away from
/// the nearest real peak j = l n / xi - alpha until K(., inf) >= 1/4, then
/// jump; all other states jump directly.
PathSystem build_paths_large_xi(Index n, Index xi, double alpha = 0.0);

/// Any profile: states with K(., inf) >= min(1/3, max kill) jump directly,
/// others walk to the nearest such state (ties to the right).
PathSystem build_paths_generic(const AbsorbingChain& chain);

/// Upper bound on beta_1(M(n, xi, alpha)) from the construction matching
/// xi against n / log n; near the threshold both are evaluated and the
/// smaller A wins. Requires 1 <= xi < n/2.
BoundReport upper_bound_beta1(Index n, Index xi, double alpha = 0.0);

/// Upper bound on beta_1 for an arbitrary profile via build_paths_generic.
BoundReport upper_bound_generic(const HarperMatrixd& m);

/// The 2n x 2n matrix M(2n, 2 xi, n/(2 xi)) whose negated spectrum contains
/// S(n, xi, 0) for odd n.
HarperMatrixd lower_bound_matrix(Index n, Index xi);

/// Diagonal rotated by `shift`: d'_j = d_{j + shift}. Same spectrum.
HarperMatrixd cyclic_shift(const HarperMatrixd& m, Index shift);

struct LowerBoundReport {
  double bound = 0.0;  ///< beta_n(M(xi)) >= bound
  BoundReport upper;   ///< path bound on the auxiliary matrix
};

/// beta_n(M(n, xi)) >= -(1 - 3/(2A)) with A from paths on lower_bound_matrix.
/// Requires n odd and 1 <= xi < n/2.
LowerBoundReport lower_bound_betamin(Index n, Index xi);

/// Even n: beta_n(M(n,xi,0)) = -beta_1(M(n, xi, n/(2 xi))).
LowerBoundReport lower_bound_betamin_even(Index n, Index xi);

/// Lower bound on the smallest eigenvalue of an arbitrary profile: the
/// profile is doubled (periodically) and negated, which contains -S in its
/// spectrum for every n.
LowerBoundReport lower_bound_generic(const HarperMatrixd& m);

}  // namespace hmix

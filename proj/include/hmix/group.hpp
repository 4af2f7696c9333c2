// Arithmetic of the finite Heisenberg group H(n), the simple-walk measure on
// it, and exact convolution of distributions over all n^3 elements.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmix {

using Index = std::int64_t;

/// Element (x, y, z) of H(n), i.e. the matrix [[1,x,z],[0,1,y],[0,0,1]] mod n.
struct GroupElement {
  Index x = 0;
  Index y = 0;
  Index z = 0;
  Index n = 1;

  GroupElement() = default;
  /// Coordinates are reduced into [0, n).
  GroupElement(Index x, Index y, Index z, Index n);

  static GroupElement identity(Index n) { return {0, 0, 0, n}; }

  /// Flat table index x + n*y + n^2*z.
  std::size_t index() const;
  static GroupElement from_index(std::size_t idx, Index n);

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

std::ostream& operator<<(std::ostream& os, const GroupElement& g);

/// Reduce v into [0, n).
inline Index mod(Index v, Index n) {
  const Index r = v % n;
  return r < 0 ? r + n : r;
}

/// (x+x', y+y', z+z'+x*y') mod n. Throws std::invalid_argument on modulus mismatch.
GroupElement mul(const GroupElement& a, const GroupElement& b);
/// (-x, -y, -z+x*y) mod n.
GroupElement inv(const GroupElement& a);

class WalkMeasure {
 public:
  struct Atom {
    GroupElement element;
    double weight;
  };

  /// Weights must be nonnegative and sum to one within 1e-12.
  WalkMeasure(Index n, std::vector<Atom> atoms);

  /// Uniform on {(+-1,0,0), (0,+-1,0)}. Requires n >= 3.
  static WalkMeasure canonical(Index n);

  Index modulus() const { return n_; }
  std::span<const Atom> atoms() const { return atoms_; }
  double weight(const GroupElement& g) const;
  bool is_symmetric(double tol = 0.0) const;

 private:
  Index n_;
  std::vector<Atom> atoms_;
};

inline WalkMeasure canonical_measure(Index n) { return WalkMeasure::canonical(n); }

/// Dense probability table over H(n), index x + n*y + n^2*z.
class DistributionTable {
 public:
  explicit DistributionTable(Index n);
  DistributionTable(Index n, std::vector<double> probs);

  static DistributionTable point_mass(const GroupElement& g);
  static DistributionTable uniform(Index n);
  static DistributionTable from_measure(const WalkMeasure& q);

  Index modulus() const { return n_; }
  std::size_t size() const { return probs_.size(); }

  double operator[](std::size_t i) const { return probs_[i]; }
  double& operator[](std::size_t i) { return probs_[i]; }
  double at(const GroupElement& g) const;

  std::span<const double> values() const { return probs_; }
  double total_mass() const;

  /// Distribution of the z coordinate.
  std::vector<double> center_marginal() const;
  /// Distribution of the x coordinate.
  std::vector<double> x_marginal() const;

 private:
  Index n_;
  std::vector<double> probs_;
};

/// (Q * P)(g) = sum_h Q(h) P(g h^{-1}). Mass preserving; fixed summation order
/// over the support of Q for every output cell.
DistributionTable convolve(const DistributionTable& p, const WalkMeasure& q);

/// Q^{*k}, starting from the point mass at the identity for k = 0.
DistributionTable convolution_power(const WalkMeasure& q, int k);

/// (1/2) sum_g |P(g) - 1/n^3|.
double tv_distance(const DistributionTable& p);

// Serialization. CSV: header "x,y,z,prob", rows in index order. Binary:
// magic "HSB1", u32 n, u64 length, then length little-endian float64 values.
void write_csv(std::ostream& os, const DistributionTable& p);
DistributionTable read_csv(std::istream& is);
void write_binary(std::ostream& os, const DistributionTable& p);
DistributionTable read_binary(std::istream& is);

}  // namespace hmix

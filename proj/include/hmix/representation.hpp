// Irreducible representations of H(n), their characters, the Fourier transform
// of measures on H(n) and the Upper Bound Lemma for the simple walk.
//
// For every divisor m of n there are (n/m)^2 phi(m) irreducibles of degree m,
// labelled (a, b, c) with a, b in [0, n/m) and c a unit mod m. The
// representation acts on functions f : Z/m -> C by
//
//   rho_{a,b,c}(x,y,z) f(j) = q_n^{a x + b y} q_m^{c (y j + z)} f(j + x),
//
// q_k = exp(2 pi i / k). Matrices use the delta basis at j = 0..m-1 with the
// row index being the output point j and the column index the input point.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "hmix/group.hpp"

namespace hmix {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

struct IrrepLabel {
  Index n = 1;
  Index m = 1;  ///< degree, a divisor of n
  Index a = 0;  ///< residue mod n/m
  Index b = 0;  ///< residue mod n/m
  Index c = 0;  ///< unit mod m (0 when m = 1)

  Index dim() const { return m; }
  bool is_trivial() const { return m == 1 && a == 0 && b == 0; }
  /// Throws std::invalid_argument unless the label satisfies the ranges above.
  void validate() const;

  friend bool operator==(const IrrepLabel&, const IrrepLabel&) = default;
};

std::vector<Index> divisors(Index n);
Index euler_phi(Index n);

/// Number of labels of degree m for modulus n: (n/m)^2 phi(m).
Index irrep_count(Index n, Index m);
/// sum_{m|n} (n/m)^2 phi(m) m^2 in exact integer arithmetic; equals n^3.
std::int64_t dimension_square_sum(Index n);

/// All labels, ordered by (m, a, b, c).
std::vector<IrrepLabel> enumerate_irreps(Index n);

ComplexMatrix irrep_matrix(const IrrepLabel& label, const GroupElement& g);
Complex character(const IrrepLabel& label, const GroupElement& g);

/// <chi_i | chi_j> = n^{-3} sum_g chi_i(g) conj(chi_j(g)) over enumerate_irreps(n).
/// Throws std::invalid_argument when n exceeds cap.
ComplexMatrix character_gram(Index n, Index cap = 30);

/// \hat Q(rho) = sum_g Q(g) rho(g).
ComplexMatrix fourier_transform(const WalkMeasure& q, const IrrepLabel& label);

/// Closed form of \hat Q(a,b,c) for the canonical measure, valid for m >= 3:
/// 1/4 (q_n^{a} on the super diagonal and lower-left corner, q_n^{-a} on the
/// sub diagonal and upper-right corner, q_n^b q_m^{jc} + q_n^{-b} q_m^{-jc}
/// on the diagonal).
ComplexMatrix qhat_closed_form(const IrrepLabel& label);

/// A^k for Hermitian A via its eigendecomposition.
ComplexMatrix hermitian_power(const ComplexMatrix& a, long long k);

struct FourierEntry {
  IrrepLabel label;
  ComplexMatrix transform;
};
using FourierTable = std::vector<FourierEntry>;

/// \hat Q(rho) for every irreducible rho of H(n).
FourierTable fourier_table(const WalkMeasure& q);
/// Entrywise \hat Q(rho)^k (Hermitian eigendecomposition).
FourierTable power_table(const FourierTable& table, long long k);

/// Q(g) = n^{-3} sum_rho d_rho tr(\hat Q(rho) rho(g)^*). Throws
/// std::invalid_argument when the table does not cover the full dual, and
/// std::runtime_error when the imaginary residue exceeds 1e-10.
double fourier_inversion(const FourierTable& table, const GroupElement& g);
/// Inversion at every element, in table index order.
DistributionTable fourier_inversion_table(const FourierTable& table);

struct UbTerms {
  double term_I = 0.0;   ///< nontrivial one-dimensional representations
  double term_II = 0.0;  ///< representations of degree m > 1
  double total() const { return term_I + term_II; }
  /// Implied bound on the total variation distance, sqrt(I + II) / 2.
  double tv_bound() const;
};

/// Upper Bound Lemma for the canonical walk on H(n), n odd: the eigenvalues
/// of every \hat Q(rho) are computed once and each k is an O(n^3) sum of
/// lambda^{2k}.
class UpperBoundLemma {
 public:
  explicit UpperBoundLemma(Index n);

  Index modulus() const { return n_; }
  UbTerms terms(long long k) const;

 private:
  struct Mode {
    double weight;      // d_rho
    double lambda_sq;   // eigenvalue squared
  };
  Index n_;
  std::vector<Mode> one_dim_;
  std::vector<Mode> higher_;
};

UbTerms ub_lemma_bound(Index n, long long k);

}  // namespace hmix

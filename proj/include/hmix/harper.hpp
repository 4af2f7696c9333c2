// Harper matrices: periodic Jacobi matrices with 1/4 couplings around the
// cycle Z/n and a diagonal profile, most importantly the cosine family
//
//   M(n, xi, alpha)_{jj} = 1/2 cos(2 pi xi (alpha + j) / n),
//
// with M(n, xi, 0) = \hat Q(rho_{0,0,xi}) for n prime.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hmix/common.hpp"
#include "hmix/group.hpp"

namespace hmix {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// 1/2 cos(2 pi xi (alpha + j) / n). The phase xi (alpha + j) is reduced
/// mod n and folded into [0, n/2] first, so profiles for xi and n - xi at
/// integer alpha agree bit for bit.
template <typename Scalar = double>
Scalar cosine_entry(Index n, Index xi, Scalar alpha, Index j) {
  using std::cos;
  using std::floor;
  const Scalar period = static_cast<Scalar>(n);
  Scalar t = static_cast<Scalar>(xi) * (alpha + static_cast<Scalar>(j));
  t -= period * floor(t / period);
  if (t > period / 2) t = period - t;
  return cos(2 * std::numbers::pi_v<Scalar> * t / period) / 2;
}

struct CosineParams {
  Index xi;
  double alpha;
};

template <typename Scalar = double>
class HarperMatrix {
 public:
  using Vector = VectorX<Scalar>;
  using Dense = MatrixX<Scalar>;

  static constexpr Scalar coupling() { return Scalar(1) / 4; }

  /// Cosine family. Throws std::invalid_argument for n < 3.
  static HarperMatrix cosine(Index n, Index xi, Scalar alpha = Scalar(0)) {
    require_size(n);
    Vector d(n);
    for (Index j = 0; j < n; ++j) d(j) = cosine_entry<Scalar>(n, xi, alpha, j);
    HarperMatrix m(std::move(d));
    m.params_ = CosineParams{xi, static_cast<double>(alpha)};
    return m;
  }

  /// Arbitrary diagonal with |d_j| <= 1/2.
  static HarperMatrix general(Vector diagonal) {
    require_size(diagonal.size());
    for (Index j = 0; j < diagonal.size(); ++j)
      if (!(std::abs(diagonal(j)) <= Scalar(1) / 2)) throw std::invalid_argument("Harper diagonal entry outside [-1/2, 1/2]");
    return HarperMatrix(std::move(diagonal));
  }

  Index size() const { return diagonal_.size(); }
  const Vector& diagonal() const { return diagonal_; }
  const std::optional<CosineParams>& params() const { return params_; }

  Dense dense() const {
    const Index n = size();
    Dense out = diagonal_.asDiagonal();
    for (Index j = 0; j < n; ++j) {
      out(j, (j + 1) % n) = coupling();
      out((j + 1) % n, j) = coupling();
    }
    return out;
  }

  /// M v using the periodic tridiagonal structure.
  template <typename Derived>
  Vector apply(const Eigen::MatrixBase<Derived>& v) const {
    const Index n = size();
    Vector out(n);
    for (Index j = 0; j < n; ++j)
      out(j) = diagonal_(j) * v(j) + coupling() * (v((j + 1) % n) + v((j + n - 1) % n));
    return out;
  }

 private:
  explicit HarperMatrix(Vector d) : diagonal_(std::move(d)) {}

  static void require_size(Index n) {
    if (n < 3) throw std::invalid_argument("Harper matrices require n >= 3");
  }

  Vector diagonal_;
  std::optional<CosineParams> params_;
};

using HarperMatrixd = HarperMatrix<double>;

inline HarperMatrixd build_harper(Index n, Index xi, double alpha = 0.0) { return HarperMatrixd::cosine(n, xi, alpha); }
inline HarperMatrixd build_general(const Eigen::VectorXd& diagonal) { return HarperMatrixd::general(diagonal); }

/// Eigenvalues sorted descending, with the eigenvector residual of each pair.
template <typename Scalar = double>
struct Spectrum {
  VectorX<Scalar> values;
  VectorX<Scalar> residuals;  ///< empty when computed without vectors
  MatrixX<Scalar> vectors;    ///< column i pairs with values(i); may be empty

  Scalar top() const { return values(0); }
  Scalar bottom() const { return values(values.size() - 1); }
  Scalar max_residual() const { return residuals.size() ? residuals.maxCoeff() : Scalar(0); }
};

/// Full spectrum. Throws NumericalError if the eigensolver does not converge.
template <typename Scalar>
Spectrum<Scalar> spectrum(const HarperMatrix<Scalar>& m, bool with_vectors = true) {
  const auto dense = m.dense();
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(dense, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("Harper eigensolver did not converge (n = " + std::to_string(m.size()) + ")");
  const Index n = m.size();
  Spectrum<Scalar> out;
  out.values = es.eigenvalues().reverse();
  if (with_vectors) {
    out.vectors = es.eigenvectors().rowwise().reverse();
    out.residuals.resize(n);
    for (Index i = 0; i < n; ++i)
      out.residuals(i) = (m.apply(out.vectors.col(i)) - out.values(i) * out.vectors.col(i)).norm();
  }
  return out;
}

/// Descending eigenvalues only.
template <typename Scalar>
VectorX<Scalar> eigenvalues(const HarperMatrix<Scalar>& m) {
  return spectrum(m, false).values;
}

/// max(beta_1, -beta_n) of M(n, xi, 0).
double beta_star(Index n, Index xi);

// ---------------------------------------------------------------------------
// Multiset comparison of spectra.

/// Max |a_i - b_i| after sorting both; infinity when sizes differ.
double multiset_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Each value of `small` is matched to the nearest unmatched value of `large`
/// (values processed in sorted order). Returns the largest matching distance.
double inclusion_gap(const Eigen::VectorXd& small, const Eigen::VectorXd& large);

// ---------------------------------------------------------------------------
// Symmetries and inclusions among the spectra S(n, xi, alpha).

/// max |M(n,xi,0) - M(n,n-xi,0)| entrywise (expected exactly 0).
double clause_a_entry_gap(Index n, Index xi);
/// Inclusion gap of S(n,xi,alpha) in S(kn,k xi,alpha). Requires k >= 1.
double clause_b_gap(Index n, Index xi, Index k, double alpha);
/// Distance of S(n,xi,alpha) from -S(n,xi,alpha+n/(2xi)). Requires n even.
double clause_c_gap(Index n, Index xi, double alpha);
/// Inclusion gap of S(n,xi,alpha) in -S(2n,2xi,alpha+n/(2xi)). Requires n odd.
double clause_d_gap(Index n, Index xi, double alpha);

struct Prop41Report {
  double a_gap = 0.0;
  double b_gap = 0.0;
  std::optional<double> c_gap;  ///< n even only
  std::optional<double> d_gap;  ///< n odd only
  bool a_ok = false;
  bool b_ok = false;
  bool c_ok = true;
  bool d_ok = true;

  bool all_ok() const { return a_ok && b_ok && c_ok && d_ok; }
};

/// Runs every clause applicable to n; (a) must hold entrywise, (b) and (d)
/// within inclusion_tol, (c) within symmetry_tol.
Prop41Report check_prop41(Index n, Index xi, Index k, double alpha, double inclusion_tol = 1e-8,
                          double symmetry_tol = 1e-10);

/// ||F_n M(1) - M(1) F_n||_F with (F_n)_{jk} = exp(2 pi i jk/n)/sqrt(n).
double dft_commutator(Index n);

// ---------------------------------------------------------------------------

struct SweepRow {
  Index xi;
  double beta_top;
  double beta_bottom;
  double beta_star;
  double max_residual;
};

struct SpectrumSweep {
  Index n;
  double alpha;
  std::vector<SweepRow> rows;
  Spectrum<double> base;  ///< full spectrum of M(n, 1, alpha)
};

/// Rows for xi in [xi_lo, xi_hi] plus the full spectrum of M(1).
SpectrumSweep spectrum_sweep(Index n, Index xi_lo, Index xi_hi, double alpha = 0.0, unsigned jobs = 1);
inline SpectrumSweep spectrum_sweep(Index n) { return spectrum_sweep(n, 1, n - 1); }

}  // namespace hmix

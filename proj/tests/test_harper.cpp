#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hmix/harper.hpp"

using namespace hmix;

namespace {

constexpr double kPi = std::numbers::pi;

// Cyclic Jacobi rotations on a dense symmetric matrix; independent of Eigen's
// tridiagonal QR path. Returns eigenvalues in descending order.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> r(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return r;
}

}  // namespace

TEST_CASE("cosine family entries") {
  const auto m = build_harper(4, 1);
  const Eigen::Vector4d want(0.5, 0.0, -0.5, 0.0);
  CHECK((m.diagonal() - want).cwiseAbs().maxCoeff() < 1e-16);
  const auto d = m.dense();
  CHECK(d(0, 1) == 0.25);
  CHECK(d(0, 3) == 0.25);
  CHECK(d(3, 0) == 0.25);
  CHECK(d(0, 2) == 0.0);
  CHECK(d.isApprox(d.transpose()));

  // n = 3: neighbours and corners are distinct positions, every off-diagonal entry is 1/4.
  const auto m3 = build_harper(3, 1).dense();
  CHECK(m3(0, 1) == 0.25);
  CHECK(m3(0, 2) == 0.25);
  CHECK(m3(1, 2) == 0.25);

  for (Index xi = 1; xi < 150; ++xi) {
    const auto h = build_harper(150, xi);
    const Eigen::VectorXd rows = (0.5 * Eigen::MatrixXd::Identity(150, 150) + h.dense()).rowwise().sum();
    CHECK(rows.minCoeff() >= 0.5 - 1e-15);
    CHECK(rows.maxCoeff() <= 1.5 + 1e-15);
    CHECK(h.diagonal().cwiseAbs().maxCoeff() <= 0.5);
  }
  CHECK_THROWS_AS(build_harper(2, 1), std::invalid_argument);
}

TEST_CASE("general profiles") {
  const Index n = 12;
  const auto zero = build_general(Eigen::VectorXd::Zero(n));
  std::vector<double> want;
  for (Index j = 0; j < n; ++j) want.push_back(0.5 * std::cos(2 * kPi * j / n));
  std::sort(want.begin(), want.end(), std::greater<>());
  const auto ev = eigenvalues(zero);
  for (Index i = 0; i < n; ++i) CHECK(ev(i) == doctest::Approx(want[static_cast<std::size_t>(i)]).epsilon(1e-13));

  const auto cos = build_harper(n, 5, 0.3);
  CHECK(build_general(cos.diagonal()).dense() == cos.dense());

  Eigen::VectorXd two(n);
  for (Index j = 0; j < n; ++j) two(j) = 0.25 * std::cos(2 * kPi * j / n) + 0.25 * std::cos(4 * kPi * j / n);
  CHECK_NOTHROW(build_general(two));

  Eigen::VectorXd bad = Eigen::VectorXd::Zero(n);
  bad(3) = 0.51;
  CHECK_THROWS_AS(build_general(bad), std::invalid_argument);
  CHECK_THROWS_AS(build_general(Eigen::VectorXd::Zero(2)), std::invalid_argument);
}

TEST_CASE("n = 3 spectrum from the characteristic cubic") {
  // [[1/2,1/4,1/4],[1/4,-1/4,1/4],[1/4,1/4,-1/4]] has trace 0, so its
  // characteristic polynomial is l^3 + p l + q with p the sum of principal
  // 2x2 minors and q = -det.
  const double a = 0.5, b = -0.25, c = -0.25, o = 0.25;
  const double p = (a * b - o * o) + (a * c - o * o) + (b * c - o * o);
  const double det = a * (b * c - o * o) - o * (o * c - o * o) + o * (o * o - b * o);
  const double q = -det;
  const double r = 2.0 * std::sqrt(-p / 3.0);
  const double phi = std::acos(3.0 * q / (p * r)) / 3.0;
  std::vector<double> roots;
  for (int k = 0; k < 3; ++k) roots.push_back(r * std::cos(phi - 2.0 * kPi * k / 3.0));
  std::sort(roots.begin(), roots.end(), std::greater<>());

  const auto s = spectrum(build_harper(3, 1));
  for (int i = 0; i < 3; ++i) CHECK(s.values(i) == doctest::Approx(roots[static_cast<std::size_t>(i)]).epsilon(1e-13));
  CHECK(s.max_residual() < 1e-14);
}

TEST_CASE("zero-diagonal n = 6 spectrum") {
  const auto ev = eigenvalues(build_general(Eigen::VectorXd::Zero(6)));
  const double want[] = {0.5, 0.25, 0.25, -0.25, -0.25, -0.5};
  for (int i = 0; i < 6; ++i) CHECK(ev(i) == doctest::Approx(want[i]).epsilon(1e-14));
}

TEST_CASE("spectrum against the Jacobi oracle") {
  for (Index n : {3, 7, 16, 31, 60})
    for (Index xi : {Index(1), n / 3 + 1, n - 1})
      for (double alpha : {0.0, 0.37}) {
        const auto m = build_harper(n, xi, alpha);
        const auto ours = eigenvalues(m);
        const auto ref = jacobi_eigenvalues(to_rows(m.dense()));
        for (Index i = 0; i < n; ++i) REQUIRE(std::abs(ours(i) - ref[static_cast<std::size_t>(i)]) < 1e-12);
      }
}

TEST_CASE("spectrum invariants") {
  for (Index xi = 1; xi <= 74; ++xi) {
    const auto m = build_harper(150, xi);
    const auto s = spectrum(m);
    CHECK(std::abs(s.values.sum() - m.diagonal().sum()) < 1e-9);
    CHECK(s.max_residual() <= 1e-10);
    CHECK(s.values(0) < 1.0);
    CHECK(s.bottom() > -1.0);
    CHECK(s.values(0) <= m.diagonal().maxCoeff() + 0.5);
    CHECK(s.bottom() >= m.diagonal().minCoeff() - 0.5);
    for (Index i = 1; i < 150; ++i) CHECK(s.values(i - 1) >= s.values(i));
  }
  for (Index n : {500, 1000}) CHECK(spectrum(build_harper(n, 3, 0.25)).max_residual() <= 1e-10);
}

TEST_CASE("scalar-templated matrices") {
  const auto md = HarperMatrix<double>::cosine(40, 3, 0.5);
  const auto mf = HarperMatrix<float>::cosine(40, 3, 0.5f);
  const auto ml = HarperMatrix<long double>::cosine(40, 3, 0.5L);
  const auto ed = eigenvalues(md);
  const auto ef = eigenvalues(mf);
  const auto el = eigenvalues(ml);
  for (Index i = 0; i < 40; ++i) {
    CHECK(std::abs(double(ef(i)) - ed(i)) < 1e-5);
    CHECK(std::abs(double(el(i)) - ed(i)) < 1e-13);
  }
  const Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(40, -1.0, 1.0);
  CHECK((md.apply(v) - md.dense() * v).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("beta star") {
  for (Index xi = 1; xi < 150; ++xi) CHECK(beta_star(150, xi) == beta_star(150, 150 - xi));
  CHECK(beta_star(150, 1) < 1.0);
  CHECK(beta_star(150, 1) > beta_star(150, 2));
}

TEST_CASE("symmetries and inclusions") {
  SUBCASE("(a) xi and n - xi give equal matrices") {
    for (Index n : {9, 10, 150})
      for (Index xi = 1; xi < n; ++xi) REQUIRE(clause_a_entry_gap(n, xi) == 0.0);
    CHECK(multiset_distance(eigenvalues(build_harper(9, 2)), eigenvalues(build_harper(9, 7))) == 0.0);
  }
  SUBCASE("(b) juxtaposition") {
    CHECK(clause_b_gap(5, 1, 3, 0.0) < 1e-8);
    CHECK(clause_b_gap(8, 3, 2, 0.4) < 1e-8);
    CHECK_THROWS_AS(clause_b_gap(5, 1, 0, 0.0), std::invalid_argument);
  }
  SUBCASE("(c) even n negation") {
    for (Index n : {6, 10, 24})
      for (Index xi = 1; xi < n; ++xi) CHECK(clause_c_gap(n, xi, 0.0) < 1e-10);
    CHECK_THROWS_AS(clause_c_gap(7, 1, 0.0), std::invalid_argument);
  }
  SUBCASE("(d) odd n inclusion in the doubled negated spectrum") {
    CHECK(clause_d_gap(7, 1, 0.0) < 1e-8);
    for (Index xi = 1; xi < 11; ++xi) CHECK(clause_d_gap(11, xi, 0.0) < 1e-8);
    CHECK_THROWS_AS(clause_d_gap(8, 1, 0.0), std::invalid_argument);
  }
  SUBCASE("report") {
    const auto odd = check_prop41(9, 2, 3, 0.0);
    CHECK(odd.all_ok());
    CHECK(odd.d_gap.has_value());
    CHECK_FALSE(odd.c_gap.has_value());
    const auto even = check_prop41(10, 3, 2, 0.25);
    CHECK(even.all_ok());
    CHECK(even.c_gap.has_value());
  }
  SUBCASE("matching helpers") {
    Eigen::VectorXd small(2), large(4);
    small << 0.1, 0.5;
    large << 0.5, 0.3, 0.1000001, -0.2;
    CHECK(inclusion_gap(small, large) == doctest::Approx(1e-7));
    CHECK(std::isinf(multiset_distance(small, large)));
  }
}

TEST_CASE("DFT commutes with M(1)") {
  CHECK(dft_commutator(3) < 1e-13);
  CHECK(dft_commutator(8) < 1e-12);
  CHECK(dft_commutator(150) < 1e-10);
  CHECK(dft_commutator(64) < 1e-10 * 64);
}

TEST_CASE("spectrum sweep") {
  const auto s = spectrum_sweep(150);
  REQUIRE(s.rows.size() == 149);
  CHECK(s.base.values.size() == 150);
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    const auto& r = s.rows[i];
    const auto& mirror = s.rows[s.rows.size() - 1 - i];
    CHECK(r.xi + mirror.xi == 150);
    CHECK(r.beta_top == mirror.beta_top);
    CHECK(r.beta_bottom == mirror.beta_bottom);
    CHECK(r.max_residual <= 1e-10);
  }
  const auto best = std::max_element(s.rows.begin(), s.rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.beta_top < b.beta_top; });
  CHECK((best->xi == 1 || best->xi == 149));

  const auto par = spectrum_sweep(60, 1, 59, 0.0, 3);
  const auto seq = spectrum_sweep(60, 1, 59, 0.0, 1);
  for (std::size_t i = 0; i < par.rows.size(); ++i) CHECK(par.rows[i].beta_top == seq.rows[i].beta_top);
  CHECK_THROWS_AS(spectrum_sweep(10, 0, 5), std::invalid_argument);
}

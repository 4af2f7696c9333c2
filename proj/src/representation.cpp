#include "hmix/representation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace hmix {

namespace {

/// q_n^e.
Complex root_of_unity(Index e, Index n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(e, n)) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

/// Exponent of q_n in the (j, j+x) entry of rho_{a,b,c}(x,y,z).
Index entry_exponent(const IrrepLabel& l, const GroupElement& g, Index j) {
  const Index central = mod(l.c * mod(g.y * j + g.z, l.m), l.m);
  return mod(l.a * g.x + l.b * g.y + (l.n / l.m) * central, l.n);
}

void check_modulus(const IrrepLabel& label, const GroupElement& g) {
  if (label.n != g.n) throw std::invalid_argument("representation: label and element moduli differ");
}

}  // namespace

void IrrepLabel::validate() const {
  if (n < 1 || m < 1 || n % m != 0) throw std::invalid_argument("IrrepLabel: m must divide n");
  const Index q = n / m;
  if (a < 0 || a >= q || b < 0 || b >= q) throw std::invalid_argument("IrrepLabel: a, b out of range");
  if (m == 1) {
    if (c != 0) throw std::invalid_argument("IrrepLabel: c must be 0 for m = 1");
  } else if (c < 1 || c >= m || std::gcd(c, m) != 1) {
    throw std::invalid_argument("IrrepLabel: c must be a unit mod m");
  }
}

std::vector<Index> divisors(Index n) {
  std::vector<Index> out;
  for (Index d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

Index euler_phi(Index n) {
  Index result = n;
  Index rest = n;
  for (Index p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    result -= result / p;
  }
  if (rest > 1) result -= result / rest;
  return result;
}

Index irrep_count(Index n, Index m) {
  if (n % m != 0) return 0;
  return (n / m) * (n / m) * euler_phi(m);
}

std::int64_t dimension_square_sum(Index n) {
  std::int64_t total = 0;
  for (Index m : divisors(n)) total += static_cast<std::int64_t>(irrep_count(n, m)) * m * m;
  return total;
}

std::vector<IrrepLabel> enumerate_irreps(Index n) {
  if (n < 1) throw std::invalid_argument("enumerate_irreps: n must be positive");
  std::vector<IrrepLabel> labels;
  for (Index m : divisors(n)) {
    const Index q = n / m;
    for (Index a = 0; a < q; ++a)
      for (Index b = 0; b < q; ++b) {
        if (m == 1) {
          labels.push_back({n, 1, a, b, 0});
          continue;
        }
        for (Index c = 1; c < m; ++c)
          if (std::gcd(c, m) == 1) labels.push_back({n, m, a, b, c});
      }
  }
  return labels;
}

ComplexMatrix irrep_matrix(const IrrepLabel& label, const GroupElement& g) {
  check_modulus(label, g);
  const Index m = label.m;
  ComplexMatrix rho = ComplexMatrix::Zero(m, m);
  for (Index j = 0; j < m; ++j) rho(j, mod(j + g.x, m)) = root_of_unity(entry_exponent(label, g, j), label.n);
  return rho;
}

Complex character(const IrrepLabel& label, const GroupElement& g) {
  check_modulus(label, g);
  const Index m = label.m;
  if (g.x % m != 0 || g.y % m != 0) return {0.0, 0.0};
  const Index e = mod(label.a * g.x + label.b * g.y + (label.n / m) * mod(label.c * g.z, m), label.n);
  return root_of_unity(e, label.n) * static_cast<double>(m);
}

ComplexMatrix character_gram(Index n, Index cap) {
  if (n > cap) throw std::invalid_argument("character_gram: n exceeds the configured cap");
  const auto labels = enumerate_irreps(n);
  const auto count = static_cast<Eigen::Index>(labels.size());
  const auto order = static_cast<std::size_t>(n * n * n);

  ComplexMatrix gram = ComplexMatrix::Zero(count, count);
  constexpr std::size_t kChunk = 2048;
  for (std::size_t start = 0; start < order; start += kChunk) {
    const auto width = static_cast<Eigen::Index>(std::min(kChunk, order - start));
    ComplexMatrix block(count, width);
    for (Eigen::Index col = 0; col < width; ++col) {
      const auto g = GroupElement::from_index(start + static_cast<std::size_t>(col), n);
      for (Eigen::Index row = 0; row < count; ++row) block(row, col) = character(labels[static_cast<std::size_t>(row)], g);
    }
    gram.noalias() += block * block.adjoint();
  }
  return gram / static_cast<double>(order);
}

ComplexMatrix fourier_transform(const WalkMeasure& q, const IrrepLabel& label) {
  if (q.modulus() != label.n) throw std::invalid_argument("fourier_transform: modulus mismatch");
  label.validate();
  ComplexMatrix out = ComplexMatrix::Zero(label.m, label.m);
  for (const auto& atom : q.atoms()) out += atom.weight * irrep_matrix(label, atom.element);
  return out;
}

ComplexMatrix qhat_closed_form(const IrrepLabel& label) {
  label.validate();
  const Index m = label.m;
  if (m < 3) throw std::invalid_argument("qhat_closed_form: requires m >= 3");
  const Index n = label.n;
  const Complex up = root_of_unity(label.a, n);
  const Complex down = root_of_unity(-label.a, n);
  ComplexMatrix out = ComplexMatrix::Zero(m, m);
  for (Index j = 0; j < m; ++j) {
    const Index e = mod(label.b + (n / m) * mod(j * label.c, m), n);
    out(j, j) = root_of_unity(e, n) + root_of_unity(-e, n);
    out(j, mod(j + 1, m)) += up;
    out(j, mod(j - 1, m)) += down;
  }
  return 0.25 * out;
}

ComplexMatrix hermitian_power(const ComplexMatrix& a, long long k) {
  if (k < 0) throw std::invalid_argument("hermitian_power: negative exponent");
  if (k == 0) return ComplexMatrix::Identity(a.rows(), a.cols());
  if (k == 1) return a;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_power: eigensolver failed");
  Eigen::VectorXd powers = es.eigenvalues().unaryExpr([k](double v) { return std::pow(v, static_cast<double>(k)); });
  return es.eigenvectors() * powers.asDiagonal() * es.eigenvectors().adjoint();
}

FourierTable fourier_table(const WalkMeasure& q) {
  FourierTable table;
  for (const auto& label : enumerate_irreps(q.modulus())) table.push_back({label, fourier_transform(q, label)});
  return table;
}

FourierTable power_table(const FourierTable& table, long long k) {
  FourierTable out;
  out.reserve(table.size());
  for (const auto& entry : table) out.push_back({entry.label, hermitian_power(entry.transform, k)});
  return out;
}

namespace {

void require_complete_dual(const FourierTable& table, Index n) {
  std::int64_t dims = 0;
  std::vector<std::tuple<Index, Index, Index, Index>> keys;
  keys.reserve(table.size());
  for (const auto& entry : table) {
    const auto& l = entry.label;
    if (l.n != n) throw std::invalid_argument("fourier_inversion: mixed moduli in table");
    l.validate();
    if (entry.transform.rows() != l.m || entry.transform.cols() != l.m)
      throw std::invalid_argument("fourier_inversion: transform has wrong dimension");
    dims += static_cast<std::int64_t>(l.m) * l.m;
    keys.emplace_back(l.m, l.a, l.b, l.c);
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw std::invalid_argument("fourier_inversion: duplicate labels");
  if (dims != static_cast<std::int64_t>(n) * n * n) throw std::invalid_argument("fourier_inversion: incomplete dual");
}

double invert_at(const FourierTable& table, const GroupElement& g) {
  Complex acc{0.0, 0.0};
  for (const auto& entry : table) {
    const auto& l = entry.label;
    // rho(g) is monomial: tr(A rho(g)^*) = sum_j A(j, j+x) conj(rho(g)(j, j+x)).
    Complex trace{0.0, 0.0};
    for (Index j = 0; j < l.m; ++j)
      trace += entry.transform(j, mod(j + g.x, l.m)) * std::conj(root_of_unity(entry_exponent(l, g, j), l.n));
    acc += static_cast<double>(l.m) * trace;
  }
  const double order = static_cast<double>(g.n) * static_cast<double>(g.n) * static_cast<double>(g.n);
  acc /= order;
  if (std::abs(acc.imag()) > 1e-10) throw std::runtime_error("fourier_inversion: non-real result");
  return acc.real();
}

}  // namespace

double fourier_inversion(const FourierTable& table, const GroupElement& g) {
  require_complete_dual(table, g.n);
  return invert_at(table, g);
}

DistributionTable fourier_inversion_table(const FourierTable& table) {
  if (table.empty()) throw std::invalid_argument("fourier_inversion: empty table");
  const Index n = table.front().label.n;
  require_complete_dual(table, n);
  DistributionTable out(n);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = invert_at(table, GroupElement::from_index(i, n));
  return out;
}

double UbTerms::tv_bound() const { return 0.5 * std::sqrt(total()); }

UpperBoundLemma::UpperBoundLemma(Index n) : n_(n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("Upper Bound Lemma: n must be odd and >= 3");
  const auto q = WalkMeasure::canonical(n);
  for (const auto& label : enumerate_irreps(n)) {
    if (label.is_trivial()) continue;
    const ComplexMatrix transform = fourier_transform(q, label);
    if (label.m == 1) {
      const double lambda = transform(0, 0).real();
      one_dim_.push_back({1.0, lambda * lambda});
      continue;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(transform, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("Upper Bound Lemma: eigensolver failed");
    for (double lambda : es.eigenvalues()) higher_.push_back({static_cast<double>(label.m), lambda * lambda});
  }
}

UbTerms UpperBoundLemma::terms(long long k) const {
  if (k < 0) throw std::invalid_argument("Upper Bound Lemma: k must be nonnegative");
  auto sum = [k](const std::vector<Mode>& modes) {
    double s = 0.0;
    for (const auto& mode : modes) s += mode.weight * std::pow(mode.lambda_sq, static_cast<double>(k));
    return s;
  };
  return {sum(one_dim_), sum(higher_)};
}

UbTerms ub_lemma_bound(Index n, long long k) { return UpperBoundLemma(n).terms(k); }

}  // namespace hmix

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "hmix/group.hpp"

using namespace hmix;

namespace {

GroupElement random_element(std::mt19937_64& rng, Index n) {
  std::uniform_int_distribution<Index> d(0, n - 1);
  return {d(rng), d(rng), d(rng), n};
}

// Q^{*2} by listing all 16 ordered pairs of generators.
DistributionTable two_step_oracle(Index n) {
  const GroupElement gens[] = {{1, 0, 0, n}, {n - 1, 0, 0, n}, {0, 1, 0, n}, {0, n - 1, 0, n}};
  DistributionTable t(n);
  for (const auto& s1 : gens)
    for (const auto& s2 : gens) t[mul(s2, s1).index()] += 1.0 / 16.0;
  return t;
}

}  // namespace

TEST_CASE("mul follows the Heisenberg law") {
  CHECK(mul({1, 0, 0, 5}, {0, 1, 0, 5}) == GroupElement{1, 1, 1, 5});
  CHECK(mul({0, 1, 0, 5}, {1, 0, 0, 5}) == GroupElement{1, 1, 0, 5});
  CHECK(mul({4, 3, 2, 5}, {3, 4, 4, 5}) == GroupElement{2, 2, 2, 5});  // z: 2 + 4 + 16 = 22
  CHECK_THROWS_AS(mul({1, 0, 0, 5}, {1, 0, 0, 6}), std::invalid_argument);
}

TEST_CASE("identity and inverses") {
  std::mt19937_64 rng(11);
  for (Index n : {3, 5, 8}) {
    const auto e = GroupElement::identity(n);
    for (int t = 0; t < 100; ++t) {
      const auto a = random_element(rng, n);
      CHECK(mul(a, e) == a);
      CHECK(mul(e, a) == a);
      CHECK(mul(a, inv(a)) == e);
      CHECK(mul(inv(a), a) == e);
    }
    CHECK(inv(e) == e);
  }
  CHECK(inv({1, 1, 0, 5}) == GroupElement{4, 4, 1, 5});
}

TEST_CASE("associativity") {
  const Index n = 3;
  for (std::size_t i = 0; i < 27; ++i)
    for (std::size_t j = 0; j < 27; ++j)
      for (std::size_t k = 0; k < 27; ++k) {
        const auto a = GroupElement::from_index(i, n), b = GroupElement::from_index(j, n), c = GroupElement::from_index(k, n);
        REQUIRE(mul(mul(a, b), c) == mul(a, mul(b, c)));
      }
  std::mt19937_64 rng(5);
  for (Index m : {5, 8, 11})
    for (int t = 0; t < 500; ++t) {
      const auto a = random_element(rng, m), b = random_element(rng, m), c = random_element(rng, m);
      REQUIRE(mul(mul(a, b), c) == mul(a, mul(b, c)));
    }
}

TEST_CASE("flat index round trip") {
  const Index n = 6;
  for (std::size_t i = 0; i < 216; ++i) CHECK(GroupElement::from_index(i, n).index() == i);
  CHECK(GroupElement(2, 3, 4, 6).index() == 2 + 6 * 3 + 36 * 4);
  CHECK(GroupElement(-1, 7, -13, 6) == GroupElement{5, 1, 5, 6});
}

TEST_CASE("degenerate moduli are allowed in the group") {
  CHECK(mul({0, 0, 0, 1}, {0, 0, 0, 1}) == GroupElement::identity(1));
  CHECK(mul({1, 1, 0, 2}, {1, 1, 0, 2}) == GroupElement{0, 0, 1, 2});
  CHECK(DistributionTable::uniform(2).size() == 8);
}

TEST_CASE("canonical measure") {
  const auto q = canonical_measure(5);
  CHECK(q.atoms().size() == 4);
  double total = 0.0;
  for (const auto& a : q.atoms()) {
    CHECK(a.weight == 0.25);
    total += a.weight;
    CHECK(q.weight(inv(a.element)) == a.weight);
  }
  CHECK(total == 1.0);
  CHECK(q.is_symmetric());
  CHECK(q.weight({1, 1, 0, 5}) == 0.0);
  CHECK_THROWS_AS(canonical_measure(2), std::invalid_argument);
  CHECK_THROWS_AS(WalkMeasure(5, {{{1, 0, 0, 5}, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(WalkMeasure(5, {{{1, 0, 0, 5}, 1.5}, {{2, 0, 0, 5}, -0.5}}), std::invalid_argument);
}

TEST_CASE("convolution") {
  const Index n = 5;
  const auto q = canonical_measure(n);

  SUBCASE("delta convolved with Q is Q") {
    const auto t = convolve(DistributionTable::point_mass(GroupElement::identity(n)), q);
    const auto ref = DistributionTable::from_measure(q);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i] == ref[i]);
  }
  SUBCASE("two steps against the 16-path enumeration") {
    const auto t = convolution_power(q, 2);
    const auto ref = two_step_oracle(n);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i] == doctest::Approx(ref[i]).epsilon(1e-15));
    CHECK(t.at(GroupElement::identity(n)) == 0.25);
    const auto z = t.center_marginal();
    CHECK(z[0] == doctest::Approx(0.75));
    CHECK(z[1] == doctest::Approx(0.125));
    CHECK(z[4] == doctest::Approx(0.125));
    CHECK(z[2] == 0.0);
    CHECK(z[3] == 0.0);
  }
  SUBCASE("parity forbids odd returns") {
    const auto q7 = canonical_measure(7);
    for (int k : {1, 3, 5}) CHECK(convolution_power(q7, k).at(GroupElement::identity(7)) == 0.0);
  }
  SUBCASE("k = 0 and k = 1") {
    const auto t0 = convolution_power(q, 0);
    CHECK(t0.at(GroupElement::identity(n)) == 1.0);
    CHECK(t0.total_mass() == 1.0);
    const auto t1 = convolution_power(q, 1);
    const auto ref = DistributionTable::from_measure(q);
    for (std::size_t i = 0; i < t1.size(); ++i) CHECK(t1[i] == ref[i]);
  }
  SUBCASE("mass is preserved over 1000 steps") {
    auto t = DistributionTable::point_mass(GroupElement::identity(n));
    for (int k = 0; k < 1000; ++k) t = convolve(t, q);
    CHECK(std::abs(t.total_mass() - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(convolve(DistributionTable::uniform(4), q), std::invalid_argument);
  CHECK_THROWS_AS(convolution_power(q, -1), std::invalid_argument);
}

TEST_CASE("convolution agrees with a push-forward oracle") {
  // (Q * P)(g) = sum_h Q(h) P(g h^{-1}) moves the mass at p to p s.
  const Index n = 4;
  const auto q = canonical_measure(n);
  std::mt19937_64 rng(3);
  std::vector<double> p(64);
  double total = 0.0;
  for (auto& v : p) total += (v = std::uniform_real_distribution<double>(0, 1)(rng));
  for (auto& v : p) v /= total;
  const DistributionTable src(n, p);
  DistributionTable ref(n);
  for (std::size_t i = 0; i < 64; ++i)
    for (const auto& a : q.atoms()) ref[mul(GroupElement::from_index(i, n), a.element).index()] += a.weight * p[i];
  const auto got = convolve(src, q);
  for (std::size_t i = 0; i < 64; ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-14));
}

TEST_CASE("from the identity, left and right products give the same law") {
  const Index n = 5;
  const auto q = canonical_measure(n);
  DistributionTable left = DistributionTable::point_mass(GroupElement::identity(n));
  for (int k = 0; k < 6; ++k) {
    DistributionTable next(n);
    for (std::size_t i = 0; i < left.size(); ++i)
      for (const auto& a : q.atoms()) next[mul(a.element, GroupElement::from_index(i, n)).index()] += a.weight * left[i];
    left = next;
  }
  const auto right = convolution_power(q, 6);
  for (std::size_t i = 0; i < right.size(); ++i) CHECK(right[i] == doctest::Approx(left[i]).epsilon(1e-14));
}

TEST_CASE("total variation") {
  CHECK(tv_distance(DistributionTable::uniform(5)) == doctest::Approx(0.0));
  CHECK(tv_distance(DistributionTable::point_mass(GroupElement::identity(3))) == doctest::Approx(1.0 - 1.0 / 27.0).epsilon(1e-15));

  const auto q = canonical_measure(5);
  auto t = convolution_power(q, 2);
  double prev = tv_distance(t);
  for (int k = 4; k <= 200; k += 2) {
    t = convolve(convolve(t, q), q);
    const double cur = tv_distance(t);
    CHECK(cur <= prev + 1e-15);
    prev = cur;
  }
  for (Index n : {3, 5, 7}) CHECK(tv_distance(convolution_power(canonical_measure(n), static_cast<int>(20 * n * n))) < 1e-6);
}

TEST_CASE("serialization") {
  const auto t = convolution_power(canonical_measure(4), 3);

  std::stringstream csv;
  write_csv(csv, t);
  std::string first;
  std::getline(std::stringstream(csv.str()), first);
  CHECK(first == "x,y,z,prob");
  const auto back = read_csv(csv);
  REQUIRE(back.modulus() == 4);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(back[i] == t[i]);

  std::stringstream bin(std::ios::in | std::ios::out | std::ios::binary);
  write_binary(bin, t);
  const std::string bytes = bin.str();
  REQUIRE(bytes.size() == 16 + 8 * 64);
  CHECK(bytes.substr(0, 4) == "HSB1");
  std::uint32_t n32;
  std::uint64_t len;
  std::memcpy(&n32, bytes.data() + 4, 4);
  std::memcpy(&len, bytes.data() + 8, 8);
  CHECK(n32 == 4);
  CHECK(len == 64);
  const auto back2 = read_binary(bin);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(back2[i] == t[i]);

  std::stringstream bad("XXXX");
  CHECK_THROWS(read_binary(bad));
  std::stringstream badcsv("x,y,z,prob\n0,0,0,0.5\n1,0,0,0.5\n");
  CHECK_THROWS(read_csv(badcsv));
}

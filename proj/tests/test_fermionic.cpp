#include "doctest.h"

#include "krq/fermionic.hpp"

using namespace krq;

namespace {

Weight w(std::initializer_list<int> xs) { return Weight(xs); }

BigInt table_dim(const RootDatum& d, const DecompositionTable& t) {
  BigInt s = 0;
  for (const auto& [lam, m] : t) s += m * dim_irrep(d, lam);
  return s;
}

// G2 dimension polynomials, transcribed as rational coefficient lists (constant term first).
Rational eval(const std::vector<Rational>& c, long x) {
  Rational s = 0, p = 1;
  for (const auto& k : c) {
    s += k * p;
    p *= x;
  }
  return s;
}
const std::vector<Rational> kQ1 = {1, Rational(53, 15), Rational(301, 60), Rational(11, 3), Rational(35, 24),
                                   Rational(3, 10), Rational(1, 40)};
const std::vector<Rational> kQ2[3] = {
    {1, Rational(409, 60), Rational(71491, 3600), Rational(1311, 40), Rational(98231, 2880), Rational(1409, 60),
     Rational(39133, 3600), Rational(67, 20), Rational(211, 320), Rational(3, 40), Rational(3, 800)},
    {7, Rational(556, 15), Rational(307801, 3600), Rational(27223, 240), Rational(276809, 2880), Rational(6539, 120),
     Rational(75523, 3600), Rational(217, 40), Rational(289, 320), Rational(7, 80), Rational(3, 800)},
    {34, Rational(8947, 60), Rational(1032751, 3600), Rational(9599, 30), Rational(661559, 2880), Rational(6667, 60),
     Rational(132223, 3600), Rational(41, 5), Rational(379, 320), Rational(1, 10), Rational(3, 800)}};

}  // namespace

TEST_CASE("partitions") {
  CHECK(partitions(0).size() == 1);
  CHECK(partitions(5).size() == 7);
  CHECK(partitions(10).size() == 42);
  for (const auto& p : partitions(6)) {
    int s = 0;
    for (size_t i = 1; i < p.size(); ++i) s += static_cast<int>(i) * p[i];
    CHECK(s == 6);
  }
}

TEST_CASE("vacancy numbers") {
  auto g2 = root_datum("G2");
  NuSpec nu{{{1, 1}, 1}};
  MConfig empty(2, std::vector<int>(1, 0));
  for (int i = 1; i <= 4; ++i) CHECK(vacancy(*g2, NuSpec{{{2, 3}, 1}}, empty, 2, i) == std::min(i, 3));
  MConfig one = empty;
  one[0] = {0, 1};
  CHECK(vacancy(*g2, nu, one, 1, 1) == -1);
  // widening nu beyond i leaves p_i unchanged
  CHECK(vacancy(*g2, NuSpec{{{1, 5}, 1}}, one, 1, 1) == vacancy(*g2, NuSpec{{{1, 9}, 1}}, one, 1, 1));
}

TEST_CASE("basic multiplicities") {
  auto g2 = root_datum("G2");
  NuSpec nu{{{1, 1}, 1}};
  CHECK(fermionic_multiplicity(*g2, nu, w({1, 0})) == 1);
  CHECK(fermionic_multiplicity(*g2, nu, Weight{}) == 1);
  CHECK(fermionic_multiplicity(*g2, nu, w({0, 1})) == 0);
  CHECK(fermionic_multiplicity(*g2, nu, w({2, 0})) == 0);
  CHECK_THROWS(fermionic_multiplicity(*g2, nu, w({-1, 1})));
}

TEST_CASE("KR decompositions of small modules") {
  auto g2 = root_datum("G2");
  CHECK(kr_decomposition(*g2, 1, 0) == DecompositionTable{{Weight{}, 1}});
  CHECK(kr_decomposition(*g2, 1, 1) == DecompositionTable{{Weight{}, 1}, {w({1, 0}), 1}});
  CHECK(kr_decomposition(*g2, 2, 1) == DecompositionTable{{w({0, 1}), 1}});
  CHECK(kr_decomposition(*g2, 1, 2) == DecompositionTable{{Weight{}, 1}, {w({1, 0}), 1}, {w({2, 0}), 1}});
  for (int r = 1; r <= 4; ++r) {
    auto d = root_datum("A" + std::to_string(r));
    for (int a = 1; a <= r; ++a)
      for (int m = 0; m <= 3; ++m)
        CHECK(kr_decomposition(*d, a, m) == DecompositionTable{{m * d->fundamental(a - 1), 1}});
  }
}

TEST_CASE("G2 dimensions agree with the closed-form polynomials") {
  auto g2 = root_datum("G2");
  for (int m = 0; m <= 4; ++m) CHECK(Rational(table_dim(*g2, kr_decomposition(*g2, 1, m))) == eval(kQ1, m));
  for (int m = 0; m <= 7; ++m)
    CHECK(Rational(table_dim(*g2, kr_decomposition(*g2, 2, m))) == eval(kQ2[m % 3], m / 3));
}

TEST_CASE("top weight has multiplicity one and all multiplicities are positive") {
  for (const auto& name : {"B3", "C3", "D4", "F4", "G2"}) {
    auto d = root_datum(name);
    for (int a = 1; a <= d->rank(); ++a) {
      auto t = kr_decomposition(*d, a, 2);
      CHECK(t.at(2 * d->fundamental(a - 1)) == 1);
      for (const auto& [lam, m] : t) CHECK(m > 0);
    }
  }
}

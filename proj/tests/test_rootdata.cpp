#include "doctest.h"

#include <map>
#include <set>

#include "krq/rootdata.hpp"

using namespace krq;

namespace {

Weight w(std::initializer_list<int> xs) { return Weight(xs); }

const std::vector<std::string> kAllTypes = {"A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4",
                                            "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2"};

}  // namespace

TEST_CASE("G2 and A2 Cartan data") {
  auto g2 = root_datum("G2");
  CHECK(g2->cartan(0, 0) == 2);
  CHECK(g2->cartan(0, 1) == -1);
  CHECK(g2->cartan(1, 0) == -3);
  CHECK(g2->cartan(1, 1) == 2);
  CHECK(g2->cartan_inv(0, 0) == 2);
  CHECK(g2->cartan_inv(0, 1) == 1);
  CHECK(g2->cartan_inv(1, 0) == 3);
  CHECK(g2->cartan_inv(1, 1) == 2);
  CHECK(g2->t(0) == 1);
  CHECK(g2->t(1) == 3);
  auto a2 = root_datum("A2");
  CHECK(a2->cartan(0, 1) == -1);
  CHECK(a2->cartan(1, 0) == -1);
  CHECK(a2->t(0) == 1);
  CHECK(a2->t(1) == 1);
}

TEST_CASE("F4 lengths and dual Coxeter number") {
  auto f4 = root_datum("F4");
  CHECK(f4->t(0) == 1);
  CHECK(f4->t(1) == 1);
  CHECK(f4->t(2) == 2);
  CHECK(f4->t(3) == 2);
  CHECK(f4->dual_coxeter() == 9);
}

TEST_CASE("dual Coxeter numbers and Weyl group orders match the classical tables") {
  std::map<std::string, std::pair<int, long>> expect = {
      {"A1", {2, 2}},        {"A4", {5, 120}},      {"B3", {5, 48}},     {"C3", {4, 48}},
      {"D4", {6, 192}},      {"D5", {8, 1920}},     {"E6", {12, 51840}}, {"E7", {18, 2903040}},
      {"E8", {30, 696729600}}, {"F4", {9, 1152}},   {"G2", {4, 12}}};
  for (const auto& [name, hv_w] : expect) {
    auto d = root_datum(name);
    CHECK_MESSAGE(d->dual_coxeter() == hv_w.first, name);
    CHECK_MESSAGE(d->weyl_group_order() == hv_w.second, name);
  }
}

TEST_CASE("invalid ranks are rejected") {
  CHECK_THROWS(LieType::parse("B1"));
  CHECK_THROWS(LieType::parse("D3"));
  CHECK_THROWS(LieType::parse("E5"));
  CHECK_THROWS(LieType::parse("F3"));
  CHECK_THROWS(LieType::parse("G3"));
  CHECK_THROWS(LieType::parse("X2"));
}

TEST_CASE("orbits") {
  auto g2 = root_datum("G2");
  CHECK(g2->orbit(Weight{}).size() == 1);
  CHECK(g2->orbit(w({1, 0})).size() == 6);
  CHECK(g2->orbit(w({0, 1})).size() == 6);
  CHECK(g2->orbit_size(w({0, 1})) == 6);
  auto e6 = root_datum("E6");
  CHECK(e6->orbit(w({0, 0, 0, 0, 0, 1})).size() == 72);
  // trivalent node: stabilizer A2 x A2 x A1; both arm ends: stabilizer D4
  CHECK(e6->orbit_size(w({0, 0, 1, 0, 0, 0})) == 720);
  CHECK(e6->orbit_size(w({1, 0, 0, 0, 1, 0})) == 270);
  CHECK(e6->orbit(w({0, 0, 1, 0, 0, 0})).size() == 720);
  CHECK(e6->orbit_size(Weight{}) == 1);
}

TEST_CASE("adjoint node of E6 is node 6 and theta is its fundamental weight") {
  CHECK(root_datum("E6")->theta() == w({0, 0, 0, 0, 0, 1}));
  CHECK(root_datum("E7")->theta() == w({1, 0, 0, 0, 0, 0, 0}));
  CHECK(root_datum("E8")->theta() == w({0, 0, 0, 0, 0, 0, 1, 0}));
  CHECK(root_datum("F4")->theta() == w({1, 0, 0, 0}));
  CHECK(root_datum("G2")->theta() == w({1, 0}));
}

TEST_CASE("dominant representative") {
  auto a1 = root_datum("A1");
  CHECK(a1->dominant_representative(w({-5})) == w({5}));
  auto g2 = root_datum("G2");
  Weight x = g2->reflect(0, g2->reflect(1, w({1, 0})));
  CHECK(g2->dominant_representative(x) == w({1, 0}));
  CHECK(g2->dominant_representative(w({2, 3})) == w({2, 3}));
}

TEST_CASE("dominance order examples") {
  auto g2 = root_datum("G2");
  CHECK(g2->dominance_leq(w({1, 0}), w({0, 3})));
  CHECK_FALSE(g2->dominance_leq(w({0, 3}), w({1, 0})));
  auto rc = g2->root_coordinates(w({-1, 3}));
  CHECK(rc[0] == 1);
  CHECK(rc[1] == 3);
  auto f4 = root_datum("F4");
  CHECK(f4->dominance_leq(w({1, 0, 0, 2}), w({0, 0, 2, 0})));
  auto r2 = f4->root_coordinates(w({-1, 0, 2, -2}));
  CHECK(r2[0] == 0);
  CHECK(r2[1] == 1);
  CHECK(r2[2] == 2);
  CHECK(r2[3] == 0);
}

TEST_CASE("inner products") {
  for (const auto& name : kAllTypes) {
    auto d = root_datum(name);
    CHECK(d->inner_product(d->theta(), d->theta()) == 2);
    for (int a = 0; a < d->rank(); ++a) {
      CHECK(d->inner_product(d->simple_root(a), d->simple_root(a)) == Rational(2) / d->t(a));
      for (int b = 0; b < d->rank(); ++b) {
        Rational expect = a == b ? Rational(1) / d->t(a) : Rational(0);
        CHECK(d->inner_product(d->simple_root(a), d->fundamental(b)) == expect);
        Rational cab = 2 * d->inner_product(d->simple_root(a), d->simple_root(b)) /
                       d->inner_product(d->simple_root(a), d->simple_root(a));
        CHECK(cab == d->cartan(a, b));
        CHECK(d->inner_product(d->fundamental(a), d->fundamental(b)) ==
              d->inner_product(d->fundamental(b), d->fundamental(a)));
      }
    }
  }
  auto g2 = root_datum("G2");
  CHECK(g2->inner_product(g2->simple_root(1), g2->simple_root(1)) == Rational(2, 3));
}

TEST_CASE("structural invariants over all types") {
  for (const auto& name : kAllTypes) {
    auto d = root_datum(name);
    int r = d->rank();
    // C * C^{-1} = I
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        Rational s = 0;
        for (int k = 0; k < r; ++k) s += d->cartan(i, k) * d->cartan_inv(k, j);
        CHECK(s == (i == j ? 1 : 0));
      }
    // s_a^2 = id and s_a(omega_b) = omega_b - delta_ab alpha_a
    Weight probe;
    for (int i = 0; i < r; ++i) probe[i] = 3 * i - 4;
    for (int a = 0; a < r; ++a) {
      CHECK(d->reflect(a, d->reflect(a, probe)) == probe);
      for (int b = 0; b < r; ++b) {
        Weight expect = d->fundamental(b);
        if (a == b) expect -= d->simple_root(a);
        CHECK(d->reflect(a, d->fundamental(b)) == expect);
      }
    }
    // theta is the unique maximal dominant positive root
    int dominant_roots_on_top = 0;
    for (const auto& rt : d->positive_roots()) {
      CHECK(d->dominance_leq(rt, d->theta()));
      if (d->is_dominant(rt) && rt == d->theta()) ++dominant_roots_on_top;
    }
    CHECK(dominant_roots_on_top == 1);
  }
}

TEST_CASE("orbit sizes agree with enumeration and orbits sum to zero") {
  for (const auto& name : {"A2", "A3", "A4", "B2", "B3", "C3", "D4", "D5", "E6", "F4", "G2"}) {
    auto d = root_datum(name);
    int r = d->rank();
    for (int mask = 0; mask < (1 << r); ++mask) {
      Weight lam;
      for (int i = 0; i < r; ++i) lam[i] = (mask >> i) & 1;
      if (d->orbit_size(lam) > 10000) continue;
      auto orb = d->orbit(lam);
      CHECK_MESSAGE(d->orbit_size(lam) == orb.size(), name);
      Weight sum;
      for (const auto& x : orb) sum += x;
      CHECK(sum.is_zero());
      CHECK(std::binary_search(orb.begin(), orb.end(), lam));
    }
  }
}

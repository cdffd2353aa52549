#include "doctest.h"

#include <set>

#include "krq/errors.hpp"
#include "krq/lpsf.hpp"
#include "krq/recurrence.hpp"

using namespace krq;

namespace {

Weight w(std::initializer_list<int> xs) { return Weight(xs); }

std::multiset<long> orbit_sizes(const RootDatum& d, const DiffOperator& op) {
  std::multiset<long> s;
  for (const auto& b : orbit_blocks(d, op)) s.insert(b.size.get_si());
  return s;
}

// Roots of an operator with steps 1 and 2 at doubled scale: a step-one factor
// (lambda) has root e^lambda, a step-two factor has the two roots +-e^{lambda/2}.
using SignedRoot = std::pair<Weight, int>;
std::set<SignedRoot> doubled_roots(const DiffOperator& op) {
  std::set<SignedRoot> out;
  for (const auto& [k, c] : op.factors()) {
    REQUIRE(c == 1);
    if (k.second == 1) {
      out.insert({2 * k.first, 1});
    } else {
      REQUIRE(k.second == 2);
      out.insert({k.first, 1});
      out.insert({k.first, -1});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("operator vocabulary") {
  auto a1 = root_datum("A1");
  auto op = node_operator(*a1, 1);
  CHECK(op.order() == 2);
  CHECK(op.factors().size() == 2);
  CHECK(op.factors().count({w({1}), 1}) == 1);
  CHECK(op.factors().count({w({-1}), 1}) == 1);
  auto c = expand_operator(*a1, op);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == LaurentPoly::constant(1));
  CHECK(c[1] == LaurentPoly::monomial(w({1}), -1) + LaurentPoly::monomial(w({-1}), -1));
  CHECK(c[2] == LaurentPoly::constant(1));
  CHECK_FALSE(op.has_multiple_roots());

  DiffOperator twice;
  twice.add(Weight{}, 1);
  twice.add(Weight{}, 2);  // (1 - Delta)(1 - Delta^2) has the double root 1
  CHECK(twice.has_multiple_roots());

  DiffOperator lopsided;
  lopsided.add(w({1}), 1);
  CHECK_THROWS_AS(orbit_blocks(*a1, lopsided), InvalidArgument);
}

TEST_CASE("operator tables") {
  auto g2 = root_datum("G2");
  auto t = lambda_tables(*g2, 2);
  CHECK(t.lambda == std::vector<Weight>{w({0, 1})});
  CHECK(t.lambda_prime == std::vector<Weight>{Weight{}, w({1, 0})});
  auto f4 = root_datum("F4");
  auto t3 = lambda_tables(*f4, 3);
  std::set<Weight> p3(t3.lambda_prime.begin(), t3.lambda_prime.end());
  CHECK(p3 == std::set<Weight>{Weight{}, w({1, 0, 0, 0}), w({2, 0, 0, 0}), w({0, 1, 0, 0}), w({0, 0, 0, 2}),
                               w({1, 0, 0, 2})});
  auto c4 = root_datum("C4");
  auto tc = lambda_tables(*c4, 3);
  CHECK(tc.lambda_prime == std::vector<Weight>{Weight{}, c4->fundamental(0), c4->fundamental(1)});
  CHECK(lambda_tables(*c4, 3, TableVariant::Corrected).lambda_prime ==
        std::vector<Weight>{Weight{}, 2 * c4->fundamental(0), 2 * c4->fundamental(1)});
  CHECK(lambda_tables(*c4, 4).lambda_prime.empty());
  auto b4 = root_datum("B4");
  CHECK(lambda_tables(*b4, 4).lambda_prime == std::vector<Weight>{Weight{}, b4->fundamental(1)});
  CHECK(lambda_tables(*b4, 3).lambda == std::vector<Weight>{b4->fundamental(0), b4->fundamental(2)});

  // simply-laced rows are the dominant weights of the fundamental representation
  auto e7 = root_datum("E7");
  auto t7 = lambda_tables(*e7, 3);
  CHECK(t7.lambda.size() == 9);
  CHECK_THROWS_AS(lambda_tables(*e7, 4), UncoveredNode);
  auto e8 = root_datum("E8");
  for (int a : {3, 4, 5, 8}) CHECK_THROWS_AS(node_operator(*e8, a), UncoveredNode);
  for (int a : {1, 2, 6, 7}) CHECK(operator_covered(*e8, a));
  auto t86 = lambda_tables(*e8, 6).lambda;
  std::set<Weight> e8n6(t86.begin(), t86.end());
  CHECK(e8n6 == std::set<Weight>{Weight{}, e8->fundamental(0), e8->fundamental(5), e8->fundamental(6)});
}

TEST_CASE("F4 orbit of omega_1 matches the printed list") {
  auto f4 = root_datum("F4");
  std::set<Weight> printed = {
      w({1, 0, 0, 0}),   w({-1, 0, 0, 0}),  w({1, -1, 0, 0}),  w({2, -1, 0, 0}),   w({-2, 1, 0, 0}),
      w({-1, 1, 0, 0}),  w({0, 1, -2, 0}),  w({0, -1, 2, 0}),  w({1, 0, 0, -2}),   w({0, 1, 0, -2}),
      w({-1, 0, 0, 2}),  w({0, -1, 0, 2}),  w({1, 1, -2, 0}),  w({-1, 2, -2, 0}),  w({1, -2, 2, 0}),
      w({-1, -1, 2, 0}), w({-1, 1, 0, -2}), w({-1, 0, 2, -2}), w({0, -1, 2, -2}),  w({1, -1, 0, 2}),
      w({1, 0, -2, 2}),  w({0, 1, -2, 2}),  w({1, -1, 2, -2}), w({-1, 1, -2, 2})};
  auto orb = f4->orbit(w({1, 0, 0, 0}));
  CHECK(std::set<Weight>(orb.begin(), orb.end()) == printed);
}

TEST_CASE("E6 operator orders") {
  auto e6 = root_datum("E6");
  std::vector<long> orders;
  for (int a = 1; a <= 6; ++a) orders.push_back(operator_order(*e6, a).get_si());
  CHECK(orders == std::vector<long>{27, 243, 1063, 243, 27, 73});
  auto op3 = node_operator(*e6, 3);
  CHECK(op3.order() == 1063);
  CHECK(orbit_sizes(*e6, op3) == std::multiset<long>{1, 72, 270, 720});
  auto g2 = root_datum("G2");
  CHECK(operator_order(*g2, 2) == 27);
  CHECK(node_operator(*g2, 2).order() == 27);
  auto f4 = root_datum("F4");
  for (int a = 1; a <= 4; ++a) CHECK(node_operator(*f4, a).order() == operator_order(*f4, a));
}

TEST_CASE("expanded coefficients") {
  for (const auto& [name, node] : {std::pair{"A2", 1}, std::pair{"B2", 1}, std::pair{"B2", 2}, std::pair{"G2", 1},
                                   std::pair{"C3", 3}, std::pair{"G2", 2}}) {
    auto d = root_datum(name);
    auto t = lambda_tables(*d, node);
    long nfac = 0;
    for (const auto& l : t.lambda) nfac += d->orbit_size(l).get_si();
    for (const auto& l : t.lambda_prime) nfac += d->orbit_size(l).get_si();
    auto op = node_operator(*d, node);
    auto c = expand_operator(*d, op);
    REQUIRE(static_cast<long>(c.size()) == op.order() + 1);
    CHECK(c.front() == LaurentPoly::constant(1));
    CHECK(c.back() == LaurentPoly::constant(nfac % 2 ? -1 : 1));
    for (const auto& ck : c) CHECK(is_w_invariant(*d, ck));
    // evaluation of the expansion agrees with the direct evaluated product
    auto pt = draw_points(d->rank(), 1, 3)[0];
    auto at = operator_coeffs_at(*d, op, pt);
    for (size_t k = 0; k < c.size(); ++k) CHECK(c[k].evaluate(pt.y) == at[k]);
  }
}

TEST_CASE("symbolic annihilation on small types") {
  auto a1 = root_datum("A1");
  auto r1 = verify_node_symbolic(*a1, 1, 8);
  CHECK(r1.residual_zero);
  CHECK(r1.m_checked.front() == 2);
  for (const auto& name : {"A2", "A3", "B2", "C2", "B3", "C3"}) {
    auto d = root_datum(name);
    for (int a = 1; a <= d->rank(); ++a) {
      int extra = d->rank() == 3 && d->type().family != Family::A ? 1 : 3;
      auto v = d->type().family == Family::C ? TableVariant::Corrected : TableVariant::Printed;
      auto r = verify_node_symbolic(*d, a, extra, v);
      CHECK_MESSAGE(r.residual_zero, std::string(name), " node ", a, " ", r.detail);
    }
  }
  auto g2 = root_datum("G2");
  auto seq = char_sequence(*g2, 1, 15);
  auto r = verify_recurrence_symbolic(*g2, node_operator(*g2, 1), seq, 7, 15);
  CHECK(r.order == 7);
  CHECK(r.residual_zero);
  CHECK(r.m_checked.size() == 9);
  auto d4 = root_datum("D4");
  for (int a : {1, 3, 4}) CHECK(verify_node_symbolic(*d4, a, 2).residual_zero);
}

TEST_CASE("a wrong operator leaves a residual") {
  auto g2 = root_datum("G2");
  DiffOperator op = node_operator(*g2, 1);
  op.add(Weight{}, 1, -1);  // drop the root 1
  auto seq = char_sequence(*g2, 1, 10);
  auto r = verify_recurrence_symbolic(*g2, op, seq, 6, 10);
  CHECK_FALSE(r.residual_zero);
  CHECK(r.first_failure.value() == 6);
  // a multiple of the right operator still annihilates: (1 - Delta^2) = (1 - Delta)(1 + Delta)
  DiffOperator multiple = node_operator(*g2, 1);
  multiple.add(Weight{}, 1, -1);
  multiple.add(Weight{}, 2);
  CHECK(verify_recurrence_symbolic(*g2, multiple, seq, 8, 10).residual_zero);
  CHECK_THROWS_AS(verify_recurrence_symbolic(*g2, op, seq, 3, 10), InvalidArgument);
}

TEST_CASE("evaluation mode") {
  auto a1 = root_datum("A1");
  auto ones = EvalPoint{{Rational(1)}};
  auto coeffs = operator_coeffs_at(*a1, node_operator(*a1, 1), ones);
  CHECK(coeffs == std::vector<Rational>{1, -2, 1});
  CHECK(verify_recurrence_eval(coeffs, eval_sequence(*a1, 1, ones, 6), 2, 6).residual_zero);

  auto g2 = root_datum("G2");
  auto pts = draw_points(2, 3, 2024);
  auto r = verify_node_eval(*g2, 2, pts, 10);
  CHECK(r.order == 27);
  CHECK(r.points == 3);
  CHECK(r.m_checked.front() == 27);
  CHECK(r.m_checked.back() == 37);
  CHECK(r.residual_zero);
  auto f4 = root_datum("F4");
  CHECK(verify_node_eval(*f4, 4, draw_points(4, 3, 7), 10).residual_zero);
}

TEST_CASE("printed C_r rows fail, doubled rows pass") {
  auto c3 = root_datum("C3");
  auto pts = draw_points(3, 2, 5);
  auto printed = verify_node_eval(*c3, 2, pts, 2, TableVariant::Printed);
  CHECK_FALSE(printed.residual_zero);
  CHECK(printed.first_failure.value() == 26);
  CHECK(verify_node_eval(*c3, 2, pts, 2, TableVariant::Corrected).residual_zero);
  CHECK(check_table_properties(*c3, 2, TableVariant::Printed).ok());
  CHECK(check_table_properties(*c3, 2, TableVariant::Corrected).ok());
}

TEST_CASE("lattice point operators agree with the operator tables") {
  for (const auto& name : {"A3", "B3", "B4", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2"}) {
    auto d = root_datum(name);
    for (int a = 1; a <= d->rank(); ++a) {
      if (!lpsf_covered(*d, a)) continue;
      CHECK_MESSAGE(lpsf_operator(*d, a) == node_operator(*d, a, TableVariant::Corrected), std::string(name),
                    " node ", a);
    }
  }
  // the generating-function construction annihilates the lattice point sums
  auto b3 = root_datum("B3");
  std::vector<Character> seq;
  for (int m = 0; m <= 25; ++m) seq.push_back(lpsf_character(*b3, 3, m));
  CHECK(verify_recurrence_symbolic(*b3, lpsf_operator(*b3, 3), seq, 20, 25).residual_zero);
}

TEST_CASE("structural table properties") {
  for (const auto& name : {"B2", "B3", "B5", "C2", "C4", "D4", "D5", "A4", "E6", "E7", "F4", "G2"}) {
    auto d = root_datum(name);
    for (int a = 1; a <= d->rank(); ++a) {
      if (!operator_covered(*d, a)) continue;
      CHECK_MESSAGE(check_table_properties(*d, a).ok(), std::string(name), " node ", a);
    }
  }
}

TEST_CASE("derived operators") {
  auto a2 = root_datum("A2");
  DiffOperator two;
  two.add(w({1, 0}), 1);
  two.add(w({0, 1}), 1);
  auto der = derived_operator(two);
  CHECK(der.num_factors() == 1);
  CHECK(der.factors().count({w({1, 1}), 1}) == 1);

  auto e6 = root_datum("E6");
  auto n1 = node_operator(*e6, 1);
  CHECK(derived_operator(n1, true).order() == 351);
  CHECK(derived_operator(n1) == node_operator(*e6, 2));
  CHECK(derived_operator(node_operator(*e6, 6)) == node_operator(*e6, 3));
  auto e7 = root_datum("E7");
  CHECK(derived_operator(node_operator(*e7, 1)) == node_operator(*e7, 2));
  CHECK(derived_operator(node_operator(*e7, 7)) == node_operator(*e7, 3));
  auto e8 = root_datum("E8");
  CHECK(derived_operator(node_operator(*e8, 7)) == node_operator(*e8, 6));

  // F4 node 2 from node 1, where Lambda_1 is a proper subset of the weights
  auto f4 = root_datum("F4");
  CHECK(derived_operator(node_operator(*f4, 1)) == node_operator(*f4, 2));

  DiffOperator stepped;
  stepped.add(Weight{}, 2);
  CHECK_THROWS_AS(derived_operator(stepped), InvalidArgument);
}

TEST_CASE("F4 sumsets and the node 3 roots") {
  auto f4 = root_datum("F4");
  auto om = [&](int i) { return i == 0 ? Weight{} : f4->fundamental(i - 1); };
  auto L4 = orbit_union(*f4, {om(4)});
  auto L4p = orbit_union(*f4, {om(0), om(1)});
  auto keys = [](const std::map<Weight, BigInt>& m) {
    std::set<Weight> s;
    for (const auto& [k, v] : m) s.insert(k);
    return s;
  };
  CHECK(keys(sumset_orbits(*f4, L4, L4, true)) == std::set<Weight>{om(1), om(3), om(4), om(0)});
  // S_2 and S_4 at doubled scale
  auto s2 = keys(sumset_orbits(*f4, L4p, L4p, true));
  CHECK(s2 == std::set<Weight>{om(1), om(2), 2 * om(4), om(0)});
  auto s4 = keys(sumset_orbits(*f4, L4p, L4p, false));
  auto expect4 = s2;
  expect4.insert(2 * om(1));
  CHECK(s4 == expect4);
  std::vector<Weight> L4x2;
  for (const auto& x : L4) L4x2.push_back(2 * x);
  CHECK(keys(sumset_orbits(*f4, L4x2, L4p, false)) ==
        std::set<Weight>{om(1), om(2), 2 * om(4), om(1) + 2 * om(4)});
  CHECK(keys(sumset_orbits(*f4, {Weight{}}, {Weight{}}, false)) == std::set<Weight>{Weight{}});

  // products of distinct roots of the node 4 operator give exactly the node 3 roots
  auto r4 = doubled_roots(node_operator(*f4, 4));
  std::vector<SignedRoot> v4(r4.begin(), r4.end());
  std::set<SignedRoot> prod;
  for (size_t i = 0; i < v4.size(); ++i)
    for (size_t j = i + 1; j < v4.size(); ++j) prod.insert({v4[i].first + v4[j].first, v4[i].second * v4[j].second});
  CHECK(prod == doubled_roots(node_operator(*f4, 3)));
}

TEST_CASE("exterior squares") {
  auto a1 = root_datum("A1");
  auto r = exterior_square_weights(*a1, 1);
  CHECK(r.exterior == std::set<Weight>{Weight{}});
  CHECK(r.equal());
  for (const auto& name : {"A2", "A3", "A4", "D4", "B3", "C3", "F4"}) {
    auto d = root_datum(name);
    for (int a = 1; a <= d->rank(); ++a) CHECK_MESSAGE(exterior_square_weights(*d, a).equal(), std::string(name), " ", a);
  }
  auto g2 = root_datum("G2");
  auto g = exterior_square_weights(*g2, 2);
  CHECK(g.exterior == g.shifted_irrep);
}

TEST_CASE("divisibility and verification bounds") {
  auto g2 = root_datum("G2");
  auto l2 = node_operator(*g2, 2);
  CHECK(divides(l2, l2));
  auto big = g2_step_operator(*g2);
  CHECK(big.order() == 57);
  CHECK(divides(l2, big));
  CHECK_FALSE(divides(big, l2));
  CHECK(finite_verification_bound(*g2, 2) == 57);

  auto f4 = root_datum("F4");
  auto ef = ef_operator(*f4, 2);
  CHECK(ef.order() == 553);
  CHECK(finite_verification_bound(*f4, 2) == 553);
  CHECK(divides(node_operator(*f4, 2), ef));
  CHECK_FALSE(divides(node_operator(*f4, 3), ef));
  auto e6 = root_datum("E6");
  CHECK(finite_verification_bound(*e6, 3) == 6895);
  CHECK(divides(node_operator(*e6, 3), ef_operator(*e6, 3)));
  CHECK(finite_verification_bound(*root_datum("E7"), 2) == 27217);
  CHECK(finite_verification_bound(*root_datum("E8"), 6) == 143761);
  CHECK_THROWS_AS(finite_verification_bound(*f4, 1), UncoveredNode);
}

#pragma once

#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "krq/arith.hpp"
#include "krq/rootdata.hpp"
#include "krq/weight.hpp"

namespace krq {

// Sparse Laurent polynomial with integer coefficients; exponents are Weights.
// Zero coefficients are never stored.
class LaurentPoly {
 public:
  using Map = std::unordered_map<Weight, BigInt, WeightHash>;

  LaurentPoly() = default;
  static LaurentPoly constant(const BigInt& c);
  static LaurentPoly monomial(const Weight& w, const BigInt& c = 1);

  void add_term(const Weight& w, const BigInt& c);
  BigInt coeff(const Weight& w) const;
  const Map& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient_sum() const;

  // Terms in ascending lexicographic order of exponents.
  std::vector<std::pair<Weight, BigInt>> sorted_terms() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const BigInt& k);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly shifted(const Weight& w) const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  LaurentPoly map_exponents(const std::function<Weight(const Weight&)>& f) const;

  // Evaluates at y, where the exponent coordinate i refers to y[i].
  Rational evaluate(const std::vector<Rational>& y) const;

 private:
  Map terms_;
};

// Ring operations of the character ring, named as in the specification vocabulary.
inline LaurentPoly poly_add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }
inline LaurentPoly poly_mul(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

// Exact division p / q using the height-then-lex term order of d.
// Throws DivisionError describing the remainder when q does not divide p.
LaurentPoly poly_exact_div(const RootDatum& d, const LaurentPoly& p, const LaurentPoly& q);

// Same, with graded-lex order on raw exponent vectors over n variables.
LaurentPoly poly_exact_div(const LaurentPoly& p, const LaurentPoly& q, int nvars);

// Applies the simple reflection s_i (0-based) to every exponent.
LaurentPoly w_act(const RootDatum& d, int i, const LaurentPoly& p);
bool is_w_invariant(const RootDatum& d, const LaurentPoly& p);

// Powers y^w for integral w, with a small cache of per-coordinate powers.
class MonomialEvaluator {
 public:
  MonomialEvaluator(const std::vector<Rational>& y, int rank);
  const Rational& power(int i, int k);
  Rational value(const Weight& w);

 private:
  std::vector<Rational> y_;
  int rank_;
  std::vector<std::unordered_map<int, Rational>> cache_;
};

}  // namespace krq

#pragma once

#include <map>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "krq/laurent.hpp"
#include "krq/rootdata.hpp"

namespace krq {

// Dominant weight -> multiplicity, ordered by decreasing height.
using DominantMultiplicities = std::vector<std::pair<Weight, BigInt>>;

// Freudenthal's formula over dominant weights only. Results are memoized per (type, lambda).
const DominantMultiplicities& weights_of_irrep(const RootDatum& d, const Weight& lam);
LaurentPoly char_irrep(const RootDatum& d, const Weight& lam);
// Weyl dimension formula, independent of the multiplicity computation.
BigInt dim_irrep(const RootDatum& d, const Weight& lam);
// Number of distinct weights of L(lam).
BigInt support_size(const RootDatum& d, const Weight& lam);

// Dominant weight -> positive multiplicity.
using DecompositionTable = std::map<Weight, BigInt>;

// An element of the W-invariant subring, stored in the basis of irreducible
// characters. Coefficients may be negative (virtual characters).
struct Character {
  std::map<Weight, BigInt> comps;

  static Character one() { return irreducible(Weight{}); }
  static Character irreducible(const Weight& lam, const BigInt& c = 1) {
    Character x;
    x.comps.emplace(lam, c);
    return x;
  }
  static Character from_table(const DecompositionTable& t) { return Character{t}; }

  void add(const Weight& lam, const BigInt& c);
  bool is_zero() const { return comps.empty(); }
  Character& operator+=(const Character& o);
  Character& operator-=(const Character& o);
  friend Character operator+(Character a, const Character& b) { return a += b; }
  friend Character operator-(Character a, const Character& b) { return a -= b; }
  bool operator==(const Character& o) const { return comps == o.comps; }
  bool operator!=(const Character& o) const { return comps != o.comps; }

  BigInt dimension(const RootDatum& d) const;
  // Leading component in the height-then-lex order.
  std::pair<Weight, BigInt> leading(const RootDatum& d) const;
};

using OrbitSums = std::unordered_map<Weight, BigInt, WeightHash>;
using TermList = std::vector<std::pair<Weight, BigInt>>;

OrbitSums orbit_sums(const RootDatum& d, const Character& x);
TermList expand_orbits(const RootDatum& d, const OrbitSums& s);
TermList full_terms(const RootDatum& d, const Character& x);
LaurentPoly to_laurent(const RootDatum& d, const Character& x);

// Brauer-Klimyk product of x with a W-invariant polynomial given by all of its terms.
Character klimyk(const RootDatum& d, const Character& x, const TermList& g);
Character multiply(const RootDatum& d, const Character& a, const Character& b);
Character multiply(const RootDatum& d, const Character& a, const LaurentPoly& w_invariant);
// Exact quotient r / q. Throws DivisionError on a nonzero remainder.
Character exact_divide(const RootDatum& d, const Character& r, const Character& q);
// Exact quotient when the divisor's full term list is already available.
Character exact_divide(const RootDatum& d, const Character& r, const Character& q, const TermList& q_full);

Rational evaluate(const RootDatum& d, const Character& x, MonomialEvaluator& ev);

// Converts a W-invariant polynomial to the irreducible basis (virtual allowed).
Character character_from_laurent(const RootDatum& d, const LaurentPoly& p);
// Requires a genuine character: W-invariant with nonnegative multiplicities.
DecompositionTable decompose_character(const RootDatum& d, const LaurentPoly& p);
DecompositionTable to_table(const Character& x);  // throws if a coefficient is negative

}  // namespace krq

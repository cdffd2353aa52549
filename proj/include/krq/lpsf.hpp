#pragma once

#include <string>
#include <vector>

#include "krq/arith.hpp"
#include "krq/character.hpp"
#include "krq/rootdata.hpp"

namespace krq {

// Lattice-point summation data for one node: W_m = sum over b.x = m of L(sum x_j lambda_j).
struct LpsfTable {
  int node = 0;
  std::vector<int> b;
  std::vector<Weight> lambda;
};

// Throws UncoveredNode when no proven table exists for (type, node).
LpsfTable lpsf_table(const RootDatum& d, int node);
bool lpsf_covered(const RootDatum& d, int node);

// All x >= 0 with sum b_j x_j = m.
std::vector<std::vector<int>> lattice_points(const std::vector<int>& b, int m);

Character lpsf_character(const RootDatum& d, int node, int m);

// Multiplicity functions of the conjectural and proven step-polynomial formulas.
long p_ef(int m, int j1, int j2, int j3, int j4);
long p_g2(int j0, int j1, int j2);

// Weight tuple (lambda_1..lambda_4) for the four exceptional nodes; UncoveredNode otherwise.
std::vector<Weight> ef_weights(const RootDatum& d, int node);
bool ef_covered(const RootDatum& d, int node);
DecompositionTable conj_ef_table(const RootDatum& d, int node, int m);
DecompositionTable g2_node2_table(int m);

struct GfReport {
  bool ok = true;
  int truncation = 0;
  std::vector<std::string> failures;
};

// Truncated power-series checks of the F4/E6 and G2 step-polynomial generating
// functions, including their partial-sum splits.
GfReport gf_check_ef(int N);
GfReport gf_check_g2(int N);

// Values at pt of the conjectural formula's characters for m = 0..M, obtained by
// expanding the generating function of p_ef once per Weyl group element and
// dividing by the Weyl denominator. Needs |W| <= 100000 (E6 and F4).
std::vector<Rational> conj_ef_eval_sequence(const RootDatum& d, int node, const std::vector<Rational>& y, int M);

// The same computation split over Weyl group elements [begin, end) in a fixed
// order, so long runs can be checkpointed; numer/denom sum across ranges.
struct EfPartialSum {
  std::vector<Rational> numer;
  Rational denom = 0;
};
size_t ef_weyl_element_count(const RootDatum& d);
EfPartialSum conj_ef_partial_sum(const RootDatum& d, int node, const std::vector<Rational>& y, int M, size_t begin,
                                 size_t end);

}  // namespace krq

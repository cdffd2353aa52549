#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "krq/character.hpp"
#include "krq/qsystem.hpp"
#include "krq/rootdata.hpp"

namespace krq {

// Factored difference operator: a multiset of factors (1 - e^lambda Delta^step).
class DiffOperator {
 public:
  using Key = std::pair<Weight, int>;  // (lambda, step)

  void add(const Weight& lambda, int step, int mult = 1);
  // Adds one factor for every element of the W-orbit of a dominant weight.
  void add_orbit(const RootDatum& d, const Weight& dominant, int step, int mult = 1);

  const std::map<Key, int>& factors() const { return factors_; }
  long order() const;
  long num_factors() const;
  DiffOperator operator*(const DiffOperator& o) const;
  bool operator==(const DiffOperator& o) const { return factors_ == o.factors_; }
  // Factors (lambda, s) and (mu, t) share a root exactly when t*lambda == s*mu.
  bool has_multiple_roots() const;

 private:
  std::map<Key, int> factors_;
};

// Orbit-compressed view of a W-invariant operator.
struct OrbitBlock {
  Weight dominant;
  int step = 1;
  int mult = 1;
  BigInt size;
};
// Throws InvalidArgument when the factor multiset is not a union of W-orbits.
std::vector<OrbitBlock> orbit_blocks(const RootDatum& d, const DiffOperator& op);

// Reference tables of orbit generators. The C_r rows for a < r are printed with
// omega_i on the step-two part; Corrected doubles them (see README).
enum class TableVariant { Printed, Corrected };

struct LambdaTables {
  std::vector<Weight> lambda;        // dominant generators of Lambda_a
  std::vector<Weight> lambda_prime;  // dominant generators of Lambda'_a (step t_a)
};

bool operator_covered(const RootDatum& d, int node);
LambdaTables lambda_tables(const RootDatum& d, int node, TableVariant v = TableVariant::Printed);
DiffOperator build_operator(const RootDatum& d, const LambdaTables& t, int t_a);
DiffOperator node_operator(const RootDatum& d, int node, TableVariant v = TableVariant::Printed);
// |Lambda_a| + t_a |Lambda'_a| from orbit sizes alone (no enumeration).
BigInt operator_order(const RootDatum& d, int node);

// Sum_k C_k Delta^k with C_k in Z[P]^W; intended for small operators.
std::vector<LaurentPoly> expand_operator(const RootDatum& d, const DiffOperator& op);
// The same coefficients evaluated at a point, as exact rationals.
std::vector<Rational> operator_coeffs_at(const RootDatum& d, const DiffOperator& op, const EvalPoint& pt);

struct RecurrenceReport {
  int node = 0;
  long order = 0;
  std::string mode;
  int points = 0;
  std::vector<int> m_checked;
  bool residual_zero = true;
  std::optional<int> first_failure;
  std::string detail;
};

// Checks sum_k C_k seq[m-k] == 0 for m_lo <= m <= m_hi, applying one orbit block at a time.
RecurrenceReport verify_recurrence_symbolic(const RootDatum& d, const DiffOperator& op,
                                            const std::vector<Character>& seq, int m_lo, int m_hi);
RecurrenceReport verify_recurrence_eval(const std::vector<Rational>& coeffs, const std::vector<Rational>& seq,
                                        int m_lo, int m_hi);

// Node-level drivers: sequence from the Q-system, check for order <= m <= order + extra.
RecurrenceReport verify_node_symbolic(const RootDatum& d, int node, int extra,
                                      TableVariant v = TableVariant::Printed);
RecurrenceReport verify_node_eval(const RootDatum& d, int node, const std::vector<EvalPoint>& pts, int extra,
                                  TableVariant v = TableVariant::Printed);

// Roots {lambda + mu : lambda != mu}; the multiset form keeps one factor per unordered pair.
DiffOperator derived_operator(const DiffOperator& op, bool multiset = false);

// Dominant generators of {lambda + mu : lambda in A, mu in B} (lambda != mu when distinct),
// mapped to their orbit sizes. A and B must be W-invariant.
std::map<Weight, BigInt> sumset_orbits(const RootDatum& d, const std::vector<Weight>& A,
                                       const std::vector<Weight>& B, bool distinct);
std::vector<Weight> orbit_union(const RootDatum& d, const std::vector<Weight>& dominant);

// Dominant weights of the second exterior power of L(omega_a), with the two
// comparison sets: L(2 omega_a - alpha_a) and the tensor product over neighbours.
struct ExteriorSquareReport {
  std::set<Weight> exterior;
  std::set<Weight> shifted_irrep;
  std::set<Weight> neighbour_tensor;
  bool equal() const { return exterior == shifted_irrep && exterior == neighbour_tensor; }
};
ExteriorSquareReport exterior_square_weights(const RootDatum& d, int node);

// Multiset containment of factors.
bool divides(const DiffOperator& a, const DiffOperator& b);

// Operators of the two step-polynomial arguments and the bound they give.
DiffOperator ef_operator(const RootDatum& d, int node);
DiffOperator g2_step_operator(const RootDatum& g2);
DiffOperator lpsf_operator(const RootDatum& d, int node);
BigInt finite_verification_bound(const RootDatum& d, int node);

// Structural properties every operator table should have (see TablePropertyReport fields).
struct TablePropertyReport {
  bool w_invariant = true;
  bool contains_omega = true;
  bool below_omega = true;
  bool prime_below_t_omega = true;
  bool no_multiple_roots = true;
  bool within_fundamental = true;
  bool ok() const {
    return w_invariant && contains_omega && below_omega && prime_below_t_omega && no_multiple_roots &&
           within_fundamental;
  }
};
TablePropertyReport check_table_properties(const RootDatum& d, int node, TableVariant v = TableVariant::Printed);

}  // namespace krq

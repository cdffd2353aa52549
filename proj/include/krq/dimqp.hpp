#pragma once

#include <optional>
#include <string>
#include <vector>

#include "krq/arith.hpp"
#include "krq/rootdata.hpp"

namespace krq {

// A quasipolynomial of period t: q(m) = polys[m mod t](m), coefficients low degree first.
struct QuasiPoly {
  int period = 1;
  std::vector<std::vector<Rational>> polys;
  int degree = 0;

  Rational operator()(long m) const;
  // Branch k rewritten in the variable n with m = t*n + k.
  std::vector<Rational> substituted(int k) const;
};

struct HVector {
  std::vector<BigInt> h;
  int c() const { return static_cast<int>(h.size()) - 1; }
};

int degree_e(const RootDatum& d, int node);
// t_a (e_a + 1 - h^vee), the predicted numerator degree.
int predicted_c(const RootDatum& d, int node);

// Right-hand side of the leading-coefficient system for node a:
// prod over neighbours b of (C_ba / C_ab)^(-C_ab e_b).
Rational leading_rhs(const RootDatum& d, int node);
// Floating solution of the multiplicative system via C^{-1} on logarithms.
std::vector<long double> leading_coefficient_float(const RootDatum& d);
// Exact test of e_a prod_b c_b^{C_ab} == rhs_a for every node.
bool satisfies_leading_system(const RootDatum& d, const std::vector<Rational>& c);

struct LeadingCoefficientReport {
  std::vector<Rational> exact;         // identified through the h-vectors
  std::vector<long double> numeric;    // solved from the system directly
  long double max_rel_error = 0;
  bool exact_solves_system = false;
  bool ok() const { return exact_solves_system && max_rel_error < 1e-9L; }
};
// Identifies each c_a as (sum of h_a)/(e_a! t_a^(e_a+1)) and certifies it against the system.
LeadingCoefficientReport leading_coefficient(const RootDatum& d);

// Finite differencing of the dimension sequence. Throws Error when an entry beyond
// the predicted c_a fails to vanish within the checked window.
HVector h_vector(const RootDatum& d, int node);
HVector h_vector_from_dims(const std::vector<BigInt>& dims, int e, int t, int c);

QuasiPoly quasipoly_from_h(const HVector& hv, int e, int t);
QuasiPoly quasipoly(const RootDatum& d, int node);

struct QuasiPolyCheck {
  bool ok = true;
  std::optional<int> first_failure_node;
  std::optional<long> first_failure_m;
  std::string detail;
};

// Residuals of every Q-system relation at each m in [m_lo, m_hi], negatives included.
QuasiPolyCheck check_qsystem_quasipoly(const RootDatum& d, const std::vector<QuasiPoly>& qs, long m_lo, long m_hi);
// q(-m) == (-1)^e q(m - t hv) for |m| <= range.
QuasiPolyCheck reciprocity_check(const QuasiPoly& qp, int e, int t, int hv, long range);
// q(m) == 0 for -t hv < m < 0 and q(-t hv) == (-1)^e q(0).
QuasiPolyCheck negative_string_check(const QuasiPoly& qp, int e, int t, int hv);
// The three leading coefficients agree across branches.
bool leading_coefficients_rigid(const QuasiPoly& qp);

struct HVectorProperties {
  bool symmetric = true, positive = true, unimodal = true, log_concave = true;
  // index of the first violation for each property, when there is one
  std::optional<int> symmetric_at, positive_at, unimodal_at, log_concave_at;
};
HVectorProperties hvector_properties(const HVector& hv);

// Everything above for one node, as used by the CLI.
struct DimQPReport {
  int node = 0;
  int e = 0, t = 1, c = 0, predicted_c = 0;
  HVector h;
  QuasiPoly q;
  Rational leading;
  HVectorProperties props;
  bool matches_dims = true;
  bool rigid = true;
  bool reciprocity = true;
  bool negative_string = true;
  bool ok() const {
    return c == predicted_c && matches_dims && rigid && reciprocity && negative_string && props.symmetric;
  }
};
DimQPReport dimqp_report(const RootDatum& d, int node);

}  // namespace krq

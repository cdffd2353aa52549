#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krq/laurent.hpp"
#include "krq/qsystem.hpp"
#include "krq/rootdata.hpp"

namespace krq {

// Unnormalized fraction of Laurent polynomials; evaluation is its only consumer.
struct RatFunc {
  LaurentPoly num;
  LaurentPoly den;
  // Throws EvaluationError when the denominator vanishes.
  Rational evaluate(const std::vector<Rational>& y) const;
  RatFunc reflected(const RootDatum& d, int i) const;
};

// Polynomial in y1, y2, ... written as "2 y1^3 y2 - y2^2 + 7". Throws InvalidArgument.
LaurentPoly parse_poly(const std::string& text, int rank);

// Closed-form solution of the G2 Q-system: coefficients c_lambda on Lambda_1 and
// Lambda_2, and t_{lambda,j} on Lambda'_2, extended from orbit seeds by W.
class ClosedFormG2 {
 public:
  ClosedFormG2();

  const RootDatum& datum() const { return *g2_; }
  const std::map<Weight, RatFunc>& c1() const { return c1_; }  // Lambda_1
  const std::map<Weight, RatFunc>& c2() const { return c2_; }  // Lambda_2
  const std::map<std::pair<Weight, int>, RatFunc>& t() const { return t_; }

  struct Values {
    std::map<Weight, Rational> c1, c2;
    std::map<std::pair<Weight, int>, Rational> t;
  };
  Values coefficients_at(const EvalPoint& pt) const;

  // R^(1)_0..R^(1)_M and R^(2)_0..R^(2)_M.
  std::pair<std::vector<Rational>, std::vector<Rational>> r_sequences(const EvalPoint& pt, int M) const;

  // Each orbit expression is fixed by the reflections that fix its weight.
  bool stabilizers_consistent(const EvalPoint& pt) const;

 private:
  RootDatumPtr g2_;
  std::map<Weight, RatFunc> c1_, c2_;
  std::map<std::pair<Weight, int>, RatFunc> t_;
};

struct G2IdentityReport {
  EvalPoint point;
  int m_max = 0;
  bool identities_ok = true;
  bool q_match_ok = true;
  bool operator_ok = true;  // the node-2 operator annihilates R^(2)
  std::string detail;
  bool ok() const { return identities_ok && q_match_ok && operator_ok; }
};

// The four explicit relations for 1 <= m <= M, R == Q through index M, and the
// order-27 operator on R^(2). Evaluation at a point is evidence, not proof.
G2IdentityReport verify_g2_identities(const ClosedFormG2& cf, const EvalPoint& pt, int M);

// R^(1)_{m+1} / R^(1)_m next to the expected limit y^{omega_1}.
std::pair<Rational, Rational> g2_ratio(const ClosedFormG2& cf, const EvalPoint& pt, int m);

}  // namespace krq

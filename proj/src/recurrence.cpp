#include "krq/recurrence.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "krq/errors.hpp"
#include "krq/lpsf.hpp"

namespace krq {

void DiffOperator::add(const Weight& lambda, int step, int mult) {
  if (step < 1) throw InvalidArgument("operator step must be positive");
  auto& slot = factors_[{lambda, step}];
  slot += mult;
  if (slot == 0) factors_.erase({lambda, step});
}

void DiffOperator::add_orbit(const RootDatum& d, const Weight& dominant, int step, int mult) {
  if (!d.is_dominant(dominant)) throw InvalidArgument("orbit generator must be dominant");
  for (const auto& w : d.orbit(dominant)) add(w, step, mult);
}

long DiffOperator::order() const {
  long n = 0;
  for (const auto& [k, c] : factors_) n += static_cast<long>(k.second) * c;
  return n;
}

long DiffOperator::num_factors() const {
  long n = 0;
  for (const auto& [k, c] : factors_) n += c;
  return n;
}

DiffOperator DiffOperator::operator*(const DiffOperator& o) const {
  DiffOperator r = *this;
  for (const auto& [k, c] : o.factors_) r.add(k.first, k.second, c);
  return r;
}

bool DiffOperator::has_multiple_roots() const {
  // scale every factor to step 6 (a common multiple of 1, 2, 3) and look for collisions
  std::unordered_set<Weight, WeightHash> seen;
  for (const auto& [k, c] : factors_) {
    if (c > 1) return true;
    if (6 % k.second != 0) throw InvalidArgument("operator step must divide 6");
    if (!seen.insert((6 / k.second) * k.first).second) return true;
  }
  return false;
}

std::vector<OrbitBlock> orbit_blocks(const RootDatum& d, const DiffOperator& op) {
  struct Group {
    std::map<int, long> by_mult;
  };
  std::map<std::pair<int, Weight>, Group> groups;  // (step, dominant)
  for (const auto& [k, c] : op.factors()) groups[{k.second, d.dominant_representative(k.first)}].by_mult[c]++;
  std::vector<OrbitBlock> out;
  for (const auto& [key, g] : groups) {
    BigInt size = d.orbit_size(key.second);
    if (g.by_mult.size() != 1 || BigInt(g.by_mult.begin()->second) != size)
      throw InvalidArgument("operator factors are not a union of W-orbits (generator " + d.weight_str(key.second) +
                            ")");
    out.push_back({key.second, key.first, g.by_mult.begin()->first, size});
  }
  return out;
}

namespace {

Weight fw(const RootDatum& d, int i) { return i == 0 ? Weight{} : d.fundamental(i - 1); }

std::vector<Weight> parity_ladder(const RootDatum& d, int top) {
  std::vector<Weight> out;
  for (int i = top % 2; i <= top; i += 2) out.push_back(fw(d, i));
  return out;
}

bool simply_laced(const RootDatum& d) {
  auto f = d.type().family;
  return f == Family::A || f == Family::D || f == Family::E;
}

std::string uncovered_message(const RootDatum& d, int node) {
  return "no operator table for " + d.type().name() + " node " + std::to_string(node) +
         " (covered: every node of classical types, E6, F4 and G2; E7 nodes 1,2,3,5,6,7; E8 nodes 1,2,6,7)";
}

// Coefficients of prod over the orbit of (1 - e^lambda x), lowest degree first.
std::vector<LaurentPoly> orbit_polynomial(const RootDatum& d, const Weight& dominant) {
  std::vector<LaurentPoly> e{LaurentPoly::constant(1)};
  for (const auto& w : d.orbit(dominant)) {
    e.emplace_back();
    for (size_t k = e.size() - 1; k >= 1; --k) e[k] -= e[k - 1].shifted(w);
  }
  return e;
}

}  // namespace

bool operator_covered(const RootDatum& d, int node) {
  if (node < 1 || node > d.rank()) return false;
  if (d.type().family != Family::E) return true;
  if (d.rank() == 7) return node != 4;
  if (d.rank() == 8) return node == 1 || node == 2 || node == 6 || node == 7;
  return true;
}

LambdaTables lambda_tables(const RootDatum& d, int node, TableVariant v) {
  if (node < 1 || node > d.rank()) throw InvalidArgument("node out of range");
  if (!operator_covered(d, node)) throw UncoveredNode(uncovered_message(d, node));
  const int r = d.rank(), a = node;
  LambdaTables t;
  if (simply_laced(d)) {
    for (const auto& [mu, mult] : weights_of_irrep(d, fw(d, a))) t.lambda.push_back(mu);
    std::sort(t.lambda.begin(), t.lambda.end(), [&](const Weight& x, const Weight& y) { return d.term_less(x, y); });
    return t;
  }
  auto w = [&](std::initializer_list<int> xs) { return Weight(xs); };
  switch (d.type().family) {
    case Family::B:
      if (a < r) {
        t.lambda = parity_ladder(d, a);
      } else {
        t.lambda = {fw(d, r)};
        t.lambda_prime = parity_ladder(d, r - 2);
      }
      break;
    case Family::C:
      t.lambda = {fw(d, a)};
      if (a < r)
        for (int i = 0; i < a; ++i) t.lambda_prime.push_back((v == TableVariant::Corrected ? 2 : 1) * fw(d, i));
      break;
    case Family::F:
      if (a == 1) t.lambda = {Weight{}, w({1, 0, 0, 0})};
      if (a == 2) t.lambda = {Weight{}, w({1, 0, 0, 0}), w({0, 1, 0, 0}), w({0, 0, 0, 2})};
      if (a == 3) {
        t.lambda = {w({0, 0, 1, 0})};
        t.lambda_prime = {Weight{}, w({1, 0, 0, 0}), w({2, 0, 0, 0}), w({0, 1, 0, 0}), w({0, 0, 0, 2}),
                          w({1, 0, 0, 2})};
      }
      if (a == 4) {
        t.lambda = {w({0, 0, 0, 1})};
        t.lambda_prime = {Weight{}, w({1, 0, 0, 0})};
      }
      break;
    case Family::G:
      if (a == 1) {
        t.lambda = {Weight{}, w({1, 0})};
      } else {
        t.lambda = {w({0, 1})};
        t.lambda_prime = {Weight{}, w({1, 0})};
      }
      break;
    default:
      break;
  }
  return t;
}

DiffOperator build_operator(const RootDatum& d, const LambdaTables& t, int t_a) {
  DiffOperator op;
  for (const auto& lam : t.lambda) op.add_orbit(d, lam, 1);
  for (const auto& lam : t.lambda_prime) op.add_orbit(d, lam, t_a);
  return op;
}

DiffOperator node_operator(const RootDatum& d, int node, TableVariant v) {
  return build_operator(d, lambda_tables(d, node, v), d.t(node - 1));
}

BigInt operator_order(const RootDatum& d, int node) {
  auto t = lambda_tables(d, node);
  BigInt n = 0;
  for (const auto& lam : t.lambda) n += d.orbit_size(lam);
  for (const auto& lam : t.lambda_prime) n += d.t(node - 1) * d.orbit_size(lam);
  return n;
}

std::vector<LaurentPoly> expand_operator(const RootDatum& d, const DiffOperator& op) {
  std::vector<LaurentPoly> c{LaurentPoly::constant(1)};
  for (const auto& b : orbit_blocks(d, op)) {
    auto e = orbit_polynomial(d, b.dominant);
    for (int rep = 0; rep < b.mult; ++rep) {
      std::vector<LaurentPoly> next(c.size() + (e.size() - 1) * b.step);
      for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        for (size_t k = 0; k < e.size(); ++k)
          if (!e[k].is_zero()) next[i + k * b.step] += c[i] * e[k];
      }
      c = std::move(next);
    }
  }
  return c;
}

std::vector<Rational> operator_coeffs_at(const RootDatum& d, const DiffOperator& op, const EvalPoint& pt) {
  MonomialEvaluator ev(pt.y, d.rank());
  std::vector<Rational> c(op.order() + 1);
  c[0] = 1;
  long deg = 0;
  for (const auto& [k, mult] : op.factors()) {
    Rational v = ev.value(k.first);
    for (int rep = 0; rep < mult; ++rep) {
      deg += k.second;
      for (long i = deg; i >= k.second; --i)
        if (c[i - k.second] != 0) c[i] -= v * c[i - k.second];
    }
  }
  return c;
}

RecurrenceReport verify_recurrence_symbolic(const RootDatum& d, const DiffOperator& op,
                                            const std::vector<Character>& seq, int m_lo, int m_hi) {
  RecurrenceReport rep;
  rep.order = op.order();
  rep.mode = "symbolic";
  if (m_lo < rep.order) throw InvalidArgument("recurrence is only checked from m = order onwards");
  if (m_hi >= static_cast<int>(seq.size())) throw InvalidArgument("sequence too short for the requested range");
  if (m_hi < m_lo) return rep;

  struct Stage {
    int step;
    const std::vector<TermList>* e;
    int order;
  };
  std::map<Weight, std::vector<TermList>> cache;
  std::vector<Stage> stages;
  for (const auto& b : orbit_blocks(d, op)) {
    auto it = cache.find(b.dominant);
    if (it == cache.end()) {
      std::vector<TermList> terms;
      for (const auto& p : orbit_polynomial(d, b.dominant)) terms.push_back(p.sorted_terms());
      it = cache.emplace(b.dominant, std::move(terms)).first;
    }
    int ord = static_cast<int>(it->second.size() - 1) * b.step;
    for (int r = 0; r < b.mult; ++r) stages.push_back({b.step, &it->second, ord});
  }

  // lower index each stage must produce, working back from the last stage
  std::vector<int> lo(stages.size() + 1);
  lo[stages.size()] = m_lo;
  for (size_t j = stages.size(); j-- > 0;) lo[j] = lo[j + 1] - stages[j].order;

  std::vector<Character> cur(seq.begin(), seq.begin() + m_hi + 1);
  for (size_t j = 0; j < stages.size(); ++j) {
    const auto& st = stages[j];
    std::vector<Character> next(m_hi + 1);
    for (int m = lo[j + 1]; m <= m_hi; ++m) {
      Character acc = cur[m];
      for (size_t k = 1; k < st.e->size(); ++k) {
        const auto& x = cur[m - static_cast<int>(k) * st.step];
        if (!x.is_zero() && !(*st.e)[k].empty()) acc += klimyk(d, x, (*st.e)[k]);
      }
      next[m] = std::move(acc);
    }
    cur = std::move(next);
  }
  for (int m = m_lo; m <= m_hi; ++m) {
    rep.m_checked.push_back(m);
    if (!cur[m].is_zero() && rep.residual_zero) {
      rep.residual_zero = false;
      rep.first_failure = m;
      rep.detail = "nonzero residual at m = " + std::to_string(m) + " with " + std::to_string(cur[m].comps.size()) +
                   " irreducible components, leading " + d.weight_str(cur[m].leading(d).first);
    }
  }
  return rep;
}

RecurrenceReport verify_recurrence_eval(const std::vector<Rational>& coeffs, const std::vector<Rational>& seq,
                                        int m_lo, int m_hi) {
  RecurrenceReport rep;
  rep.order = static_cast<long>(coeffs.size()) - 1;
  rep.mode = "eval";
  rep.points = 1;
  if (m_lo < rep.order) throw InvalidArgument("recurrence is only checked from m = order onwards");
  if (m_hi >= static_cast<int>(seq.size())) throw InvalidArgument("sequence too short for the requested range");
  for (int m = m_lo; m <= m_hi; ++m) {
    Rational r = 0;
    for (long k = 0; k <= rep.order; ++k)
      if (coeffs[k] != 0) r += coeffs[k] * seq[m - k];
    rep.m_checked.push_back(m);
    if (r != 0 && rep.residual_zero) {
      rep.residual_zero = false;
      rep.first_failure = m;
      rep.detail = "nonzero residual at m = " + std::to_string(m);
    }
  }
  return rep;
}

RecurrenceReport verify_node_symbolic(const RootDatum& d, int node, int extra, TableVariant v) {
  auto op = node_operator(d, node, v);
  int ell = static_cast<int>(op.order());
  auto seq = char_sequence(d, node, ell + extra);
  auto rep = verify_recurrence_symbolic(d, op, seq, ell, ell + extra);
  rep.node = node;
  return rep;
}

RecurrenceReport verify_node_eval(const RootDatum& d, int node, const std::vector<EvalPoint>& pts, int extra,
                                  TableVariant v) {
  auto op = node_operator(d, node, v);
  int ell = static_cast<int>(op.order());
  RecurrenceReport rep;
  rep.node = node;
  rep.order = ell;
  rep.mode = "eval";
  for (const auto& pt : pts) {
    auto coeffs = operator_coeffs_at(d, op, pt);
    auto seq = eval_sequence(d, node, pt, ell + extra);
    auto r = verify_recurrence_eval(coeffs, seq, ell, ell + extra);
    ++rep.points;
    rep.m_checked = r.m_checked;
    if (!r.residual_zero && rep.residual_zero) {
      rep.residual_zero = false;
      rep.first_failure = r.first_failure;
      rep.detail = r.detail + " at point " + pt.str();
    }
  }
  return rep;
}

DiffOperator derived_operator(const DiffOperator& op, bool multiset) {
  if (op.has_multiple_roots()) throw InvalidArgument("derived operator needs an operator without multiple roots");
  std::vector<Weight> roots;
  for (const auto& [k, c] : op.factors()) {
    if (k.second != 1) throw InvalidArgument("derived operator needs step-one factors");
    roots.push_back(k.first);
  }
  DiffOperator out;
  std::unordered_set<Weight, WeightHash> seen;
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j) {
      Weight s = roots[i] + roots[j];
      if (multiset || seen.insert(s).second) out.add(s, 1);
    }
  return out;
}

std::map<Weight, BigInt> sumset_orbits(const RootDatum& d, const std::vector<Weight>& A,
                                       const std::vector<Weight>& B, bool distinct) {
  std::map<Weight, BigInt> out;
  for (const auto& x : A)
    for (const auto& y : B) {
      if (distinct && x == y) continue;
      Weight s = x + y;
      if (d.is_dominant(s) && !out.count(s)) out.emplace(s, d.orbit_size(s));
    }
  return out;
}

std::vector<Weight> orbit_union(const RootDatum& d, const std::vector<Weight>& dominant) {
  std::vector<Weight> out;
  for (const auto& lam : dominant) {
    auto o = d.orbit(lam);
    out.insert(out.end(), o.begin(), o.end());
  }
  return out;
}

namespace {

std::set<Weight> dominant_support(const RootDatum& d, const Weight& lam) {
  std::set<Weight> s;
  for (const auto& [mu, m] : weights_of_irrep(d, lam)) s.insert(mu);
  return s;
}

}  // namespace

ExteriorSquareReport exterior_square_weights(const RootDatum& d, int node) {
  if (node < 1 || node > d.rank()) throw InvalidArgument("node out of range");
  const Weight om = d.fundamental(node - 1);
  ExteriorSquareReport rep;

  // weights of L(omega_a) with multiplicity; a weight space of dimension >= 2 contributes 2*lambda
  std::vector<Weight> all;
  std::unordered_set<Weight, WeightHash> doubled;
  for (const auto& [mu, m] : weights_of_irrep(d, om))
    for (const auto& w : d.orbit(mu)) {
      all.push_back(w);
      if (m >= 2) doubled.insert(w);
    }
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j) {
      Weight s = all[i] + all[j];
      if (d.is_dominant(s)) rep.exterior.insert(s);
    }
  for (const auto& w : doubled)
    if (d.is_dominant(2 * w)) rep.exterior.insert(2 * w);

  rep.shifted_irrep = dominant_support(d, 2 * om - d.simple_root(node - 1));

  std::unordered_set<Weight, WeightHash> tensor{Weight{}};
  for (int b = 0; b < d.rank(); ++b) {
    if (b == node - 1 || d.cartan(node - 1, b) == 0) continue;
    std::vector<Weight> factor = orbit_union(d, [&] {
      std::vector<Weight> v;
      for (const auto& [mu, m] : weights_of_irrep(d, d.fundamental(b))) v.push_back(mu);
      return v;
    }());
    for (int rep_i = 0; rep_i < -d.cartan(b, node - 1); ++rep_i) {
      std::unordered_set<Weight, WeightHash> next;
      for (const auto& x : tensor)
        for (const auto& y : factor) next.insert(x + y);
      tensor = std::move(next);
    }
  }
  for (const auto& w : tensor)
    if (d.is_dominant(w)) rep.neighbour_tensor.insert(w);
  return rep;
}

bool divides(const DiffOperator& a, const DiffOperator& b) {
  if (a.order() > b.order()) return false;
  for (const auto& [k, c] : a.factors()) {
    auto it = b.factors().find(k);
    if (it == b.factors().end() || it->second < c) return false;
  }
  return true;
}

DiffOperator ef_operator(const RootDatum& d, int node) {
  auto lam = ef_weights(d, node);
  DiffOperator op;
  op.add(Weight{}, 1);
  op.add_orbit(d, lam[0], 1);
  op.add_orbit(d, lam[1], 2);
  op.add_orbit(d, lam[2], 1);
  op.add_orbit(d, lam[2], 2);
  op.add_orbit(d, lam[3], 1, 2);
  return op;
}

DiffOperator g2_step_operator(const RootDatum& g2) {
  if (!(g2.type() == LieType{Family::G, 2})) throw InvalidArgument("the step-polynomial operator is defined for G2");
  DiffOperator op;
  op.add(Weight{}, 3);
  op.add_orbit(g2, Weight{1, 0}, 3, 2);
  op.add_orbit(g2, Weight{0, 1}, 1);
  op.add_orbit(g2, Weight{0, 1}, 2);
  return op;
}

DiffOperator lpsf_operator(const RootDatum& d, int node) {
  auto t = lpsf_table(d, node);
  DiffOperator op;
  for (size_t j = 0; j < t.b.size(); ++j) op.add_orbit(d, t.lambda[j], t.b[j]);
  return op;
}

BigInt finite_verification_bound(const RootDatum& d, int node) {
  if (d.type() == LieType{Family::G, 2} && node == 2)
    return 3 + 6 * d.orbit_size(d.fundamental(0)) + 3 * d.orbit_size(d.fundamental(1));
  auto lam = ef_weights(d, node);
  return 1 + d.orbit_size(lam[0]) + 2 * d.orbit_size(lam[1]) + 3 * d.orbit_size(lam[2]) + 2 * d.orbit_size(lam[3]);
}

TablePropertyReport check_table_properties(const RootDatum& d, int node, TableVariant v) {
  auto t = lambda_tables(d, node, v);
  const int ta = d.t(node - 1);
  const Weight om = d.fundamental(node - 1);
  TablePropertyReport rep;
  auto op = build_operator(d, t, ta);
  try {
    orbit_blocks(d, op);
  } catch (const InvalidArgument&) {
    rep.w_invariant = false;
  }
  rep.contains_omega = std::find(t.lambda.begin(), t.lambda.end(), om) != t.lambda.end();
  // w(lambda) <= lambda for dominant lambda, so checking generators is enough
  for (const auto& lam : t.lambda) rep.below_omega = rep.below_omega && d.dominance_leq(lam, om);
  for (const auto& lam : t.lambda_prime)
    rep.prime_below_t_omega = rep.prime_below_t_omega && d.dominance_leq(lam, ta * om);
  rep.no_multiple_roots = !op.has_multiple_roots();
  auto fund = dominant_support(d, om);
  for (const auto& lam : t.lambda) rep.within_fundamental = rep.within_fundamental && fund.count(lam) > 0;
  return rep;
}

}  // namespace krq

#include "krq/g2solution.hpp"

#include <cctype>
#include <deque>

#include "krq/errors.hpp"
#include "krq/recurrence.hpp"

namespace krq {

Rational RatFunc::evaluate(const std::vector<Rational>& y) const {
  Rational d = den.evaluate(y);
  if (d == 0) throw EvaluationError("closed-form denominator vanishes at this point; re-draw the evaluation point");
  return num.evaluate(y) / d;
}

RatFunc RatFunc::reflected(const RootDatum& d, int i) const { return RatFunc{w_act(d, i, num), w_act(d, i, den)}; }

LaurentPoly parse_poly(const std::string& text, int rank) {
  LaurentPoly out;
  size_t i = 0, n = text.size();
  auto skip = [&] {
    while (i < n && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  auto number = [&] {
    size_t s = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (s == i) throw InvalidArgument("expected a number in '" + text + "'");
    return std::stol(text.substr(s, i - s));
  };
  skip();
  while (i < n) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    }
    BigInt coef = sign;
    Weight w;
    bool any = false;
    while (i < n && text[i] != '+' && text[i] != '-') {
      if (std::isdigit(static_cast<unsigned char>(text[i]))) {
        coef *= number();
      } else if (text[i] == 'y') {
        ++i;
        long v = number();
        if (v < 1 || v > rank) throw InvalidArgument("variable index out of range in '" + text + "'");
        long e = 1;
        if (i < n && text[i] == '^') {
          ++i;
          e = number();
        }
        w[static_cast<int>(v - 1)] += static_cast<int>(e);
      } else {
        throw InvalidArgument("unexpected character in '" + text + "'");
      }
      any = true;
      skip();
    }
    if (!any) throw InvalidArgument("empty term in '" + text + "'");
    out.add_term(w, coef);
  }
  return out;
}

namespace {

LaurentPoly power(const LaurentPoly& p, int k) {
  LaurentPoly r = LaurentPoly::constant(1);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

LaurentPoly P(const std::string& s) { return parse_poly(s, 2); }

LaurentPoly denominator(std::initializer_list<std::pair<const char*, int>> factors) {
  LaurentPoly r = LaurentPoly::constant(1);
  for (const auto& [f, k] : factors) r = r * power(P(f), k);
  return r;
}

// Spreads a seed over the W-orbit of its weight, reflecting the expression along the way.
template <class Key, class MakeKey>
void spread(const RootDatum& d, const Weight& dominant, const RatFunc& seed, MakeKey key,
            std::map<Key, RatFunc>& out) {
  std::map<Weight, RatFunc> seen{{dominant, seed}};
  std::deque<Weight> queue{dominant};
  while (!queue.empty()) {
    Weight mu = queue.front();
    queue.pop_front();
    for (int i = 0; i < d.rank(); ++i) {
      Weight nu = d.reflect(i, mu);
      if (seen.count(nu)) continue;
      seen.emplace(nu, seen.at(mu).reflected(d, i));
      queue.push_back(nu);
    }
  }
  for (auto& [w, f] : seen) out.emplace(key(w), std::move(f));
}

}  // namespace

ClosedFormG2::ClosedFormG2() : g2_(root_datum("G2")) {
  const RootDatum& d = *g2_;
  const Weight zero{}, w1{1, 0}, w2{0, 1};

  RatFunc c0{P("-2 y1^3 y2^4") * P("y2^2 + y2 + y1") * P("y2^2 + y1 y2 + y1"),
             denominator({{"y1 - 1", 2}, {"y1 - y2^3", 2}, {"y1^2 - y2^3", 2}})};
  RatFunc c_w1{P("-y1^5 y2^4"),
               denominator({{"y1 - 1", 2}, {"y1 - y2", 1}, {"y2 - 1", 1}, {"y1 - y2^3", 1}, {"y1^2 - y2^3", 1}})};
  RatFunc c_w2{P("y1^4 y2^13"), denominator({{"y1 - 1", 3},
                                              {"y1 - y2", 1},
                                              {"y2 - 1", 2},
                                              {"y1 - y2^2", 1},
                                              {"y1 - y2^3", 3}})};

  LaurentPoly d0 = denominator(
      {{"y1 - 1", 2}, {"y1 - y2", 2}, {"y2 - 1", 2}, {"y1 - y2^2", 2}, {"y1 - y2^3", 2}, {"y1^2 - y2^3", 2}});
  RatFunc t00{P("-2 y1^4 y2^6") *
                  P("y2^8 - y1 y2^7 - y2^7 + y1^2 y2^6 + y1 y2^6 + y2^6 + y1^2 y2^5 + y1 y2^5 - y1^3 y2^4"
                    " - 6 y1^2 y2^4 - y1 y2^4 + y1^3 y2^3 + y1^2 y2^3 + y1^4 y2^2 + y1^3 y2^2 + y1^2 y2^2"
                    " - y1^4 y2 - y1^3 y2 + y1^4"),
              d0};
  RatFunc t01{P("-2 y1^4 y2^7") * P("y1 y2^6 + y2^6 - y1 y2^5 - y1^2 y2^4 - y1 y2^4 + y1^3 y2^3"
                                     " + y1 y2^3 - y1^3 y2^2 - y1^2 y2^2 - y1^3 y2 + y1^4 + y1^3"),
              d0};

  LaurentPoly d1 =
      denominator({{"y1 - 1", 2}, {"y1 - y2", 1}, {"y2 - 1", 1}, {"y1 - y2^3", 3}, {"y1^2 - y2^3", 3}});
  RatFunc tw0{P("-y1^6 y2^6") * P("y2^8 + 4 y1 y2^6 + 2 y1^2 y2^5 + 2 y1 y2^5 + 9 y1^2 y2^4 + 2 y1^3 y2^3"
                                   " + 2 y1^2 y2^3 + 4 y1^3 y2^2 + y1^4"),
              d1};
  RatFunc tw1{P("-y1^7 y2^7") * P("2 y2^6 + 3 y2^5 + 6 y1 y2^4 + y1^2 y2^3 + 4 y1 y2^3 + 6 y1^2 y2^2"
                                   " + 3 y1^2 y2 + 2 y1^3"),
              d1};
  RatFunc tw2{P("-y1^7 y2^7") * P("2 y2^6 + 3 y1 y2^5 + 6 y1 y2^4 + 4 y1^2 y2^3 + y1 y2^3 + 6 y1^2 y2^2"
                                   " + 3 y1^3 y2 + 2 y1^3"),
              d1};

  auto same = [](const Weight& w) { return w; };
  spread(d, zero, c0, same, c1_);
  spread(d, w1, c_w1, same, c1_);
  spread(d, w2, c_w2, same, c2_);
  const RatFunc* t_zero[3] = {&t00, &t01, &t01};
  const RatFunc* t_w1[3] = {&tw0, &tw1, &tw2};
  for (int j = 0; j < 3; ++j) {
    auto key = [j](const Weight& w) { return std::make_pair(w, j); };
    spread(d, zero, *t_zero[j], key, t_);
    spread(d, w1, *t_w1[j], key, t_);
  }
}

ClosedFormG2::Values ClosedFormG2::coefficients_at(const EvalPoint& pt) const {
  Values v;
  for (const auto& [w, f] : c1_) v.c1[w] = f.evaluate(pt.y);
  for (const auto& [w, f] : c2_) v.c2[w] = f.evaluate(pt.y);
  for (const auto& [k, f] : t_) v.t[k] = f.evaluate(pt.y);
  return v;
}

std::pair<std::vector<Rational>, std::vector<Rational>> ClosedFormG2::r_sequences(const EvalPoint& pt,
                                                                                  int M) const {
  auto v = coefficients_at(pt);
  MonomialEvaluator ev(pt.y, 2);
  std::vector<Rational> r1, r2;
  for (int m = 0; m <= M; ++m) {
    Rational s = 0;
    for (const auto& [w, c] : v.c1) s += c * ev.value(m * w);
    r1.push_back(s);
  }
  for (int m = 0; m <= M; ++m) {
    int q = m / 3, j = m % 3;
    Rational s = 0;
    for (const auto& [w, c] : v.c2) s += c * ev.value(m * w);
    for (const auto& [k, c] : v.t)
      if (k.second == j) s += c * ev.value(q * k.first);
    r2.push_back(s);
  }
  return {r1, r2};
}

bool ClosedFormG2::stabilizers_consistent(const EvalPoint& pt) const {
  const RootDatum& d = *g2_;
  auto check = [&](const Weight& w, const RatFunc& f) {
    for (int i = 0; i < d.rank(); ++i)
      if (d.reflect(i, w) == w && f.reflected(d, i).evaluate(pt.y) != f.evaluate(pt.y)) return false;
    return true;
  };
  for (const auto& [w, f] : c1_)
    if (!check(w, f)) return false;
  for (const auto& [w, f] : c2_)
    if (!check(w, f)) return false;
  for (const auto& [k, f] : t_)
    if (!check(k.first, f)) return false;
  return true;
}

G2IdentityReport verify_g2_identities(const ClosedFormG2& cf, const EvalPoint& pt, int M) {
  G2IdentityReport rep;
  rep.point = pt;
  rep.m_max = M;
  auto [r1, r2] = cf.r_sequences(pt, 3 * M + 3);
  auto fail = [&](bool& flag, const std::string& what) {
    if (flag) rep.detail = what;
    flag = false;
  };
  for (int m = 1; m <= M && rep.identities_ok; ++m) {
    if (r1[m] * r1[m] != r1[m - 1] * r1[m + 1] + r2[3 * m]) fail(rep.identities_ok, "node 1 relation at m=" + std::to_string(m));
    else if (r2[3 * m] * r2[3 * m] != r2[3 * m - 1] * r2[3 * m + 1] + r1[m] * r1[m] * r1[m])
      fail(rep.identities_ok, "node 2 relation at 3m, m=" + std::to_string(m));
    else if (r2[3 * m + 1] * r2[3 * m + 1] != r2[3 * m] * r2[3 * m + 2] + r1[m] * r1[m] * r1[m + 1])
      fail(rep.identities_ok, "node 2 relation at 3m+1, m=" + std::to_string(m));
    else if (r2[3 * m + 2] * r2[3 * m + 2] != r2[3 * m + 1] * r2[3 * m + 3] + r1[m] * r1[m + 1] * r1[m + 1])
      fail(rep.identities_ok, "node 2 relation at 3m+2, m=" + std::to_string(m));
  }
  const RootDatum& g2 = cf.datum();
  auto q1 = eval_sequence(g2, 1, pt, M);
  auto q2 = eval_sequence(g2, 2, pt, M);
  for (int m = 0; m <= M && rep.q_match_ok; ++m) {
    if (q1[m] != r1[m]) fail(rep.q_match_ok, "R and Q differ at node 1, m=" + std::to_string(m));
    else if (q2[m] != r2[m]) fail(rep.q_match_ok, "R and Q differ at node 2, m=" + std::to_string(m));
  }
  DiffOperator op = node_operator(g2, 2);
  long ell = op.order();
  if (static_cast<long>(r2.size()) > ell) {
    auto coeffs = operator_coeffs_at(g2, op, pt);
    auto rr = verify_recurrence_eval(coeffs, r2, static_cast<int>(ell), static_cast<int>(r2.size()) - 1);
    if (!rr.residual_zero) fail(rep.operator_ok, "operator residual at m=" + std::to_string(*rr.first_failure));
  }
  return rep;
}

std::pair<Rational, Rational> g2_ratio(const ClosedFormG2& cf, const EvalPoint& pt, int m) {
  auto r1 = cf.r_sequences(pt, m + 1).first;
  return {r1[m + 1] / r1[m], pt.y.at(0)};
}

}  // namespace krq

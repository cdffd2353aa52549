#include "krq/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "krq/errors.hpp"

namespace krq {

LaurentPoly LaurentPoly::constant(const BigInt& c) { return monomial(Weight{}, c); }

LaurentPoly LaurentPoly::monomial(const Weight& w, const BigInt& c) {
  LaurentPoly p;
  p.add_term(w, c);
  return p;
}

void LaurentPoly::add_term(const Weight& w, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt LaurentPoly::coeff(const Weight& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? BigInt(0) : it->second;
}

BigInt LaurentPoly::coefficient_sum() const {
  BigInt s = 0;
  for (const auto& [w, c] : terms_) s += c;
  return s;
}

std::vector<std::pair<Weight, BigInt>> LaurentPoly::sorted_terms() const {
  std::vector<std::pair<Weight, BigInt>> v(terms_.begin(), terms_.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const BigInt& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= k;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  const LaurentPoly& small = a.size() <= b.size() ? a : b;
  const LaurentPoly& big = a.size() <= b.size() ? b : a;
  LaurentPoly out;
  out.terms_.reserve(big.size() * 2);
  BigInt prod;
  for (const auto& [u, cu] : small.terms_)
    for (const auto& [v, cv] : big.terms_) {
      prod = cu * cv;
      out.add_term(u + v, prod);
    }
  return out;
}

LaurentPoly LaurentPoly::shifted(const Weight& w) const {
  LaurentPoly out;
  out.terms_.reserve(terms_.size());
  for (const auto& [u, c] : terms_) out.terms_.emplace(u + w, c);
  return out;
}

LaurentPoly LaurentPoly::map_exponents(const std::function<Weight(const Weight&)>& f) const {
  LaurentPoly out;
  for (const auto& [u, c] : terms_) out.add_term(f(u), c);
  return out;
}

Rational LaurentPoly::evaluate(const std::vector<Rational>& y) const {
  MonomialEvaluator ev(y, static_cast<int>(y.size()));
  Rational s = 0;
  for (const auto& [w, c] : terms_) s += Rational(c) * ev.value(w);
  return s;
}

namespace {

template <class Less>
LaurentPoly exact_div_impl(const LaurentPoly& p, const LaurentPoly& q, Less less, int nvars) {
  if (q.is_zero()) throw InvalidArgument("division by the zero polynomial");
  auto extreme = [&](const LaurentPoly& x, bool top) {
    const Weight* best = nullptr;
    for (const auto& [w, c] : x.terms())
      if (!best || (top ? less(*best, w) : less(w, *best))) best = &w;
    return *best;
  };
  LaurentPoly quot;
  if (p.is_zero()) return quot;
  Weight lq = extreme(q, true), tq = extreme(q, false);
  Weight floor_exp = extreme(p, false) - tq;
  BigInt lc = q.coeff(lq);
  LaurentPoly r = p;
  while (!r.is_zero()) {
    Weight lr = extreme(r, true);
    Weight s = lr - lq;
    BigInt c = r.coeff(lr);
    if (less(s, floor_exp) || c % lc != 0) {
      std::ostringstream os;
      os << "exact division failed: remainder has " << r.size() << " terms, leading exponent "
         << lr.str(nvars) << " with coefficient " << c.get_str();
      throw DivisionError(os.str());
    }
    BigInt k = c / lc;
    quot.add_term(s, k);
    for (const auto& [w, cw] : q.terms()) r.add_term(w + s, -k * cw);
  }
  return quot;
}

}  // namespace

LaurentPoly poly_exact_div(const RootDatum& d, const LaurentPoly& p, const LaurentPoly& q) {
  return exact_div_impl(p, q, [&d](const Weight& a, const Weight& b) { return d.term_less(a, b); }, d.rank());
}

LaurentPoly poly_exact_div(const LaurentPoly& p, const LaurentPoly& q, int nvars) {
  auto less = [nvars](const Weight& a, const Weight& b) {
    long da = 0, db = 0;
    for (int i = 0; i < nvars; ++i) da += a.c[i], db += b.c[i];
    if (da != db) return da < db;
    return a < b;
  };
  return exact_div_impl(p, q, less, nvars);
}

LaurentPoly w_act(const RootDatum& d, int i, const LaurentPoly& p) {
  return p.map_exponents([&](const Weight& w) { return d.reflect(i, w); });
}

bool is_w_invariant(const RootDatum& d, const LaurentPoly& p) {
  for (int i = 0; i < d.rank(); ++i)
    for (const auto& [w, c] : p.terms())
      if (p.coeff(d.reflect(i, w)) != c) return false;
  return true;
}

MonomialEvaluator::MonomialEvaluator(const std::vector<Rational>& y, int rank)
    : y_(y), rank_(rank), cache_(rank) {
  for (int i = 0; i < rank_; ++i)
    if (y_[i] == 0) throw EvaluationError("evaluation point has a zero coordinate");
}

const Rational& MonomialEvaluator::power(int i, int k) {
  auto it = cache_[i].find(k);
  if (it != cache_[i].end()) return it->second;
  Rational v = 1;
  Rational base = k >= 0 ? y_[i] : Rational(1) / y_[i];
  unsigned long e = static_cast<unsigned long>(k >= 0 ? k : -k);
  mpz_pow_ui(v.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(v.get_den_mpz_t(), base.get_den_mpz_t(), e);
  v.canonicalize();
  return cache_[i].emplace(k, std::move(v)).first->second;
}

Rational MonomialEvaluator::value(const Weight& w) {
  Rational v = 1;
  for (int i = 0; i < rank_; ++i)
    if (w.c[i] != 0) v *= power(i, w.c[i]);
  return v;
}

}  // namespace krq

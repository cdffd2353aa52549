#include "krq/dimqp.hpp"

#include <cmath>

#include "krq/errors.hpp"
#include "krq/qsystem.hpp"

namespace krq {

namespace {

Rational rpow(const Rational& base, long exp) {
  Rational r = 1;
  Rational b = exp < 0 ? Rational(1) / base : base;
  for (long k = std::labs(exp); k > 0; --k) r *= b;
  return r;
}

// Coefficients of sum_i p[i] (s x + k)^i.
std::vector<Rational> compose_affine(const std::vector<Rational>& p, const Rational& s, const Rational& k) {
  std::vector<Rational> out{0};
  for (size_t i = p.size(); i-- > 0;) {
    out = poly_mul(out, {k, s});
    out[0] += p[i];
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

Rational QuasiPoly::operator()(long m) const {
  const auto& p = polys[static_cast<size_t>(floor_mod(m, period))];
  return poly_eval(p, Rational(m));
}

std::vector<Rational> QuasiPoly::substituted(int k) const {
  return compose_affine(polys.at(static_cast<size_t>(k)), Rational(period), Rational(k));
}

int degree_e(const RootDatum& d, int node) {
  Rational s = 0;
  for (int b = 0; b < d.rank(); ++b) s += d.cartan_inv(node - 1, b);
  s *= 2;
  if (s.get_den() != 1) throw Error("non-integral degree for node " + std::to_string(node));
  return static_cast<int>(s.get_num().get_si());
}

int predicted_c(const RootDatum& d, int node) {
  return d.t(node - 1) * (degree_e(d, node) + 1 - d.dual_coxeter());
}

Rational leading_rhs(const RootDatum& d, int node) {
  int a = node - 1;
  Rational r = 1;
  for (int b = 0; b < d.rank(); ++b) {
    int cab = d.cartan(a, b);
    if (b == a || cab >= 0) continue;
    Rational ratio(d.cartan(b, a), cab);
    ratio.canonicalize();
    r *= rpow(ratio, -static_cast<long>(cab) * degree_e(d, b + 1));
  }
  return r;
}

std::vector<long double> leading_coefficient_float(const RootDatum& d) {
  int r = d.rank();
  std::vector<long double> rhs(r);
  for (int a = 0; a < r; ++a) {
    long double l = -std::log(static_cast<long double>(degree_e(d, a + 1)));
    for (int b = 0; b < r; ++b) {
      int cab = d.cartan(a, b);
      if (b == a || cab >= 0) continue;
      long double ratio = static_cast<long double>(d.cartan(b, a)) / cab;
      l += -cab * degree_e(d, b + 1) * std::log(ratio);
    }
    rhs[a] = l;
  }
  std::vector<long double> out(r);
  for (int a = 0; a < r; ++a) {
    long double s = 0;
    for (int b = 0; b < r; ++b) s += d.cartan_inv(a, b).get_d() * rhs[b];
    out[a] = std::exp(s);
  }
  return out;
}

bool satisfies_leading_system(const RootDatum& d, const std::vector<Rational>& c) {
  for (int a = 0; a < d.rank(); ++a) {
    Rational lhs = degree_e(d, a + 1);
    for (int b = 0; b < d.rank(); ++b) lhs *= rpow(c[b], d.cartan(a, b));
    if (lhs != leading_rhs(d, a + 1)) return false;
  }
  return true;
}

LeadingCoefficientReport leading_coefficient(const RootDatum& d) {
  LeadingCoefficientReport rep;
  rep.numeric = leading_coefficient_float(d);
  for (int a = 1; a <= d.rank(); ++a) {
    auto hv = h_vector(d, a);
    int e = degree_e(d, a), t = d.t(a - 1);
    BigInt s = 0;
    for (const auto& x : hv.h) s += x;
    BigInt den = factorial(e);
    for (int i = 0; i <= e; ++i) den *= t;
    Rational c(s, den);
    c.canonicalize();
    rep.exact.push_back(c);
    long double rel = std::fabs(static_cast<long double>(c.get_d()) - rep.numeric[a - 1]) / rep.numeric[a - 1];
    rep.max_rel_error = std::max(rep.max_rel_error, rel);
  }
  rep.exact_solves_system = satisfies_leading_system(d, rep.exact);
  return rep;
}

HVector h_vector_from_dims(const std::vector<BigInt>& dims, int e, int t, int c) {
  long n = static_cast<long>(dims.size());
  std::vector<BigInt> h(static_cast<size_t>(n));
  for (long j = 0; j < n; ++j) {
    BigInt s = 0;
    for (long k = 0; k <= e + 1 && j - t * k >= 0; ++k) {
      BigInt term = binomial(e + 1, k) * dims[static_cast<size_t>(j - t * k)];
      if (k % 2) s -= term;
      else s += term;
    }
    h[static_cast<size_t>(j)] = s;
  }
  for (long j = c + 1; j < n; ++j)
    if (h[static_cast<size_t>(j)] != 0)
      throw Error("h-vector entry " + std::to_string(j) + " beyond predicted degree " + std::to_string(c) +
                  " is " + to_string(h[static_cast<size_t>(j)]));
  if (c < 0 || c >= n || h[static_cast<size_t>(c)] == 0)
    throw Error("h-vector does not end at the predicted degree " + std::to_string(c));
  h.resize(static_cast<size_t>(c) + 1);
  return HVector{h};
}

HVector h_vector(const RootDatum& d, int node) {
  int e = degree_e(d, node), t = d.t(node - 1), c = predicted_c(d, node);
  // one full period past the numerator on top of the denominator's span
  int N = c + t * (e + 2);
  return h_vector_from_dims(dim_sequence(d, node, N), e, t, c);
}

QuasiPoly quasipoly_from_h(const HVector& hv, int e, int t) {
  QuasiPoly q;
  q.period = t;
  q.degree = e;
  Rational inv_fact(1, factorial(e));
  Rational inv_t(1, t);
  for (int k = 0; k < t; ++k) {
    std::vector<Rational> branch{0};
    for (int j = k; j <= hv.c(); j += t) {
      // binom(e + (m - j)/t, e) as a polynomial in m
      std::vector<Rational> b{inv_fact};
      for (int i = 1; i <= e; ++i) b = poly_mul(b, {Rational(i) - Rational(j, t), inv_t});
      if (branch.size() < b.size()) branch.resize(b.size(), 0);
      for (size_t i = 0; i < b.size(); ++i) branch[i] += Rational(hv.h[static_cast<size_t>(j)]) * b[i];
    }
    for (auto& x : branch) x.canonicalize();
    q.polys.push_back(branch);
  }
  return q;
}

QuasiPoly quasipoly(const RootDatum& d, int node) {
  return quasipoly_from_h(h_vector(d, node), degree_e(d, node), d.t(node - 1));
}

QuasiPolyCheck check_qsystem_quasipoly(const RootDatum& d, const std::vector<QuasiPoly>& qs, long m_lo,
                                       long m_hi) {
  QuasiPolyCheck rep;
  for (long m = m_lo; m <= m_hi; ++m) {
    for (int a = 0; a < d.rank(); ++a) {
      const auto& q = qs[static_cast<size_t>(a)];
      Rational lhs = q(m) * q(m) - q(m - 1) * q(m + 1);
      Rational rhs = 1;
      for (int b = 0; b < d.rank(); ++b) {
        int cab = d.cartan(a, b);
        if (b == a || cab >= 0) continue;
        for (int k = 0; k < -cab; ++k) rhs *= qs[static_cast<size_t>(b)](floor_div(d.cartan(b, a) * m - k, cab));
      }
      if (lhs != rhs) {
        rep.ok = false;
        rep.first_failure_node = a + 1;
        rep.first_failure_m = m;
        rep.detail = "residual " + to_string(Rational(lhs - rhs));
        return rep;
      }
    }
  }
  return rep;
}

QuasiPolyCheck reciprocity_check(const QuasiPoly& qp, int e, int t, int hv, long range) {
  QuasiPolyCheck rep;
  for (long m = -range; m <= range; ++m) {
    Rational rhs = qp(m - static_cast<long>(t) * hv);
    if (e % 2) rhs = -rhs;
    if (qp(-m) != rhs) {
      rep.ok = false;
      rep.first_failure_m = m;
      rep.detail = "q(-m) = " + to_string(qp(-m)) + " but expected " + to_string(rhs);
      return rep;
    }
  }
  return rep;
}

QuasiPolyCheck negative_string_check(const QuasiPoly& qp, int e, int t, int hv) {
  QuasiPolyCheck rep;
  long k = static_cast<long>(t) * hv;
  for (long m = -1; m > -k; --m) {
    if (qp(m) != 0) {
      rep.ok = false;
      rep.first_failure_m = m;
      rep.detail = "nonzero value " + to_string(qp(m));
      return rep;
    }
  }
  Rational end = qp(-k), expect = e % 2 ? Rational(-qp(0)) : qp(0);
  if (end == 0 || end != expect) {
    rep.ok = false;
    rep.first_failure_m = -k;
    rep.detail = "endpoint value " + to_string(end);
  }
  return rep;
}

bool leading_coefficients_rigid(const QuasiPoly& qp) {
  const auto& ref = qp.polys.at(0);
  for (const auto& p : qp.polys) {
    if (p.size() != ref.size() || static_cast<int>(p.size()) != qp.degree + 1) return false;
    for (int i = 0; i < 3 && i <= qp.degree; ++i) {
      size_t idx = static_cast<size_t>(qp.degree - i);
      if (p[idx] != ref[idx]) return false;
    }
  }
  return true;
}

HVectorProperties hvector_properties(const HVector& hv) {
  HVectorProperties p;
  const auto& h = hv.h;
  int c = hv.c();
  for (int j = 0; j <= c; ++j) {
    if (p.symmetric && h[j] != h[c - j]) { p.symmetric = false; p.symmetric_at = j; }
    if (p.positive && h[j] <= 0) { p.positive = false; p.positive_at = j; }
    if (p.log_concave && j > 0 && j < c && h[j] * h[j] < h[j - 1] * h[j + 1]) {
      p.log_concave = false;
      p.log_concave_at = j;
    }
  }
  bool descending = false;
  for (int j = 1; j <= c && p.unimodal; ++j) {
    if (h[j] < h[j - 1]) descending = true;
    else if (h[j] > h[j - 1] && descending) { p.unimodal = false; p.unimodal_at = j; }
  }
  return p;
}

DimQPReport dimqp_report(const RootDatum& d, int node) {
  DimQPReport r;
  r.node = node;
  r.e = degree_e(d, node);
  r.t = d.t(node - 1);
  r.predicted_c = predicted_c(d, node);
  r.h = h_vector(d, node);
  r.c = r.h.c();
  r.q = quasipoly_from_h(r.h, r.e, r.t);
  r.leading = r.q.polys[0].back();
  r.props = hvector_properties(r.h);
  int N = r.c + r.t * (r.e + 2);
  auto dims = dim_sequence(d, node, N);
  for (int m = 0; m <= N; ++m)
    if (r.q(m) != Rational(dims[static_cast<size_t>(m)])) r.matches_dims = false;
  r.rigid = leading_coefficients_rigid(r.q);
  r.reciprocity = reciprocity_check(r.q, r.e, r.t, d.dual_coxeter(), 30).ok;
  r.negative_string = negative_string_check(r.q, r.e, r.t, d.dual_coxeter()).ok;
  return r;
}

}  // namespace krq

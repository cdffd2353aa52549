#include "krq/arith.hpp"

#include <stdexcept>

namespace krq {

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational binomial_poly_value(const Rational& x, long k) {
  Rational num = 1;
  for (long i = 0; i < k; ++i) num *= (x - i);
  Rational r = num / Rational(factorial(k));
  r.canonicalize();
  return r;
}

BigInt factorial(long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
  r.canonicalize();
  return r;
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Rational poly_eval(const std::vector<Rational>& p, const Rational& x) {
  Rational acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

}  // namespace krq

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace krq {

using BigInt = mpz_class;
using Rational = mpq_class;

// Floor division rounding toward negative infinity.
inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long floor_mod(long a, long b) { return a - b * floor_div(a, b); }

BigInt binomial(long n, long k);

// Generalized binomial coefficient binom(x, k) for rational x and k >= 0.
Rational binomial_poly_value(const Rational& x, long k);

BigInt factorial(long n);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);
Rational parse_rational(const std::string& s);

// Product of a sequence of polynomials given as coefficient vectors, low degree first.
std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b);
Rational poly_eval(const std::vector<Rational>& p, const Rational& x);

}  // namespace krq

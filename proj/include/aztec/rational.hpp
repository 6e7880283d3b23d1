#pragma once
// Exact rational scalars backed by GMP. Everything in the finite-size engine
// stays rational; floating point enters only in the asymptotic module.
#include <gmpxx.h>

#include <string>

namespace aztec {

using Rational = mpq_class;
using BigInt = mpz_class;

// Parses "3", "-7/2" or decimal strings like "0.25" into an exact rational.
Rational parse_rational(const std::string& s);

// Canonical "p/q" (or just "p" for integers) rendering.
std::string to_fraction_string(const Rational& r);

// r^e for integer e; negative e inverts (r must be nonzero then).
Rational pow_rational(const Rational& r, long e);

BigInt factorial(unsigned long n);

}  // namespace aztec

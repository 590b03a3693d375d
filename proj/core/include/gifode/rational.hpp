#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gifode {

// Exact rational in lowest terms with positive denominator (GMP keeps the
// canonical form through every arithmetic operation).
using Rat = mpq_class;
using BigInt = mpz_class;

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

Rat make_rat(long num, long den = 1);
Rat parse_rat(const std::string& text);
std::string to_string(const Rat& r);
double to_double(const Rat& r);

// Rational roots of sum coeffs[i] * t^i, ascending and without duplicates.
// Integers too large to factor by trial division (beyond ~1e12 after removing
// small primes) make the search give up on that candidate set and return
// fewer roots; callers treat missing roots as "no rational root found".
std::vector<Rat> rational_roots(const std::vector<Rat>& coeffs);

// Positive divisors of |n| (n != 0), or empty when |n| cannot be factored
// cheaply.
std::vector<BigInt> positive_divisors(const BigInt& n);

// True when r is a perfect square of a rational; root stored in *root.
bool rational_sqrt(const Rat& r, Rat* root);

}  // namespace gifode

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gifode/rational.hpp"

namespace gifode {

/// Dense univariate polynomial in x over the rationals. Coefficients are
/// indexed by power; the zero polynomial has no coefficients.
class PolyX {
 public:
  PolyX() = default;
  explicit PolyX(std::vector<Rat> coeffs);
  PolyX(const Rat& c);  // NOLINT: constants convert implicitly
  PolyX(long c) : PolyX(Rat(c)) {}  // NOLINT

  static PolyX x();
  static PolyX monomial(const Rat& c, int power);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const;
  const Rat& lc() const { return c_.back(); }

  PolyX operator-() const;
  PolyX& operator+=(const PolyX& o);
  PolyX& operator-=(const PolyX& o);
  PolyX& operator*=(const PolyX& o);
  friend PolyX operator+(PolyX a, const PolyX& b) { return a += b; }
  friend PolyX operator-(PolyX a, const PolyX& b) { return a -= b; }
  friend PolyX operator*(PolyX a, const PolyX& b) { return a *= b; }
  friend bool operator==(const PolyX& a, const PolyX& b) { return a.c_ == b.c_; }
  friend bool operator!=(const PolyX& a, const PolyX& b) { return !(a == b); }

  PolyX scaled(const Rat& s) const;
  PolyX derivative() const;
  PolyX monic() const;
  Rat eval(const Rat& t) const;
  double eval(double t) const;

  // Lexicographic on (degree, coefficients); only used to order containers.
  friend bool operator<(const PolyX& a, const PolyX& b);

 private:
  void trim();
  std::vector<Rat> c_;
};

// Quotient and remainder; throws ZeroDenominator when b is zero.
std::pair<PolyX, PolyX> divmod(const PolyX& a, const PolyX& b);
// Monic gcd (zero only when both inputs are zero).
PolyX gcd(const PolyX& a, const PolyX& b);
// Linear factors (x - r) with rational r and their multiplicities, plus the
// cofactor that has no rational root.
struct XFactorization {
  Rat unit;
  std::vector<std::pair<Rat, int>> roots;
  PolyX rest;  // monic
};
XFactorization factor_rational_roots(const PolyX& p);

std::string to_string(const PolyX& p, const std::string& var = "x");

/// Rational function of x in canonical form: gcd(num, den) = 1, den monic.
class RatX {
 public:
  RatX() : den_(Rat(1)) {}
  RatX(const Rat& c) : num_(c), den_(Rat(1)) {}  // NOLINT
  RatX(long c) : RatX(Rat(c)) {}                 // NOLINT
  RatX(const PolyX& p) : num_(p), den_(Rat(1)) {}  // NOLINT
  RatX(PolyX num, PolyX den);

  static RatX x() { return RatX(PolyX::x()); }

  const PolyX& num() const { return num_; }
  const PolyX& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rat constant_value() const { return num_.coeff(0); }

  RatX operator-() const;
  RatX& operator+=(const RatX& o);
  RatX& operator-=(const RatX& o);
  RatX& operator*=(const RatX& o);
  RatX& operator/=(const RatX& o);
  friend RatX operator+(RatX a, const RatX& b) { return a += b; }
  friend RatX operator-(RatX a, const RatX& b) { return a -= b; }
  friend RatX operator*(RatX a, const RatX& b) { return a *= b; }
  friend RatX operator/(RatX a, const RatX& b) { return a /= b; }
  friend bool operator==(const RatX& a, const RatX& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatX& a, const RatX& b) { return !(a == b); }
  friend bool operator<(const RatX& a, const RatX& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
  }

  RatX inverse() const;
  friend RatX ratx_normalize(const PolyX& num, const PolyX& den);
  RatX scaled(const Rat& s) const;
  RatX derivative() const;
  Rat eval(const Rat& t) const;
  double eval(double t) const;

 private:
  PolyX num_;
  PolyX den_;
};

// Canonical reduced form of num/den.
RatX ratx_normalize(const PolyX& num, const PolyX& den);

std::string to_string(const RatX& r, const std::string& var = "x");

inline bool is_zero(const RatX& r) { return r.is_zero(); }

}  // namespace gifode

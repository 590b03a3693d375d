#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gifode/errors.hpp"
#include "gifode/jets.hpp"
#include "gifode/polyx.hpp"

namespace gifode {

// Coefficient-ring hooks used by PolyY.
inline RatX coeff_dx(const RatX& c, int /*jet_cap*/) { return c.derivative(); }
inline DiffPoly coeff_dx(const DiffPoly& c, int jet_cap) { return diffpoly_dx(c, jet_cap); }
inline std::optional<RatX> coeff_inverse(const RatX& c) {
  if (c.is_zero()) return std::nullopt;
  return c.inverse();
}
inline std::optional<DiffPoly> coeff_inverse(const DiffPoly& c) { return diffpoly_inverse(c); }
inline bool is_zero(const DiffPoly& p) { return p.is_zero(); }

/// Dense polynomial in y whose coefficients live in C (RatX or DiffPoly).
template <class C>
class PolyY {
 public:
  PolyY() = default;
  explicit PolyY(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
  PolyY(const C& c) {  // NOLINT
    if (!gifode::is_zero(c)) c_.push_back(c);
  }

  static PolyY y(int power = 1) { return monomial(C(RatX(1)), power); }
  static PolyY monomial(const C& c, int power) {
    if (gifode::is_zero(c)) return {};
    std::vector<C> v(static_cast<std::size_t>(power) + 1);
    v.back() = c;
    return PolyY(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<C>& coeffs() const { return c_; }
  C coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return C();
    return c_[static_cast<std::size_t>(i)];
  }
  const C& lc() const { return c_.back(); }

  PolyY operator-() const {
    PolyY r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  PolyY& operator+=(const PolyY& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  PolyY& operator-=(const PolyY& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend PolyY operator+(PolyY a, const PolyY& b) { return a += b; }
  friend PolyY operator-(PolyY a, const PolyY& b) { return a -= b; }
  friend PolyY operator*(const PolyY& a, const PolyY& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (gifode::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (gifode::is_zero(b.c_[j])) continue;
        r[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return PolyY(std::move(r));
  }
  PolyY& operator*=(const PolyY& o) { return *this = *this * o; }
  friend bool operator==(const PolyY& a, const PolyY& b) { return a.c_ == b.c_; }
  friend bool operator!=(const PolyY& a, const PolyY& b) { return !(a == b); }

  PolyY scaled(const C& s) const {
    if (gifode::is_zero(s)) return {};
    PolyY r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
  }

  PolyY pow(int k) const {
    PolyY r(C(RatX(1)));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  PolyY dy() const {
    if (c_.size() <= 1) return {};
    std::vector<C> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * C(RatX(static_cast<long>(i)));
    return PolyY(std::move(r));
  }

  PolyY dx(int jet_cap = kDefaultJetCap) const {
    std::vector<C> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(coeff_dx(c, jet_cap));
    return PolyY(std::move(r));
  }

  // Horner evaluation at y = t.
  C eval_y(const C& t) const {
    C acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  template <class F>
  auto map_coeffs(F&& fn) const {
    using Out = decltype(fn(std::declval<const C&>()));
    std::vector<Out> r;
    r.reserve(c_.size());
    for (const auto& c : c_) r.push_back(fn(c));
    return PolyY<Out>(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && gifode::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<C> c_;
};

/// Division with remainder; requires an invertible leading coefficient of b.
template <class C>
std::pair<PolyY<C>, PolyY<C>> divmod(const PolyY<C>& a, const PolyY<C>& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero polynomial in y");
  auto inv = coeff_inverse(b.lc());
  if (!inv) throw Error(ErrorCode::InvalidArgument, "leading coefficient is not invertible");
  if (a.degree() < b.degree()) return {PolyY<C>(), a};
  std::vector<C> rem = a.coeffs();
  std::vector<C> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    C q = rem[static_cast<std::size_t>(k + b.degree())] * *inv;
    if (gifode::is_zero(q)) continue;
    quo[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= b.degree(); ++j)
      rem[static_cast<std::size_t>(k + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {PolyY<C>(std::move(quo)), PolyY<C>(std::move(rem))};
}

// a / b when exact and lc(b) invertible.
template <class C>
std::optional<PolyY<C>> exact_div(const PolyY<C>& a, const PolyY<C>& b) {
  if (b.is_zero() || !coeff_inverse(b.lc())) return std::nullopt;
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

using PolyYX = PolyY<RatX>;
using PolyYD = PolyY<DiffPoly>;

PolyYX monic(const PolyYX& p);
// Monic gcd over the fraction field Q(x).
PolyYX gcd(const PolyYX& a, const PolyYX& b);

// Lifts RatX coefficients into the differential-polynomial ring.
PolyYD to_diff(const PolyYX& p);
// Inverse of to_diff; nullopt when some coefficient involves jets.
std::optional<PolyYX> to_ratx(const PolyYD& p);

std::string to_string(const PolyYX& p, const std::string& yvar = "y", const std::string& xvar = "x");

/// Rational function in y over Q(x) in canonical form: reduced, with a
/// denominator whose leading y-coefficient is 1.
class RatY {
 public:
  RatY() : den_(RatX(1)) {}
  RatY(const RatX& c) : num_(c), den_(RatX(1)) {}  // NOLINT
  RatY(long c) : RatY(RatX(c)) {}                  // NOLINT
  RatY(const PolyYX& p) : num_(p), den_(RatX(1)) {}  // NOLINT

  static RatY y() { return RatY(PolyYX::y()); }

  const PolyYX& num() const { return num_; }
  const PolyYX& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_y_free() const { return num_.degree() <= 0 && den_.degree() <= 0; }
  // Only meaningful when is_y_free().
  RatX y_free_value() const { return num_.coeff(0) / den_.coeff(0); }

  RatY operator-() const;
  RatY& operator+=(const RatY& o);
  RatY& operator-=(const RatY& o);
  RatY& operator*=(const RatY& o);
  RatY& operator/=(const RatY& o);
  friend RatY operator+(RatY a, const RatY& b) { return a += b; }
  friend RatY operator-(RatY a, const RatY& b) { return a -= b; }
  friend RatY operator*(RatY a, const RatY& b) { return a *= b; }
  friend RatY operator/(RatY a, const RatY& b) { return a /= b; }
  friend bool operator==(const RatY& a, const RatY& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatY& a, const RatY& b) { return !(a == b); }

  RatY pow(int k) const;
  RatY dy() const;
  RatY dx() const;
  // Partial evaluation y := t.
  RatX at_y(const RatX& t) const;
  double eval(double x, double y) const;

  friend RatY raty_normalize(const PolyYX& num, const PolyYX& den);

 private:
  PolyYX num_;
  PolyYX den_;
};

// Canonical reduced form; throws ZeroDenominator for den == 0.
RatY raty_normalize(const PolyYX& num, const PolyYX& den);

std::string to_string(const RatY& r, const std::string& yvar = "y", const std::string& xvar = "x");

}  // namespace gifode

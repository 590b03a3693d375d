#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gifode/polyx.hpp"
#include "gifode/rational.hpp"

namespace gifode {

/// Sparse multivariate polynomial: a map from monomials (sorted lists of
/// (variable, exponent) pairs) to nonzero coefficients. Coeff must be a field
/// with an `is_zero` overload (Rat and RatX both qualify).
template <class Var, class Coeff>
class SparsePoly {
 public:
  using Monomial = std::vector<std::pair<Var, int>>;
  using Terms = std::map<Monomial, Coeff>;

  SparsePoly() = default;
  SparsePoly(const Coeff& c) {  // NOLINT
    if (!gifode::is_zero(c)) terms_.emplace(Monomial{}, c);
  }

  static SparsePoly variable(const Var& v, int power = 1) {
    SparsePoly p;
    p.terms_.emplace(Monomial{{v, power}}, Coeff(1));
    return p;
  }
  static SparsePoly term(Monomial m, const Coeff& c) {
    SparsePoly p;
    p.add_term(std::move(m), c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  Coeff constant_coeff() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(Monomial m, const Coeff& c) {
    if (gifode::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), c);
      return;
    }
    it->second += c;
    if (gifode::is_zero(it->second)) terms_.erase(it);
  }

  SparsePoly operator-() const {
    SparsePoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  SparsePoly& operator*=(const SparsePoly& o) {
    *this = *this * o;
    return *this;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
  }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

  SparsePoly scaled(const Coeff& s) const {
    SparsePoly r;
    if (gifode::is_zero(s)) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
  }

  SparsePoly pow(int k) const {
    SparsePoly r(Coeff(1));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  static Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        r.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        r.push_back(b[j++]);
      } else {
        r.emplace_back(a[i].first, a[i].second + b[j].second);
        ++i;
        ++j;
      }
    }
    return r;
  }

  static int mono_degree(const Monomial& m) {
    int d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
  }

  int degree_in(const Var& v) const {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_)
      for (const auto& [w, e] : m)
        if (w == v) d = std::max(d, e);
    return d;
  }

  std::set<Var> vars() const {
    std::set<Var> s;
    for (const auto& [m, c] : terms_)
      for (const auto& [w, e] : m) s.insert(w);
    return s;
  }

  bool contains(const Var& v) const { return degree_in(v) > 0; }

  /// Coefficients with respect to v, indexed by the power of v.
  std::vector<SparsePoly> coefficients_in(const Var& v) const {
    std::vector<SparsePoly> out(static_cast<std::size_t>(std::max(0, degree_in(v)) + 1));
    for (const auto& [m, c] : terms_) {
      Monomial rest;
      int e = 0;
      for (const auto& p : m) {
        if (p.first == v) {
          e = p.second;
        } else {
          rest.push_back(p);
        }
      }
      out[static_cast<std::size_t>(e)].add_term(std::move(rest), c);
    }
    return out;
  }

  SparsePoly substitute(const Var& v, const SparsePoly& value) const {
    if (!contains(v)) return *this;
    auto cs = coefficients_in(v);
    SparsePoly r;
    SparsePoly pw(Coeff(1));
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (k > 0) pw = pw * value;
      if (!cs[k].is_zero()) r += cs[k] * pw;
    }
    return r;
  }

  template <class F>
  auto map_coeffs(F&& fn) const {
    using Out = decltype(fn(std::declval<const Coeff&>()));
    SparsePoly<Var, Out> r;
    for (const auto& [m, c] : terms_) r.add_term(m, fn(c));
    return r;
  }

  /// Lex order with smaller Var values taking priority.
  static bool lex_less(const Monomial& a, const Monomial& b) {
    std::size_t i = 0, j = 0;
    for (;;) {
      if (i == a.size() && j == b.size()) return false;
      if (i == a.size()) return true;
      if (j == b.size()) return false;
      if (a[i].first < b[j].first) return false;  // a has a higher-priority var
      if (b[j].first < a[i].first) return true;
      if (a[i].second != b[j].second) return a[i].second < b[j].second;
      ++i;
      ++j;
    }
  }

  const std::pair<const Monomial, Coeff>& leading_term() const {
    auto best = terms_.begin();
    for (auto it = terms_.begin(); it != terms_.end(); ++it)
      if (lex_less(best->first, it->first)) best = it;
    return *best;
  }

 private:
  Terms terms_;
};

/// a / b when the division is exact, nullopt otherwise.
template <class Var, class Coeff>
std::optional<SparsePoly<Var, Coeff>> exact_divide(const SparsePoly<Var, Coeff>& a,
                                                   const SparsePoly<Var, Coeff>& b) {
  using SP = SparsePoly<Var, Coeff>;
  using Monomial = typename SP::Monomial;
  if (b.is_zero()) return std::nullopt;
  SP rem = a, quo;
  const auto& [lb_m, lb_c] = b.leading_term();
  while (!rem.is_zero()) {
    const auto& [lr_m, lr_c] = rem.leading_term();
    // lr_m / lb_m
    Monomial q;
    std::size_t j = 0;
    bool ok = true;
    for (const auto& [v, e] : lr_m) {
      int eb = 0;
      if (j < lb_m.size() && lb_m[j].first == v) eb = lb_m[j++].second;
      else if (j < lb_m.size() && lb_m[j].first < v) {
        ok = false;
        break;
      }
      if (e < eb) {
        ok = false;
        break;
      }
      if (e > eb) q.emplace_back(v, e - eb);
    }
    if (!ok || j != lb_m.size()) return std::nullopt;
    Coeff qc = lr_c / lb_c;
    SP t = SP::term(q, qc);
    quo += t;
    rem -= t * b;
  }
  return quo;
}

}  // namespace gifode

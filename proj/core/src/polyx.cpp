#include "gifode/polyx.hpp"

#include <algorithm>
#include <sstream>

#include "gifode/errors.hpp"

namespace gifode {

PolyX::PolyX(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

PolyX::PolyX(const Rat& c) {
  if (!gifode::is_zero(c)) c_.push_back(c);
}

PolyX PolyX::x() { return monomial(Rat(1), 1); }

PolyX PolyX::monomial(const Rat& c, int power) {
  if (gifode::is_zero(c)) return {};
  std::vector<Rat> v(static_cast<std::size_t>(power) + 1, Rat(0));
  v.back() = c;
  return PolyX(std::move(v));
}

void PolyX::trim() {
  while (!c_.empty() && gifode::is_zero(c_.back())) c_.pop_back();
}

Rat PolyX::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
  return c_[static_cast<std::size_t>(i)];
}

PolyX PolyX::operator-() const {
  PolyX r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

PolyX& PolyX::operator+=(const PolyX& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

PolyX& PolyX::operator-=(const PolyX& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

PolyX& PolyX::operator*=(const PolyX& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (gifode::is_zero(c_[i])) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

PolyX PolyX::scaled(const Rat& s) const {
  if (gifode::is_zero(s)) return {};
  PolyX r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

PolyX PolyX::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rat> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return PolyX(std::move(r));
}

PolyX PolyX::monic() const {
  if (is_zero()) return {};
  Rat inv = 1 / lc();
  return scaled(inv);
}

Rat PolyX::eval(const Rat& t) const {
  Rat acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double PolyX::eval(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->get_d();
  return acc;
}

bool operator<(const PolyX& a, const PolyX& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  }
  return false;
}

std::pair<PolyX, PolyX> divmod(const PolyX& a, const PolyX& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "polynomial division by zero");
  if (a.degree() < b.degree()) return {PolyX(), a};
  std::vector<Rat> rem = a.coeffs();
  std::vector<Rat> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rat(0));
  const Rat inv = 1 / b.lc();
  const auto& bc = b.coeffs();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rat q = rem[static_cast<std::size_t>(k + b.degree())] * inv;
    quo[static_cast<std::size_t>(k)] = q;
    if (is_zero(q)) continue;
    for (int j = 0; j <= b.degree(); ++j)
      rem[static_cast<std::size_t>(k + j)] -= q * bc[static_cast<std::size_t>(j)];
  }
  return {PolyX(std::move(quo)), PolyX(std::move(rem))};
}

namespace {

// Integer coefficients without common content, for the remainder sequence.
std::vector<BigInt> primitive_integer(const std::vector<Rat>& c) {
  BigInt l = 1, g = 0;
  for (const Rat& r : c) l = lcm(l, BigInt(r.get_den()));
  std::vector<BigInt> out;
  for (const Rat& r : c) {
    out.push_back(BigInt(r.get_num()) * (l / BigInt(r.get_den())));
    g = gcd(g, out.back());
  }
  if (g != 0 && g != 1)
    for (auto& v : out) v /= g;
  return out;
}

void trim(std::vector<BigInt>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

}  // namespace

PolyX gcd(const PolyX& a, const PolyX& b) {
  std::vector<BigInt> u = primitive_integer(a.coeffs()), v = primitive_integer(b.coeffs());
  if (u.size() < v.size()) std::swap(u, v);
  while (!v.empty()) {
    // Pseudo-remainder of u by v, then content removal.
    while (u.size() >= v.size()) {
      BigInt lu = u.back();
      std::size_t shift = u.size() - v.size();
      for (auto& c : u) c *= v.back();
      for (std::size_t j = 0; j < v.size(); ++j) u[shift + j] -= lu * v[j];
      trim(u);
    }
    std::vector<Rat> r;
    for (auto& c : u) r.emplace_back(c);
    u = std::move(v);
    v = primitive_integer(r);
    trim(v);
  }
  std::vector<Rat> out;
  for (auto& c : u) out.emplace_back(c);
  return PolyX(std::move(out)).monic();
}

XFactorization factor_rational_roots(const PolyX& p) {
  XFactorization out;
  if (p.is_zero()) {
    out.unit = Rat(0);
    return out;
  }
  out.unit = p.lc();
  PolyX rest = p.monic();
  for (const Rat& r : rational_roots(rest.coeffs())) {
    PolyX lin(std::vector<Rat>{-r, Rat(1)});
    int m = 0;
    for (;;) {
      auto [q, rem] = divmod(rest, lin);
      if (!rem.is_zero()) break;
      rest = q;
      ++m;
    }
    if (m > 0) out.roots.emplace_back(r, m);
  }
  out.rest = rest;
  return out;
}

namespace {

std::string power_str(const std::string& var, int k) {
  if (k == 1) return var;
  return var + "^" + std::to_string(k);
}

}  // namespace

std::string to_string(const PolyX& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    Rat c = p.coeff(k);
    if (is_zero(c)) continue;
    const bool neg = sgn(c) < 0;
    Rat a = abs(c);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << to_string(a);
    } else if (a == 1) {
      os << power_str(var, k);
    } else {
      os << to_string(a) << "*" << power_str(var, k);
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

RatX::RatX(PolyX num, PolyX den) {
  *this = ratx_normalize(num, den);
}

RatX ratx_normalize(const PolyX& num, const PolyX& den) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "rational function with zero denominator");
  RatX r;
  if (num.is_zero()) return r;
  if (den.is_constant()) {
    r.num_ = num.scaled(1 / den.lc());
    r.den_ = PolyX(Rat(1));
    return r;
  }
  PolyX g = gcd(num, den);
  PolyX n = num, d = den;
  if (g.degree() > 0) {
    n = divmod(num, g).first;
    d = divmod(den, g).first;
  }
  Rat inv = 1 / d.lc();
  r.num_ = n.scaled(inv);
  r.den_ = d.scaled(inv);
  return r;
}

RatX RatX::operator-() const {
  RatX r = *this;
  r.num_ = -r.num_;
  return r;
}

RatX& RatX::operator+=(const RatX& o) {
  if (den_ == o.den_) {
    if (den_.is_constant()) {
      num_ += o.num_;
      return *this;
    }
    *this = ratx_normalize(num_ + o.num_, den_);
    return *this;
  }
  *this = ratx_normalize(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  return *this;
}

RatX& RatX::operator-=(const RatX& o) { return *this += -o; }

RatX& RatX::operator*=(const RatX& o) {
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ *= o.num_;
    return *this;
  }
  *this = ratx_normalize(num_ * o.num_, den_ * o.den_);
  return *this;
}

RatX& RatX::operator/=(const RatX& o) {
  if (o.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero rational function");
  *this = ratx_normalize(num_ * o.den_, den_ * o.num_);
  return *this;
}

RatX RatX::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroDenominator, "inverse of zero");
  return ratx_normalize(den_, num_);
}

RatX RatX::scaled(const Rat& s) const {
  RatX r = *this;
  r.num_ = r.num_.scaled(s);
  return r;
}

RatX RatX::derivative() const {
  if (den_.is_constant()) return RatX(num_.derivative());
  return ratx_normalize(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rat RatX::eval(const Rat& t) const {
  Rat d = den_.eval(t);
  if (gifode::is_zero(d)) throw Error(ErrorCode::PoleAtPoint, "pole of rational function");
  return num_.eval(t) / d;
}

double RatX::eval(double t) const { return num_.eval(t) / den_.eval(t); }

std::string to_string(const RatX& r, const std::string& var) {
  if (r.den().is_constant()) return to_string(r.num(), var);
  return "(" + to_string(r.num(), var) + ")/(" + to_string(r.den(), var) + ")";
}

}  // namespace gifode

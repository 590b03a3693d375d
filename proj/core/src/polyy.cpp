#include "gifode/polyy.hpp"

#include <sstream>

namespace gifode {

PolyYX monic(const PolyYX& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.lc().inverse());
}

namespace {

// Polynomials in y over Q[x], used for the primitive remainder sequence.
using PX = std::vector<PolyX>;

void trim(PX& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

PX clear_denominators(const PolyYX& p) {
  PolyX L = PolyX::monomial(Rat(1), 0);
  for (const auto& c : p.coeffs())
    if (!c.is_zero()) L = divmod(L * c.den(), gcd(L, c.den())).first;
  PX out;
  for (const auto& c : p.coeffs()) out.push_back(c.is_zero() ? PolyX() : divmod(c.num() * L, c.den()).first);
  return out;
}

// Divides out the gcd of the coefficients and makes the leading one monic.
PX primitive(PX p) {
  trim(p);
  if (p.empty()) return p;
  PolyX g;
  for (const auto& c : p) g = gcd(g, c);
  Rat s = Rat(1) / divmod(p.back(), g).first.lc();
  for (auto& c : p) c = divmod(c, g).first.scaled(s);
  return p;
}

// lc(v)^k u mod v, one leading term at a time.
PX pseudo_remainder(PX u, const PX& v) {
  const std::size_t dv = v.size() - 1;
  while (u.size() >= v.size()) {
    PolyX a = u.back();
    std::size_t shift = u.size() - v.size();
    for (auto& c : u) c = c * v.back();
    for (std::size_t j = 0; j <= dv; ++j) u[shift + j] -= a * v[j];
    trim(u);
  }
  return u;
}

}  // namespace

PolyYX gcd(const PolyYX& a, const PolyYX& b) {
  PX u = primitive(clear_denominators(a)), v = primitive(clear_denominators(b));
  if (u.size() < v.size()) std::swap(u, v);
  while (!v.empty()) {
    PX r = pseudo_remainder(u, v);
    u = std::move(v);
    v = primitive(std::move(r));
  }
  std::vector<RatX> cs;
  for (auto& c : u) cs.emplace_back(std::move(c));
  return monic(PolyYX(std::move(cs)));
}

PolyYD to_diff(const PolyYX& p) {
  return p.map_coeffs([](const RatX& c) { return DiffPoly(c); });
}

std::optional<PolyYX> to_ratx(const PolyYD& p) {
  std::vector<RatX> out;
  for (const auto& c : p.coeffs()) {
    if (!c.is_constant()) return std::nullopt;
    out.push_back(c.constant_coeff());
  }
  return PolyYX(std::move(out));
}

namespace {

bool is_single_term(const RatX& c) {
  if (!c.is_polynomial()) return false;
  int nz = 0;
  for (const auto& q : c.num().coeffs()) nz += is_zero(q) ? 0 : 1;
  return nz == 1;
}

}  // namespace

std::string to_string(const PolyYX& p, const std::string& yvar, const std::string& xvar) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const RatX& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string ypow = k == 0 ? "" : (k == 1 ? yvar : yvar + "^" + std::to_string(k));
    bool neg = false;
    std::string cs;
    if (c.is_constant()) {
      Rat v = c.constant_value();
      neg = sgn(v) < 0;
      Rat a = abs(v);
      if (!(a == 1 && k > 0)) cs = to_string(a);
    } else if (is_single_term(c)) {
      neg = sgn(c.num().lc()) < 0;
      cs = to_string(neg ? RatX(-c.num()) : c, xvar);
    } else {
      cs = "(" + to_string(c, xvar) + ")";
    }
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    os << cs;
    if (!ypow.empty()) os << (cs.empty() ? "" : "*") << ypow;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

RatY raty_normalize(const PolyYX& num, const PolyYX& den) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "rational function with zero denominator");
  RatY r;
  if (num.is_zero()) return r;
  PolyYX n = num, d = den;
  if (d.degree() > 0) {
    PolyYX g = gcd(n, d);
    if (g.degree() > 0) {
      n = divmod(n, g).first;
      d = divmod(d, g).first;
    }
  }
  RatX inv = d.lc().inverse();
  r.num_ = n.scaled(inv);
  r.den_ = d.scaled(inv);
  return r;
}

RatY RatY::operator-() const {
  RatY r = *this;
  r.num_ = -r.num_;
  return r;
}

RatY& RatY::operator+=(const RatY& o) {
  if (den_ == o.den_) return *this = raty_normalize(num_ + o.num_, den_);
  return *this = raty_normalize(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatY& RatY::operator-=(const RatY& o) { return *this += -o; }

RatY& RatY::operator*=(const RatY& o) {
  return *this = raty_normalize(num_ * o.num_, den_ * o.den_);
}

RatY& RatY::operator/=(const RatY& o) {
  if (o.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero rational function");
  return *this = raty_normalize(num_ * o.den_, den_ * o.num_);
}

RatY RatY::pow(int k) const {
  if (k < 0) return RatY(1) / pow(-k);
  RatY r(1);
  for (int i = 0; i < k; ++i) r *= *this;
  return r;
}

RatY RatY::dy() const {
  return raty_normalize(num_.dy() * den_ - num_ * den_.dy(), den_ * den_);
}

RatY RatY::dx() const {
  return raty_normalize(num_.dx() * den_ - num_ * den_.dx(), den_ * den_);
}

RatX RatY::at_y(const RatX& t) const {
  RatX d = den_.eval_y(t);
  if (d.is_zero()) throw Error(ErrorCode::PoleAtPoint, "denominator vanishes at the given y");
  return num_.eval_y(t) / d;
}

double RatY::eval(double x, double y) const {
  auto horner = [&](const PolyYX& p) {
    double acc = 0.0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * y + it->eval(x);
    return acc;
  };
  return horner(num_) / horner(den_);
}

std::string to_string(const RatY& r, const std::string& yvar, const std::string& xvar) {
  // Print with polynomial x-coefficients: clear x-denominators on both sides.
  PolyX L(Rat(1));
  for (const auto* p : {&r.num(), &r.den()})
    for (const auto& c : p->coeffs())
      if (!c.is_zero()) L = divmod(L * c.den(), gcd(L, c.den())).first;
  PolyX g;
  for (const auto* p : {&r.num(), &r.den()})
    for (const auto& c : p->coeffs())
      if (!c.is_zero()) g = gcd(g, (c * RatX(L)).num());
  RatX s = g.is_zero() ? RatX(L) : RatX(L, g);
  const PolyYX num = r.num().scaled(s), den = r.den().scaled(s);
  std::string n = to_string(num, yvar, xvar);
  if (den.degree() == 0 && den.lc() == RatX(1)) return n;
  int nz_num = 0;
  for (const auto& c : num.coeffs()) nz_num += c.is_zero() ? 0 : 1;
  bool simple_num = nz_num <= 1 && (num.is_zero() || is_single_term(num.lc()));
  int nz = 0;
  for (const auto& c : den.coeffs()) nz += c.is_zero() ? 0 : 1;
  bool simple_den = nz == 1 && den.lc() == RatX(1);
  std::string ds = to_string(den, yvar, xvar);
  if (den.degree() == 0)
    simple_den = !is_single_term(den.lc()) || ds.find_first_of(" */") == std::string::npos;
  return (simple_num ? n : "(" + n + ")") + "/" + (simple_den ? ds : "(" + ds + ")");
}

}  // namespace gifode

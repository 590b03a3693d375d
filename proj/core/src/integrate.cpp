#include "gifode/integrate.hpp"

#include <set>

#include "gifode/errors.hpp"

namespace gifode {

namespace {

// s*a + t*b = g with g monic.
struct ExtGcd {
  PolyYX g, s, t;
};

ExtGcd ext_gcd(const PolyYX& a, const PolyYX& b) {
  PolyYX r0 = a, r1 = b;
  PolyYX s0(RatX(1)), s1, t0, t1(RatX(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    PolyYX s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  RatX inv = r0.lc().inverse();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

PolyX lcm(const PolyX& a, const PolyX& b) { return divmod(a * b, gcd(a, b)).first.monic(); }

// All monic divisors built from the rational linear factors of p, optionally
// times its remaining cofactor. Empty when the count would explode.
std::vector<PolyX> divisor_candidates(const PolyX& p) {
  XFactorization fz = factor_rational_roots(p);
  std::vector<PolyX> out{PolyX(Rat(1))};
  for (const auto& [root, mult] : fz.roots) {
    std::vector<PolyX> next;
    PolyX lin = PolyX::x() - PolyX(root);
    for (const auto& d : out) {
      PolyX acc = d;
      next.push_back(acc);
      for (int k = 1; k <= mult; ++k) {
        acc = acc * lin;
        next.push_back(acc);
      }
    }
    out = std::move(next);
    if (out.size() > 256) return {};
  }
  if (fz.rest.degree() > 0) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * fz.rest);
  }
  return out;
}

RatX linear_root_value(const PolyYX& p) { return -(p.coeff(0) / p.coeff(1)); }

}  // namespace

std::vector<RatX> ratx_roots(const PolyYX& poly) {
  std::vector<RatX> roots;
  if (poly.degree() < 1) return roots;
  PolyYX p = monic(poly);
  auto add_root = [&](const RatX& r) {
    for (const auto& q : roots)
      if (q == r) return;
    roots.push_back(r);
  };
  auto divide_out = [&](const RatX& r) {
    PolyYX lin(std::vector<RatX>{-r, RatX(1)});
    for (;;) {
      auto q = exact_div(p, lin);
      if (!q) break;
      p = *q;
    }
  };
  while (p.degree() >= 1 && p.coeff(0).is_zero()) {
    add_root(RatX(0));
    divide_out(RatX(0));
  }
  while (p.degree() >= 1) {
    if (p.degree() == 1) {
      add_root(linear_root_value(p));
      break;
    }
    // Clear x-denominators: D = L * p lies in Q[x][y] with leading coefficient L.
    PolyX L(Rat(1));
    for (const auto& c : p.coeffs()) L = lcm(L, c.den());
    PolyX d0 = (p.coeff(0) * RatX(L)).num();
    auto ps = divisor_candidates(d0);
    auto qs = divisor_candidates(L);
    bool found = false;
    static const Rat kProbe[] = {Rat(7, 3), Rat(-5, 11), Rat(13, 17), Rat(19, 4), Rat(-23, 9), Rat(29, 31)};
    for (const auto& num : ps) {
      for (const auto& den : qs) {
        // r = c * num / den; find c from a specialization, then verify.
        for (const Rat& xs : kProbe) {
          Rat nv = num.eval(xs), dv = den.eval(xs);
          if (is_zero(nv) || is_zero(dv)) continue;
          bool ok = true;
          std::vector<Rat> coeffs;
          Rat ratio = nv / dv, pw(1);
          for (const auto& c : p.coeffs()) {
            if (is_zero(c.den().eval(xs))) {
              ok = false;
              break;
            }
            coeffs.push_back(c.eval(xs) * pw);
            pw *= ratio;
          }
          if (!ok) continue;
          for (const Rat& cc : rational_roots(coeffs)) {
            RatX r = RatX(num.scaled(cc), den);
            if (p.eval_y(r).is_zero()) {
              add_root(r);
              divide_out(r);
              found = true;
              break;
            }
          }
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  return roots;
}

std::optional<RatY> RationalIntegral::exp_rational() const {
  if (!rational.is_zero() || !remainder.is_zero()) return std::nullopt;
  RatY acc(1);
  for (const auto& lt : logs) {
    if (!lt.coeff.is_constant()) return std::nullopt;
    Rat c = lt.coeff.constant_value();
    if (c.get_den() != 1 || !c.get_num().fits_sint_p()) return std::nullopt;
    PolyYX arg(std::vector<RatX>{-lt.root, RatX(1)});
    RatY base = RatY(arg) * RatY(RatX(lt.sign));
    acc *= base.pow(static_cast<int>(c.get_num().get_si()));
  }
  return acc;
}

RationalIntegral integrate_rational_dy(const RatY& g, const IntegrationAnchor& anchor) {
  RationalIntegral out;
  if (g.is_zero()) {
    out.tree = tree_const(0L);
    return out;
  }
  const PolyYX& D = g.den();
  auto [quo, rem] = divmod(g.num(), D);
  // Polynomial part.
  {
    std::vector<RatX> cs(static_cast<std::size_t>(quo.degree() + 2));
    for (int k = 0; k <= quo.degree(); ++k)
      cs[static_cast<std::size_t>(k + 1)] = quo.coeff(k) / RatX(static_cast<long>(k + 1));
    out.rational = RatY(PolyYX(std::move(cs)));
  }
  // Proper part: peel off one linear factor (y - r)^m at a time.
  PolyYX num = rem, den = D;
  for (const RatX& r : ratx_roots(D)) {
    if (num.is_zero()) break;
    PolyYX lin(std::vector<RatX>{-r, RatX(1)});
    PolyYX U(RatX(1));
    int m = 0;
    PolyYX V = den;
    for (;;) {
      auto q = exact_div(V, lin);
      if (!q) break;
      V = *q;
      U = U * lin;
      ++m;
    }
    if (m == 0) continue;
    // num/(U V) = num*t/U + num*s/V with s U + t V = 1.
    ExtGcd e = ext_gcd(U, V);
    PolyYX nu = divmod(num * e.t, U).second;
    PolyYX nv = divmod(num * e.s, V).second;
    // nu = sum_j c_j (y - r)^j, giving c_j (y - r)^(j - m).
    PolyYX rest = nu;
    for (int j = 0; j < m && !rest.is_zero(); ++j) {
      auto [q, c] = divmod(rest, lin);
      RatX cj = c.coeff(0);
      rest = q;
      if (cj.is_zero()) continue;
      int pw = j - m;
      if (pw == -1) {
        if (is_zero(r.den().eval(anchor.x0)))
          throw Error(ErrorCode::BadAnchor, "log root has a pole at the anchor");
        Rat at = anchor.y0 - r.eval(anchor.x0);
        if (is_zero(at)) throw Error(ErrorCode::BadAnchor, "log argument vanishes at the anchor");
        out.logs.push_back({cj, r, sgn(at) > 0 ? 1 : -1});
      } else {
        RatY term = RatY(lin).pow(pw + 1) * RatY(cj / RatX(static_cast<long>(pw + 1)));
        out.rational += term;
      }
    }
    num = nv;
    den = V;
  }
  if (!num.is_zero()) out.remainder = raty_normalize(num, den);

  // Self-check: the decomposition differentiates back to g.
  RatY back = out.rational.dy() + out.remainder;
  for (const auto& lt : out.logs) {
    PolyYX lin(std::vector<RatX>{-lt.root, RatX(1)});
    back += RatY(lt.coeff) / RatY(lin);
  }
  if (back != g) throw Error(ErrorCode::AssemblyInconsistent, "partial fraction decomposition failed");

  std::vector<Tree> terms;
  if (!out.rational.is_zero()) terms.push_back(tree_from(out.rational));
  for (const auto& lt : out.logs) {
    PolyYX arg(std::vector<RatX>{-lt.root, RatX(1)});
    if (lt.sign < 0) arg = -arg;
    terms.push_back(tree_from(lt.coeff) * tree_ln(tree_from(arg)));
  }
  if (!out.remainder.is_zero()) terms.push_back(tree_int_y(anchor.y0, tree_from(out.remainder)));
  out.tree = tree_add(std::move(terms));
  return out;
}

Tree integrate_mu_dy(const RatY& mu, const IntegrationAnchor& anchor) {
  return integrate_rational_dy(mu, anchor).tree;
}

RationalIntegral integrate_ratx_dx(const RatX& g, const Rat& x0) {
  auto lift = [](const PolyX& p) {
    std::vector<RatX> cs;
    for (const auto& c : p.coeffs()) cs.emplace_back(c);
    return PolyYX(std::move(cs));
  };
  RatY gy = raty_normalize(lift(g.num()), lift(g.den()));
  IntegrationAnchor a;
  a.x0 = Rat(0);
  a.y0 = x0;
  RationalIntegral r = integrate_rational_dy(gy, a);
  r.tree = tree_swap_xy(r.tree);
  return r;
}

}  // namespace gifode

#include "gifode/ode.hpp"

#include <cmath>
#include <regex>

#include "gifode/errors.hpp"
#include "gifode/expr_parser.hpp"

namespace gifode {

namespace {

// Polynomials in (x, y, params...) with variable ids 0 = x, 1 = y, 2 + i = param i.
using MPoly = SparsePoly<int, Rat>;

struct MFrac {
  MPoly num;
  MPoly den;
};

MFrac to_mfrac(const Tree& t, const std::vector<std::string>& params) {
  switch (t->kind) {
    case NodeKind::Const: return {MPoly(t->value), MPoly(Rat(1))};
    case NodeKind::VarX: return {MPoly::variable(0), MPoly(Rat(1))};
    case NodeKind::VarY: return {MPoly::variable(1), MPoly(Rat(1))};
    case NodeKind::Param: {
      for (std::size_t i = 0; i < params.size(); ++i)
        if (params[i] == t->name) return {MPoly::variable(static_cast<int>(i) + 2), MPoly(Rat(1))};
      throw Error(ErrorCode::ParseError, "undeclared parameter '" + t->name + "'");
    }
    case NodeKind::Add: {
      MFrac acc{MPoly(), MPoly(Rat(1))};
      for (const auto& k : t->kids) {
        MFrac v = to_mfrac(k, params);
        if (v.den == acc.den) {
          acc.num += v.num;
        } else {
          acc.num = acc.num * v.den + v.num * acc.den;
          acc.den = acc.den * v.den;
        }
      }
      return acc;
    }
    case NodeKind::Mul: {
      MFrac acc{MPoly(Rat(1)), MPoly(Rat(1))};
      for (const auto& k : t->kids) {
        MFrac v = to_mfrac(k, params);
        acc.num = acc.num * v.num;
        acc.den = acc.den * v.den;
      }
      return acc;
    }
    case NodeKind::PowInt: {
      MFrac b = to_mfrac(t->kids[0], params);
      int k = t->power;
      if (k < 0) {
        if (b.num.is_zero()) throw Error(ErrorCode::ZeroDenominator, "zero raised to a negative power");
        std::swap(b.num, b.den);
        k = -k;
      }
      return {b.num.pow(k), b.den.pow(k)};
    }
    default:
      throw Error(ErrorCode::NotRationalInY, "right-hand side must be a rational function");
  }
}

PolyYD mpoly_to_polyy(const MPoly& p) {
  std::vector<DiffPoly> coeffs;
  for (const auto& [mono, c] : p.terms()) {
    int ex = 0, ey = 0;
    DiffPoly::Monomial jm;
    for (const auto& [v, e] : mono) {
      if (v == 0) {
        ex = e;
      } else if (v == 1) {
        ey = e;
      } else {
        jm.emplace_back(JetVar::param(v - 2), e);
      }
    }
    if (static_cast<int>(coeffs.size()) <= ey) coeffs.resize(static_cast<std::size_t>(ey) + 1);
    coeffs[static_cast<std::size_t>(ey)].add_term(std::move(jm), RatX(PolyX::monomial(c, ex)));
  }
  return PolyYD(std::move(coeffs));
}

MPoly polyy_to_mpoly(const PolyYD& p) {
  MPoly out;
  for (int k = 0; k <= p.degree(); ++k) {
    for (const auto& [jm, c] : p.coeffs()[static_cast<std::size_t>(k)].terms()) {
      if (!c.is_polynomial())
        throw Error(ErrorCode::InvalidArgument, "expected polynomial coefficients in x");
      Rat scale = Rat(1) / c.den().lc();
      for (int ex = 0; ex <= c.num().degree(); ++ex) {
        Rat v = c.num().coeff(ex) * scale;
        if (is_zero(v)) continue;
        MPoly::Monomial m;
        if (ex > 0) m.emplace_back(0, ex);
        if (k > 0) m.emplace_back(1, k);
        for (const auto& [j, e] : jm) m.emplace_back(j.index + 2, e);
        out.add_term(std::move(m), v);
      }
    }
  }
  return out;
}

bool uses_params(const MPoly& p) {
  for (int v : p.vars())
    if (v >= 2) return true;
  return false;
}

// Scales num and den by one rational so the coefficients become coprime
// integers and the leading term of den is positive.
void rational_content(MPoly& num, MPoly& den) {
  BigInt l(1), g(0);
  for (const MPoly* p : {&num, &den})
    for (const auto& [m, c] : p->terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  for (const MPoly* p : {&num, &den})
    for (const auto& [m, c] : p->terms()) {
      Rat s = c * l;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
    }
  Rat scale(l, g);
  scale.canonicalize();
  if (sgn(den.leading_term().second) < 0) scale = -scale;
  num = num.scaled(scale);
  den = den.scaled(scale);
}

PolyX lcm(const PolyX& a, const PolyX& b) { return divmod(a * b, gcd(a, b)).first.monic(); }

// P, Q with polynomial coefficients in x and no common polynomial content.
std::pair<PolyYX, PolyYX> clear_ratx(const RatY& f) {
  PolyX l(1);
  for (const PolyYX* p : {&f.num(), &f.den()})
    for (const auto& c : p->coeffs()) l = lcm(l, c.den());
  auto scale = [&](const PolyYX& p) {
    return p.map_coeffs([&](const RatX& c) { return RatX(divmod(l, c.den()).first * c.num()); });
  };
  PolyYX n = scale(f.num()), d = scale(f.den());
  PolyX g;
  for (const PolyYX* p : {&n, &d})
    for (const auto& c : p->coeffs()) g = gcd(g, c.num());
  if (g.degree() > 0) {
    auto div = [&](const PolyYX& p) {
      return p.map_coeffs([&](const RatX& c) { return RatX(divmod(c.num(), g).first); });
    };
    n = div(n);
    d = div(d);
  }
  return {n, d};
}

ODE from_mfrac(MPoly num, MPoly den, const std::vector<std::string>& params) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "denominator Q vanishes identically");
  ODE ode;
  ode.params = params;
  if (!uses_params(num) && !uses_params(den)) {
    auto to_yx = [](const MPoly& p) {
      auto d = to_ratx(mpoly_to_polyy(p));
      return *d;
    };
    RatY f = raty_normalize(to_yx(num), to_yx(den));
    auto [n, d] = clear_ratx(f);
    num = polyy_to_mpoly(to_diff(n));
    den = polyy_to_mpoly(to_diff(d));
    rational_content(num, den);
    ode.f = f;
  } else if (!num.is_zero()) {
    rational_content(num, den);
  } else {
    den = MPoly(Rat(1));
  }
  if (num.is_zero()) {
    den = MPoly(Rat(1));
    ode.f = RatY();
  }
  ode.P = mpoly_to_polyy(num);
  ode.Q = mpoly_to_polyy(den);
  return ode;
}

double eval_poly(const PolyYD& p, double x, double y, const ODE& ode, const ParamValues& pv) {
  std::vector<double> pvals;
  for (const auto& name : ode.params) {
    auto it = pv.find(name);
    pvals.push_back(it == pv.end() ? std::nan("") : it->second);
  }
  double acc = 0.0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    double c = 0.0;
    for (const auto& [jm, rc] : it->terms()) {
      double t = rc.eval(x);
      for (const auto& [j, e] : jm) {
        double v = pvals[static_cast<std::size_t>(j.index)];
        if (std::isnan(v))
          throw Error(ErrorCode::InvalidArgument,
                      "no value bound for parameter '" + ode.params[static_cast<std::size_t>(j.index)] + "'");
        t *= std::pow(v, e);
      }
      c += t;
    }
    acc = acc * y + c;
  }
  return acc;
}

}  // namespace

PolyYX ODE::P_ratx() const {
  auto p = to_ratx(P);
  if (!p) throw Error(ErrorCode::InvalidArgument, "ODE has symbolic parameters");
  return *p;
}

PolyYX ODE::Q_ratx() const {
  auto q = to_ratx(Q);
  if (!q) throw Error(ErrorCode::InvalidArgument, "ODE has symbolic parameters");
  return *q;
}

ODE parse_ode(const std::string& text, const std::vector<std::string>& params) {
  for (const auto& p : params)
    if (p == "x" || p == "y" || p == "ln" || p == "exp" || p == "int" ||
        !std::regex_match(p, std::regex("[A-Za-z_][A-Za-z0-9_]*")))
      throw Error(ErrorCode::InvalidArgument, "invalid parameter name '" + p + "'");
  static const std::regex lhs(R"(^\s*dy\s*/\s*dx\s*=)");
  std::smatch m;
  long offset = 0;
  std::string rhs = text;
  if (std::regex_search(text, m, lhs)) {
    offset = static_cast<long>(m.length(0));
    rhs = text.substr(static_cast<std::size_t>(offset));
  } else if (text.find('=') != std::string::npos) {
    long p = static_cast<long>(text.find('='));
    throw Error(ErrorCode::ParseError, "expected 'dy/dx =' before position " + std::to_string(p), p);
  }
  ParseOptions opts;
  opts.params = params;
  opts.allow_transcendental = false;
  Tree t = parse_expression(rhs, opts, offset);
  MFrac fr = to_mfrac(t, params);
  return from_mfrac(std::move(fr.num), std::move(fr.den), params);
}

ODE make_ode(const RatY& f) { return make_ode(to_diff(f.num()), to_diff(f.den()), {}); }

ODE make_ode(const PolyYD& P, const PolyYD& Q, const std::vector<std::string>& params) {
  // Rational x-coefficients are cleared through the Tree route.
  Tree t = poly_tree(P, params) / poly_tree(Q, params);
  MFrac fr = to_mfrac(t, params);
  return from_mfrac(std::move(fr.num), std::move(fr.den), params);
}

std::pair<int, int> degrees(const ODE& ode) { return {ode.np(), ode.nq()}; }

ODE swap_xy(const ODE& ode) {
  if (ode.P.is_zero()) throw Error(ErrorCode::ZeroDenominator, "P vanishes; the inverse ODE is undefined");
  auto swap = [](const MPoly& p) {
    MPoly out;
    for (const auto& [m, c] : p.terms()) {
      MPoly::Monomial r;
      for (auto [v, e] : m) r.emplace_back(v == 0 ? 1 : (v == 1 ? 0 : v), e);
      std::sort(r.begin(), r.end());
      out.add_term(std::move(r), c);
    }
    return out;
  };
  return from_mfrac(swap(polyy_to_mpoly(ode.Q)), swap(polyy_to_mpoly(ode.P)), ode.params);
}

double eval_f(const ODE& ode, double x, double y, const ParamValues& params) {
  double q = eval_poly(ode.Q, x, y, ode, params);
  if (q == 0.0) throw Error(ErrorCode::PoleAtPoint, "Q vanishes at the evaluation point");
  return eval_poly(ode.P, x, y, ode, params) / q;
}

ODE instantiate(const ODE& ode, const std::map<std::string, Rat>& values) {
  auto subst = [&](const MPoly& p) {
    MPoly r = p;
    for (std::size_t i = 0; i < ode.params.size(); ++i) {
      auto it = values.find(ode.params[i]);
      if (it != values.end()) r = r.substitute(static_cast<int>(i) + 2, MPoly(it->second));
    }
    return r;
  };
  std::vector<std::string> rest;
  std::vector<int> remap(ode.params.size(), -1);
  for (std::size_t i = 0; i < ode.params.size(); ++i) {
    if (values.count(ode.params[i])) continue;
    remap[i] = static_cast<int>(rest.size());
    rest.push_back(ode.params[i]);
  }
  auto renumber = [&](const MPoly& p) {
    MPoly out;
    for (const auto& [m, c] : p.terms()) {
      MPoly::Monomial r;
      for (auto [v, e] : m) r.emplace_back(v < 2 ? v : remap[static_cast<std::size_t>(v - 2)] + 2, e);
      out.add_term(std::move(r), c);
    }
    return out;
  };
  return from_mfrac(renumber(subst(polyy_to_mpoly(ode.P))), renumber(subst(polyy_to_mpoly(ode.Q))), rest);
}

Tree poly_tree(const PolyYD& p, const std::vector<std::string>& params) {
  std::vector<Tree> terms;
  for (int k = p.degree(); k >= 0; --k) {
    const DiffPoly& c = p.coeffs()[static_cast<std::size_t>(k)];
    std::vector<Tree> parts;
    // Parameter-free part first, then parameter monomials.
    for (auto it = c.terms().begin(); it != c.terms().end(); ++it) {
      std::vector<Tree> fs{tree_from(it->second)};
      for (const auto& [j, e] : it->first) {
        std::string name = j.index < static_cast<int>(params.size())
                               ? params[static_cast<std::size_t>(j.index)]
                               : "p" + std::to_string(j.index);
        fs.push_back(tree_pow(tree_param(name), e));
      }
      parts.push_back(tree_mul(std::move(fs)));
    }
    terms.push_back(tree_mul({tree_add(std::move(parts)), tree_pow(tree_y(), k)}));
  }
  return tree_add(std::move(terms));
}

Tree f_tree(const ODE& ode) {
  if (ode.f) return tree_from(*ode.f);
  return poly_tree(ode.P, ode.params) / poly_tree(ode.Q, ode.params);
}

std::string to_string(const ODE& ode) {
  Tree t = poly_tree(ode.P, ode.params) / poly_tree(ode.Q, ode.params);
  return "dy/dx = " + to_string(t);
}

bool operator==(const ODE& a, const ODE& b) {
  return a.params == b.params && a.P == b.P && a.Q == b.Q;
}

}  // namespace gifode

#include "gifode/determining.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "gifode/errors.hpp"
#include "gifode/expr_parser.hpp"
#include "gifode/integrate.hpp"

namespace gifode {

std::string to_string(const AnsatzMode& m) {
  switch (m.kind) {
    case AnsatzMode::Kind::Const: return "const";
    case AnsatzMode::Kind::PolyX: return "polyx(" + std::to_string(m.deg) + ")";
    case AnsatzMode::Kind::Func: return "func";
  }
  return "?";
}

namespace {

DiffPoly coefficient_of(Side side, int i, const AnsatzMode& mode, std::vector<JetVar>& unknowns) {
  switch (mode.kind) {
    case AnsatzMode::Kind::Func: {
      JetVar v = JetVar::function(side, i);
      unknowns.push_back(v);
      return DiffPoly::variable(v);
    }
    case AnsatzMode::Kind::Const: {
      JetVar v = JetVar::coefficient(side, i);
      unknowns.push_back(v);
      return DiffPoly::variable(v);
    }
    case AnsatzMode::Kind::PolyX: {
      DiffPoly acc;
      for (int s = 0; s <= mode.deg; ++s) {
        JetVar v = JetVar::coefficient(side, i, s);
        unknowns.push_back(v);
        acc += DiffPoly::term({{v, 1}}, RatX(PolyX::monomial(Rat(1), s)));
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

Ansatz build_ansatz(MuKind kind, int nx, int ny, AnsatzMode mode) {
  if (nx < 0 || ny < 0) throw Error(ErrorCode::InvalidArgument, "ansatz degrees must be nonnegative");
  if (mode.kind == AnsatzMode::Kind::PolyX && (mode.deg < 0 || mode.deg > 8))
    throw Error(ErrorCode::InvalidArgument, "polyx degree must be in 0..8");
  Ansatz a;
  a.kind = kind;
  a.mode = mode;
  a.nx = nx;
  a.ny = ny;
  std::vector<DiffPoly> xs, ys;
  for (int i = 0; i <= nx; ++i) xs.push_back(coefficient_of(Side::X, i, mode, a.unknowns));
  for (int i = 0; i < ny; ++i) ys.push_back(coefficient_of(Side::Y, i, mode, a.unknowns));
  ys.push_back(DiffPoly(RatX(1)));
  a.X = PolyYD(std::move(xs));
  a.Y = PolyYD(std::move(ys));
  return a;
}

// ---------------------------------------------------------------------------
// Fractions N / (P^a Q^b Y^c) over a fixed list of bases. Keeping the
// denominator factored lets the residual be cleared by exactly the factors
// it needs, without any multivariate gcd.

namespace {

struct FFrac {
  PolyYD num;
  std::array<int, 3> e{};
};

class Clearing {
 public:
  Clearing(std::array<PolyYD, 3> bases, int jet_cap) : b_(std::move(bases)), jet_cap_(jet_cap) {
    for (int k = 0; k < 3; ++k) {
      bx_[k] = b_[k].dx(jet_cap_);
      by_[k] = b_[k].dy();
    }
  }

  FFrac base_frac(const PolyYD& num, std::array<int, 3> e) const { return {num, e}; }

  const PolyYD& power(int k, int n) {
    auto& cache = pow_[k];
    if (cache.empty()) cache.push_back(PolyYD(DiffPoly(RatX(1))));
    while (static_cast<int>(cache.size()) <= n) cache.push_back(cache.back() * b_[k]);
    return cache[static_cast<std::size_t>(n)];
  }

  FFrac add(const FFrac& a, const FFrac& b) {
    if (a.num.is_zero()) return b;
    if (b.num.is_zero()) return a;
    FFrac r;
    PolyYD fa = a.num, fb = b.num;
    for (int k = 0; k < 3; ++k) {
      r.e[k] = std::max(a.e[k], b.e[k]);
      if (r.e[k] > a.e[k]) fa = fa * power(k, r.e[k] - a.e[k]);
      if (r.e[k] > b.e[k]) fb = fb * power(k, r.e[k] - b.e[k]);
    }
    r.num = fa + fb;
    if (r.num.is_zero()) r.e = {};
    return r;
  }

  FFrac sub(const FFrac& a, const FFrac& b) { return add(a, neg(b)); }
  static FFrac neg(const FFrac& a) { return {-a.num, a.e}; }

  static FFrac mul(const FFrac& a, const FFrac& b) {
    FFrac r{a.num * b.num, {}};
    if (r.num.is_zero()) return r;
    for (int k = 0; k < 3; ++k) r.e[k] = a.e[k] + b.e[k];
    return r;
  }

  FFrac dx(const FFrac& a) { return diff(a, true); }
  FFrac dy(const FFrac& a) { return diff(a, false); }

 private:
  FFrac diff(const FFrac& a, bool wrt_x) {
    if (a.num.is_zero()) return {};
    PolyYD dn = wrt_x ? a.num.dx(jet_cap_) : a.num.dy();
    // d(N / prod B^e) = (N' prod B - N sum_k e_k B_k' prod_{j != k} B_j) / prod B^(e+1)
    PolyYD all(DiffPoly(RatX(1)));
    for (int k = 0; k < 3; ++k)
      if (a.e[k] > 0) all = all * b_[k];
    PolyYD num = dn * all;
    for (int k = 0; k < 3; ++k) {
      if (a.e[k] == 0) continue;
      const PolyYD& bd = wrt_x ? bx_[k] : by_[k];
      if (bd.is_zero()) continue;
      PolyYD others = bd.scaled(DiffPoly(RatX(static_cast<long>(a.e[k]))));
      for (int j = 0; j < 3; ++j)
        if (j != k && a.e[j] > 0) others = others * b_[j];
      num -= a.num * others;
    }
    FFrac r{num, a.e};
    if (num.is_zero()) return {};
    for (int k = 0; k < 3; ++k)
      if (r.e[k] > 0) r.e[k] += 1;
    return r;
  }

  std::array<PolyYD, 3> b_, bx_, by_;
  std::array<std::vector<PolyYD>, 3> pow_;
  int jet_cap_;
};

bool kind_divides_by_f(MuKind k) { return k == MuKind::YX || k == MuKind::XY || k == MuKind::XX; }

}  // namespace

ClearedResidual cleared_residual(MuKind kind, const ODE& ode, const PolyYD& X, const PolyYD& Y,
                                 int jet_cap) {
  if (Y.is_zero()) throw Error(ErrorCode::ZeroDenominator, "mu has a zero denominator");
  if (kind_divides_by_f(kind) && ode.P.is_zero())
    throw Error(ErrorCode::DividesByF, std::string("the ") + to_string(kind) + " equation divides by f = 0");
  const PolyYD& P = ode.P;
  const PolyYD& Q = ode.Q;
  Clearing c({P, Q, Y}, jet_cap);
  FFrac f{P, {0, 1, 0}};
  FFrac mu = kind == MuKind::YYQ ? FFrac{X, {0, 1, 1}} : FFrac{X, {0, 0, 1}};
  FFrac r;
  switch (kind) {
    case MuKind::YY:
    case MuKind::YYQ:
      // mu_x + (f mu)_y + f_yy
      r = c.add(c.add(c.dx(mu), c.dy(Clearing::mul(f, mu))), c.dy(c.dy(f)));
      break;
    case MuKind::YX: {
      // mu_x + (f mu)_y - (ln f)_xy, with (ln f)_x = (P_x Q - P Q_x) / (P Q)
      FFrac lfx{P.dx(jet_cap) * Q - P * Q.dx(jet_cap), {1, 1, 0}};
      r = c.sub(c.add(c.dx(mu), c.dy(Clearing::mul(f, mu))), c.dy(lfx));
      break;
    }
    case MuKind::XY: {
      // (mu/f)_x + mu_y + (ln f)_xy
      FFrac lfx{P.dx(jet_cap) * Q - P * Q.dx(jet_cap), {1, 1, 0}};
      FFrac mu_over_f{X * Q, {1, 0, 1}};
      r = c.add(c.add(c.dx(mu_over_f), c.dy(mu)), c.dy(lfx));
      break;
    }
    case MuKind::XX: {
      // (mu/f)_x + mu_y + (1/f)_xx
      FFrac mu_over_f{X * Q, {1, 0, 1}};
      FFrac inv_f{Q, {1, 0, 0}};
      r = c.add(c.add(c.dx(mu_over_f), c.dy(mu)), c.dx(c.dx(inv_f)));
      break;
    }
  }
  // Cancel base factors that divide the numerator exactly.
  const std::array<const PolyYD*, 3> bases{&P, &Q, &Y};
  for (int k = 0; k < 3; ++k) {
    const PolyYD& b = *bases[k];
    if (b.degree() < 1 || !coeff_inverse(b.lc())) continue;
    while (r.e[k] > 0 && !r.num.is_zero()) {
      auto q = exact_div(r.num, b);
      if (!q) break;
      r.num = std::move(*q);
      r.e[k] -= 1;
    }
  }
  if (r.num.is_zero()) r.e = {};
  return {r.num, r.e};
}

RatY mu_residual(MuKind kind, const ODE& ode, const RatY& mu) {
  if (ode.has_params()) throw Error(ErrorCode::InvalidArgument, "mu_residual needs a parameter-free ODE");
  MuKind k = kind == MuKind::YYQ ? MuKind::YY : kind;
  ClearedResidual cr = cleared_residual(k, ode, to_diff(mu.num()), to_diff(mu.den()));
  if (cr.numerator.is_zero()) return RatY();
  PolyYX den(RatX(1));
  const std::array<PolyYX, 3> bases{ode.P_ratx(), ode.Q_ratx(), mu.den()};
  for (int i = 0; i < 3; ++i) den = den * bases[i].pow(cr.exponents[i]);
  return raty_normalize(*to_ratx(cr.numerator), den);
}

bool residual_is_zero(MuKind kind, const ODE& ode, const RatY& mu) {
  MuKind k = kind == MuKind::YYQ ? MuKind::YY : kind;
  return cleared_residual(k, ode, to_diff(mu.num()), to_diff(mu.den())).numerator.is_zero();
}

DeterminingSystem build_system(MuKind kind, const ODE& ode, const Ansatz& ansatz, int jet_cap) {
  if (ansatz.kind != kind) throw Error(ErrorCode::InvalidArgument, "ansatz built for a different kind");
  DeterminingSystem sys;
  sys.kind = kind;
  sys.ansatz = ansatz;
  sys.params = ode.params;
  sys.residual = cleared_residual(kind, ode, ansatz.X, ansatz.Y, jet_cap);
  const auto& cs = sys.residual.numerator.coeffs();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].is_zero()) continue;
    sys.equations.push_back(cs[i]);
    sys.powers.push_back(static_cast<int>(i));
  }
  sys.n_sys = static_cast<int>(sys.equations.size());
  sys.n_unknowns = static_cast<int>(ansatz.unknowns.size());
  return sys;
}

// ---------------------------------------------------------------------------

namespace {

const RatY& need_f(const ODE& ode) {
  if (ode.has_params()) throw Error(ErrorCode::InvalidArgument, "conversion needs a parameter-free ODE");
  return *ode.f;
}

RatY div_f(const RatY& v, const RatY& f, const char* what) {
  if (f.is_zero()) throw Error(ErrorCode::DividesByF, std::string(what) + " divides by f = 0");
  return v / f;
}

RatY to_yy(MuKind from, const RatY& mu, const RatY& f) {
  switch (from) {
    case MuKind::YY:
    case MuKind::YYQ: return mu;
    case MuKind::YX: return mu - div_f(f.dy(), f, "yx -> yy");
    case MuKind::XY: {
      RatY yx = -div_f(mu, f, "xy -> yx");
      return yx - div_f(f.dy(), f, "yx -> yy");
    }
    case MuKind::XX: return div_f(div_f(f.dx(), f, "xx -> yy") - f.dy() - mu, f, "xx -> yy");
  }
  return mu;
}

RatY from_yy(MuKind to, const RatY& mu, const RatY& f) {
  switch (to) {
    case MuKind::YY:
    case MuKind::YYQ: return mu;
    case MuKind::YX: return mu + div_f(f.dy(), f, "yy -> yx");
    case MuKind::XY: return -(f * (mu + div_f(f.dy(), f, "yy -> yx")));
    case MuKind::XX: return -(f * mu) + div_f(f.dx(), f, "yy -> xx") - f.dy();
  }
  return mu;
}

}  // namespace

RatY convert_mu(MuKind from, MuKind to, const RatY& mu, const ODE& ode) {
  const RatY& f = need_f(ode);
  if (from == to) return mu;
  // Direct relations that avoid a detour through YY.
  if (from == MuKind::YX && to == MuKind::XY) return -(f * mu);
  if (from == MuKind::XY && to == MuKind::YX) return -div_f(mu, f, "xy -> yx");
  return from_yy(to, to_yy(from, mu, f), f);
}

ClassicalFactors classical_factors(const ODE& ode, const RatY& mu_yy, const Tree& F2,
                                   const Rat& anchor_y) {
  IntegrationAnchor anchor;
  anchor.y0 = anchor_y;
  Tree M = integrate_mu_dy(mu_yy, anchor);
  Tree mu_y = F2 * tree_exp(M);
  Tree mu_x = -(f_tree(ode) * mu_y);
  return {mu_y, mu_x};
}

// ---------------------------------------------------------------------------

std::string export_system(const DeterminingSystem& sys) {
  std::ostringstream os;
  bool show_sub = sys.ansatz.mode.kind == AnsatzMode::Kind::PolyX;
  JetNamer namer = default_namer(sys.params, show_sub);
  for (const auto& eq : sys.equations) os << to_string(eq, namer) << "\n";
  return os.str();
}

namespace {

DiffPoly tree_to_diffpoly(const Tree& t, const std::map<std::string, JetVar>& names) {
  switch (t->kind) {
    case NodeKind::Const: return DiffPoly(RatX(t->value));
    case NodeKind::VarX: return DiffPoly(RatX::x());
    case NodeKind::Param: return DiffPoly::variable(names.at(t->name));
    case NodeKind::Add: {
      DiffPoly acc;
      for (const auto& k : t->kids) acc += tree_to_diffpoly(k, names);
      return acc;
    }
    case NodeKind::Mul: {
      DiffPoly acc(RatX(1));
      for (const auto& k : t->kids) acc = acc * tree_to_diffpoly(k, names);
      return acc;
    }
    case NodeKind::PowInt: {
      DiffPoly b = tree_to_diffpoly(t->kids[0], names);
      if (t->power >= 0) return b.pow(t->power);
      auto inv = diffpoly_inverse(b);
      if (!inv) throw Error(ErrorCode::ParseError, "only x-dependent factors may appear in denominators");
      return inv->pow(-t->power);
    }
    default: throw Error(ErrorCode::ParseError, "unexpected construct in a determining equation");
  }
}

}  // namespace

DiffPoly parse_diffpoly(const std::string& line, const std::vector<std::string>& params) {
  // Jet names carry primes, which the expression grammar does not allow in
  // identifiers; swap them for placeholders first.
  std::string text;
  std::map<std::string, JetVar> names;
  std::vector<std::string> idents = params;
  for (std::size_t i = 0; i < params.size(); ++i) names.emplace(params[i], JetVar::param(static_cast<int>(i)));
  std::size_t i = 0;
  while (i < line.size()) {
    unsigned char ch = static_cast<unsigned char>(line[i]);
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      while (j < line.size() && line[j] == '\'') ++j;
      std::string id = line.substr(i, j - i);
      auto jet = (id == "x" || id == "y") ? std::nullopt : parse_jet_name(id, params);
      if (jet && jet->side != Side::Param) {
        std::string ph = "J" + std::to_string(names.size()) + "_";
        names.emplace(ph, *jet);
        idents.push_back(ph);
        text += ph;
      } else {
        text += id;
      }
      i = j;
    } else {
      text += line[i++];
    }
  }
  ParseOptions opts;
  opts.params = idents;
  opts.allow_transcendental = false;
  return tree_to_diffpoly(parse_expression(text, opts), names);
}

std::vector<DiffPoly> parse_exported(const std::string& text, const std::vector<std::string>& params) {
  std::vector<DiffPoly> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_diffpoly(line, params));
  }
  return out;
}

}  // namespace gifode

#include "gifode/formula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>

#include "gifode/errors.hpp"

namespace gifode {

namespace {

Tree make_node(NodeKind k, std::vector<Tree> kids = {}) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids = std::move(kids);
  return n;
}

// Unambiguous structural key used to merge equal subterms.
void key_into(const Tree& t, std::string& out) {
  switch (t->kind) {
    case NodeKind::Const: out += "C" + to_string(t->value) + ";"; return;
    case NodeKind::VarX: out += "X"; return;
    case NodeKind::VarY: out += "Y"; return;
    case NodeKind::Param: out += "P" + t->name + ";"; return;
    case NodeKind::Add: out += "A("; break;
    case NodeKind::Mul: out += "M("; break;
    case NodeKind::PowInt: out += "W" + std::to_string(t->power) + "("; break;
    case NodeKind::Ln: out += "L("; break;
    case NodeKind::Exp: out += "E("; break;
    case NodeKind::IntY: out += "IY" + to_string(t->value) + "("; break;
    case NodeKind::IntX: out += "IX" + to_string(t->value) + "("; break;
  }
  if (t->kind == NodeKind::Add || t->kind == NodeKind::Mul) {
    // Sums and products compare as multisets.
    std::vector<std::string> parts;
    for (const auto& k : t->kids) {
      parts.emplace_back();
      key_into(k, parts.back());
    }
    std::sort(parts.begin(), parts.end());
    for (const auto& p : parts) out += p + ",";
  } else {
    for (const auto& k : t->kids) {
      key_into(k, out);
      out += ",";
    }
  }
  out += ")";
}

std::string key(const Tree& t) {
  std::string s;
  key_into(t, s);
  return s;
}

bool is_const_node(const Tree& t) { return t->kind == NodeKind::Const; }

// Splits t into coefficient * rest.
std::pair<Rat, Tree> split_coeff(const Tree& t) {
  if (t->kind == NodeKind::Mul && is_const_node(t->kids.front())) {
    if (t->kids.size() == 2) return {t->kids[0]->value, t->kids[1]};
    std::vector<Tree> rest(t->kids.begin() + 1, t->kids.end());
    return {t->kids[0]->value, make_node(NodeKind::Mul, std::move(rest))};
  }
  return {Rat(1), t};
}

Rat rat_pow(const Rat& c, int k) {
  if (k < 0) {
    if (is_zero(c)) throw Error(ErrorCode::ZeroDenominator, "zero raised to a negative power");
    return rat_pow(Rat(1) / c, -k);
  }
  Rat r(1);
  for (int i = 0; i < k; ++i) r *= c;
  return r;
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

}  // namespace

Tree tree_const(const Rat& c) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Const;
  n->value = c;
  return n;
}

Tree tree_const(long c) { return tree_const(Rat(c)); }

Tree tree_x() {
  static const Tree t = make_node(NodeKind::VarX);
  return t;
}

Tree tree_y() {
  static const Tree t = make_node(NodeKind::VarY);
  return t;
}

Tree tree_param(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Param;
  n->name = name;
  return n;
}

Tree tree_add(std::vector<Tree> terms) {
  std::vector<Tree> flat;
  for (auto& t : terms) {
    if (t->kind == NodeKind::Add) {
      flat.insert(flat.end(), t->kids.begin(), t->kids.end());
    } else {
      flat.push_back(std::move(t));
    }
  }
  Rat c(0);
  struct Entry {
    Rat coef;
    Tree rest;
  };
  std::vector<Entry> entries;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& t : flat) {
    if (is_const_node(t)) {
      c += t->value;
      continue;
    }
    auto [coef, rest] = split_coeff(t);
    std::string k = key(rest);
    auto it = index.find(k);
    if (it == index.end()) {
      index.emplace(std::move(k), entries.size());
      entries.push_back({coef, rest});
    } else {
      entries[it->second].coef += coef;
    }
  }
  std::vector<Tree> out;
  for (const auto& e : entries) {
    if (is_zero(e.coef)) continue;
    out.push_back(e.coef == 1 ? e.rest : tree_mul({tree_const(e.coef), e.rest}));
  }
  if (!is_zero(c)) out.push_back(tree_const(c));
  if (out.empty()) return tree_const(0L);
  if (out.size() == 1) return out.front();
  return make_node(NodeKind::Add, std::move(out));
}

Tree tree_mul(std::vector<Tree> factors) {
  std::vector<Tree> flat;
  for (auto& t : factors) {
    if (t->kind == NodeKind::Mul) {
      flat.insert(flat.end(), t->kids.begin(), t->kids.end());
    } else {
      flat.push_back(std::move(t));
    }
  }
  Rat c(1);
  struct Entry {
    Tree base;
    int power;
  };
  std::vector<Entry> entries;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<Tree> exp_args;
  for (const auto& t : flat) {
    if (is_const_node(t)) {
      c *= t->value;
      if (is_zero(c)) return tree_const(0L);
      continue;
    }
    if (t->kind == NodeKind::Exp) {
      exp_args.push_back(t->kids[0]);
      continue;
    }
    Tree base = t;
    int k = 1;
    if (t->kind == NodeKind::PowInt) {
      base = t->kids[0];
      k = t->power;
    }
    std::string bk = key(base);
    auto it = index.find(bk);
    if (it == index.end()) {
      index.emplace(std::move(bk), entries.size());
      entries.push_back({base, k});
    } else {
      entries[it->second].power += k;
    }
  }
  std::vector<Tree> out;
  for (const auto& e : entries) {
    if (e.power == 0) continue;
    if (e.power == 1) {
      out.push_back(e.base);
    } else {
      auto n = make_node(NodeKind::PowInt, {e.base});
      std::const_pointer_cast<Node>(n)->power = e.power;
      out.push_back(n);
    }
  }
  if (!exp_args.empty()) {
    Tree e = tree_exp(tree_add(exp_args));
    if (e->kind == NodeKind::Exp) {
      out.push_back(e);
    } else {
      // Logarithmic parts turned into powers; fold them back in.
      out.push_back(e);
      out.insert(out.begin(), tree_const(c));
      return tree_mul(std::move(out));
    }
  }
  if (out.empty()) return tree_const(c);
  if (c == 1 && out.size() == 1) return out.front();
  if (c != 1) out.insert(out.begin(), tree_const(c));
  return make_node(NodeKind::Mul, std::move(out));
}

Tree tree_pow(const Tree& base, int k) {
  if (k == 0) return tree_const(1L);
  if (k == 1) return base;
  switch (base->kind) {
    case NodeKind::Const: return tree_const(rat_pow(base->value, k));
    case NodeKind::PowInt: return tree_pow(base->kids[0], base->power * k);
    case NodeKind::Mul: {
      std::vector<Tree> fs;
      for (const auto& f : base->kids) fs.push_back(tree_pow(f, k));
      return tree_mul(std::move(fs));
    }
    case NodeKind::Exp: return tree_exp(tree_mul({tree_const(static_cast<long>(k)), base->kids[0]}));
    default: break;
  }
  auto n = make_node(NodeKind::PowInt, {base});
  std::const_pointer_cast<Node>(n)->power = k;
  return n;
}

Tree tree_ln(const Tree& u) {
  if (is_const_node(u)) {
    if (sgn(u->value) <= 0) throw Error(ErrorCode::DomainError, "ln of a nonpositive constant");
    if (u->value == 1) return tree_const(0L);
  }
  if (u->kind == NodeKind::Exp) return u->kids[0];
  return make_node(NodeKind::Ln, {u});
}

Tree tree_exp(const Tree& u) {
  if (is_zero(u)) return tree_const(1L);
  if (u->kind == NodeKind::Ln) return u->kids[0];
  std::vector<Tree> terms = u->kind == NodeKind::Add ? u->kids : std::vector<Tree>{u};
  std::vector<Tree> powers, rest;
  for (const auto& t : terms) {
    auto [coef, r] = split_coeff(t);
    if (r->kind == NodeKind::Ln && is_integer(coef) && coef.get_num().fits_sint_p()) {
      powers.push_back(tree_pow(r->kids[0], static_cast<int>(coef.get_num().get_si())));
    } else {
      rest.push_back(t);
    }
  }
  if (powers.empty()) return make_node(NodeKind::Exp, {u});
  if (!rest.empty()) powers.push_back(make_node(NodeKind::Exp, {tree_add(rest)}));
  return tree_mul(std::move(powers));
}

Tree tree_int_y(const Rat& anchor, const Tree& integrand) {
  if (is_zero(integrand)) return tree_const(0L);
  auto n = make_node(NodeKind::IntY, {integrand});
  std::const_pointer_cast<Node>(n)->value = anchor;
  return n;
}

Tree tree_int_x(const Rat& anchor, const Tree& integrand) {
  if (is_zero(integrand)) return tree_const(0L);
  auto n = make_node(NodeKind::IntX, {integrand});
  std::const_pointer_cast<Node>(n)->value = anchor;
  return n;
}

Tree operator+(const Tree& a, const Tree& b) { return tree_add({a, b}); }
Tree operator-(const Tree& a) { return tree_mul({tree_const(-1L), a}); }
Tree operator-(const Tree& a, const Tree& b) { return tree_add({a, -b}); }
Tree operator*(const Tree& a, const Tree& b) { return tree_mul({a, b}); }
Tree operator/(const Tree& a, const Tree& b) { return tree_mul({a, tree_pow(b, -1)}); }

bool is_const(const Tree& t, const Rat& c) { return is_const_node(t) && t->value == c; }
bool is_zero(const Tree& t) { return is_const(t, Rat(0)); }
bool tree_equal(const Tree& a, const Tree& b) { return key(a) == key(b); }

bool contains_kind(const Tree& t, NodeKind k) {
  if (t->kind == k) return true;
  for (const auto& c : t->kids)
    if (contains_kind(c, k)) return true;
  return false;
}

int integral_depth(const Tree& t) {
  int d = 0;
  for (const auto& c : t->kids) d = std::max(d, integral_depth(c));
  bool integral = t->kind == NodeKind::IntY || t->kind == NodeKind::IntX;
  return d + (integral ? 1 : 0);
}

int tree_depth(const Tree& t) {
  int d = 0;
  for (const auto& c : t->kids) d = std::max(d, tree_depth(c));
  return d + 1;
}

// ---------------------------------------------------------------------------

Tree tree_from(const PolyX& p, NodeKind var) {
  Tree v = var == NodeKind::VarY ? tree_y() : tree_x();
  std::vector<Tree> terms;
  for (int k = p.degree(); k >= 0; --k) {
    const Rat& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (is_zero(c)) continue;
    terms.push_back(tree_mul({tree_const(c), tree_pow(v, k)}));
  }
  return tree_add(std::move(terms));
}

Tree tree_from(const RatX& r, NodeKind var) {
  Tree n = tree_from(r.num(), var);
  if (r.is_polynomial()) return tree_mul({n, tree_const(Rat(1) / r.den().lc())});
  return n / tree_from(r.den(), var);
}

Tree tree_from(const PolyYX& p) {
  std::vector<Tree> terms;
  for (int k = p.degree(); k >= 0; --k) {
    const RatX& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    terms.push_back(tree_mul({tree_from(c), tree_pow(tree_y(), k)}));
  }
  return tree_add(std::move(terms));
}

Tree tree_from(const RatY& r) {
  Tree n = tree_from(r.num());
  if (r.den().degree() == 0) return tree_mul({n, tree_from(r.den().lc().inverse())});
  return n / tree_from(r.den());
}

std::optional<RatY> tree_to_raty(const Tree& t) {
  switch (t->kind) {
    case NodeKind::Const: return RatY(RatX(t->value));
    case NodeKind::VarX: return RatY(RatX::x());
    case NodeKind::VarY: return RatY::y();
    case NodeKind::Add: {
      RatY acc;
      for (const auto& c : t->kids) {
        auto v = tree_to_raty(c);
        if (!v) return std::nullopt;
        acc += *v;
      }
      return acc;
    }
    case NodeKind::Mul: {
      RatY acc(1);
      for (const auto& c : t->kids) {
        auto v = tree_to_raty(c);
        if (!v) return std::nullopt;
        acc *= *v;
      }
      return acc;
    }
    case NodeKind::PowInt: {
      auto v = tree_to_raty(t->kids[0]);
      if (!v) return std::nullopt;
      return v->pow(t->power);
    }
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------------------

Tree tree_diff(const Tree& t, TreeVar v) {
  switch (t->kind) {
    case NodeKind::Const:
    case NodeKind::Param: return tree_const(0L);
    case NodeKind::VarX: return tree_const(v == TreeVar::X ? 1L : 0L);
    case NodeKind::VarY: return tree_const(v == TreeVar::Y ? 1L : 0L);
    case NodeKind::Add: {
      std::vector<Tree> ds;
      for (const auto& c : t->kids) ds.push_back(tree_diff(c, v));
      return tree_add(std::move(ds));
    }
    case NodeKind::Mul: {
      std::vector<Tree> terms;
      for (std::size_t i = 0; i < t->kids.size(); ++i) {
        Tree d = tree_diff(t->kids[i], v);
        if (is_zero(d)) continue;
        std::vector<Tree> fs;
        for (std::size_t j = 0; j < t->kids.size(); ++j) fs.push_back(j == i ? d : t->kids[j]);
        terms.push_back(tree_mul(std::move(fs)));
      }
      return tree_add(std::move(terms));
    }
    case NodeKind::PowInt: {
      const Tree& b = t->kids[0];
      return tree_mul({tree_const(static_cast<long>(t->power)), tree_pow(b, t->power - 1),
                       tree_diff(b, v)});
    }
    case NodeKind::Ln: return tree_diff(t->kids[0], v) / t->kids[0];
    case NodeKind::Exp: return t * tree_diff(t->kids[0], v);
    case NodeKind::IntY:
      if (v == TreeVar::Y) return t->kids[0];
      return tree_int_y(t->value, tree_diff(t->kids[0], v));
    case NodeKind::IntX:
      if (v == TreeVar::X) return t->kids[0];
      return tree_int_x(t->value, tree_diff(t->kids[0], v));
  }
  return tree_const(0L);
}

namespace {

Tree rebuild(const Tree& t, std::vector<Tree> kids) {
  switch (t->kind) {
    case NodeKind::Add: return tree_add(std::move(kids));
    case NodeKind::Mul: return tree_mul(std::move(kids));
    case NodeKind::PowInt: return tree_pow(kids[0], t->power);
    case NodeKind::Ln: return tree_ln(kids[0]);
    case NodeKind::Exp: return tree_exp(kids[0]);
    case NodeKind::IntY: return tree_int_y(t->value, kids[0]);
    case NodeKind::IntX: return tree_int_x(t->value, kids[0]);
    default: return t;
  }
}

}  // namespace

Tree tree_substitute(const Tree& t, TreeVar v, const Rat& value) {
  NodeKind var = v == TreeVar::X ? NodeKind::VarX : NodeKind::VarY;
  NodeKind own_int = v == TreeVar::X ? NodeKind::IntX : NodeKind::IntY;
  if (t->kind == var) return tree_const(value);
  if (t->kind == own_int) {
    if (t->value == value) return tree_const(0L);
    throw Error(ErrorCode::InvalidArgument,
                "cannot specialize an integral whose anchor differs from the substituted value");
  }
  if (t->kids.empty()) return t;
  std::vector<Tree> kids;
  for (const auto& c : t->kids) kids.push_back(tree_substitute(c, v, value));
  return rebuild(t, std::move(kids));
}

Tree tree_swap_xy(const Tree& t) {
  switch (t->kind) {
    case NodeKind::VarX: return tree_y();
    case NodeKind::VarY: return tree_x();
    case NodeKind::IntY: return tree_int_x(t->value, tree_swap_xy(t->kids[0]));
    case NodeKind::IntX: return tree_int_y(t->value, tree_swap_xy(t->kids[0]));
    default: break;
  }
  if (t->kids.empty()) return t;
  std::vector<Tree> kids;
  for (const auto& c : t->kids) kids.push_back(tree_swap_xy(c));
  return rebuild(t, std::move(kids));
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error, l1;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& fn, double a, double b) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  auto sample = [&](double t) {
    double v = fn(t);
    if (!std::isfinite(v)) throw Error(ErrorCode::PoleOnPath, "non-finite integrand value");
    return v;
  };
  double fc = sample(c);
  double resk = fc * kWgk[7], resg = fc * kWg[3], l1 = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    double f1 = sample(c - h * kXgk[j]), f2 = sample(c + h * kXgk[j]);
    resk += kWgk[j] * (f1 + f2);
    l1 += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, resk * h, std::abs((resk - resg) * h), l1 * std::abs(h)};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& fn, double a, double b,
                          const QuadSettings& q) {
  if (a == b) return 0.0;
  std::priority_queue<Segment> heap;
  Segment first = gk15(fn, a, b);
  double value = first.value, error = first.error, l1 = first.l1;
  heap.push(first);
  int intervals = 1;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  while (error > std::max(q.abs_tol, 50 * kEps * l1)) {
    if (intervals >= q.max_intervals)
      throw Error(ErrorCode::PoleOnPath, "quadrature did not converge (singular integrand?)");
    Segment s = heap.top();
    heap.pop();
    double mid = 0.5 * (s.a + s.b);
    if (!(std::abs(s.b - s.a) > 1e-14 * (std::abs(s.a) + std::abs(s.b) + 1e-300)))
      throw Error(ErrorCode::PoleOnPath, "quadrature interval underflow near a singularity");
    Segment left = gk15(fn, s.a, mid), right = gk15(fn, mid, s.b);
    value += left.value + right.value - s.value;
    error += left.error + right.error - s.error;
    l1 += left.l1 + right.l1 - s.l1;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Resum to drop accumulated cancellation error from the running totals.
  double total = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    heap.pop();
  }
  (void)value;
  return total;
}

namespace {

struct EvalCtx {
  const ParamValues& params;
  const QuadSettings& q;
  long budget;
};

double eval_rec(const Tree& t, double x, double y, EvalCtx& ctx, int depth) {
  switch (t->kind) {
    case NodeKind::Const: return to_double(t->value);
    case NodeKind::VarX: return x;
    case NodeKind::VarY: return y;
    case NodeKind::Param: {
      auto it = ctx.params.find(t->name);
      if (it == ctx.params.end())
        throw Error(ErrorCode::InvalidArgument, "no value bound for parameter '" + t->name + "'");
      return it->second;
    }
    case NodeKind::Add: {
      double s = 0.0;
      for (const auto& c : t->kids) s += eval_rec(c, x, y, ctx, depth);
      return s;
    }
    case NodeKind::Mul: {
      double p = 1.0;
      for (const auto& c : t->kids) p *= eval_rec(c, x, y, ctx, depth);
      return p;
    }
    case NodeKind::PowInt: {
      double b = eval_rec(t->kids[0], x, y, ctx, depth);
      if (b == 0.0 && t->power < 0) throw Error(ErrorCode::PoleAtPoint, "division by zero");
      return std::pow(b, t->power);
    }
    case NodeKind::Ln: {
      double u = eval_rec(t->kids[0], x, y, ctx, depth);
      if (!(u > 0.0)) throw Error(ErrorCode::DomainError, "ln of a nonpositive value");
      return std::log(u);
    }
    case NodeKind::Exp: return std::exp(eval_rec(t->kids[0], x, y, ctx, depth));
    case NodeKind::IntY:
    case NodeKind::IntX: {
      if (depth + 1 > ctx.q.depth_cap)
        throw Error(ErrorCode::DepthExceeded, "integral nesting exceeds the depth cap");
      bool over_y = t->kind == NodeKind::IntY;
      const Tree& h = t->kids[0];
      auto integrand = [&](double s) {
        if (--ctx.budget < 0) throw Error(ErrorCode::PoleOnPath, "quadrature evaluation budget exhausted");
        try {
          return over_y ? eval_rec(h, x, s, ctx, depth + 1)
                        : eval_rec(h, s, y, ctx, depth + 1);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::PoleAtPoint || e.code() == ErrorCode::DomainError)
            throw Error(ErrorCode::PoleOnPath, e.what());
          throw;
        }
      };
      return integrate_adaptive(integrand, to_double(t->value), over_y ? y : x, ctx.q);
    }
  }
  return 0.0;
}

}  // namespace

double tree_eval(const Tree& t, double x, double y, const ParamValues& params,
                 const QuadSettings& q) {
  EvalCtx ctx{params, q, q.max_evaluations};
  return eval_rec(t, x, y, ctx, 0);
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kCtxAdd = 1, kCtxMul = 2, kCtxPow = 3, kCtxBase = 4;

bool is_negative_term(const Tree& t) {
  if (is_const_node(t)) return sgn(t->value) < 0;
  return t->kind == NodeKind::Mul && is_const_node(t->kids[0]) && sgn(t->kids[0]->value) < 0;
}

std::string print(const Tree& t, int ctx);

std::string wrap(const std::string& s, bool parens) { return parens ? "(" + s + ")" : s; }

std::string print_mul(const Tree& t, int ctx) {
  Rat c(1);
  std::vector<Tree> num, den;
  for (const auto& f : t->kids) {
    if (is_const_node(f)) {
      c = f->value;
    } else if (f->kind == NodeKind::PowInt && f->power < 0) {
      den.push_back(tree_pow(f->kids[0], -f->power));
    } else {
      num.push_back(f);
    }
  }
  std::string s = sgn(c) < 0 ? "-" : "";
  Rat a = abs(c);
  BigInt p = a.get_num(), qd = a.get_den();
  std::vector<std::string> parts;
  if (p != 1 || num.empty()) parts.push_back(p.get_str());
  for (const auto& f : num) parts.push_back(print(f, kCtxMul));
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "*" : "") + parts[i];
  std::vector<std::string> below;
  if (qd != 1) below.push_back(qd.get_str());
  for (const auto& f : den) below.push_back(print(f, below.empty() && den.size() == 1 ? kCtxPow : kCtxMul));
  if (below.size() == 1) s += "/" + below[0];
  if (below.size() > 1) {
    s += "/(";
    for (std::size_t i = 0; i < below.size(); ++i) s += (i ? "*" : "") + below[i];
    s += ")";
  }
  return wrap(s, ctx >= kCtxPow);
}

std::string print(const Tree& t, int ctx) {
  switch (t->kind) {
    case NodeKind::Const: {
      bool parens = (ctx > kCtxAdd && sgn(t->value) < 0) || (ctx >= kCtxPow && !is_integer(t->value));
      return wrap(to_string(t->value), parens);
    }
    case NodeKind::VarX: return "x";
    case NodeKind::VarY: return "y";
    case NodeKind::Param: return t->name;
    case NodeKind::Add: {
      std::string s = print(t->kids[0], kCtxAdd);
      for (std::size_t i = 1; i < t->kids.size(); ++i) {
        const Tree& k = t->kids[i];
        if (is_negative_term(k)) {
          s += " - " + print(-k, kCtxAdd);
        } else {
          s += " + " + print(k, kCtxAdd);
        }
      }
      return wrap(s, ctx > kCtxAdd);
    }
    case NodeKind::Mul: return print_mul(t, ctx);
    case NodeKind::PowInt: {
      if (t->power < 0) {
        std::string s = "1/" + print(tree_pow(t->kids[0], -t->power), kCtxPow);
        return wrap(s, ctx >= kCtxPow);
      }
      return print(t->kids[0], kCtxBase) + "^" + std::to_string(t->power);
    }
    case NodeKind::Ln: return "ln(" + print(t->kids[0], 0) + ")";
    case NodeKind::Exp: return "exp(" + print(t->kids[0], 0) + ")";
    case NodeKind::IntY:
      return "int(" + print(t->kids[0], 0) + ", y, " + to_string(t->value) + ", y)";
    case NodeKind::IntX:
      return "int(" + print(t->kids[0], 0) + ", x, " + to_string(t->value) + ", x)";
  }
  return "?";
}

}  // namespace

std::string to_string(const Tree& t) { return print(t, 0); }

}  // namespace gifode

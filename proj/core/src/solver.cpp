#include "gifode/solver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "gifode/errors.hpp"

namespace gifode {

namespace {

bool is_unknown(const JetVar& v) { return v.side != Side::Param; }

bool has_unknowns(const AlgPoly& p) {
  for (const auto& v : p.vars())
    if (is_unknown(v)) return true;
  return false;
}

std::vector<JetVar> unknowns_of(const AlgPoly& p) {
  std::vector<JetVar> out;
  for (const auto& v : p.vars())
    if (is_unknown(v)) out.push_back(v);
  return out;
}

// d^k * p(u = n/d) with k >= deg_u p.
AlgPoly subst_frac(const AlgPoly& p, const JetVar& u, const AlgPoly& n, const AlgPoly& d, int k) {
  auto cs = p.coefficients_in(u);
  AlgPoly r;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].is_zero()) continue;
    r += cs[i] * n.pow(static_cast<int>(i)) * d.pow(k - static_cast<int>(i));
  }
  return r;
}

AlgPoly subst_frac(const AlgPoly& p, const JetVar& u, const AlgPoly& n, const AlgPoly& d) {
  if (!p.contains(u)) return p;
  if (d.is_constant()) return p.substitute(u, n.scaled(Rat(1) / d.constant_coeff()));
  return subst_frac(p, u, n, d, p.degree_in(u));
}

AlgFrac simplify(AlgFrac f) {
  if (f.num.is_zero()) return {AlgPoly(), AlgPoly(Rat(1))};
  if (f.den.is_constant()) return {f.num.scaled(Rat(1) / f.den.constant_coeff()), AlgPoly(Rat(1))};
  if (auto q = exact_divide(f.num, f.den)) return {*q, AlgPoly(Rat(1))};
  // Normalize the denominator to a primitive polynomial with positive leading coefficient.
  AlgPoly pd = make_primitive(f.den);
  Rat s = pd.leading_term().second / f.den.leading_term().second;
  return {f.num.scaled(s), pd};
}

Rat eval_alg(const AlgPoly& p, const std::map<JetVar, Rat>& vals) {
  Rat acc(0);
  for (const auto& [m, c] : p.terms()) {
    Rat t = c;
    for (const auto& [v, e] : m) {
      auto it = vals.find(v);
      if (it == vals.end()) throw Error(ErrorCode::InvalidArgument, "unbound unknown");
      for (int i = 0; i < e; ++i) t *= it->second;
    }
    acc += t;
  }
  return acc;
}

void push_unique(std::vector<AlgPoly>& list, const AlgPoly& p) {
  if (std::find(list.begin(), list.end(), p) == list.end()) list.push_back(p);
}

struct State {
  std::vector<AlgPoly> eqs;
  Branch b;
  int depth = 0;
  // An earlier assignment's denominator vanished.
  bool dead = false;
};

class Solver {
 public:
  Solver(const AlgebraicSystem& sys, const SolveLimits& lim) : sys_(sys), lim_(lim) {}

  SolutionSet run() {
    if (static_cast<int>(sys_.unknowns.size()) > lim_.max_unknowns) {
      give_up("too many unknowns (" + std::to_string(sys_.unknowns.size()) + " > " +
              std::to_string(lim_.max_unknowns) + ")");
      return out_;
    }
    State s;
    s.eqs = sys_.equations;
    solve(std::move(s));
    return out_;
  }

 private:
  void give_up(const std::string& why) {
    if (!out_.gave_up) out_.gave_up_reason = why;
    out_.gave_up = true;
  }

  static void assign(State& s, const JetVar& u, AlgFrac v) {
    v = simplify(std::move(v));
    for (auto& e : s.eqs) e = subst_frac(e, u, v.num, v.den);
    for (auto& e : s.b.nonvanishing) e = subst_frac(e, u, v.num, v.den);
    for (auto& e : s.b.relations) e = subst_frac(e, u, v.num, v.den);
    for (auto& [w, f] : s.b.assignments) {
      if (!f.den.contains(u) && !f.num.contains(u)) continue;
      int k = std::max(f.num.degree_in(u), f.den.degree_in(u));
      AlgPoly den = subst_frac(f.den, u, v.num, v.den, k);
      if (den.is_zero()) {
        s.dead = true;
        return;
      }
      f = simplify({subst_frac(f.num, u, v.num, v.den, k), std::move(den)});
    }
    if (!v.den.is_constant()) push_unique(s.b.nonvanishing, v.den);
    s.b.assignments.emplace_back(u, std::move(v));
  }

  // Returns false when the branch is dead or over a limit.
  bool normalize(State& s) {
    std::vector<AlgPoly> eqs;
    for (const auto& e : s.eqs) {
      if (e.is_zero()) continue;
      if (e.is_constant()) return false;
      AlgPoly p = make_primitive(e);
      if (!has_unknowns(p)) {
        push_unique(s.b.constraints, p);
        continue;
      }
      push_unique(eqs, p);
    }
    s.eqs = std::move(eqs);

    std::vector<AlgPoly> rel;
    for (const auto& e : s.b.relations) {
      if (e.is_zero()) continue;
      if (e.is_constant()) return false;
      AlgPoly p = make_primitive(e);
      if (!has_unknowns(p)) push_unique(s.b.constraints, p);
      else push_unique(rel, p);
    }
    s.b.relations = std::move(rel);

    std::vector<AlgPoly> cons;
    for (const auto& e : s.b.constraints) {
      if (e.is_zero()) continue;
      if (e.is_constant()) return false;
      push_unique(cons, make_primitive(e));
    }
    s.b.constraints = std::move(cons);

    std::vector<AlgPoly> nv;
    for (const auto& e : s.b.nonvanishing) {
      if (e.is_zero()) return false;
      if (e.is_constant()) continue;
      push_unique(nv, make_primitive(e));
    }
    s.b.nonvanishing = std::move(nv);

    for (const auto& e : s.eqs) {
      if (e.total_degree() > lim_.max_total_degree) {
        give_up("equation degree " + std::to_string(e.total_degree()) + " exceeds " +
                std::to_string(lim_.max_total_degree));
        return false;
      }
    }
    return true;
  }

  void emit(State& s) {
    for (const auto& e : s.eqs) push_unique(s.b.relations, e);
    s.eqs.clear();
    std::set<JetVar> bound;
    for (const auto& [u, f] : s.b.assignments) bound.insert(u);
    for (const auto& r : s.b.relations)
      for (const auto& v : unknowns_of(r)) bound.insert(v);
    s.b.free.clear();
    for (const auto& u : sys_.unknowns)
      if (!bound.count(u)) s.b.free.push_back(u);
    std::sort(s.b.assignments.begin(), s.b.assignments.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string key = to_string(s.b, default_namer(sys_.params, true));
    if (seen_.insert(key).second) out_.branches.push_back(std::move(s.b));
  }

  // Linear in an unknown with a nonzero constant coefficient; lowest total
  // degree equation first, then lowest unknown.
  bool pivot(State& s) {
    std::optional<std::tuple<int, std::size_t, JetVar>> best;
    for (std::size_t i = 0; i < s.eqs.size(); ++i) {
      const AlgPoly& e = s.eqs[i];
      for (const auto& u : unknowns_of(e)) {
        if (e.degree_in(u) != 1) continue;
        auto cs = e.coefficients_in(u);
        if (!cs[1].is_constant()) continue;
        std::tuple<int, std::size_t, JetVar> key{e.total_degree(), i, u};
        if (!best || key < *best) best = key;
        break;
      }
    }
    if (!best) return false;
    const JetVar u = std::get<2>(*best);
    auto cs = s.eqs[std::get<1>(*best)].coefficients_in(u);
    assign(s, u, {(-cs[0]).scaled(Rat(1) / cs[1].constant_coeff()), AlgPoly(Rat(1))});
    return true;
  }

  void split_roots(State& s) {
    for (const auto& e : s.eqs) {
      auto vs = e.vars();
      if (vs.size() != 1 || !is_unknown(*vs.begin()) || e.degree_in(*vs.begin()) < 2) continue;
      const JetVar u = *vs.begin();
      std::vector<Rat> coeffs;
      for (const auto& c : e.coefficients_in(u)) coeffs.push_back(c.constant_coeff());
      for (const Rat& r : rational_roots(coeffs)) {
        State child = s;
        child.depth = s.depth + 1;
        assign(child, u, {AlgPoly(r), AlgPoly(Rat(1))});
        solve(std::move(child));
      }
      return;
    }
  }

  bool has_univariate(const State& s) const {
    for (const auto& e : s.eqs) {
      auto vs = e.vars();
      if (vs.size() == 1 && is_unknown(*vs.begin()) && e.degree_in(*vs.begin()) >= 2) return true;
    }
    return false;
  }

  // u * g = 0: {u = 0} and {g = 0, u != 0}.
  bool split_factor(State& s) {
    for (std::size_t i = 0; i < s.eqs.size(); ++i) {
      for (const auto& u : unknowns_of(s.eqs[i])) {
        auto g = exact_divide(s.eqs[i], AlgPoly::variable(u));
        if (!g) continue;
        State a = s;
        a.depth = s.depth + 1;
        assign(a, u, {AlgPoly(), AlgPoly(Rat(1))});
        State b = s;
        b.depth = s.depth + 1;
        b.eqs[i] = *g;
        push_unique(b.b.nonvanishing, AlgPoly::variable(u));
        solve(std::move(a));
        solve(std::move(b));
        return true;
      }
    }
    return false;
  }

  // a*u + b = 0 with a nonconstant: {a = 0} and {a != 0, u = -b/a}.
  bool split_linear(State& s) {
    std::optional<std::tuple<int, JetVar, std::size_t>> best;
    for (std::size_t i = 0; i < s.eqs.size(); ++i) {
      for (const auto& u : unknowns_of(s.eqs[i])) {
        if (s.eqs[i].degree_in(u) != 1) continue;
        auto cs = s.eqs[i].coefficients_in(u);
        std::tuple<int, JetVar, std::size_t> key{cs[1].total_degree(), u, i};
        if (!best || key < *best) best = key;
      }
    }
    if (!best) return false;
    const JetVar u = std::get<1>(*best);
    auto cs = s.eqs[std::get<2>(*best)].coefficients_in(u);
    State zero = s;
    zero.depth = s.depth + 1;
    zero.eqs.push_back(cs[1]);
    State solved = s;
    solved.depth = s.depth + 1;
    assign(solved, u, {-cs[0], cs[1]});
    solve(std::move(zero));
    solve(std::move(solved));
    return true;
  }

  // One unknown together with parameters, nonlinear: kept as a relation.
  bool park_relation(State& s) {
    for (std::size_t i = 0; i < s.eqs.size(); ++i) {
      if (unknowns_of(s.eqs[i]).size() != 1) continue;
      push_unique(s.b.relations, s.eqs[i]);
      s.eqs.erase(s.eqs.begin() + static_cast<std::ptrdiff_t>(i));
      return true;
    }
    return false;
  }

  void solve(State s) {
    if (++explored_ > lim_.max_branches) {
      give_up("branch budget exhausted");
      return;
    }
    if (s.depth > lim_.max_split_depth) {
      give_up("split depth exceeds " + std::to_string(lim_.max_split_depth));
      return;
    }
    for (;;) {
      if (s.dead || !normalize(s)) return;
      if (s.eqs.empty()) {
        emit(s);
        return;
      }
      if (pivot(s)) continue;
      if (has_univariate(s)) {
        split_roots(s);
        return;
      }
      if (split_factor(s)) return;
      if (split_linear(s)) return;
      if (park_relation(s)) continue;
      emit(s);
      return;
    }
  }

  const AlgebraicSystem& sys_;
  SolveLimits lim_;
  SolutionSet out_;
  std::set<std::string> seen_;
  int explored_ = 0;
};

}  // namespace

AlgebraicSystem reduce_to_algebraic(const DeterminingSystem& sys) {
  AlgebraicSystem out;
  out.unknowns = sys.ansatz.unknowns;
  out.params = sys.params;
  for (const auto& eq : sys.equations) {
    PolyX L(Rat(1));
    for (const auto& [m, c] : eq.terms()) {
      for (const auto& [v, e] : m)
        if (!v.constant) throw Error(ErrorCode::UnsupportedMode, "function unknowns cannot be collected in x");
      L = divmod(L * c.den(), gcd(L, c.den())).first;
    }
    std::map<int, AlgPoly> by_power;
    for (const auto& [m, c] : eq.terms()) {
      PolyX n = (c * RatX(L)).num();
      for (int k = 0; k <= n.degree(); ++k)
        if (!is_zero(n.coeff(k))) by_power[k].add_term(m, n.coeff(k));
    }
    for (const auto& [k, p] : by_power)
      if (!p.is_zero()) push_unique(out.equations, make_primitive(p));
  }
  return out;
}

SolutionSet solve_algebraic(const AlgebraicSystem& asys, const SolveLimits& limits) {
  return Solver(asys, limits).run();
}

SolutionSet derive_constraints(const AlgebraicSystem& asys, const SolveLimits& limits) {
  return solve_algebraic(asys, limits);
}

bool branch_is_sound(const AlgebraicSystem& asys, const Branch& b) {
  for (const auto& [u, f] : b.assignments)
    if (f.den.is_zero()) return false;
  for (const auto& nv : b.nonvanishing)
    if (nv.is_zero()) return false;
  for (const auto& eq : asys.equations) {
    AlgPoly r = eq;
    for (const auto& [u, f] : b.assignments) r = subst_frac(r, u, f.num, f.den);
    if (r.is_zero()) continue;
    bool ok = false;
    for (const auto* list : {&b.relations, &b.constraints}) {
      for (const auto& rel : *list) {
        if (exact_divide(r, rel)) {
          ok = true;
          break;
        }
      }
      if (ok) break;
    }
    if (!ok) return false;
  }
  return true;
}

std::string to_string(const AlgFrac& f, const JetNamer& namer) {
  if (f.den.is_constant() && f.den.constant_coeff() == 1) return to_string(f.num, namer);
  return "(" + to_string(f.num, namer) + ")/(" + to_string(f.den, namer) + ")";
}

std::string to_string(const Branch& b, const JetNamer& namer) {
  std::string s;
  auto sep = [&] {
    if (!s.empty()) s += ", ";
  };
  for (const auto& [u, f] : b.assignments) {
    sep();
    s += namer(u) + " = " + to_string(f, namer);
  }
  for (const auto& c : b.constraints) {
    sep();
    s += to_string(c, namer) + " = 0";
  }
  for (const auto& r : b.relations) {
    sep();
    s += to_string(r, namer) + " = 0";
  }
  for (const auto& n : b.nonvanishing) {
    sep();
    s += to_string(n, namer) + " != 0";
  }
  for (const auto& u : b.free) {
    sep();
    s += namer(u) + " free";
  }
  return s.empty() ? "(no conditions)" : s;
}

std::optional<std::vector<std::pair<JetVar, Rat>>> instantiate_branch(const AlgebraicSystem& asys,
                                                                      const Branch& b) {
  if (!b.relations.empty() || !b.constraints.empty()) return std::nullopt;
  for (const auto& [u, f] : b.assignments)
    for (const auto& v : f.num.vars())
      if (!is_unknown(v)) return std::nullopt;
  static const Rat kChoices[] = {Rat(0), Rat(1), Rat(-1), Rat(2)};
  const std::size_t nf = b.free.size();
  std::vector<std::vector<int>> combos{std::vector<int>(nf, 0)};
  // Small choices first: vary one free unknown at a time, then all together.
  for (std::size_t i = 0; i < nf; ++i)
    for (int c = 1; c < 4; ++c) {
      std::vector<int> v(nf, 0);
      v[i] = c;
      combos.push_back(v);
    }
  for (int c = 1; c < 4 && nf > 1; ++c) combos.emplace_back(nf, c);
  for (const auto& combo : combos) {
    std::map<JetVar, Rat> vals;
    for (std::size_t i = 0; i < nf; ++i) vals[b.free[i]] = kChoices[combo[i]];
    bool ok = true;
    for (const auto& [u, f] : b.assignments) {
      Rat d = eval_alg(f.den, vals);
      if (is_zero(d)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::map<JetVar, Rat> all = vals;
    for (const auto& [u, f] : b.assignments) all[u] = eval_alg(f.num, vals) / eval_alg(f.den, vals);
    for (const auto& nv : b.nonvanishing)
      if (is_zero(eval_alg(nv, all))) ok = false;
    if (!ok) continue;
    std::vector<std::pair<JetVar, Rat>> out;
    for (const auto& u : asys.unknowns) {
      auto it = all.find(u);
      out.emplace_back(u, it == all.end() ? Rat(0) : it->second);
    }
    return out;
  }
  return std::nullopt;
}

RatY instantiate_mu(const ODE& ode, const Ansatz& ansatz, const std::vector<std::pair<JetVar, Rat>>& values) {
  std::map<JetVar, Rat> vals(values.begin(), values.end());
  auto coeff = [&](const DiffPoly& c) {
    RatX acc;
    for (const auto& [m, k] : c.terms()) {
      Rat t(1);
      for (const auto& [v, e] : m) {
        auto it = vals.find(v);
        if (it == vals.end()) throw Error(ErrorCode::InvalidArgument, "missing value for an unknown");
        for (int i = 0; i < e; ++i) t *= it->second;
      }
      acc += k * RatX(t);
    }
    return acc;
  };
  PolyYX X = ansatz.X.map_coeffs(coeff);
  PolyYX Y = ansatz.Y.map_coeffs(coeff);
  if (ansatz.kind == MuKind::YYQ) Y = Y * ode.Q_ratx();
  if (Y.is_zero()) throw Error(ErrorCode::ZeroDenominator, "instantiated denominator vanishes");
  return raty_normalize(X, Y);
}

SearchResult search(const ODE& ode, const std::vector<MuKind>& kinds, int max_nx, AnsatzMode mode,
                    const SolveLimits& limits) {
  if (ode.has_params()) throw Error(ErrorCode::InvalidArgument, "search needs a parameter-free ODE");
  if (mode.kind == AnsatzMode::Kind::Func)
    throw Error(ErrorCode::UnsupportedMode, "the func ansatz has no algebraic reduction");
  SearchResult res;
  for (MuKind kind : kinds) {
    for (const auto& [nx, ny] : admissible_pairs(kind, ode.np(), ode.nq(), max_nx)) {
      Candidate cand{kind, nx, ny, 0, ""};
      try {
        Ansatz a = build_ansatz(kind, nx, ny, mode);
        if (static_cast<int>(a.unknowns.size()) > limits.max_unknowns) {
          cand.outcome = "gave up: " + std::to_string(a.unknowns.size()) + " unknowns";
          res.any_gave_up = true;
          res.candidates.push_back(cand);
          continue;
        }
        DeterminingSystem sys = build_system(kind, ode, a);
        cand.n_sys = sys.n_sys;
        AlgebraicSystem asys = reduce_to_algebraic(sys);
        SolutionSet sols = solve_algebraic(asys, limits);
        if (sols.gave_up) res.any_gave_up = true;
        for (std::size_t i = 0; i < sols.branches.size(); ++i) {
          const Branch& br = sols.branches[i];
          if (!branch_is_sound(asys, br)) continue;
          auto vals = instantiate_branch(asys, br);
          if (!vals) continue;
          RatY mu;
          try {
            mu = instantiate_mu(ode, sys.ansatz, *vals);
          } catch (const Error&) {
            continue;
          }
          if (!residual_is_zero(kind, ode, mu)) continue;
          RatY mu_yy;
          try {
            mu_yy = convert_mu(kind, MuKind::YY, mu, ode);
          } catch (const Error&) {
            continue;
          }
          if (!mu_residual(MuKind::YY, ode, mu_yy).is_zero()) continue;
          cand.outcome = "solved";
          res.candidates.push_back(cand);
          res.found = true;
          res.kind = kind;
          res.mu = mu;
          res.mu_yy = mu_yy;
          res.system = std::move(sys);
          res.algebraic = std::move(asys);
          res.solutions = std::move(sols);
          res.branch_index = i;
          return res;
        }
        cand.outcome = sols.branches.empty() ? "no branches" : "no usable branch";
        if (sols.gave_up) cand.outcome += " (gave up: " + sols.gave_up_reason + ")";
      } catch (const Error& e) {
        cand.outcome = e.what();
      }
      res.candidates.push_back(cand);
    }
  }
  return res;
}

}  // namespace gifode

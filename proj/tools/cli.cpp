#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "gifode/assembler.hpp"
#include "gifode/determining.hpp"
#include "gifode/errors.hpp"
#include "gifode/expr_parser.hpp"
#include "gifode/order_guide.hpp"
#include "gifode/solver.hpp"
#include "gifode/verifier.hpp"
#include "json.hpp"

namespace gifode::cli {

namespace {

using json = nlohmann::ordered_json;

struct RunConfig {
  std::string ode_text;
  std::vector<std::string> kinds;
  int nx = -1, ny = -1;
  int np = 0, nq = 0;
  int max_nx = 3;
  std::string mode = "const";
  int deg_x = 2;
  std::vector<std::string> params;
  bool export_eqs = false;
  bool as_json = false;
  std::uint64_t seed = 0;
  double tol_pde = 1e-9;
  double tol_traj = 1e-6;
  std::string anchor_x = "0", anchor_y = "1";
  int samples = 100;
  double traj_step = 1e-3;
  double traj_span = 0.5;
  std::string zeta_text, mu_text;
  int corpus_n = 20;
  std::string out_path;
  int max_unknowns = 12, max_split_depth = 8, max_total_degree = 6;
};

class Clock {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::ZeroDenominator:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnsupportedMode:
    case ErrorCode::DividesByF:
    case ErrorCode::NotRationalInY:
    case ErrorCode::GuideGap:
    case ErrorCode::PoleAtPoint:
    case ErrorCode::DomainError:
      return 3;
    case ErrorCode::Gaveup:
    case ErrorCode::DepthExceeded:
    case ErrorCode::JetCapExceeded:
    case ErrorCode::CorpusExhausted:
      return 4;
    case ErrorCode::NotFound:
      return 2;
    default:
      return 1;
  }
}

std::vector<MuKind> parse_kinds(const std::vector<std::string>& names, std::vector<MuKind> fallback) {
  if (names.empty()) return fallback;
  std::vector<MuKind> out;
  for (const auto& n : names) {
    auto k = parse_mu_kind(n);
    if (!k) throw Error(ErrorCode::InvalidArgument, "unknown factor kind '" + n + "'");
    out.push_back(*k);
  }
  return out;
}

AnsatzMode parse_mode(const RunConfig& c) {
  if (c.mode == "const") return AnsatzMode::constant();
  if (c.mode == "polyx") return AnsatzMode::polyx(c.deg_x);
  if (c.mode == "func") return AnsatzMode::func();
  throw Error(ErrorCode::InvalidArgument, "unknown mode '" + c.mode + "'");
}

Rat parse_rat(const std::string& s) {
  auto r = tree_to_raty(parse_expression(s, {{}, false}));
  if (!r || !r->is_y_free() || r->y_free_value().num().degree() > 0 || r->y_free_value().den().degree() > 0)
    throw Error(ErrorCode::InvalidArgument, "expected a rational number, got '" + s + "'");
  return r->y_free_value().num().coeff(0) / r->y_free_value().den().coeff(0);
}

json guide_json(const GuideRow& r) {
  return {{"kind", to_string(r.kind)},
          {"np", r.np},
          {"nq", r.nq},
          {"case", to_string(r.degree_case)},
          {"relation", r.relation_text},
          {"ny_minus_nx", r.bound},
          {"at_most", r.at_most},
          {"n_sys", r.n_sys_text},
          {"n_sys_base", r.n_sys_base},
          {"max_cons", r.max_cons},
          {"max_cons_formula", r.max_cons_text},
          {"fallback", r.fallback}};
}

int cmd_guide(const RunConfig& c, std::ostream& out, std::ostream& err) {
  auto kinds = parse_kinds(c.kinds, {MuKind::YY, MuKind::YX, MuKind::XY, MuKind::XX, MuKind::YYQ});
  json rows = json::array();
  for (MuKind k : kinds) {
    GuideRow r = guide_or_fallback(k, c.np, c.nq);
    if (r.fallback) err << "note: no table column for " << to_string(k) << " with N_P = N_Q; using degree balance\n";
    json j = guide_json(r);
    json pairs = json::array();
    for (const auto& [nx, ny] : admissible_pairs(k, c.np, c.nq, c.max_nx)) pairs.push_back({nx, ny});
    j["pairs"] = pairs;
    if (c.as_json) {
      rows.push_back(j);
      continue;
    }
    out << to_string(k) << " (N_P=" << c.np << ", N_Q=" << c.nq << ", " << to_string(r.degree_case)
        << (r.fallback ? ", fallback" : "") << "): " << r.relation_text << "; n_sys = " << r.n_sys_text
        << "; max_cons = " << r.max_cons_text << " = " << r.max_cons << "\n  pairs:";
    for (const auto& p : j["pairs"]) out << " (" << p[0] << "," << p[1] << ")";
    out << "\n";
  }
  if (c.as_json) out << rows.dump(2) << "\n";
  return 0;
}

std::pair<int, int> default_pair(MuKind k, const ODE& ode, const RunConfig& c) {
  if (c.nx >= 0 && c.ny >= 0) return {c.nx, c.ny};
  auto pairs = admissible_pairs(k, ode.np(), ode.nq(), std::max(c.max_nx, 0));
  if (c.nx >= 0) {
    for (const auto& p : pairs)
      if (p.first == c.nx) return p;
  }
  if (pairs.empty()) throw Error(ErrorCode::InvalidArgument, "no admissible ansatz pair; pass --nx and --ny");
  return pairs.front();
}

int cmd_system(const RunConfig& c, std::ostream& out) {
  ODE ode = parse_ode(c.ode_text, c.params);
  MuKind k = parse_kinds(c.kinds, {MuKind::YY}).front();
  auto [nx, ny] = default_pair(k, ode, c);
  DeterminingSystem sys = build_system(k, ode, build_ansatz(k, nx, ny, parse_mode(c)));
  GuideRow row = guide_or_fallback(k, ode.np(), ode.nq());
  if (c.export_eqs && !c.as_json) {
    out << export_system(sys);
    return 0;
  }
  if (c.as_json) {
    json eqs = json::array();
    std::string text = export_system(sys);
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string::npos) nl = text.size();
      eqs.push_back(text.substr(pos, nl - pos));
      pos = nl + 1;
    }
    json j = {{"input", to_string(ode)},
              {"kind", to_string(k)},
              {"ansatz", {{"nx", nx}, {"ny", ny}, {"mode", to_string(sys.ansatz.mode)}}},
              {"system", {{"n_sys", sys.n_sys}, {"n_unknowns", sys.n_unknowns}, {"max_cons", row.max_cons}}},
              {"equations", eqs}};
    out << j.dump(2) << "\n";
    return 0;
  }
  out << to_string(ode) << "\n"
      << to_string(k) << " ansatz (" << nx << ", " << ny << "), " << to_string(sys.ansatz.mode) << ": n_sys = " << sys.n_sys
      << ", unknowns = " << sys.n_unknowns << ", max_cons = " << row.max_cons << "\n";
  out << export_system(sys);
  return 0;
}

SolveLimits limits_of(const RunConfig& c) {
  SolveLimits l;
  l.max_unknowns = c.max_unknowns;
  l.max_split_depth = c.max_split_depth;
  l.max_total_degree = c.max_total_degree;
  return l;
}

json candidates_json(const std::vector<Candidate>& cs) {
  json a = json::array();
  for (const auto& cd : cs)
    a.push_back({{"kind", to_string(cd.kind)}, {"nx", cd.nx}, {"ny", cd.ny}, {"n_sys", cd.n_sys}, {"outcome", cd.outcome}});
  return a;
}

// Parametric ODEs: report the branch structure of the first candidate that
// has one.
int solve_parametric(const RunConfig& c, const ODE& ode, std::ostream& out, std::ostream& err) {
  auto kinds = parse_kinds(c.kinds, {MuKind::YY, MuKind::YYQ, MuKind::YX, MuKind::XY, MuKind::XX});
  AnsatzMode mode = parse_mode(c);
  if (mode.kind == AnsatzMode::Kind::Func) throw Error(ErrorCode::UnsupportedMode, "func mode cannot be solved");
  bool gave_up = false;
  for (MuKind k : kinds) {
    for (const auto& [nx, ny] : admissible_pairs(k, ode.np(), ode.nq(), c.max_nx)) {
      Ansatz a = build_ansatz(k, nx, ny, mode);
      DeterminingSystem sys;
      try {
        sys = build_system(k, ode, a);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DividesByF) continue;
        throw;
      }
      AlgebraicSystem asys = reduce_to_algebraic(sys);
      SolutionSet sols = derive_constraints(asys, limits_of(c));
      gave_up |= sols.gave_up;
      if (sols.branches.empty()) continue;
      auto namer = default_namer(asys.params, mode.kind == AnsatzMode::Kind::PolyX);
      json branches = json::array();
      for (const auto& b : sols.branches) branches.push_back(to_string(b, namer));
      GuideRow row = guide_or_fallback(k, ode.np(), ode.nq());
      json j = {{"input", to_string(ode)},
                {"kind", to_string(k)},
                {"ansatz", {{"nx", nx}, {"ny", ny}, {"mode", to_string(mode)}}},
                {"system", {{"n_sys", sys.n_sys}, {"n_unknowns", sys.n_unknowns}, {"max_cons", row.max_cons}}},
                {"solution", {{"branches", branches}, {"complete", !sols.gave_up}}}};
      if (c.as_json) {
        out << j.dump(2) << "\n";
      } else {
        out << to_string(ode) << "\n" << to_string(k) << " (" << nx << ", " << ny << "), " << to_string(mode) << "\n";
        for (const auto& b : branches) out << "  branch: " << b.get<std::string>() << "\n";
      }
      return 0;
    }
  }
  err << "no branch found\n";
  return gave_up ? 4 : 2;
}

int cmd_solve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  Clock total;
  ODE ode = parse_ode(c.ode_text, c.params);
  if (ode.has_params()) return solve_parametric(c, ode, out, err);
  auto kinds = parse_kinds(c.kinds, {MuKind::YY, MuKind::YYQ, MuKind::YX, MuKind::XY, MuKind::XX});
  Clock t_search;
  SearchResult res = search(ode, kinds, c.max_nx, parse_mode(c), limits_of(c));
  double ms_search = t_search.ms();
  if (!res.found) {
    if (c.as_json) {
      json j = {{"input", to_string(ode)}, {"found", false}, {"candidates", candidates_json(res.candidates)}};
      out << j.dump(2) << "\n";
    }
    for (const auto& cd : res.candidates)
      err << to_string(cd.kind) << " (" << cd.nx << ", " << cd.ny << "): " << cd.outcome << "\n";
    err << (res.any_gave_up ? "search limits were hit before a factor was found\n" : "no factor found within the bounds\n");
    return res.any_gave_up ? 4 : 2;
  }

  Clock t_assemble;
  AssemblyOptions ao;
  ao.anchor_x0 = parse_rat(c.anchor_x);
  ao.anchor_y0 = parse_rat(c.anchor_y);
  Assembly as = assemble(ode, res.mu_yy, ao);
  double ms_assemble = t_assemble.ms();

  Clock t_verify;
  bool exact = check_mu_exact(MuKind::YY, ode, res.mu_yy);
  VerificationReport pde = check_zeta_numeric(as.zeta, ode, c.samples, c.tol_pde, c.seed);
  std::optional<VerificationReport> traj;
  std::string traj_note;
  try {
    double x0 = to_double(as.x0), y0 = to_double(as.y0);
    traj = check_trajectory(as.zeta, ode, x0, y0, c.traj_step, x0 + c.traj_span, c.tol_traj);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PoleOnTrajectory) throw;
    traj_note = e.what();
  }
  double ms_verify = t_verify.ms();
  bool verified = exact && pde.passed && (!traj || traj->passed);

  const Ansatz& an = res.system.ansatz;
  auto namer = default_namer(res.algebraic.params, an.mode.kind == AnsatzMode::Kind::PolyX);
  json branches = json::array();
  for (const auto& b : res.solutions.branches) branches.push_back(to_string(b, namer));
  GuideRow row = guide_or_fallback(res.kind, ode.np(), ode.nq());
  json ver = {{"exact", exact}, {"max_pde_residual", pde.max_pde_residual}, {"samples", pde.sample_count}};
  ver["trajectory_drift"] = traj ? json(traj->trajectory_drift) : json(nullptr);
  if (!traj_note.empty()) ver["trajectory_note"] = traj_note;
  json failures = json::array();
  for (const auto& f : pde.failures) failures.push_back(f);
  if (traj)
    for (const auto& f : traj->failures) failures.push_back(f);
  ver["failures"] = failures;
  ver["passed"] = verified;
  json j = {{"input", to_string(ode)},
            {"kind", to_string(res.kind)},
            {"ansatz", {{"nx", an.nx}, {"ny", an.ny}, {"mode", to_string(an.mode)}}},
            {"system", {{"n_sys", res.system.n_sys}, {"n_unknowns", res.system.n_unknowns}, {"max_cons", row.max_cons}}},
            {"solution", {{"branches", branches}, {"chosen", res.branch_index}}},
            {"mu", to_string(res.mu)},
            {"mu_yy", to_string(res.mu_yy)},
            {"zeta", to_string(as.zeta)},
            {"anchor", {to_string(as.x0), to_string(as.y0)}},
            {"verification", ver},
            {"timings", {{"search_ms", ms_search}, {"assemble_ms", ms_assemble}, {"verify_ms", ms_verify}, {"total_ms", total.ms()}}}};
  if (c.as_json) {
    out << j.dump(2) << "\n";
  } else {
    out << j["input"].get<std::string>() << "\n"
        << "kind:   " << j["kind"].get<std::string>() << " (" << an.nx << ", " << an.ny << "), " << to_string(an.mode) << "\n"
        << "branch: " << branches[res.branch_index].get<std::string>() << "\n"
        << "mu:     " << j["mu"].get<std::string>() << "\n"
        << "mu_yy:  " << j["mu_yy"].get<std::string>() << "\n"
        << "zeta:   " << j["zeta"].get<std::string>() << "\n"
        << "exact residual zero: " << (exact ? "yes" : "no") << ", max PDE residual " << pde.max_pde_residual;
    if (traj) out << ", trajectory drift " << traj->trajectory_drift;
    out << "\n";
  }
  if (!verified) {
    for (const auto& f : failures) err << "verification: " << f.get<std::string>() << "\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  ODE ode = parse_ode(c.ode_text, c.params);
  if (ode.has_params()) throw Error(ErrorCode::InvalidArgument, "verify needs a parameter-free ODE");
  if (c.zeta_text.empty() && c.mu_text.empty()) throw Error(ErrorCode::InvalidArgument, "pass --zeta and/or --mu-yy");
  json j = {{"input", to_string(ode)}};
  bool ok = true;
  if (!c.mu_text.empty()) {
    auto mu = tree_to_raty(parse_expression(c.mu_text, {{}, false}));
    if (!mu) throw Error(ErrorCode::NotRationalInY, "mu_yy must be rational");
    MuKind k = parse_kinds(c.kinds, {MuKind::YY}).front();
    bool exact = check_mu_exact(k, ode, *mu);
    j["kind"] = to_string(k);
    j["mu"] = to_string(*mu);
    j["exact"] = exact;
    ok &= exact;
  }
  if (!c.zeta_text.empty()) {
    Tree zeta = parse_expression(c.zeta_text);
    VerificationReport pde = check_zeta_numeric(zeta, ode, c.samples, c.tol_pde, c.seed);
    j["zeta"] = to_string(zeta);
    j["max_pde_residual"] = pde.max_pde_residual;
    j["samples"] = pde.sample_count;
    ok &= pde.passed;
    for (const auto& f : pde.failures) err << "verification: " << f << "\n";
    try {
      double x0 = to_double(parse_rat(c.anchor_x)), y0 = to_double(parse_rat(c.anchor_y));
      VerificationReport tr = check_trajectory(zeta, ode, x0, y0, c.traj_step, x0 + c.traj_span, c.tol_traj);
      j["trajectory_drift"] = tr.trajectory_drift;
      ok &= tr.passed;
      for (const auto& f : tr.failures) err << "verification: " << f << "\n";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PoleOnTrajectory) throw;
      j["trajectory_drift"] = nullptr;
      j["trajectory_note"] = e.what();
    }
  }
  j["passed"] = ok;
  if (c.as_json) {
    out << j.dump(2) << "\n";
  } else {
    for (const auto& [key, v] : j.items()) out << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_corpus(const RunConfig& c, std::ostream& out) {
  auto cases = gen_corpus(c.seed, c.corpus_n);
  std::ofstream file;
  if (!c.out_path.empty()) {
    file.open(c.out_path);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + c.out_path);
  }
  std::ostream& os = c.out_path.empty() ? out : file;
  for (const auto& cc : cases) {
    json j = {{"seed", cc.seed},
              {"f", to_string(*cc.ode.f)},
              {"zeta", to_string(cc.zeta_ref)},
              {"mu_yy", to_string(cc.mu_ref)}};
    os << j.dump() << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Generalized integrating factors for first-order rational ODEs", "gifode"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* s) {
    s->add_option("--mu", c.kinds, "factor kind: yy, yx, xy, xx, yyq (repeatable)");
    s->add_option("--param", c.params, "declare a constant parameter (repeatable)");
    s->add_flag("--json", c.as_json, "JSON output");
  };
  auto add_ansatz = [&](CLI::App* s) {
    s->add_option("--max-nx", c.max_nx, "largest numerator degree tried")->check(CLI::NonNegativeNumber);
    s->add_option("--mode", c.mode, "ansatz coefficients: const, polyx or func");
    s->add_option("--deg-x", c.deg_x, "x-degree of polyx coefficients")->check(CLI::Range(0, 8));
  };
  auto add_verify = [&](CLI::App* s) {
    s->add_option("--seed", c.seed, "sampler seed");
    s->add_option("--tol-pde", c.tol_pde, "tolerance on |zeta_x + f zeta_y|");
    s->add_option("--tol-traj", c.tol_traj, "tolerance on the trajectory drift");
    s->add_option("--anchor-x", c.anchor_x, "integration anchor x0 (rational)");
    s->add_option("--anchor-y", c.anchor_y, "integration anchor y0 (rational)");
    s->add_option("--samples", c.samples, "number of PDE samples")->check(CLI::PositiveNumber);
    s->add_option("--traj-step", c.traj_step, "RK4 step")->check(CLI::PositiveNumber);
    s->add_option("--traj-span", c.traj_span, "trajectory length in x");
  };

  auto* guide_cmd = app.add_subcommand("guide", "ansatz order relations and system sizes");
  add_common(guide_cmd);
  guide_cmd->add_option("--np", c.np, "y-degree of P")->required()->check(CLI::NonNegativeNumber);
  guide_cmd->add_option("--nq", c.nq, "y-degree of Q")->required()->check(CLI::NonNegativeNumber);
  guide_cmd->add_option("--max-nx", c.max_nx, "list admissible pairs up to this N_X");

  auto* system_cmd = app.add_subcommand("system", "build the determining system");
  system_cmd->add_option("ode", c.ode_text, "\"dy/dx = P/Q\"")->required();
  add_common(system_cmd);
  add_ansatz(system_cmd);
  system_cmd->add_option("--nx", c.nx, "numerator degree")->check(CLI::NonNegativeNumber);
  system_cmd->add_option("--ny", c.ny, "denominator degree")->check(CLI::NonNegativeNumber);
  system_cmd->add_flag("--export", c.export_eqs, "print one equation per line");

  auto* solve_cmd = app.add_subcommand("solve", "find a factor, assemble and verify the first integral");
  solve_cmd->add_option("ode", c.ode_text, "\"dy/dx = P/Q\"")->required();
  add_common(solve_cmd);
  add_ansatz(solve_cmd);
  add_verify(solve_cmd);
  solve_cmd->add_option("--max-unknowns", c.max_unknowns, "solver limit");
  solve_cmd->add_option("--max-split-depth", c.max_split_depth, "solver limit");
  solve_cmd->add_option("--max-total-degree", c.max_total_degree, "solver limit");

  auto* verify_cmd = app.add_subcommand("verify", "check a given first integral or factor");
  verify_cmd->add_option("ode", c.ode_text, "\"dy/dx = P/Q\"")->required();
  add_common(verify_cmd);
  add_verify(verify_cmd);
  verify_cmd->add_option("--zeta", c.zeta_text, "first integral expression");
  verify_cmd->add_option("--mu-yy", c.mu_text, "factor (of the --mu kind, default yy)");

  auto* corpus_cmd = app.add_subcommand("corpus", "generate ODEs with known first integrals (JSON lines)");
  corpus_cmd->add_option("--seed", c.seed, "generator seed");
  corpus_cmd->add_option("-n,--count", c.corpus_n, "number of cases")->check(CLI::PositiveNumber);
  corpus_cmd->add_option("-o,--out", c.out_path, "output file (default stdout)");

  std::vector<std::string> argv_store{"gifode"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 3;
  }

  try {
    if (guide_cmd->parsed()) return cmd_guide(c, out, err);
    if (system_cmd->parsed()) return cmd_system(c, out);
    if (solve_cmd->parsed()) return cmd_solve(c, out, err);
    if (verify_cmd->parsed()) return cmd_verify(c, out, err);
    if (corpus_cmd->parsed()) return cmd_corpus(c, out);
  } catch (const Error& e) {
    err << e.what();
    if (e.position() >= 0 && std::string(e.what()).find("position") == std::string::npos)
      err << " (at position " << e.position() << ")";
    err << "\n";
    return exit_code_for(e.code());
  }
  return 3;
}

}  // namespace gifode::cli

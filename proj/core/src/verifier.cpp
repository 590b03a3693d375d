#include "gifode/verifier.hpp"

#include <cmath>
#include <random>

#include "gifode/errors.hpp"

namespace gifode {

namespace {
constexpr int kMaxCorpusDegree = 4;
}  // namespace

bool check_mu_exact(MuKind kind, const ODE& ode, const RatY& mu) {
  return mu_residual(kind, ode, mu).is_zero();
}

VerificationReport check_zeta_numeric(const Tree& zeta, const ODE& ode, int n_samples, double tol,
                                      std::uint64_t seed, const SampleBox& box) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (n_samples < 1) throw Error(ErrorCode::InvalidArgument, "n_samples must be positive");
  Tree zx = tree_diff(zeta, TreeVar::X);
  Tree zy = tree_diff(zeta, TreeVar::Y);
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  VerificationReport rep;
  int nonzero_zy = 0;
  const int max_attempts = 20 * n_samples;
  for (int attempt = 0; attempt < max_attempts && rep.sample_count < n_samples; ++attempt) {
    double x = uniform(box.x_lo, box.x_hi), y = uniform(box.y_lo, box.y_hi);
    double f, dx, dy;
    try {
      f = eval_f(ode, x, y);
      dy = tree_eval(zy, x, y);
      dx = tree_eval(zx, x, y);
    } catch (const Error&) {
      continue;
    }
    if (!std::isfinite(f) || !std::isfinite(dx) || !std::isfinite(dy)) continue;
    if (std::abs(f) > 1e6 || std::abs(dy) > 1e6) continue;
    ++rep.sample_count;
    if (std::abs(dy) > 1e-12) ++nonzero_zy;
    rep.max_pde_residual = std::max(rep.max_pde_residual, std::abs(dx + f * dy));
  }
  if (rep.sample_count == 0) throw Error(ErrorCode::NoValidSamples, "every sample hit a pole");
  rep.passed = true;
  if (rep.max_pde_residual > tol) {
    rep.passed = false;
    rep.failures.push_back("PDE residual " + std::to_string(rep.max_pde_residual) + " exceeds tolerance");
  }
  if (10 * nonzero_zy < 9 * rep.sample_count) {
    rep.passed = false;
    rep.failures.push_back("zeta_y vanishes at too many samples (zeta does not depend on y)");
  }
  return rep;
}

VerificationReport check_trajectory(const Tree& zeta, const ODE& ode, double x0, double y0, double h,
                                    double x_end, double tol) {
  if (!(h > 0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  const double span = x_end - x0;
  const int n = std::max(1, static_cast<int>(std::llround(std::abs(span) / h)));
  const double step = span / n;
  auto f = [&](double x, double y) {
    double v;
    try {
      v = eval_f(ode, x, y);
    } catch (const Error& e) {
      throw Error(ErrorCode::PoleOnTrajectory, "f undefined at x = " + std::to_string(x));
    }
    if (!std::isfinite(v) || std::abs(v) > 1e12)
      throw Error(ErrorCode::PoleOnTrajectory, "f blows up near x = " + std::to_string(x));
    return v;
  };
  auto z = [&](double x, double y) {
    try {
      double v = tree_eval(zeta, x, y);
      if (std::isfinite(v)) return v;
    } catch (const Error&) {
    }
    throw Error(ErrorCode::PoleOnTrajectory, "zeta undefined at x = " + std::to_string(x));
  };
  VerificationReport rep;
  const double z0 = z(x0, y0);
  double x = x0, y = y0;
  for (int i = 0; i < n; ++i) {
    double k1 = f(x, y);
    double k2 = f(x + step / 2, y + step / 2 * k1);
    double k3 = f(x + step / 2, y + step / 2 * k2);
    double k4 = f(x + step, y + step * k3);
    y += step / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    x = x0 + (i + 1) * step;
    rep.trajectory_drift = std::max(rep.trajectory_drift, std::abs(z(x, y) - z0));
  }
  rep.steps = n;
  rep.passed = rep.trajectory_drift <= tol;
  if (!rep.passed) rep.failures.push_back("trajectory drift " + std::to_string(rep.trajectory_drift));
  return rep;
}

namespace {

// Slices of f = N/D along x = 3/7 and y = 5/11. The reduced ODE has
// max_degree >= the reduced degrees of both slices, so a slice above the
// bound rules the case out before the expensive bivariate reduction.
bool slices_exceed(const PolyYX& N, const PolyYX& D, int max_degree) {
  const Rat x0 = make_rat(3, 7), y0 = make_rat(5, 11);
  try {
    std::vector<Rat> n, d;
    for (const auto& c : N.coeffs()) n.push_back(c.eval(x0));
    for (const auto& c : D.coeffs()) d.push_back(c.eval(x0));
    RatX in_y = ratx_normalize(PolyX(n), PolyX(d));
    if (in_y.num().degree() > max_degree || in_y.den().degree() > max_degree) return true;
  } catch (const Error&) {
  }
  try {
    RatX in_x = N.eval_y(RatX(y0)) / D.eval_y(RatX(y0));
    if (in_x.num().degree() > max_degree || in_x.den().degree() > max_degree) return true;
  } catch (const Error&) {
  }
  return false;
}

std::optional<CorpusCase> case_from(const ZetaTemplate& t, std::uint64_t seed, int max_degree) {
  RatY zx = t.rational.dx(), zy = t.rational.dy();
  Tree zeta = tree_from(t.rational);
  for (const auto& [alpha, arg] : t.logs) {
    if (arg.is_zero()) return std::nullopt;
    RatY a(RatX(static_cast<long>(alpha)));
    zx += a * arg.dx() / arg;
    zy += a * arg.dy() / arg;
    zeta = zeta + tree_const(static_cast<long>(alpha)) * tree_ln(tree_from(arg));
  }
  if (zy.is_zero() || zx.is_zero()) return std::nullopt;
  PolyYX N = -(zx.num() * zy.den()), D = zx.den() * zy.num();
  if (max_degree >= 0 && slices_exceed(N, D, max_degree)) return std::nullopt;
  CorpusCase c;
  c.seed = seed;
  c.zeta_ref = zeta;
  c.ode = make_ode(raty_normalize(N, D));
  c.mu_ref = zy.dy() / zy;
  if (!check_mu_exact(MuKind::YY, c.ode, c.mu_ref))
    throw Error(ErrorCode::AssemblyInconsistent, "corpus reference mu has a nonzero residual");
  return c;
}

}  // namespace

std::optional<CorpusCase> corpus_case_from(const ZetaTemplate& t, std::uint64_t seed) {
  return case_from(t, seed, -1);
}

namespace {

// Degree <= 2 polynomial in x and y with small integer coefficients.
RatY random_poly(std::mt19937_64& rng, bool nonconstant) {
  static const int kMono[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  for (;;) {
    RatY acc;
    for (const auto& m : kMono) {
      if (rng() % 5 >= 2) continue;
      long c = static_cast<long>(rng() % 5) - 2;
      if (c == 0) continue;
      PolyYX term = PolyYX::monomial(RatX(PolyX::monomial(Rat(c), m[0])), m[1]);
      acc += RatY(term);
    }
    if (acc.is_zero()) continue;
    if (nonconstant && acc.num().degree() < 1 && acc.num().coeff(0).num().degree() < 1) continue;
    return acc;
  }
}

bool small_enough(const ODE& ode) {
  if (ode.np() > kMaxCorpusDegree || ode.nq() > kMaxCorpusDegree) return false;
  for (const auto* p : {&ode.P, &ode.Q})
    for (const auto& c : p->coeffs())
      for (const auto& [m, k] : c.terms())
        if (k.num().degree() > kMaxCorpusDegree) return false;
  return true;
}

}  // namespace

std::vector<CorpusCase> gen_corpus(std::uint64_t seed, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  std::vector<CorpusCase> out;
  const long max_attempts = 100L * n;
  for (long attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < n; ++attempt) {
    const std::uint64_t case_seed = seed * 1000003ULL + static_cast<std::uint64_t>(attempt);
    std::mt19937_64 rng(case_seed);
    ZetaTemplate t;
    t.rational = random_poly(rng, true);
    if (rng() % 2) t.rational /= random_poly(rng, true);
    const int nlogs = static_cast<int>(rng() % 3);
    for (int i = 0; i < nlogs; ++i) {
      static const int kAlpha[] = {-2, -1, 1, 2};
      RatY arg = random_poly(rng, true);
      if (rng() % 5 < 2) arg /= random_poly(rng, true);
      t.logs.emplace_back(kAlpha[rng() % 4], arg);
    }
    std::optional<CorpusCase> c;
    try {
      c = case_from(t, case_seed, kMaxCorpusDegree);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::AssemblyInconsistent) throw;
      continue;
    }
    if (!c || !small_enough(c->ode)) continue;
    out.push_back(std::move(*c));
  }
  if (static_cast<int>(out.size()) < n)
    throw Error(ErrorCode::CorpusExhausted, "only " + std::to_string(out.size()) + " of " + std::to_string(n) +
                                                " cases after " + std::to_string(max_attempts) + " attempts");
  return out;
}

}  // namespace gifode

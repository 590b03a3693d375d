#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gifode/determining.hpp"
#include "gifode/formula.hpp"
#include "gifode/ode.hpp"

namespace gifode {

struct VerificationReport {
  bool passed = false;
  bool exact_residual_zero = false;
  double max_pde_residual = 0;
  int sample_count = 0;
  double trajectory_drift = 0;
  int steps = 0;
  std::vector<std::string> failures;
};

// Symbolic zero test of the kind's residual.
bool check_mu_exact(MuKind kind, const ODE& ode, const RatY& mu);

struct SampleBox {
  double x_lo = -2, x_hi = 2, y_lo = -2, y_hi = 2;
};

// max |zeta_x + f zeta_y| over seeded samples in the box. Points where f or
// zeta_y is undefined or above 1e6 in magnitude are rejected. Passes when the
// maximum is within tol and zeta_y is nonzero at 90% of the samples or more.
// Throws NoValidSamples when every attempt is rejected.
VerificationReport check_zeta_numeric(const Tree& zeta, const ODE& ode, int n_samples, double tol,
                                      std::uint64_t seed, const SampleBox& box = {});

// Classic RK4 with a constant step from (x0, y0) to x_end; drift is the
// largest |zeta(x_t, y_t) - zeta(x0, y0)|. Throws PoleOnTrajectory.
VerificationReport check_trajectory(const Tree& zeta, const ODE& ode, double x0, double y0, double h,
                                    double x_end, double tol);

struct CorpusCase {
  std::uint64_t seed = 0;
  Tree zeta_ref;
  ODE ode;
  RatY mu_ref;
};

// zeta = p0/q0 + sum alpha_i ln(p_i/q_i)
struct ZetaTemplate {
  RatY rational;  // p0/q0
  std::vector<std::pair<int, RatY>> logs;
};
// nullopt when zeta_x or zeta_y vanishes identically.
std::optional<CorpusCase> corpus_case_from(const ZetaTemplate& t, std::uint64_t seed = 0);

// n seeded cases; throws CorpusExhausted after 100 n attempts.
std::vector<CorpusCase> gen_corpus(std::uint64_t seed, int n);

}  // namespace gifode

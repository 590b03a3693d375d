#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gifode/determining.hpp"
#include "gifode/jets.hpp"

namespace gifode {

/// Polynomial equations over Q in constant unknowns and parameters.
struct AlgebraicSystem {
  std::vector<AlgPoly> equations;
  std::vector<JetVar> unknowns;
  std::vector<std::string> params;  // parameter jets index into this list
};

// Collects each equation of a CONST/POLYX system in powers of x.
// Throws UnsupportedMode for FUNC systems.
AlgebraicSystem reduce_to_algebraic(const DeterminingSystem& sys);

/// num/den with den != 0 under the branch's nonvanishing conditions.
struct AlgFrac {
  AlgPoly num;
  AlgPoly den{Rat(1)};
};

struct Branch {
  std::vector<std::pair<JetVar, AlgFrac>> assignments;  // in elimination order
  std::vector<AlgPoly> constraints;   // parameter-only conditions (= 0)
  std::vector<AlgPoly> relations;     // unresolved conditions involving unknowns (= 0)
  std::vector<AlgPoly> nonvanishing;  // (!= 0)
  std::vector<JetVar> free;           // unknowns left undetermined
};

struct SolutionSet {
  std::vector<Branch> branches;
  // Some branch hit a limit; the listed branches are the ones completed.
  bool gave_up = false;
  std::string gave_up_reason;
};

struct SolveLimits {
  int max_unknowns = 12;
  int max_split_depth = 8;
  int max_total_degree = 6;
  int max_branches = 4096;
};

SolutionSet solve_algebraic(const AlgebraicSystem& asys, const SolveLimits& limits = {});
// Same elimination; parameter conditions end up in constraints, mixed
// unknown-parameter conditions in relations.
SolutionSet derive_constraints(const AlgebraicSystem& asys, const SolveLimits& limits = {});

// Re-substitutes a branch: every equation must vanish (or be divisible by
// one of the branch's own relations/constraints) and no nonvanishing
// condition may be identically zero.
bool branch_is_sound(const AlgebraicSystem& asys, const Branch& b);

std::string to_string(const AlgFrac& f, const JetNamer& namer);
std::string to_string(const Branch& b, const JetNamer& namer);

// Values for the branch's free unknowns that respect its nonvanishing
// conditions, then the resulting value of every unknown. nullopt when the
// branch carries relations/constraints or no small choice works.
std::optional<std::vector<std::pair<JetVar, Rat>>> instantiate_branch(const AlgebraicSystem& asys,
                                                                      const Branch& b);

// mu = X/Y (X/(Q*Y) for YYQ) from unknown values.
RatY instantiate_mu(const ODE& ode, const Ansatz& ansatz,
                    const std::vector<std::pair<JetVar, Rat>>& values);

struct Candidate {
  MuKind kind;
  int nx, ny;
  int n_sys = 0;
  std::string outcome;  // "solved", "no branches", "gave up: ...", ...
};

struct SearchResult {
  bool found = false;
  bool any_gave_up = false;
  MuKind kind = MuKind::YY;
  RatY mu;     // in the found kind
  RatY mu_yy;  // converted
  DeterminingSystem system;
  AlgebraicSystem algebraic;
  SolutionSet solutions;
  std::size_t branch_index = 0;
  std::vector<Candidate> candidates;
};

// Tries kinds in order and ansatz pairs smallest first; returns the first
// branch whose mu passes the exact residual check. Needs a parameter-free
// ODE and a CONST or POLYX mode.
SearchResult search(const ODE& ode, const std::vector<MuKind>& kinds, int max_nx, AnsatzMode mode,
                    const SolveLimits& limits = {});

}  // namespace gifode

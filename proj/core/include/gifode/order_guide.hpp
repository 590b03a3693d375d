#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gifode {

// Which generalized integrating factor is sought. YYQ looks for mu_yy in
// the form X/(Q*Y) with Q the denominator of f.
enum class MuKind { YY, YX, XY, XX, YYQ };

const char* to_string(MuKind k);
// Accepts yy, yx, xy, xx, yyq (case-insensitive).
std::optional<MuKind> parse_mu_kind(const std::string& s);

enum class DegreeCase { Greater, Less, Equal1, Equal0 };  // sign of N_P - N_Q against 1 (and 0)

const char* to_string(DegreeCase c);

/// One column of an order table: the condition on N_Y - N_X and the
/// affine formulas for the system size and the maximal constraint count.
struct GuideRow {
  MuKind kind;
  int np = 0, nq = 0;
  DegreeCase degree_case = DegreeCase::Greater;
  bool at_most = false;  // relation is N_Y - N_X <= bound instead of equality
  int bound = 0;         // right-hand side of the relation
  // n_sys = n_sys_base + N_X + N_Y
  int n_sys_base = 0;
  int max_cons = 0;
  // True when the table has no column for this case and the row comes from
  // the degree-balance fallback.
  bool fallback = false;
  std::string relation_text;
  std::string n_sys_text;
  std::string max_cons_text;

  int n_sys(int nx, int ny) const { return n_sys_base + nx + ny; }
};

// Throws GuideGap (with the fallback row attached to the message) for the
// uncovered XX case N_P = N_Q; guide_or_fallback returns that row instead.
GuideRow guide(MuKind kind, int np, int nq);
GuideRow guide_or_fallback(MuKind kind, int np, int nq);

// Admissible (N_X, N_Y) pairs, smallest ansatz first.
std::vector<std::pair<int, int>> admissible_pairs(MuKind kind, int np, int nq, int max_nx);

}  // namespace gifode

#include "gifode/order_guide.hpp"

#include <algorithm>
#include <cctype>

#include "gifode/errors.hpp"

namespace gifode {

const char* to_string(MuKind k) {
  switch (k) {
    case MuKind::YY: return "yy";
    case MuKind::YX: return "yx";
    case MuKind::XY: return "xy";
    case MuKind::XX: return "xx";
    case MuKind::YYQ: return "yyq";
  }
  return "?";
}

std::optional<MuKind> parse_mu_kind(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  for (MuKind k : {MuKind::YY, MuKind::YX, MuKind::XY, MuKind::XX, MuKind::YYQ})
    if (l == to_string(k)) return k;
  return std::nullopt;
}

const char* to_string(DegreeCase c) {
  switch (c) {
    case DegreeCase::Greater: return "N_P-N_Q>1";
    case DegreeCase::Less: return "N_P-N_Q<1";
    case DegreeCase::Equal1: return "N_P-N_Q=1";
    case DegreeCase::Equal0: return "N_P-N_Q=0";
  }
  return "?";
}

namespace {

GuideRow row(MuKind kind, int np, int nq, DegreeCase c, bool at_most, int bound, int base,
             int max_cons, std::string rel, std::string nsys, std::string mc) {
  GuideRow r;
  r.kind = kind;
  r.np = np;
  r.nq = nq;
  r.degree_case = c;
  r.at_most = at_most;
  r.bound = bound;
  r.n_sys_base = base;
  r.max_cons = max_cons;
  r.relation_text = std::string("N_Y-N_X ") + (at_most ? "<= " : "= ") + rel;
  r.n_sys_text = std::move(nsys);
  r.max_cons_text = std::move(mc);
  return r;
}

// XX with N_P = N_Q has no table column. The cleared XX equation has three
// term groups whose y-degrees (minus N_X + N_Y) are 2N_P+N_Q from the
// (mu/f)_x part, 3N_P-1 from mu_y and 2N_P+N_Q+d from the (1/f)_xx source
// with d = N_Y - N_X. A balance needs the top degree attained twice.
GuideRow xx_fallback(int np, int nq) {
  const int a = 2 * np + nq, b = 3 * np - 1;
  for (int d = -(a + b + 2); d <= a + b + 2; ++d) {
    int c = a + d;
    int top = std::max({a, b, c});
    int hits = (a == top) + (b == top) + (c == top);
    if (hits < 2) continue;
    GuideRow r = row(MuKind::XX, np, nq, DegreeCase::Equal0, false, d, top + 1, top,
                     std::to_string(d), "fallback " + std::to_string(top + 1) + "+N_X+N_Y",
                     "fallback " + std::to_string(top));
    r.fallback = true;
    return r;
  }
  throw Error(ErrorCode::GuideGap, "no degree balance for XX with N_P = N_Q");
}

}  // namespace

GuideRow guide_or_fallback(MuKind kind, int np, int nq) {
  if (np < 0 || nq < 0) throw Error(ErrorCode::InvalidArgument, "degrees must be nonnegative");
  const int d = np - nq;
  const auto G = DegreeCase::Greater, L = DegreeCase::Less, E = DegreeCase::Equal1;
  switch (kind) {
    case MuKind::YY:
      if (d > 1) return row(kind, np, nq, G, false, 1, np + 2 * nq, np + 2 * nq - 1, "1",
                            "N_P+2N_Q+N_X+N_Y", "N_P+2N_Q-1");
      if (d < 1) return row(kind, np, nq, L, false, nq - np + 2, 3 * nq + 1, 3 * nq, "N_Q-N_P+2",
                            "3N_Q+N_X+N_Y+1", "3N_Q");
      return row(kind, np, nq, E, true, 1, np + 2 * nq, 3 * nq, "1", "N_P+2N_Q+N_X+N_Y", "3N_Q");
    case MuKind::YX:
      if (d > 1) return row(kind, np, nq, G, false, np - nq, 3 * np + nq, 3 * np + nq - 1,
                            "N_P-N_Q", "3N_P+N_Q+N_X+N_Y", "3N_P+N_Q-1");
      if (d < 1) return row(kind, np, nq, L, false, 1, 2 * np + 2 * nq + 1, 2 * np + 2 * nq, "1",
                            "2N_P+2N_Q+N_X+N_Y+1", "2N_P+2N_Q");
      return row(kind, np, nq, E, true, 1, 2 * np + 2 * nq + 1, 4 * nq + 2, "1",
                 "2N_P+2N_Q+N_X+N_Y+1", "4N_Q+2");
    case MuKind::XY:
      if (d > 1) return row(kind, np, nq, G, false, 0, 2 * np + 2 * nq, 2 * np + 2 * nq - 1, "0",
                            "2N_P+2N_Q+N_X+N_Y", "2N_P+2N_Q-1");
      if (d < 1) return row(kind, np, nq, L, false, nq - np + 1, np + 3 * nq + 1, np + 3 * nq,
                            "N_Q-N_P+1", "N_P+3N_Q+N_X+N_Y+1", "N_P+3N_Q");
      return row(kind, np, nq, E, true, 0, 2 * np + 2 * nq, 4 * nq + 1, "0",
                 "2N_P+2N_Q+N_X+N_Y", "4N_Q+1");
    case MuKind::XX:
      if (d > 1) return row(kind, np, nq, G, false, np - nq - 1, 3 * np, 3 * np - 1, "N_P-N_Q-1",
                            "3N_P+N_X+N_Y", "3N_P-1");
      if (d < 0) return row(kind, np, nq, L, false, 0, 2 * np + nq + 1, 2 * np + nq, "0",
                            "2N_P+N_Q+N_X+N_Y+1", "2N_P+N_Q");
      if (d == 1) return row(kind, np, nq, E, true, 0, 3 * np, 3 * nq + 2, "0", "3N_P+N_X+N_Y",
                             "3N_Q+2");
      return xx_fallback(np, nq);
    case MuKind::YYQ:
      if (d > 1) return row(kind, np, nq, G, false, 1 - nq, np + nq, np + nq - 1, "1-N_Q",
                            "N_P+N_Q+N_X+N_Y", "N_P+N_Q-1");
      if (d < 1) return row(kind, np, nq, L, false, 2 - np, 2 * nq + 1, 2 * nq, "2-N_P",
                            "2N_Q+N_X+N_Y+1", "2N_Q");
      return row(kind, np, nq, E, true, 2 - np, np + nq, 2 * nq, "2-N_P", "N_P+N_Q+N_X+N_Y",
                 "2N_Q");
  }
  throw Error(ErrorCode::InvalidArgument, "unknown factor kind");
}

GuideRow guide(MuKind kind, int np, int nq) {
  GuideRow r = guide_or_fallback(kind, np, nq);
  if (r.fallback)
    throw Error(ErrorCode::GuideGap, "the XX table has no column for N_P = N_Q; degree balance suggests " +
                                         r.relation_text + ", n_sys = " + r.n_sys_text);
  return r;
}

std::vector<std::pair<int, int>> admissible_pairs(MuKind kind, int np, int nq, int max_nx) {
  GuideRow r = guide_or_fallback(kind, np, nq);
  std::vector<std::pair<int, int>> out;
  for (int nx = 0; nx <= max_nx; ++nx) {
    if (r.at_most) {
      for (int ny = 0; ny <= nx + r.bound; ++ny) out.emplace_back(nx, ny);
    } else if (nx + r.bound >= 0) {
      out.emplace_back(nx, nx + r.bound);
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int sa = a.first + a.second, sb = b.first + b.second;
    return sa != sb ? sa < sb : a.first < b.first;
  });
  return out;
}

}  // namespace gifode

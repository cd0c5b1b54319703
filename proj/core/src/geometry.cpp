#include "qdslab/geometry.hpp"

#include <algorithm>
#include <set>

namespace qdslab {

namespace {

struct Budget {
  long long left;
  void spend(long long cost = 1) {
    left -= cost;
    if (left < 0) throw SearchCapExceeded("geometry search budget exhausted");
  }
};

// Pairwise meet table: meets[l1][l2] = common point or -1.
std::vector<std::vector<int>> meet_table(const IncidenceStructure& s,
                                         Budget& budget) {
  const int nl = s.num_lines();
  std::vector<std::vector<int>> meets(nl, std::vector<int>(nl, -1));
  for (int l1 = 0; l1 < nl; ++l1)
    for (int l2 = l1 + 1; l2 < nl; ++l2) {
      budget.spend();
      auto m = meet(s, l1, l2);
      meets[l1][l2] = meets[l2][l1] = m ? *m : -1;
    }
  return meets;
}

}  // namespace

VeblenReport veblen_check(const IncidenceStructure& s, long long budget_steps) {
  if (!is_pls(s)) throw NotPls("veblen check requires a partial linear space");
  Budget budget{budget_steps};
  std::vector<std::vector<int>> meets = meet_table(s, budget);
  VeblenReport report;
  for (int a = 0; a < s.num_points(); ++a) {
    const auto& pen = s.pencil(a);
    for (std::size_t i = 0; i < pen.size(); ++i)
      for (std::size_t j = i + 1; j < pen.size(); ++j) {
        int b1 = pen[i], b2 = pen[j];
        std::vector<int> transversals;
        for (int g = 0; g < s.num_lines(); ++g) {
          budget.spend();
          if (g == b1 || g == b2 || s.incident(a, g)) continue;
          if (meets[g][b1] >= 0 && meets[g][b2] >= 0) transversals.push_back(g);
        }
        for (std::size_t x = 0; x < transversals.size(); ++x)
          for (std::size_t y = x + 1; y < transversals.size(); ++y) {
            budget.spend();
            if (meets[transversals[x]][transversals[y]] < 0) {
              report.holds = false;
              report.counterexample =
                  std::array<int, 5>{a, b1, b2, transversals[x], transversals[y]};
              return report;
            }
          }
      }
  }
  return report;
}

DesarguesReport desargues_check(const IncidenceStructure& s,
                                long long budget_steps) {
  if (!is_pls(s)) throw NotPls("desargues check requires a partial linear space");
  Budget budget{budget_steps};
  std::vector<std::vector<int>> meets = meet_table(s, budget);
  auto join_of = [&](int p, int q) -> int {
    for (int l : s.pencil(p))
      if (s.incident(q, l)) return l;
    return -1;
  };
  // Vertices, joined sides and meet points of a candidate triangle pair;
  // fails fast when the configuration degenerates.
  DesarguesReport report;
  for (int o = 0; o < s.num_points(); ++o) {
    const auto& pen = s.pencil(o);
    const int deg = static_cast<int>(pen.size());
    for (int i = 0; i < deg; ++i)
      for (int j = i + 1; j < deg; ++j)
        for (int k = j + 1; k < deg; ++k) {
          std::array<int, 3> ls{pen[i], pen[j], pen[k]};
          std::array<std::vector<int>, 3> carriers;
          for (int t = 0; t < 3; ++t)
            for (int p : s.line(ls[t]))
              if (p != o) carriers[t].push_back(p);
          for (int p1 : carriers[0])
            for (int p2 : carriers[1])
              for (int p3 : carriers[2]) {
                budget.spend();
                int s12 = join_of(p1, p2);
                int s23 = join_of(p2, p3);
                int s31 = join_of(p3, p1);
                if (s12 < 0 || s23 < 0 || s31 < 0) continue;
                if (s12 == s23 || s23 == s31 || s31 == s12) continue;
                for (int q1 : carriers[0])
                  for (int q2 : carriers[1])
                    for (int q3 : carriers[2]) {
                      budget.spend();
                      if (q1 == p1 && q2 == p2 && q3 == p3) continue;
                      int t12 = join_of(q1, q2);
                      int t23 = join_of(q2, q3);
                      int t31 = join_of(q3, q1);
                      if (t12 < 0 || t23 < 0 || t31 < 0) continue;
                      if (t12 == t23 || t23 == t31 || t31 == t12) continue;
                      if (t12 == s12 || t23 == s23 || t31 == s31) continue;
                      int m12 = meets[s12][t12];
                      int m23 = meets[s23][t23];
                      int m31 = meets[s31][t31];
                      if (m12 < 0 || m23 < 0 || m31 < 0) continue;
                      bool axis = false;
                      for (int l : s.pencil(m12)) {
                        if (s.incident(m23, l) && s.incident(m31, l)) {
                          axis = true;
                          break;
                        }
                      }
                      if (!axis) {
                        report.holds = false;
                        report.counterexample = DesarguesCounterexample{
                            o, ls, {p1, p2, p3}, {q1, q2, q3}, {m12, m23, m31}};
                        return report;
                      }
                    }
              }
        }
  }
  return report;
}

namespace {

// Backtracking embedding of a reference configuration into s.
// Reference points are mapped in an order that closes lines early.
struct EmbedSearch {
  const IncidenceStructure& pattern;
  const IncidenceStructure& target;
  Budget& budget;
  std::vector<int> order;        // pattern points in assignment order
  std::vector<int> map;          // pattern point -> target point or -1
  std::vector<int> line_map;     // pattern line -> target line or -1
  std::vector<bool> point_used, line_used;

  EmbedSearch(const IncidenceStructure& p, const IncidenceStructure& t,
              Budget& b)
      : pattern(p), target(t), budget(b) {
    map.assign(pattern.num_points(), -1);
    line_map.assign(pattern.num_lines(), -1);
    point_used.assign(target.num_points(), false);
    line_used.assign(target.num_lines(), false);
    std::vector<bool> placed(pattern.num_points(), false);
    for (int step = 0; step < pattern.num_points(); ++step) {
      int best = -1, best_score = -1;
      for (int p = 0; p < pattern.num_points(); ++p) {
        if (placed[p]) continue;
        int score = 0;
        for (int l : pattern.pencil(p)) {
          int have = 0;
          for (int q : pattern.line(l))
            if (placed[q]) ++have;
          score += have;
        }
        if (score > best_score) {
          best_score = score;
          best = p;
        }
      }
      placed[best] = true;
      order.push_back(best);
    }
  }

  bool feasible(int pat_point, int candidate) {
    for (int l : pattern.pencil(pat_point)) {
      std::vector<int> mapped;
      for (int q : pattern.line(l))
        if (q != pat_point && map[q] >= 0) mapped.push_back(map[q]);
      if (mapped.empty()) continue;
      // All mapped points of the pattern line plus the candidate must
      // share one target line, distinct per pattern line.
      int host = -1;
      for (int tl : target.pencil(candidate)) {
        bool all = true;
        for (int m : mapped)
          if (!target.incident(m, tl)) {
            all = false;
            break;
          }
        if (all) {
          host = tl;
          break;
        }
      }
      if (host < 0) return false;
      if (line_map[l] >= 0 && line_map[l] != host) return false;
      if (line_map[l] < 0 && line_used[host]) return false;
    }
    return true;
  }

  bool place(std::size_t step) {
    budget.spend();
    if (step == order.size()) return finalize();
    int p = order[step];
    for (int cand = 0; cand < target.num_points(); ++cand) {
      if (point_used[cand]) continue;
      if (!feasible(p, cand)) continue;
      map[p] = cand;
      point_used[cand] = true;
      std::vector<std::pair<int, int>> line_updates;
      bool ok = true;
      for (int l : pattern.pencil(p)) {
        std::vector<int> mapped;
        for (int q : pattern.line(l))
          if (map[q] >= 0) mapped.push_back(map[q]);
        if (static_cast<int>(mapped.size()) < 2 || line_map[l] >= 0) continue;
        int host = -1;
        for (int tl : target.pencil(cand)) {
          bool all = true;
          for (int m : mapped)
            if (!target.incident(m, tl)) {
              all = false;
              break;
            }
          if (all) {
            host = tl;
            break;
          }
        }
        if (host < 0 || line_used[host]) {
          ok = false;
          break;
        }
        line_map[l] = host;
        line_used[host] = true;
        line_updates.push_back({l, host});
      }
      if (ok && place(step + 1)) return true;
      for (auto [l, host] : line_updates) {
        line_map[l] = -1;
        line_used[host] = false;
      }
      map[p] = -1;
      point_used[cand] = false;
    }
    return false;
  }

  bool finalize() {
    for (int l = 0; l < pattern.num_lines(); ++l) {
      if (line_map[l] < 0) return false;
      for (int q : pattern.line(l))
        if (!target.incident(map[q], line_map[l])) return false;
    }
    return true;
  }
};

}  // namespace

std::optional<PappusEmbedding> pappus_embed(const IncidenceStructure& s,
                                            long long budget_steps) {
  if (!is_pls(s)) throw NotPls("embedding search requires a partial linear space");
  Budget budget{budget_steps};
  QDSet pattern_set = canonical_set({3, 3});
  IncidenceStructure pattern =
      IncidenceStructure::build(pattern_set.group(), pattern_set);

  // Witness fast path: the explicit incidence table attached to a
  // quadruple d1..d4 with d1^2 = d2^-1, d3^2 = d4^-1.
  if (s.has_provenance() && s.provenance().group.is_abelian()) {
    const Group& g = s.provenance().group;
    const QDSet& d = s.provenance().qds;
    if (auto w = pappus_condition(d)) {
      auto inv = [&](int x) { return g.inverse(x); };
      auto mul = [&](int x, int y) { return g.op(x, y); };
      const int e = g.identity();
      std::array<int, 9> pts = {
          e,
          w->d1,
          w->d3,
          inv(w->d2),
          inv(w->d4),
          mul(inv(w->d2), inv(w->d4)),
          mul(w->d1, w->d3),
          mul(inv(w->d2), w->d3),
          mul(inv(w->d4), w->d1)};
      std::array<int, 9> line_labels = {
          e,
          mul(inv(w->d2), inv(w->d4)),
          mul(w->d1, w->d3),
          inv(w->d2),
          inv(w->d4),
          w->d1,
          mul(w->d1, inv(w->d4)),
          w->d3,
          mul(w->d3, inv(w->d2))};
      // Row r of the table is the pattern line with the same position in
      // the reference ordering below.
      static const int kPatternPoints[9][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 2},
                                               {2, 1}, {1, 1}, {2, 2}, {0, 2},
                                               {2, 0}};
      static const int kPatternLines[9][2] = {{0, 0}, {1, 1}, {2, 2}, {0, 2},
                                              {2, 0}, {1, 2}, {1, 0}, {2, 1},
                                              {0, 1}};
      const Group& pg = pattern_set.group();
      PappusEmbedding emb;
      bool valid = true;
      std::set<int> seen_pts, seen_lines;
      for (int i = 0; i < 9 && valid; ++i) {
        int pat_pt = pg.from_residues({kPatternPoints[i][0], kPatternPoints[i][1]});
        emb.points[pat_pt] = pts[i];
        valid = seen_pts.insert(pts[i]).second;
      }
      for (int i = 0; i < 9 && valid; ++i) {
        int pat_line =
            pattern.line_of_label(pg.from_residues({kPatternLines[i][0], kPatternLines[i][1]}));
        int host = s.line_of_label(line_labels[i]);
        emb.lines[pat_line] = host;
        valid = seen_lines.insert(host).second;
      }
      if (valid) {
        for (int l = 0; l < 9 && valid; ++l)
          for (int q : pattern.line(l))
            if (!s.incident(emb.points[q], emb.lines[l])) {
              valid = false;
              break;
            }
      }
      if (valid) return emb;
    }
  }

  EmbedSearch search(pattern, s, budget);
  if (!search.place(0)) return std::nullopt;
  PappusEmbedding emb;
  for (int p = 0; p < 9; ++p) emb.points[p] = search.map[p];
  for (int l = 0; l < 9; ++l) emb.lines[l] = search.line_map[l];
  return emb;
}

CompletionReport unique_completion_check(const IncidenceStructure& s) {
  CompletionReport report;
  for (int o = 0; o < s.num_points(); ++o) {
    const auto& pen = s.pencil(o);
    for (int l1 : pen)
      for (int l2 : pen) {
        if (l1 == l2) continue;
        int zero_here = 0;
        for (int p : s.line(l1)) {
          if (p == o) continue;
          int count = 0;
          for (int q : s.line(l2)) {
            if (q == o) continue;
            if (collinear(s, p, q)) ++count;
          }
          if (count == 0) {
            ++report.zero_triples;
            ++zero_here;
          } else if (count == 1) {
            ++report.one_triples;
          } else {
            ++report.multi_triples;
          }
        }
        if (zero_here > 1) report.per_pair_at_most_one_zero = false;
      }
  }
  return report;
}

PowerLineProfile power_line_profile(const IncidenceStructure& s) {
  const Provenance& prov = s.provenance();
  auto decomp = power_decomposition(prov.group, prov.qds.elements());
  if (!decomp) throw BadProvenance("structure is not a power of one base set");
  const Group& g = prov.group;
  PowerLineProfile profile;
  profile.copies = decomp->copies;
  profile.base_profile = diff_profile(decomp->base, decomp->base_elements);
  const auto& s4 = profile.base_profile.size4_admissible;
  const auto& s3 = profile.base_profile.size3_admissible;
  auto in4 = [&](int r) { return std::binary_search(s4.begin(), s4.end(), r); };
  auto in3 = [&](int r) { return std::binary_search(s3.begin(), s3.end(), r); };

  for (int a : prov.qds.elements())
    for (int b : prov.qds.elements())
      if (element_support(g, g.op(a, g.inverse(b))).size() > 2)
        profile.support_bound = false;

  const int theta = g.identity();
  std::vector<bool> in_nbhd(s.num_points(), false);
  for (int p = 0; p < s.num_points(); ++p) in_nbhd[p] = collinear(s, theta, p);

  for (int l = 0; l < s.num_lines(); ++l) {
    int label = s.line_label(l);
    std::vector<int> supp = element_support(g, label);
    int local = 0;
    for (int p : s.line(l))
      if (in_nbhd[p]) ++local;
    if (supp.size() == 2) {
      std::vector<int> res = g.residues(label);
      int r1 = res[supp[0]], r2 = res[supp[1]];
      bool predicted4 = in4(r1) && in4(r2);
      bool predicted3 = (in4(r1) && in3(r2)) || (in3(r1) && in4(r2));
      if ((local == 4) != predicted4) profile.size4_match = false;
      if ((local == 3) != predicted3) profile.size3_match = false;
      if (local == 4) {
        ++profile.size4_lines;
        ++profile.size4_per_coordinate_pair[{supp[0], supp[1]}];
      }
      if (local == 3) ++profile.size3_lines;
    }
    if (local > 0 && supp.size() > 3) profile.triple_support_rule = false;
    if (local > 0 && supp.size() == 3 && local != 2)
      profile.triple_support_rule = false;
  }
  return profile;
}

}  // namespace qdslab

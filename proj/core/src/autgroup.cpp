#include "qdslab/autgroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qdslab {

namespace {

struct Budget {
  long long left;
  void spend(long long cost = 1) {
    left -= cost;
    if (left < 0) throw SearchCapExceeded("automorphism search budget exhausted");
  }
};

// Bipartite incidence graph: vertices 0..np-1 are points,
// np..np+nl-1 are lines.
struct Levi {
  int np = 0, nl = 0, nv = 0, words = 0;
  std::vector<std::vector<int>> adj;
  std::vector<std::uint64_t> bits;
  long long edges = 0;

  bool edge(int u, int v) const {
    return (bits[static_cast<std::size_t>(u) * words + (v >> 6)] >> (v & 63)) & 1;
  }
};

Levi levi_of(const IncidenceStructure& s) {
  Levi g;
  g.np = s.num_points();
  g.nl = s.num_lines();
  g.nv = g.np + g.nl;
  g.words = (g.nv + 63) / 64;
  g.adj.resize(g.nv);
  g.bits.assign(static_cast<std::size_t>(g.nv) * g.words, 0);
  auto link = [&](int u, int v) {
    g.adj[u].push_back(v);
    g.bits[static_cast<std::size_t>(u) * g.words + (v >> 6)] |= 1ull << (v & 63);
  };
  for (int l = 0; l < g.nl; ++l)
    for (int p : s.line(l)) {
      link(p, g.np + l);
      link(g.np + l, p);
      ++g.edges;
    }
  return g;
}

void require_distinct_lines(const IncidenceStructure& s) {
  std::set<std::vector<int>> seen;
  for (int l = 0; l < s.num_lines(); ++l)
    if (!seen.insert(s.line(l)).second)
      throw Error("automorphism engine requires distinct lines");
}

// One lockstep colour refinement of two graphs with a shared signature
// dictionary. Returns false when the colour histograms diverge.
bool refine_lockstep(const Levi& ga, std::vector<int>& ca, const Levi& gb,
                     std::vector<int>& cb, Budget& budget, int& ncolors) {
  using Sig = std::pair<int, std::vector<int>>;
  for (;;) {
    budget.spend(ga.nv + gb.nv + ga.edges + gb.edges);
    std::vector<Sig> siga(ga.nv), sigb(gb.nv);
    for (int v = 0; v < ga.nv; ++v) {
      std::vector<int> n;
      n.reserve(ga.adj[v].size());
      for (int w : ga.adj[v]) n.push_back(ca[w]);
      std::sort(n.begin(), n.end());
      siga[v] = {ca[v], std::move(n)};
    }
    for (int v = 0; v < gb.nv; ++v) {
      std::vector<int> n;
      n.reserve(gb.adj[v].size());
      for (int w : gb.adj[v]) n.push_back(cb[w]);
      std::sort(n.begin(), n.end());
      sigb[v] = {cb[v], std::move(n)};
    }
    std::map<Sig, int> dict;
    for (const auto& sg : siga) dict.emplace(sg, 0);
    for (const auto& sg : sigb) dict.emplace(sg, 0);
    int next = 0;
    for (auto& [sig, id] : dict) id = next++;
    std::vector<int> counta(next, 0), countb(next, 0);
    int old = ncolors;
    for (int v = 0; v < ga.nv; ++v) {
      ca[v] = dict[siga[v]];
      ++counta[ca[v]];
    }
    for (int v = 0; v < gb.nv; ++v) {
      cb[v] = dict[sigb[v]];
      ++countb[cb[v]];
    }
    if (counta != countb) return false;
    ncolors = next;
    if (ncolors == old) return true;
    if (ncolors == ga.nv) return true;
  }
}

// Individualize-refine backtracking search for a colour-consistent
// vertex bijection ga -> gb extending the given prefix.
struct MapSearch {
  const Levi& ga;
  const Levi& gb;
  Budget& budget;
  std::vector<int> base_ca, base_cb;

  MapSearch(const Levi& a, const Levi& b, Budget& bud,
            const std::vector<std::pair<int, int>>& prefix)
      : ga(a), gb(b), budget(bud) {
    base_ca.assign(ga.nv, 0);
    base_cb.assign(gb.nv, 0);
    for (int v = ga.np; v < ga.nv; ++v) base_ca[v] = 1;
    for (int v = gb.np; v < gb.nv; ++v) base_cb[v] = 1;
    int next = 2;
    for (auto [v, u] : prefix) {
      base_ca[v] = next;
      base_cb[u] = next;
      ++next;
    }
  }

  std::optional<std::vector<int>> run() {
    std::vector<int> ca = base_ca, cb = base_cb;
    std::optional<std::vector<int>> out;
    rec(std::move(ca), std::move(cb), out);
    return out;
  }

 private:
  bool rec(std::vector<int> ca, std::vector<int> cb,
           std::optional<std::vector<int>>& out) {
    budget.spend();
    int ncolors = 0;
    if (!refine_lockstep(ga, ca, gb, cb, budget, ncolors)) return false;
    if (ncolors == ga.nv) {
      std::vector<int> pos(ga.nv);
      for (int v = 0; v < gb.nv; ++v) pos[cb[v]] = v;
      std::vector<int> map(ga.nv);
      for (int v = 0; v < ga.nv; ++v) map[v] = pos[ca[v]];
      for (int v = 0; v < ga.nv; ++v)
        for (int w : ga.adj[v])
          if (!gb.edge(map[v], map[w])) return false;
      out = std::move(map);
      return true;
    }
    // Branch on the smallest non-singleton colour class.
    std::vector<int> size(ncolors, 0);
    for (int v = 0; v < ga.nv; ++v) ++size[ca[v]];
    int cell = -1;
    for (int c = 0; c < ncolors; ++c)
      if (size[c] >= 2 && (cell < 0 || size[c] < size[cell])) cell = c;
    int v = -1;
    for (int x = 0; x < ga.nv; ++x)
      if (ca[x] == cell) {
        v = x;
        break;
      }
    for (int u = 0; u < gb.nv; ++u) {
      if (cb[u] != cell) continue;
      std::vector<int> ca2 = ca, cb2 = cb;
      ca2[v] = ncolors;
      cb2[u] = ncolors;
      if (rec(std::move(ca2), std::move(cb2), out)) return true;
    }
    return false;
  }
};

AutPair pair_from_vertex_map(const IncidenceStructure& s,
                             const std::vector<int>& map) {
  const int np = s.num_points();
  AutPair p;
  p.point_perm.resize(np);
  p.line_perm.resize(s.num_lines());
  for (int v = 0; v < np; ++v) p.point_perm[v] = map[v];
  for (int l = 0; l < s.num_lines(); ++l) p.line_perm[l] = map[np + l] - np;
  return p;
}

std::vector<int> orbit_of(int start, const std::vector<AutPair>& gens) {
  std::vector<int> orbit{start};
  std::set<int> seen{start};
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (const AutPair& g : gens) {
      int im = g.point_perm[orbit[i]];
      if (seen.insert(im).second) orbit.push_back(im);
    }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

PermGroup chain(const IncidenceStructure& s,
                std::vector<std::pair<int, int>> prefix, SearchCaps caps) {
  require_distinct_lines(s);
  Levi g = levi_of(s);
  Budget budget{caps.max_steps};
  PermGroup out;
  std::vector<AutPair> all_gens;
  for (int p = 0; p < s.num_points(); ++p) {
    if (std::any_of(prefix.begin(), prefix.end(),
                    [&](auto pr) { return pr.first == p; }))
      continue;
    // Refine once under the current prefix to find the candidate cell.
    MapSearch probe(g, g, budget, prefix);
    std::vector<int> ca = probe.base_ca, cb = probe.base_cb;
    int ncolors = 0;
    refine_lockstep(g, ca, g, cb, budget, ncolors);
    if (ncolors == g.nv) break;  // prefix stabilizer is trivial
    std::vector<int> cell;
    for (int v = 0; v < s.num_points(); ++v)
      if (ca[v] == ca[p]) cell.push_back(v);
    if (cell.size() > 1) {
      std::vector<AutPair> level_gens;
      std::set<int> orbit{p};
      for (int c : cell) {
        if (orbit.count(c)) continue;
        auto ext = prefix;
        ext.emplace_back(p, c);
        MapSearch search(g, g, budget, ext);
        if (auto map = search.run()) {
          AutPair found = pair_from_vertex_map(s, *map);
          level_gens.push_back(found);
          all_gens.push_back(found);
          std::vector<int> grown = orbit_of(p, level_gens);
          orbit = std::set<int>(grown.begin(), grown.end());
        }
      }
      out.order *= orbit.size();
    }
    prefix.emplace_back(p, p);
  }
  std::sort(all_gens.begin(), all_gens.end());
  all_gens.erase(std::unique(all_gens.begin(), all_gens.end()), all_gens.end());
  out.generators = std::move(all_gens);

  std::vector<bool> seen(s.num_points(), false);
  for (int p = 0; p < s.num_points(); ++p) {
    if (seen[p]) continue;
    std::vector<int> orbit = orbit_of(p, out.generators);
    for (int q : orbit) seen[q] = true;
    out.point_orbits.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace

AutPair identity_pair(const IncidenceStructure& s) {
  AutPair p;
  p.point_perm.resize(s.num_points());
  p.line_perm.resize(s.num_lines());
  for (int i = 0; i < s.num_points(); ++i) p.point_perm[i] = i;
  for (int i = 0; i < s.num_lines(); ++i) p.line_perm[i] = i;
  return p;
}

AutPair compose(const AutPair& first, const AutPair& then) {
  AutPair out;
  out.point_perm.resize(first.point_perm.size());
  out.line_perm.resize(first.line_perm.size());
  for (std::size_t i = 0; i < first.point_perm.size(); ++i)
    out.point_perm[i] = then.point_perm[first.point_perm[i]];
  for (std::size_t i = 0; i < first.line_perm.size(); ++i)
    out.line_perm[i] = then.line_perm[first.line_perm[i]];
  return out;
}

AutPair inverse_pair(const AutPair& p) {
  AutPair out;
  out.point_perm.resize(p.point_perm.size());
  out.line_perm.resize(p.line_perm.size());
  for (std::size_t i = 0; i < p.point_perm.size(); ++i)
    out.point_perm[p.point_perm[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < p.line_perm.size(); ++i)
    out.line_perm[p.line_perm[i]] = static_cast<int>(i);
  return out;
}

bool is_automorphism(const IncidenceStructure& s, const AutPair& p) {
  if (static_cast<int>(p.point_perm.size()) != s.num_points()) return false;
  if (static_cast<int>(p.line_perm.size()) != s.num_lines()) return false;
  std::vector<bool> seen_p(s.num_points(), false), seen_l(s.num_lines(), false);
  for (int v : p.point_perm) {
    if (v < 0 || v >= s.num_points() || seen_p[v]) return false;
    seen_p[v] = true;
  }
  for (int l : p.line_perm) {
    if (l < 0 || l >= s.num_lines() || seen_l[l]) return false;
    seen_l[l] = true;
  }
  for (int l = 0; l < s.num_lines(); ++l) {
    std::vector<int> image;
    image.reserve(s.line(l).size());
    for (int q : s.line(l)) image.push_back(p.point_perm[q]);
    std::sort(image.begin(), image.end());
    if (image != s.line(p.line_perm[l])) return false;
  }
  return true;
}

std::optional<AutPair> pair_from_point_perm(const IncidenceStructure& s,
                                            const std::vector<int>& point_perm) {
  if (static_cast<int>(point_perm.size()) != s.num_points()) return std::nullopt;
  std::map<std::vector<int>, int> line_index;
  for (int l = 0; l < s.num_lines(); ++l) line_index[s.line(l)] = l;
  AutPair p;
  p.point_perm = point_perm;
  p.line_perm.resize(s.num_lines());
  for (int l = 0; l < s.num_lines(); ++l) {
    std::vector<int> image;
    image.reserve(s.line(l).size());
    for (int q : s.line(l)) image.push_back(point_perm[q]);
    std::sort(image.begin(), image.end());
    auto it = line_index.find(image);
    if (it == line_index.end()) return std::nullopt;
    p.line_perm[l] = it->second;
  }
  return p;
}

PermGroup automorphism_group(const IncidenceStructure& s, SearchCaps caps) {
  return chain(s, {}, caps);
}

PermGroup stabilizer(const IncidenceStructure& s, int point, SearchCaps caps) {
  if (point < 0 || point >= s.num_points())
    throw ElementOutOfRange("stabilizer point out of range");
  return chain(s, {{point, point}}, caps);
}

std::vector<AutPair> enumerate_group(const IncidenceStructure& s,
                                     const PermGroup& group, std::uint64_t cap) {
  std::set<std::vector<int>> seen;
  std::vector<AutPair> elements{identity_pair(s)};
  seen.insert(elements[0].point_perm);
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (const AutPair& g : group.generators) {
      AutPair next = compose(elements[i], g);
      if (seen.insert(next.point_perm).second) {
        if (seen.size() > cap)
          throw OrderCapExceeded("group enumeration exceeds cap");
        elements.push_back(std::move(next));
      }
    }
  std::sort(elements.begin(), elements.end());
  return elements;
}

std::optional<AutPair> isomorphism(const IncidenceStructure& a,
                                   const IncidenceStructure& b,
                                   SearchCaps caps) {
  if (a.num_points() != b.num_points() || a.num_lines() != b.num_lines())
    return std::nullopt;
  require_distinct_lines(a);
  require_distinct_lines(b);
  Levi ga = levi_of(a), gb = levi_of(b);
  if (ga.edges != gb.edges) return std::nullopt;
  Budget budget{caps.max_steps};
  MapSearch search(ga, gb, budget, {});
  auto map = search.run();
  if (!map) return std::nullopt;
  return pair_from_vertex_map(a, *map);
}

std::vector<AutPair> translations(const IncidenceStructure& s) {
  const Provenance& prov = s.provenance();
  const Group& g = prov.group;
  std::vector<AutPair> out;
  out.reserve(g.order());
  for (int t = 0; t < g.order(); ++t) {
    AutPair p;
    p.point_perm.resize(s.num_points());
    p.line_perm.resize(s.num_lines());
    for (int a = 0; a < g.order(); ++a) p.point_perm[a] = g.op(t, a);
    for (int l = 0; l < s.num_lines(); ++l)
      p.line_perm[l] = s.line_of_label(g.op(t, s.line_label(l)));
    if (!is_automorphism(s, p)) throw Error("translation failed incidence check");
    out.push_back(std::move(p));
  }
  return out;
}

std::optional<LiftedAut> lift_group_automorphism(const IncidenceStructure& s,
                                                 const std::vector<int>& f) {
  const Provenance& prov = s.provenance();
  const Group& g = prov.group;
  if (static_cast<int>(f.size()) != g.order())
    throw NotGroupAutomorphism("image table has wrong size");
  std::vector<bool> seen(g.order(), false);
  for (int v : f) {
    if (v < 0 || v >= g.order() || seen[v])
      throw NotGroupAutomorphism("image table is not a bijection");
    seen[v] = true;
  }
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (f[g.op(a, b)] != g.op(f[a], f[b]))
        throw NotGroupAutomorphism("map does not respect the group operation");

  std::vector<int> image;
  for (int d : prov.qds.elements()) image.push_back(f[d]);
  std::sort(image.begin(), image.end());
  std::vector<int> shifted(image.size());
  for (int q = 0; q < g.order(); ++q) {
    for (std::size_t i = 0; i < prov.qds.elements().size(); ++i)
      shifted[i] = g.op(q, prov.qds.elements()[i]);
    std::sort(shifted.begin(), shifted.end());
    if (shifted == image) {
      LiftedAut lifted;
      lifted.shift = q;
      lifted.pair.point_perm = f;
      lifted.pair.line_perm.resize(s.num_lines());
      for (int l = 0; l < s.num_lines(); ++l)
        lifted.pair.line_perm[l] = s.line_of_label(g.op(q, f[s.line_label(l)]));
      if (!is_automorphism(s, lifted.pair))
        throw Error("lifted map failed incidence check");
      return lifted;
    }
  }
  return std::nullopt;
}

AutPair coordinate_permutation_aut(const IncidenceStructure& s,
                                   const std::vector<int>& beta) {
  const Provenance& prov = s.provenance();
  auto decomp = power_decomposition(prov.group, prov.qds.elements());
  if (!decomp) throw BadProvenance("structure is not a power of one base set");
  const int n = decomp->copies;
  if (static_cast<int>(beta.size()) != n)
    throw BadCoordinates("permutation length must match the number of copies");
  std::vector<bool> seen(n, false);
  for (int v : beta) {
    if (v < 0 || v >= n || seen[v]) throw BadCoordinates("not a permutation");
    seen[v] = true;
  }
  const Group& g = prov.group;
  auto apply = [&](int x) {
    std::vector<int> r = g.residues(x), out(n);
    for (int i = 0; i < n; ++i) out[i] = r[beta[i]];
    return g.from_residues(out);
  };
  AutPair p;
  p.point_perm.resize(s.num_points());
  p.line_perm.resize(s.num_lines());
  for (int a = 0; a < s.num_points(); ++a) p.point_perm[a] = apply(a);
  for (int l = 0; l < s.num_lines(); ++l)
    p.line_perm[l] = s.line_of_label(apply(s.line_label(l)));
  if (!is_automorphism(s, p))
    throw Error("coordinate permutation failed incidence check");
  return p;
}

std::optional<AutPair> product_automorphism(
    const IncidenceStructure& s, const std::vector<AutPair>& factor_pairs) {
  const Provenance& prov = s.provenance();
  const Group& g = prov.group;
  FactorSplit split = factor_split(g, prov.qds.elements());
  const int n = static_cast<int>(split.blocks.size());
  if (static_cast<int>(factor_pairs.size()) != n)
    throw BadProvenance("one pair per factor required");

  std::vector<IncidenceStructure> factors;
  for (int i = 0; i < n; ++i)
    factors.push_back(IncidenceStructure::build(
        split.groups[i], QDSet(split.groups[i], split.sets[i])));

  // The obstruction: each factor's line map must equal its point map on
  // labels, otherwise no componentwise automorphism exists.
  for (int i = 0; i < n; ++i) {
    const AutPair& fp = factor_pairs[i];
    if (!is_automorphism(factors[i], fp))
      throw Error("factor pair is not an automorphism of its factor");
    if (!factors[i].labels_faithful())
      throw LabelMapUnavailable("factor lines are not label-faithful");
    for (int b = 0; b < factors[i].num_points(); ++b) {
      int via_lines = factors[i].line_label(fp.line_perm[factors[i].line_of_label(b)]);
      if (via_lines != fp.point_perm[b]) return std::nullopt;
    }
  }

  auto apply = [&](int x) {
    std::vector<int> res = g.residues(x), out(g.moduli().size());
    for (int i = 0; i < n; ++i) {
      std::vector<int> sub;
      for (int c : split.blocks[i]) sub.push_back(res[c]);
      int fx = factor_pairs[i].point_perm[split.groups[i].from_residues(sub)];
      std::vector<int> fres = split.groups[i].residues(fx);
      for (std::size_t j = 0; j < split.blocks[i].size(); ++j)
        out[split.blocks[i][j]] = fres[j];
    }
    return g.from_residues(out);
  };
  AutPair p;
  p.point_perm.resize(s.num_points());
  p.line_perm.resize(s.num_lines());
  for (int a = 0; a < s.num_points(); ++a) p.point_perm[a] = apply(a);
  for (int l = 0; l < s.num_lines(); ++l)
    p.line_perm[l] = s.line_of_label(apply(s.line_label(l)));
  if (!is_automorphism(s, p))
    throw Error("product map failed incidence check");
  return p;
}

CyclicLiftResult cyclic_lift(const IncidenceStructure& base, const AutPair& f,
                             int k) {
  const Provenance& prov = base.provenance();
  const Group& g0 = prov.group;
  if (k < 2) throw Error("cyclic lift requires k >= 2");
  if (!base.labels_faithful())
    throw LabelMapUnavailable("base lines are not label-faithful");
  if (!is_automorphism(base, f))
    throw Error("cyclic lift requires an automorphism of the base");

  auto label_map_of = [&](const AutPair& p) {
    std::vector<int> out(g0.order());
    for (int b = 0; b < g0.order(); ++b)
      out[b] = base.line_label(p.line_perm[base.line_of_label(b)]);
    return out;
  };

  CyclicLiftResult result;
  result.point_maps.push_back(f.point_perm);
  result.label_maps.push_back(label_map_of(f));
  for (int i = 1; i < k; ++i) {
    const std::vector<int>& candidate = result.label_maps.back();
    auto next = pair_from_point_perm(base, candidate);
    if (!next) {
      result.failed_at = i;
      return result;
    }
    result.point_maps.push_back(next->point_perm);
    result.label_maps.push_back(label_map_of(*next));
  }
  if (result.label_maps.back() != result.point_maps.front()) {
    result.failed_at = k;
    return result;
  }
  result.closes = true;

  Group cycle = Group::cyclic(k);
  QDSet edge_set(cycle, {0, 1});
  IncidenceStructure cyc = IncidenceStructure::build(cycle, edge_set);
  result.lifted_structure = sum_structure(cyc, base);
  const Group& gs = result.lifted_structure.provenance().group;
  const int n0 = g0.order();
  AutPair lifted;
  lifted.point_perm.resize(result.lifted_structure.num_points());
  lifted.line_perm.resize(result.lifted_structure.num_lines());
  for (int i = 0; i < k; ++i)
    for (int a = 0; a < n0; ++a)
      lifted.point_perm[i * n0 + a] = i * n0 + result.point_maps[i][a];
  for (int l = 0; l < result.lifted_structure.num_lines(); ++l) {
    int label = result.lifted_structure.line_label(l);
    int i = label / n0, b = label % n0;
    lifted.line_perm[l] =
        result.lifted_structure.line_of_label(i * n0 + result.label_maps[i][b]);
  }
  (void)gs;
  if (!is_automorphism(result.lifted_structure, lifted))
    throw Error("cyclic lift failed incidence check");
  result.lifted = std::move(lifted);
  return result;
}

TranslationStructureReport verify_translation_structure(
    const IncidenceStructure& s, std::uint64_t expected_stabilizer,
    SearchCaps caps) {
  TranslationStructureReport report;
  report.expected_stabilizer = expected_stabilizer;
  std::vector<AutPair> trans = translations(s);
  report.translations_are_automorphisms = true;  // translations() verified them
  std::set<int> images;
  for (const AutPair& t : trans) images.insert(t.point_perm[0]);
  report.transitive = static_cast<int>(images.size()) == s.num_points();

  PermGroup aut = automorphism_group(s, caps);
  report.aut_order = aut.order;
  std::set<std::vector<int>> translation_set;
  for (const AutPair& t : trans) translation_set.insert(t.point_perm);
  report.normal = true;
  for (const AutPair& gen : aut.generators) {
    AutPair gen_inv = inverse_pair(gen);
    for (const AutPair& t : trans) {
      AutPair conj = compose(compose(gen_inv, t), gen);
      if (!translation_set.count(conj.point_perm)) {
        report.normal = false;
        break;
      }
    }
    if (!report.normal) break;
  }

  PermGroup stab = stabilizer(s, 0, caps);
  report.stabilizer_order = stab.order;
  report.order_factors =
      report.aut_order ==
      static_cast<std::uint64_t>(s.num_points()) * stab.order;
  report.stabilizer_matches = stab.order == expected_stabilizer;
  return report;
}

}  // namespace qdslab

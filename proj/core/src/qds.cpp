#include "qdslab/qds.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qdslab {

namespace {

std::vector<int> sorted_unique(const Group& g, std::vector<int> v) {
  for (int e : v)
    if (e < 0 || e >= g.order()) throw ElementOutOfRange("set element out of range");
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Ordered difference counts: count[c] = #{(a, b) : a * b^-1 = c}.
std::vector<int> difference_counts(const Group& g, const std::vector<int>& d) {
  std::vector<int> count(g.order(), 0);
  for (int a : d)
    for (int b : d) ++count[g.op(a, g.inverse(b))];
  return count;
}

std::vector<int> set_negate(const Group& g, const std::vector<int>& d) {
  std::vector<int> out;
  out.reserve(d.size());
  for (int a : d) out.push_back(g.inverse(a));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> set_difference(std::vector<int> a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<int> set_intersection(const std::vector<int>& a,
                                  const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

}  // namespace

QDSet::QDSet(Group group, std::vector<int> elements) : group_(std::move(group)) {
  elements_ = sorted_unique(group_, std::move(elements));
  if (elements_.empty()) throw EmptyDelta("difference set must be nonempty");
  shift_ = group_.identity();
  if (!std::binary_search(elements_.begin(), elements_.end(), group_.identity())) {
    shift_ = group_.inverse(elements_.front());
    std::vector<int> moved;
    moved.reserve(elements_.size());
    for (int e : elements_) moved.push_back(group_.op(shift_, e));
    std::sort(moved.begin(), moved.end());
    elements_ = std::move(moved);
  }
}

bool QDSet::contains(int e) const {
  return std::binary_search(elements_.begin(), elements_.end(), e);
}

bool is_qds(const Group& g, const std::vector<int>& d) {
  std::vector<int> set = sorted_unique(g, d);
  std::vector<int> count = difference_counts(g, set);
  for (int c = 0; c < g.order(); ++c)
    if (c != g.identity() && count[c] > 1) return false;
  return true;
}

bool is_qds(const QDSet& d) { return is_qds(d.group(), d.elements()); }

bool is_perfect_difference_set(const Group& g, const std::vector<int>& d) {
  std::vector<int> set = sorted_unique(g, d);
  std::vector<int> count = difference_counts(g, set);
  for (int c = 0; c < g.order(); ++c)
    if (c != g.identity() && count[c] != 1) return false;
  return true;
}

bool is_perfect_difference_set(const QDSet& d) {
  return is_perfect_difference_set(d.group(), d.elements());
}

bool satisfies_star(const Group& g, const std::vector<int>& d) {
  std::vector<int> set = sorted_unique(g, d);
  if (!is_qds(g, set)) throw NotAQds("condition requires a quasi difference set");
  std::vector<bool> in_ddinv(g.order(), false);
  for (int a : set)
    for (int b : set) in_ddinv[g.op(a, g.inverse(b))] = true;
  for (int d1 : set)
    for (int d2 : set)
      for (int d3 : set)
        for (int d4 : set) {
          int prod = g.op(g.op(d1, g.inverse(d2)), g.op(d3, g.inverse(d4)));
          if (!in_ddinv[prod]) continue;
          if (d1 != d2 && d3 != d4 && d1 != d4 && d3 != d2) return false;
        }
  return true;
}

bool satisfies_star(const QDSet& d) {
  return satisfies_star(d.group(), d.elements());
}

QDSet canonical_set(const std::vector<int>& moduli) {
  Group g = Group::cyclic_product(moduli);
  std::vector<int> elems{g.identity()};
  std::vector<int> unit(moduli.size(), 0);
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    std::fill(unit.begin(), unit.end(), 0);
    unit[i] = 1;
    elems.push_back(g.from_residues(unit));
  }
  return QDSet(g, std::move(elems));
}

QDSet qds_sum(const QDSet& a, const QDSet& b) {
  if (!is_qds(a)) throw NotAQds("left summand is not a quasi difference set");
  if (!is_qds(b)) throw NotAQds("right summand is not a quasi difference set");
  Group sum = direct_sum(a.group(), b.group());
  std::vector<int> elems;
  for (int e : a.elements()) elems.push_back(embed_first(a.group(), b.group(), e));
  for (int e : b.elements()) elems.push_back(embed_second(a.group(), b.group(), e));
  return QDSet(sum, std::move(elems));
}

namespace {

// Depth-first enumeration of all perfect difference sets containing 0,
// ascending, so results come out in lexicographic order.
void enumerate_perfect(int n, int size, std::vector<int>& chosen,
                       std::vector<bool>& used_diff,
                       std::vector<std::vector<int>>& out) {
  if (static_cast<int>(chosen.size()) == size) {
    out.push_back(chosen);
    return;
  }
  int start = chosen.back() + 1;
  int slots = size - static_cast<int>(chosen.size());
  for (int x = start; x <= n - slots; ++x) {
    bool ok = true;
    std::vector<int> marks;
    for (int c : chosen) {
      int d1 = (x - c + n) % n;
      int d2 = (c - x + n) % n;
      if (used_diff[d1] || used_diff[d2] || d1 == d2) {
        ok = false;
        break;
      }
      used_diff[d1] = used_diff[d2] = true;
      marks.push_back(d1);
      marks.push_back(d2);
    }
    if (ok) {
      chosen.push_back(x);
      enumerate_perfect(n, size, chosen, used_diff, out);
      chosen.pop_back();
    }
    for (int m : marks) used_diff[m] = false;
  }
}

std::vector<std::vector<int>> all_normalized_perfect(int q, int cap) {
  if (q < 2) throw Error("singer search requires q >= 2");
  int n = q * q + q + 1;
  if (n > cap) throw SearchCapExceeded("singer search group order exceeds cap");
  std::vector<int> chosen{0};
  std::vector<bool> used(n, false);
  std::vector<std::vector<int>> out;
  enumerate_perfect(n, q + 1, chosen, used, out);
  return out;
}

// The 0-containing translates of one perfect difference set, sorted.
std::vector<std::vector<int>> normalized_translates(int n,
                                                    const std::vector<int>& d) {
  std::set<std::vector<int>> seen;
  for (int t : d) {
    std::vector<int> shifted;
    for (int e : d) shifted.push_back((e - t + n) % n);
    std::sort(shifted.begin(), shifted.end());
    seen.insert(std::move(shifted));
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

std::vector<QDSet> singer_search(int q, int group_order_cap) {
  int n = q * q + q + 1;
  std::vector<std::vector<int>> found = all_normalized_perfect(q, group_order_cap);
  if (found.empty()) return {};
  Group g = Group::cyclic(n);
  std::vector<QDSet> out;
  for (const auto& member : normalized_translates(n, found.front()))
    out.emplace_back(g, member);
  return out;
}

SingerClasses singer_translation_classes(int q, int group_order_cap) {
  int n = q * q + q + 1;
  std::vector<std::vector<int>> found = all_normalized_perfect(q, group_order_cap);
  std::map<std::vector<int>, std::vector<std::vector<int>>> by_rep;
  for (const auto& d : found) {
    std::vector<std::vector<int>> cls = normalized_translates(n, d);
    by_rep[cls.front()] = cls;
  }
  SingerClasses out;
  for (auto& [rep, members] : by_rep) {
    out.class_reps.push_back(rep);
    out.classes.push_back(members);
  }
  return out;
}

std::optional<PappusWitness> pappus_condition(const Group& g,
                                              const std::vector<int>& d) {
  if (!g.is_abelian()) throw NotAbelian("condition requires an abelian group");
  std::vector<int> set = sorted_unique(g, d);
  const int e = g.identity();
  for (int d1 : set) {
    if (d1 == e) continue;
    int d2 = g.inverse(g.op(d1, d1));
    if (d2 == e || !std::binary_search(set.begin(), set.end(), d2)) continue;
    for (int d3 : set) {
      if (d3 == e || d3 == d1) continue;
      int d4 = g.inverse(g.op(d3, d3));
      if (d4 == e || !std::binary_search(set.begin(), set.end(), d4)) continue;
      return PappusWitness{d1, d2, d3, d4};
    }
  }
  return std::nullopt;
}

std::optional<PappusWitness> pappus_condition(const QDSet& d) {
  return pappus_condition(d.group(), d.elements());
}

TriangleReport triangle_condition(const Group& g, const std::vector<int>& d) {
  if (!g.is_abelian()) throw NotAbelian("condition requires an abelian group");
  std::vector<int> set = sorted_unique(g, d);
  TriangleReport report;
  for (int di : set) {
    bool has = false;
    for (int dj : set) {
      int need = g.inverse(g.op(di, dj));
      if (std::binary_search(set.begin(), set.end(), need)) {
        has = true;
        break;
      }
    }
    if (!has) report.lacking.push_back(di);
  }
  if (report.lacking.empty()) {
    report.kind = TriangleKind::All;
  } else if (report.lacking.size() == 1) {
    report.kind = TriangleKind::AllButOne;
    report.exceptional = report.lacking.front();
  } else {
    report.kind = TriangleKind::Fails;
  }
  return report;
}

TriangleReport triangle_condition(const QDSet& d) {
  return triangle_condition(d.group(), d.elements());
}

DiffProfile diff_profile(const Group& g, const std::vector<int>& d) {
  if (!g.is_abelian()) throw NotAbelian("profile requires an abelian group");
  std::vector<int> set = sorted_unique(g, d);
  DiffProfile p;
  p.neg_d = set_negate(g, set);
  {
    std::set<int> sums, diffs;
    for (int a : set)
      for (int b : set) {
        sums.insert(g.op(a, b));
        diffs.insert(g.op(a, g.inverse(b)));
      }
    p.d_plus_d.assign(sums.begin(), sums.end());
    p.d_minus_d.assign(diffs.begin(), diffs.end());
  }
  {
    std::set<int> neg2;
    for (int a : set) neg2.insert(g.inverse(g.op(a, a)));
    p.neg_2d.assign(neg2.begin(), neg2.end());
  }
  std::vector<int> neg_sums = set_negate(g, p.d_plus_d);
  std::vector<int> core = set_intersection(neg_sums, set);
  p.size4_admissible = set_difference(core, set_union(p.neg_2d, p.neg_d));
  p.size3_admissible = set_difference(set_intersection(core, p.neg_2d), p.neg_d);
  return p;
}

DiffProfile diff_profile(const QDSet& d) {
  return diff_profile(d.group(), d.elements());
}

FactorSplit factor_split(const Group& g, const std::vector<int>& d) {
  if (!g.is_cyclic_product())
    throw BadProvenance("factor split requires a cyclic product group");
  std::vector<int> set = sorted_unique(g, d);
  const int r = static_cast<int>(g.moduli().size());
  // Union-find over coordinates, linking those sharing an element's support.
  std::vector<int> parent(r);
  for (int i = 0; i < r; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e : set) {
    std::vector<int> supp = element_support(g, e);
    for (std::size_t i = 1; i < supp.size(); ++i)
      parent[find(supp[i])] = find(supp[0]);
  }
  std::map<int, std::vector<int>> groups_by_root;
  for (int i = 0; i < r; ++i) groups_by_root[find(i)].push_back(i);

  FactorSplit split;
  for (auto& [root, coords] : groups_by_root) split.blocks.push_back(coords);
  std::sort(split.blocks.begin(), split.blocks.end());
  for (const auto& block : split.blocks) {
    std::vector<int> moduli;
    for (int c : block) moduli.push_back(g.moduli()[c]);
    Group factor = Group::cyclic_product(moduli);
    std::set<int> elems{factor.identity()};
    for (int e : set) {
      std::vector<int> supp = element_support(g, e);
      if (supp.empty()) continue;
      if (std::find(block.begin(), block.end(), supp[0]) == block.end()) continue;
      std::vector<int> res = g.residues(e);
      std::vector<int> proj;
      for (int c : block) proj.push_back(res[c]);
      elems.insert(factor.from_residues(proj));
    }
    split.groups.push_back(factor);
    split.sets.emplace_back(elems.begin(), elems.end());
  }
  return split;
}

std::optional<PowerDecomposition> power_decomposition(const Group& g,
                                                      const std::vector<int>& d) {
  if (!g.is_cyclic_product()) return std::nullopt;
  FactorSplit split = factor_split(g, d);
  const int n = static_cast<int>(split.blocks.size());
  if (n < 1) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (split.blocks[i].size() != 1) return std::nullopt;
  for (int i = 1; i < n; ++i) {
    if (split.groups[i] != split.groups[0]) return std::nullopt;
    if (split.sets[i] != split.sets[0]) return std::nullopt;
  }
  return PowerDecomposition{split.groups[0], split.sets[0], n};
}

}  // namespace qdslab

// Acceptance suite: one pass/fail line per criterion, exit 0 only if
// every criterion passes. Expected values are exact integers.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "naive_aut.hpp"
#include "qdslab/autgroup.hpp"
#include "qdslab/geometry.hpp"
#include "qdslab/incidence.hpp"

using namespace qdslab;

namespace {

int failures = 0;

struct Criterion {
  std::string name;
  std::chrono::steady_clock::time_point start;
  std::ostringstream notes;
  bool ok = true;

  explicit Criterion(std::string n)
      : name(std::move(n)), start(std::chrono::steady_clock::now()) {}

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      notes << "    FAILED: " << what << "\n";
    }
  }

  template <typename T, typename U>
  void expect_eq(const T& got, const U& want, const std::string& what) {
    if (!(got == static_cast<T>(want))) {
      ok = false;
      notes << "    FAILED: " << what << " (got " << got << ", want " << want
            << ")\n";
    }
  }

  void note(const std::string& text) { notes << "    note: " << text << "\n"; }

  ~Criterion() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::printf("[%s] %s (%lld ms)\n", ok ? "PASS" : "FAIL", name.c_str(),
                static_cast<long long>(ms));
    std::fputs(notes.str().c_str(), stdout);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

IncidenceStructure make(const Group& g, const std::vector<int>& d) {
  return IncidenceStructure::build(g, QDSet(g, d));
}

IncidenceStructure fano() { return make(Group::cyclic(7), {0, 1, 3}); }

IncidenceStructure canonical_structure(const std::vector<int>& moduli) {
  QDSet d = canonical_set(moduli);
  return IncidenceStructure::build(d.group(), d);
}

IncidenceStructure multifano(int k) {
  return IncidenceStructure::build(
      Group::cyclic_product({k, 7}),
      qds_sum(QDSet(Group::cyclic(k), {0, 1}), QDSet(Group::cyclic(7), {0, 1, 3})));
}

IncidenceStructure splitting_structure(const std::vector<int>& singer) {
  QDSet d = qds_sum(canonical_set({3, 3}),
                    QDSet(Group::cyclic(13), singer));
  return IncidenceStructure::build(d.group(), d);
}

void criterion_1() {
  Criterion c("criterion 1: fano counts, |Aut| = 168, stabilizer 24");
  IncidenceStructure f = fano();
  c.expect_eq(f.num_points(), 7, "points");
  c.expect_eq(f.num_lines(), 7, "lines");
  c.expect_eq(static_cast<int>(f.line(0).size()), 3, "line size");
  c.expect_eq(static_cast<int>(f.pencil(0).size()), 3, "point degree");
  c.expect_eq(automorphism_group(f).order, 168u, "|Aut|");
  c.expect_eq(stabilizer(f, 0).order, 24u, "stabilizer order");
}

void criterion_2() {
  Criterion c("criterion 2: multi-fano |Aut| = 21 (k=3) and 147 (k=7)");
  c.expect_eq(automorphism_group(multifano(3)).order, 21u, "|Aut|, k=3");
  c.expect_eq(automorphism_group(multifano(7)).order, 147u, "|Aut|, k=7");
  TranslationStructureReport r3 = verify_translation_structure(multifano(3), 1);
  c.expect(r3.all_pass(), "translation structure, k=3, stabilizer 1");
  TranslationStructureReport r7 = verify_translation_structure(multifano(7), 3);
  c.expect(r7.all_pass(), "translation structure, k=7, stabilizer 3");
}

void criterion_3() {
  Criterion c("criterion 3: multiplied ternary structure |Aut| = 648");
  IncidenceStructure m = canonical_structure({3, 3, 3});
  c.expect_eq(automorphism_group(m).order, 648u, "|Aut|");
  c.expect_eq(stabilizer(m, 0).order, 24u, "stabilizer order");
  TranslationStructureReport r = verify_translation_structure(m, 24);
  c.expect(r.translations_are_automorphisms, "translations are automorphisms");
  c.expect(r.transitive, "translations transitive");
  c.expect(r.normal, "translation subgroup normal");
  c.expect(r.order_factors, "|Aut| = |G| * stabilizer");
  c.expect(r.stabilizer_matches, "stabilizer = 4!");
}

void criterion_4() {
  Criterion c("criterion 4: quaternary square |Aut| = 96");
  c.expect_eq(automorphism_group(canonical_structure({4, 4})).order, 96u,
              "|Aut|");
}

void criterion_5() {
  Criterion c("criterion 5: veblen/desargues/pappus pattern");
  IncidenceStructure m3 = canonical_structure({3, 3, 3});
  IncidenceStructure c44 = canonical_structure({4, 4});
  c.expect(!veblen_check(m3).holds, "ternary cube veblen fails");
  c.expect(desargues_check(m3).holds, "ternary cube desargues holds");
  c.expect(veblen_check(c44).holds, "quaternary square veblen holds");
  c.expect(desargues_check(c44).holds, "quaternary square desargues holds");
  c.expect(!pappus_embed(c44).has_value(), "no embedding in quaternary square");
  c.expect(pappus_embed(multifano(3)).has_value(), "embedding in multi-fano");
}

void criterion_6() {
  Criterion c("criterion 6: splitting structures, iso = none, |Aut| = 234");
  IncidenceStructure m1 = splitting_structure({0, 1, 3, 9});
  IncidenceStructure m2 = splitting_structure({0, 2, 8, 12});
  c.expect(!isomorphism(m1, m2).has_value(), "structures not isomorphic");
  std::uint64_t order1 = automorphism_group(m1).order;
  std::uint64_t order2 = automorphism_group(m2).order;
  c.expect_eq(order2, 234u, "|Aut|, second structure");
  c.expect_eq(order1, 234u, "|Aut|, first structure");
  if (order1 != 234) {
    c.note("computed |Aut| = " + std::to_string(order1) +
           " for the first structure: tripling the last coordinate fixes");
    c.note("{0,1,3,9} elementwise (3*{0,1,3,9} = {0,1,3,9} mod 13), so it");
    c.note("induces an extra order-3 stabilizer factor; 234 * 3 = 702.");
    // Exhibit it: the map is a verified automorphism fixing zero.
    const Group& g = m1.provenance().group;
    std::vector<int> f(g.order());
    for (int x = 0; x < g.order(); ++x) {
      std::vector<int> r = g.residues(x);
      r[2] = (3 * r[2]) % 13;
      f[x] = g.from_residues(r);
    }
    auto lifted = lift_group_automorphism(m1, f);
    if (lifted && lifted->shift == g.identity())
      c.note("witness verified: the tripling map is an automorphism with no shift.");
    // Cross-check by explicit closure: the generator set reproduces the
    // computed order and every element passes the incidence check.
    PermGroup g1 = automorphism_group(m1);
    std::vector<AutPair> elements = enumerate_group(m1, g1);
    bool closure_ok = elements.size() == order1;
    for (const AutPair& e : elements)
      if (!is_automorphism(m1, e)) closure_ok = false;
    c.note(std::string("closure check: ") + std::to_string(elements.size()) +
           " distinct verified automorphisms" +
           (closure_ok ? " (matches the computed order)." : " (MISMATCH)."));
  }
}

void criterion_7() {
  Criterion c("criterion 7: ternary pair joined with fano, |Aut| = 126");
  QDSet d = qds_sum(canonical_set({3, 3}), QDSet(Group::cyclic(7), {0, 1, 3}));
  IncidenceStructure s = IncidenceStructure::build(d.group(), d);
  c.expect_eq(automorphism_group(s).order, 126u, "|Aut|");
}

void criterion_8() {
  Criterion c("criterion 8: plane powers, |Aut| and line-size profiles");
  IncidenceStructure f2 = power_structure(fano(), 2);
  IncidenceStructure n2 = power_structure(make(Group::cyclic(13), {0, 1, 3, 9}), 2);
  c.expect_eq(automorphism_group(f2).order, 98u, "|Aut| of the fano square");
  c.expect_eq(automorphism_group(n2).order, 3042u, "|Aut| of the 13-plane square");

  PowerLineProfile pf = power_line_profile(f2);
  c.expect(pf.all_match(), "fano square profile matches the classification");
  c.expect(pf.base_profile.size4_admissible == std::vector<int>{3},
           "size-4 admissible residues = {3}");
  c.expect(pf.base_profile.size3_admissible == std::vector<int>{1},
           "size-3 admissible residues = {1}");
  c.expect_eq(pf.size4_lines, 1, "one size-4 line");
  c.expect_eq(pf.size3_lines, 2, "two size-3 lines");

  PowerLineProfile pn = power_line_profile(n2);
  c.expect(pn.all_match(), "13-plane square profile matches");
  c.expect(pn.base_profile.size4_admissible == std::vector<int>{1, 3, 9},
           "size-4 admissible residues = {1,3,9}");
  c.expect(pn.base_profile.size3_admissible.empty(),
           "no size-3 admissible residues");
  c.expect_eq(pn.size4_per_coordinate_pair[{0, 1}], 9,
              "nine size-4 lines per coordinate pair");
  c.expect_eq(pn.size3_lines, 0, "no size-3 lines");
}

void criterion_9() {
  Criterion c("criterion 9: singer sets and the tripling multiplier");
  auto sets2 = singer_search(2);
  std::set<std::vector<int>> got2;
  for (const QDSet& d : sets2) got2.insert(d.elements());
  std::set<std::vector<int>> want2{{0, 1, 3}, {0, 2, 6}, {0, 4, 5}};
  c.expect(got2 == want2,
           "q=2 search returns the zero-normalized class of {0,1,3}");

  auto sets3 = singer_search(3);
  std::set<std::vector<int>> got3;
  for (const QDSet& d : sets3) got3.insert(d.elements());
  std::vector<int> d1{0, 1, 3, 9}, d2{0, 2, 8, 12}, d3{0, 6, 10, 11},
      d4{0, 4, 5, 7};
  std::set<std::vector<int>> want3{d1, d2, d3, d4};
  c.expect(got3 == want3, "q=3 search returns exactly the four listed sets");

  auto scale3 = [](const std::vector<int>& d) {
    std::vector<int> out;
    for (int e : d) out.push_back((3 * e) % 13);
    std::sort(out.begin(), out.end());
    return out;
  };
  c.expect(scale3(d2) == d3, "tripling maps the second set to the third");
  c.expect(scale3(d3) == d4, "tripling maps the third set to the fourth");
  std::set<std::vector<int>> images;
  for (const auto& d : want3) images.insert(scale3(d));
  c.expect(images == want3, "tripling permutes the four sets");
  c.note("tripling fixes {0,1,3,9} (it is a multiplier of that set) and");
  c.note("3-cycles the other three; the fourth set maps to the second.");
}

void criterion_10() {
  Criterion c("criterion 10: property suites");

  std::vector<IncidenceStructure> fixtures;
  fixtures.push_back(fano());
  fixtures.push_back(canonical_structure({3, 3}));
  fixtures.push_back(canonical_structure({4, 4}));
  fixtures.push_back(canonical_structure({5, 5}));
  fixtures.push_back(canonical_structure({3, 3, 3}));
  fixtures.push_back(make(Group::cyclic(6), {0, 2}));
  fixtures.push_back(make(Group::cyclic(6), {0, 3}));
  fixtures.push_back(make(Group::cyclic(5), {0, 1}));
  fixtures.push_back(make(Group::cyclic(13), {0, 1, 3, 9}));
  fixtures.push_back(multifano(3));
  for (int n : {5, 7, 8, 9, 10, 11, 12, 14, 15, 16})
    fixtures.push_back(make(Group::cyclic(n), {0, 1}));

  // Membership rule and the pencil/join/meet label algebra.
  bool algebra_ok = true;
  for (const IncidenceStructure& s : fixtures) {
    if (s.num_points() > 200) continue;
    const Group& g = s.provenance().group;
    const QDSet& d = s.provenance().qds;
    for (int a = 0; a < s.num_points() && algebra_ok; ++a) {
      for (int l = 0; l < s.num_lines(); ++l) {
        bool algebra = d.contains(g.op(g.inverse(s.line_label(l)), a));
        if (s.incident(a, l) != algebra) algebra_ok = false;
      }
      for (int b = a + 1; b < s.num_points() && algebra_ok; ++b) {
        if (collinear(s, a, b) != collinear_algebraic(s, a, b))
          algebra_ok = false;
        auto j1 = join(s, a, b);
        auto j2 = join_algebraic(s, a, b);
        if (j1.has_value() != j2.has_value()) algebra_ok = false;
        if (j1 && *j1 != *j2) algebra_ok = false;
      }
    }
  }
  c.expect(algebra_ok, "incidence and join algebra agree combinatorially");

  // Sum closure on random quasi difference set pairs.
  std::mt19937 rng(97);
  auto random_qds = [&](const Group& g) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      std::set<int> d{g.identity()};
      int want = std::min(2 + static_cast<int>(rng() % 3), g.order());
      while (static_cast<int>(d.size()) < want)
        d.insert(static_cast<int>(rng() % g.order()));
      std::vector<int> out(d.begin(), d.end());
      if (is_qds(g, out)) return out;
    }
    return std::vector<int>{g.identity(), 1 % g.order()};
  };
  bool closure_ok = true;
  for (int t = 0; t < 100; ++t) {
    Group g1 = Group::cyclic(3 + static_cast<int>(rng() % 10));
    Group g2 = Group::cyclic(3 + static_cast<int>(rng() % 10));
    QDSet d1(g1, random_qds(g1)), d2(g2, random_qds(g2));
    if (!is_qds(qds_sum(d1, d2))) closure_ok = false;
  }
  c.expect(closure_ok, "sum of quasi difference sets stays one (100 pairs)");

  // Self-duality witness for every abelian fixture with faithful labels.
  bool dual_ok = true;
  for (const IncidenceStructure& s : fixtures) {
    if (!s.labels_faithful()) continue;
    standard_correlation(s);
    if (!isomorphism(s, dual(s))) dual_ok = false;
  }
  c.expect(dual_ok, "self-duality witness on every abelian fixture");

  // Component order equals the order of the generated subgroup.
  bool comp_ok = fixtures.size() >= 20;
  for (const IncidenceStructure& s : fixtures) {
    const Provenance& prov = s.provenance();
    std::size_t expected =
        subgroup_generated(prov.group, prov.qds.elements()).size();
    if (component(s, 0).points.size() != expected) comp_ok = false;
  }
  {
    Component c0 = component(make(Group::cyclic(6), {0, 2}), 0);
    Component c1 = component(make(Group::cyclic(6), {0, 2}), 1);
    if (c0.points.size() != 3 || c1.points.size() != 3) comp_ok = false;
  }
  c.expect(comp_ok, "component order = |<D>| on 20 fixtures");

  // Rigidity under the cancellation condition.
  bool rigid_ok = true;
  for (auto moduli : std::vector<std::vector<int>>{{4, 4}, {5, 5}, {6, 6}}) {
    IncidenceStructure s = canonical_structure(moduli);
    if (!satisfies_star(s.provenance().qds)) rigid_ok = false;
    for (const AutPair& e : enumerate_group(s, automorphism_group(s))) {
      for (int l = 0; l < s.num_lines(); ++l) {
        bool pointwise = true;
        for (int p : s.line(l))
          if (e.point_perm[p] != p) pointwise = false;
        if (pointwise && !(e == identity_pair(s))) rigid_ok = false;
      }
    }
  }
  c.expect(rigid_ok, "line-pointwise fixers are trivial on rigid fixtures");

  // Naive oracle agreement on everything small.
  bool oracle_ok = true;
  for (const IncidenceStructure& s : fixtures) {
    if (s.num_points() > 30) continue;
    if (automorphism_group(s).order !=
        static_cast<std::uint64_t>(qdslab_test::naive_automorphism_count(s)))
      oracle_ok = false;
  }
  c.expect(oracle_ok, "engine order equals the naive count below 31 points");
}

void criterion_11() {
  Criterion c("criterion 11: ternary pair order reported");
  std::uint64_t order = automorphism_group(canonical_structure({3, 3})).order;
  c.expect_eq(order, 108u, "engine value for the 9-point configuration");
  c.note("computed |Aut| = " + std::to_string(order) +
         "; the semidirect formula for higher copies would give 2 * 9 = 54,");
  c.note("so the two-copy case genuinely needs the larger group.");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("[SUMMARY] %d of 11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "qdslab/qds.hpp"

using namespace qdslab;

namespace {

// Oracle: ordered difference multiplicities computed directly.
std::map<int, int> diff_counts(const Group& g, const std::vector<int>& d) {
  std::map<int, int> counts;
  for (int a : d)
    for (int b : d) ++counts[g.op(a, g.inverse(b))];
  return counts;
}

bool oracle_qds(const Group& g, const std::vector<int>& d) {
  for (auto [c, n] : diff_counts(g, d))
    if (c != g.identity() && n > 1) return false;
  return true;
}

std::vector<int> random_qds(const Group& g, std::mt19937& rng) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::set<int> d{g.identity()};
    int want = std::min(2 + static_cast<int>(rng() % 3), g.order());
    while (static_cast<int>(d.size()) < want)
      d.insert(static_cast<int>(rng() % g.order()));
    std::vector<int> out(d.begin(), d.end());
    if (is_qds(g, out)) return out;
  }
  return {g.identity(), 1 % g.order()};
}

}  // namespace

TEST_CASE("qds predicate") {
  Group c7 = Group::cyclic(7);
  CHECK(is_qds(c7, {0, 1, 3}));
  CHECK_FALSE(is_qds(Group::cyclic(5), {0, 1, 2}));
  CHECK(is_qds(c7, {0}));

  std::mt19937 rng(23);
  for (int t = 0; t < 60; ++t) {
    Group g = Group::cyclic(4 + static_cast<int>(rng() % 12));
    std::vector<int> d;
    for (int e = 0; e < g.order(); ++e)
      if (rng() % 2) d.push_back(e);
    if (d.empty()) d.push_back(0);
    CHECK(is_qds(g, d) == oracle_qds(g, d));
  }
}

TEST_CASE("perfect difference sets") {
  Group c7 = Group::cyclic(7);
  Group c13 = Group::cyclic(13);
  CHECK(is_perfect_difference_set(c7, {0, 1, 3}));
  CHECK(is_perfect_difference_set(c13, {0, 1, 3, 9}));
  CHECK_FALSE(is_perfect_difference_set(c7, {0, 1, 2}));

  // Perfect implies qds.
  std::mt19937 rng(29);
  for (int t = 0; t < 50; ++t) {
    Group g = Group::cyclic(5 + static_cast<int>(rng() % 12));
    std::vector<int> d;
    for (int e = 0; e < g.order(); ++e)
      if (rng() % 2) d.push_back(e);
    if (d.empty()) d.push_back(0);
    if (is_perfect_difference_set(g, d)) CHECK(is_qds(g, d));
  }
}

TEST_CASE("normalization keeps the identity inside") {
  Group c7 = Group::cyclic(7);
  QDSet d(c7, {1, 2, 4});
  CHECK(d.elements() == std::vector<int>{0, 1, 3});
  CHECK(d.normalization_shift() == 6);
  QDSet already(c7, {0, 1, 3});
  CHECK(already.normalization_shift() == 0);
  CHECK_THROWS_AS(QDSet(c7, {}), EmptyDelta);
}

TEST_CASE("star condition") {
  CHECK(satisfies_star(canonical_set({4, 4})));
  CHECK_FALSE(satisfies_star(canonical_set({3, 3})));
  CHECK_FALSE(satisfies_star(Group::cyclic(7), {0, 1, 3}));

  // Canonical sets over k-ary factors satisfy the condition iff k > 3.
  for (int k = 3; k <= 7; ++k)
    for (int n = 1; n <= 3; ++n) {
      std::vector<int> moduli(n, k);
      CHECK(satisfies_star(canonical_set(moduli)) == (k > 3));
    }
  // k = 2 canonical sets are not quasi difference sets at all: the
  // ordered pairs (a, b), (b, a) give one value twice.
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> moduli(n, 2);
    QDSet d = canonical_set(moduli);
    CHECK_FALSE(is_qds(d));
    CHECK_THROWS_AS(satisfies_star(d), NotAQds);
  }
}

TEST_CASE("canonical sets") {
  QDSet d0 = canonical_set({3, 3});
  Group g = d0.group();
  CHECK(d0.elements() == std::vector<int>{g.from_residues({0, 0}),
                                          g.from_residues({0, 1}),
                                          g.from_residues({1, 0})});
  CHECK(is_qds(d0));
  CHECK(canonical_set({3, 3, 3}).size() == 4);
  CHECK(canonical_set({2}).elements() == std::vector<int>{0, 1});

  // Canonical set equals the iterated sum of edge sets.
  QDSet edge3(Group::cyclic(3), {0, 1});
  CHECK(qds_sum(edge3, edge3) == canonical_set({3, 3}));
  QDSet edge4(Group::cyclic(4), {0, 1});
  CHECK(qds_sum(qds_sum(edge4, edge4), edge4) == canonical_set({4, 4, 4}));
}

TEST_CASE("qds sums") {
  QDSet edge(Group::cyclic(3), {0, 1});
  QDSet fano(Group::cyclic(7), {0, 1, 3});
  QDSet sum = qds_sum(edge, fano);
  CHECK(sum.group().moduli() == std::vector<int>{3, 7});
  CHECK(sum.elements() == std::vector<int>{0, 1, 3, 7});
  CHECK(sum.size() == edge.size() + fano.size() - 1);
  CHECK(is_qds(sum));

  QDSet trivial(Group::from_cayley({{0, 1}, {1, 0}}), std::vector<int>{0});
  QDSet lifted = qds_sum(trivial, fano);
  CHECK(lifted.size() == 3);
  CHECK(is_qds(lifted));

  CHECK_THROWS_AS(qds_sum(QDSet(Group::cyclic(5), {0, 1, 2}), fano), NotAQds);

  // Closure property on random quasi difference set pairs.
  std::mt19937 rng(31);
  for (int t = 0; t < 100; ++t) {
    Group g1 = Group::cyclic(3 + static_cast<int>(rng() % 10));
    Group g2 = Group::cyclic(3 + static_cast<int>(rng() % 10));
    QDSet d1(g1, random_qds(g1, rng));
    QDSet d2(g2, random_qds(g2, rng));
    CHECK(is_qds(qds_sum(d1, d2)));
  }
}

TEST_CASE("singer search") {
  auto sets2 = singer_search(2);
  REQUIRE(sets2.size() == 3);
  CHECK(sets2[0].elements() == std::vector<int>{0, 1, 3});
  CHECK(sets2[1].elements() == std::vector<int>{0, 2, 6});
  CHECK(sets2[2].elements() == std::vector<int>{0, 4, 5});
  for (const QDSet& d : sets2) CHECK(is_perfect_difference_set(d));

  auto sets3 = singer_search(3);
  REQUIRE(sets3.size() == 4);
  CHECK(sets3[0].elements() == std::vector<int>{0, 1, 3, 9});
  CHECK(sets3[1].elements() == std::vector<int>{0, 2, 8, 12});
  CHECK(sets3[2].elements() == std::vector<int>{0, 4, 5, 7});
  CHECK(sets3[3].elements() == std::vector<int>{0, 6, 10, 11});

  // q = 4 sanity: five translates, all perfect.
  auto sets4 = singer_search(4);
  CHECK(sets4.size() == 5);
  for (const QDSet& d : sets4) CHECK(is_perfect_difference_set(d));

  CHECK_THROWS_AS(singer_search(30), SearchCapExceeded);
}

TEST_CASE("singer translation classes") {
  auto classes2 = singer_translation_classes(2);
  CHECK(classes2.class_reps.size() == 2);  // {0,1,3} class and {0,1,5} class
  CHECK(classes2.class_reps[0] == std::vector<int>{0, 1, 3});

  auto classes3 = singer_translation_classes(3);
  CHECK(classes3.class_reps.size() == 4);
  CHECK(classes3.class_reps[0] == std::vector<int>{0, 1, 3, 9});
  // 16 normalized sets split into 4 classes of 4.
  std::size_t total = 0;
  for (const auto& cls : classes3.classes) total += cls.size();
  CHECK(total == 16);

  // The multiplier x -> 3x maps the second set to the third, the third
  // to the fourth, and fixes the first; it permutes the whole class.
  auto scale = [&](const std::vector<int>& d, int a) {
    std::vector<int> out;
    for (int e : d) out.push_back((a * e) % 13);
    std::sort(out.begin(), out.end());
    return out;
  };
  std::vector<int> d1{0, 1, 3, 9}, d2{0, 2, 8, 12}, d3{0, 6, 10, 11},
      d4{0, 4, 5, 7};
  CHECK(scale(d2, 3) == d3);
  CHECK(scale(d3, 3) == d4);
  CHECK(scale(d4, 3) == d2);
  CHECK(scale(d1, 3) == d1);
  std::set<std::vector<int>> family{d1, d2, d3, d4};
  for (const auto& d : family) CHECK(family.count(scale(d, 3)) == 1);
}

TEST_CASE("pappus condition witnesses") {
  QDSet d0 = canonical_set({3, 3});
  auto w = pappus_condition(d0);
  REQUIRE(w);
  const Group& g = d0.group();
  // d1^2 = -d2 and d3^2 = -d4 replayed on the witness.
  CHECK(g.op(w->d1, w->d1) == g.inverse(w->d2));
  CHECK(g.op(w->d3, w->d3) == g.inverse(w->d4));
  CHECK(w->d1 != w->d3);

  CHECK_FALSE(pappus_condition(Group::cyclic(7), {0, 1, 3}));
  CHECK_FALSE(pappus_condition(Group::cyclic(13), {0, 1, 3, 9}));
  CHECK(pappus_condition(qds_sum(QDSet(Group::cyclic(3), {0, 1}),
                                 QDSet(Group::cyclic(7), {0, 1, 3}))));
}

TEST_CASE("triangle condition") {
  Group c13 = Group::cyclic(13);
  CHECK(triangle_condition(c13, {0, 1, 3, 9}).kind == TriangleKind::All);
  TriangleReport r = triangle_condition(c13, {0, 2, 8, 12});
  CHECK(r.kind == TriangleKind::AllButOne);
  CHECK(r.exceptional == 8);
  CHECK(triangle_condition(Group::cyclic(7), {0, 1, 3}).kind ==
        TriangleKind::All);
}

TEST_CASE("difference profiles") {
  Group c7 = Group::cyclic(7);
  DiffProfile p7 = diff_profile(c7, {0, 1, 3});
  CHECK(p7.neg_d == std::vector<int>{0, 4, 6});
  CHECK(p7.neg_2d == std::vector<int>{0, 1, 5});
  CHECK(p7.d_plus_d == std::vector<int>{0, 1, 2, 3, 4, 6});
  CHECK(p7.size4_admissible == std::vector<int>{3});
  CHECK(p7.size3_admissible == std::vector<int>{1});

  Group c13 = Group::cyclic(13);
  DiffProfile p13 = diff_profile(c13, {0, 1, 3, 9});
  CHECK(p13.neg_d == std::vector<int>{0, 4, 10, 12});
  CHECK(p13.neg_2d == std::vector<int>{0, 7, 8, 11});
  CHECK(p13.size4_admissible == std::vector<int>{1, 3, 9});
  CHECK(p13.size3_admissible.empty());

  DiffProfile trivial = diff_profile(c7, {0});
  CHECK(trivial.neg_d == std::vector<int>{0});
  CHECK(trivial.size4_admissible.empty());

  // Shape facts: identity in -D, sizes match, D-D closed under negation.
  std::mt19937 rng(37);
  for (int t = 0; t < 40; ++t) {
    Group g = Group::cyclic(4 + static_cast<int>(rng() % 12));
    std::vector<int> d = random_qds(g, rng);
    DiffProfile p = diff_profile(g, d);
    CHECK(std::binary_search(p.neg_d.begin(), p.neg_d.end(), 0));
    CHECK(p.neg_d.size() == d.size());
    for (int u : p.d_minus_d)
      CHECK(std::binary_search(p.d_minus_d.begin(), p.d_minus_d.end(),
                               g.inverse(u)));
  }
}

TEST_CASE("factor split and power recognition") {
  QDSet mf = qds_sum(QDSet(Group::cyclic(3), {0, 1}),
                     QDSet(Group::cyclic(7), {0, 1, 3}));
  FactorSplit split = factor_split(mf.group(), mf.elements());
  REQUIRE(split.blocks.size() == 2);
  CHECK(split.groups[0].order() == 3);
  CHECK(split.groups[1].order() == 7);
  CHECK(split.sets[0] == std::vector<int>{0, 1});
  CHECK(split.sets[1] == std::vector<int>{0, 1, 3});
  CHECK_FALSE(power_decomposition(mf.group(), mf.elements()));

  QDSet fano(Group::cyclic(7), {0, 1, 3});
  QDSet f2 = qds_sum(fano, fano);
  auto decomp = power_decomposition(f2.group(), f2.elements());
  REQUIRE(decomp);
  CHECK(decomp->copies == 2);
  CHECK(decomp->base_elements == std::vector<int>{0, 1, 3});

  QDSet d3 = canonical_set({3, 3, 3});
  auto dec3 = power_decomposition(d3.group(), d3.elements());
  REQUIRE(dec3);
  CHECK(dec3->copies == 3);
  CHECK(dec3->base_elements == std::vector<int>{0, 1});
}

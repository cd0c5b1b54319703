#pragma once

#include <array>
#include <map>
#include <optional>

#include "qdslab/incidence.hpp"

namespace qdslab {

/// Step budget for the exhaustive geometric scans. Exceeding it raises
/// SearchCapExceeded rather than returning a truncated answer.
inline constexpr long long kDefaultGeometryBudget = 10'000'000;

/// Veblen condition: for every point a, every pair of lines b1 != b2
/// through a, and every two distinct transversals g1, g2 that cross both
/// and miss a, the transversals meet. The counterexample, when present,
/// is the lexicographically least (a, b1, b2, g1, g2).
struct VeblenReport {
  bool holds = true;
  std::optional<std::array<int, 5>> counterexample;
};
VeblenReport veblen_check(const IncidenceStructure& s,
                          long long budget = kDefaultGeometryBudget);

/// Desargues condition in the "sides already meet => axis exists" form:
/// for every center, every three lines through it and every pair of
/// triangles inscribed in them whose corresponding sides pairwise meet
/// in points, the three meet points are collinear.
struct DesarguesCounterexample {
  int center = -1;
  std::array<int, 3> lines{};
  std::array<int, 3> triangle1{};
  std::array<int, 3> triangle2{};
  std::array<int, 3> meets{};
};
struct DesarguesReport {
  bool holds = true;
  std::optional<DesarguesCounterexample> counterexample;
};
DesarguesReport desargues_check(const IncidenceStructure& s,
                                long long budget = kDefaultGeometryBudget);

/// Injective incidence-preserving copy of the 9_3 Pappus configuration.
/// Points and lines are listed against the reference structure built
/// from the canonical set over two ternary factors.
struct PappusEmbedding {
  std::array<int, 9> points{};
  std::array<int, 9> lines{};
};
std::optional<PappusEmbedding> pappus_embed(
    const IncidenceStructure& s, long long budget = kDefaultGeometryBudget);

/// For every point o, ordered pair of distinct lines through o and point
/// p != o on the first line: how many q != o on the second line are
/// collinear with p. `strict` asks for exactly one everywhere; `holds`
/// tolerates at most one completion-free point per line pair.
struct CompletionReport {
  long long zero_triples = 0;
  long long one_triples = 0;
  long long multi_triples = 0;
  bool per_pair_at_most_one_zero = true;
  bool strict() const { return zero_triples == 0 && multi_triples == 0; }
  bool holds() const { return multi_triples == 0 && per_pair_at_most_one_zero; }
};
CompletionReport unique_completion_check(const IncidenceStructure& s);

/// Local line sizes around the identity point of an n-th power of a
/// cyclic-plane structure, checked against the difference-arithmetic
/// classification of the base set.
struct PowerLineProfile {
  int copies = 0;
  DiffProfile base_profile;
  bool support_bound = true;        // every u in D-D has |supp(u)| <= 2
  bool size4_match = true;          // local size 4 <=> both coords admissible
  bool size3_match = true;          // local size 3 <=> coords split 4/3-admissible
  bool triple_support_rule = true;  // meeting lines have |supp| <= 3; = 3 -> size 2
  long long size4_lines = 0;
  long long size3_lines = 0;
  std::map<std::pair<int, int>, int> size4_per_coordinate_pair;
  bool all_match() const {
    return support_bound && size4_match && size3_match && triple_support_rule;
  }
};
PowerLineProfile power_line_profile(const IncidenceStructure& s);

}  // namespace qdslab

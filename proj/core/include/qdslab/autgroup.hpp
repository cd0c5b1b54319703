#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qdslab/incidence.hpp"

namespace qdslab {

/// An incidence-preserving pair of permutations. The line permutation is
/// always the set image of the point permutation; structures handled
/// here have no repeated lines, so the pair is determined by its point
/// part.
struct AutPair {
  std::vector<int> point_perm;
  std::vector<int> line_perm;

  bool operator==(const AutPair& o) const { return point_perm == o.point_perm; }
  bool operator<(const AutPair& o) const { return point_perm < o.point_perm; }
};

AutPair identity_pair(const IncidenceStructure& s);
AutPair compose(const AutPair& first, const AutPair& then);
AutPair inverse_pair(const AutPair& p);
bool is_automorphism(const IncidenceStructure& s, const AutPair& p);

/// Derive the line permutation from a point permutation by mapping each
/// line's point set; nullopt when some image set is not a line.
std::optional<AutPair> pair_from_point_perm(const IncidenceStructure& s,
                                            const std::vector<int>& point_perm);

/// Automorphism group as generators plus exact order, computed by an
/// orbit-stabilizer chain over the points with individualize-refine
/// searches on the bipartite incidence graph.
struct PermGroup {
  std::vector<AutPair> generators;   // sorted, deduplicated
  std::uint64_t order = 1;
  std::vector<std::vector<int>> point_orbits;
};

struct SearchCaps {
  long long max_steps = 200'000'000;
  std::uint64_t enumeration_cap = 1'000'000;
};

PermGroup automorphism_group(const IncidenceStructure& s, SearchCaps caps = {});

/// Subgroup fixing one point.
PermGroup stabilizer(const IncidenceStructure& s, int point,
                     SearchCaps caps = {});

/// Explicit element list of a computed group; throws OrderCapExceeded
/// past the enumeration cap.
std::vector<AutPair> enumerate_group(const IncidenceStructure& s,
                                     const PermGroup& group,
                                     std::uint64_t cap = 1'000'000);

/// Isomorphism witness (point and line bijections onto the second
/// structure) or a certified nullopt once the refinement search is
/// exhausted.
std::optional<AutPair> isomorphism(const IncidenceStructure& a,
                                   const IncidenceStructure& b,
                                   SearchCaps caps = {});

/// The |G| translation automorphisms of a provenance structure.
std::vector<AutPair> translations(const IncidenceStructure& s);

/// Configuration automorphism induced by a group automorphism f (given
/// as an image table) when f(D) is a translate shift * D.
struct LiftedAut {
  AutPair pair;
  int shift = 0;
};
std::optional<LiftedAut> lift_group_automorphism(const IncidenceStructure& s,
                                                 const std::vector<int>& f);

/// Block-permutation automorphism of an n-th power structure.
AutPair coordinate_permutation_aut(const IncidenceStructure& s,
                                   const std::vector<int>& beta);

/// Componentwise map of a sum structure; present exactly when every
/// factor pair has equal point and line label maps.
std::optional<AutPair> product_automorphism(
    const IncidenceStructure& s, const std::vector<AutPair>& factor_pairs);

/// Iterated lift of a base automorphism around a k-cycle: f_0 = f and
/// the next point map is the previous line label map. Closes when the
/// sequence returns to f_0 after k steps; then the combined map is an
/// automorphism of cycle(k) + base.
struct CyclicLiftResult {
  bool closes = false;
  int failed_at = -1;                       // step where the recursion broke
  std::vector<std::vector<int>> point_maps; // f'_0 .. f'_{k-1}
  std::vector<std::vector<int>> label_maps; // f''_0 .. f''_{k-1}
  IncidenceStructure lifted_structure;
  std::optional<AutPair> lifted;
};
CyclicLiftResult cyclic_lift(const IncidenceStructure& base, const AutPair& f,
                             int k);

/// Structural checks behind a semidirect-product description of Aut:
/// translations are automorphisms forming a transitive normal subgroup,
/// the order factors as |G| times the point stabilizer order, and the
/// stabilizer order equals the expected value.
struct TranslationStructureReport {
  bool translations_are_automorphisms = false;
  bool transitive = false;
  bool normal = false;
  bool order_factors = false;
  bool stabilizer_matches = false;
  std::uint64_t aut_order = 0;
  std::uint64_t stabilizer_order = 0;
  std::uint64_t expected_stabilizer = 0;
  bool all_pass() const {
    return translations_are_automorphisms && transitive && normal &&
           order_factors && stabilizer_matches;
  }
};
TranslationStructureReport verify_translation_structure(
    const IncidenceStructure& s, std::uint64_t expected_stabilizer,
    SearchCaps caps = {});

}  // namespace qdslab

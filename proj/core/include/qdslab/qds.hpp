#pragma once

#include <optional>
#include <vector>

#include "qdslab/group.hpp"

namespace qdslab {

/// A candidate (quasi) difference set, stored sorted and normalized by a
/// left translation so that the identity belongs to the set. The applied
/// translation is kept as normalization_shift. Immutable.
class QDSet {
 public:
  QDSet(Group group, std::vector<int> elements);

  const Group& group() const { return group_; }
  const std::vector<int>& elements() const { return elements_; }
  int normalization_shift() const { return shift_; }
  int size() const { return static_cast<int>(elements_.size()); }
  bool contains(int e) const;

  bool operator==(const QDSet& o) const {
    return group_ == o.group_ && elements_ == o.elements_;
  }

 private:
  Group group_;
  std::vector<int> elements_;
  int shift_ = 0;
};

/// Quasi difference set test: every nonidentity c has at most one ordered
/// pair (a, b) in D x D with a * b^-1 = c.
bool is_qds(const Group& g, const std::vector<int>& d);
bool is_qds(const QDSet& d);

/// Perfect (Singer) difference set test: every nonidentity c has exactly
/// one such pair.
bool is_perfect_difference_set(const Group& g, const std::vector<int>& d);
bool is_perfect_difference_set(const QDSet& d);

/// Quadruple cancellation condition on D: whenever
/// d1 d2^-1 d3 d4^-1 lies in D D^-1, one of d1=d2, d3=d4, d1=d4, d3=d2
/// holds. Throws NotAQds when D is not a quasi difference set.
bool satisfies_star(const Group& g, const std::vector<int>& d);
bool satisfies_star(const QDSet& d);

/// The canonical set {zero, e_1, ..., e_r} in C_{m1} + ... + C_{mr}.
/// A quasi difference set whenever every modulus exceeds 2.
QDSet canonical_set(const std::vector<int>& moduli);

/// Union of the two sets embedded into the direct sum,
/// |D1| + |D2| - 1 elements. Inputs must be quasi difference sets
/// containing the identity; the result is one as well.
QDSet qds_sum(const QDSet& a, const QDSet& b);

/// All perfect difference sets of size q+1 in C_{q^2+q+1} that contain 0
/// and are translates of the lexicographically least one, sorted. These
/// q+1 sets determine the same cyclic projective plane PG(2, q).
std::vector<QDSet> singer_search(int q, int group_order_cap = 500);

/// Full inventory: every 0-containing perfect difference set, grouped
/// into translation classes keyed by the least member.
struct SingerClasses {
  std::vector<std::vector<int>> class_reps;               // sorted, min-lex
  std::vector<std::vector<std::vector<int>>> classes;     // members per rep
};
SingerClasses singer_translation_classes(int q, int group_order_cap = 500);

/// Witness for the embedding hypothesis: d1..d4 in D \ {1} with d1 != d3,
/// d1^2 = d2^-1 and d3^2 = d4^-1. Lexicographically least witness.
struct PappusWitness {
  int d1, d2, d3, d4;
};
std::optional<PappusWitness> pappus_condition(const Group& g,
                                              const std::vector<int>& d);
std::optional<PappusWitness> pappus_condition(const QDSet& d);

/// Per-element solvability of d_i + d_j + d_r = 0 inside D (abelian
/// notation; d_j = d_r allowed).
enum class TriangleKind { All, AllButOne, Fails };
struct TriangleReport {
  TriangleKind kind = TriangleKind::Fails;
  int exceptional = -1;        // the single element without a triple
  std::vector<int> lacking;    // all elements without a triple
};
TriangleReport triangle_condition(const Group& g, const std::vector<int>& d);
TriangleReport triangle_condition(const QDSet& d);

/// Difference arithmetic of D in an abelian group, plus the two
/// admissibility sets that classify local line sizes in powers of
/// cyclic planes.
struct DiffProfile {
  std::vector<int> neg_d;              // -D
  std::vector<int> d_plus_d;           // D + D
  std::vector<int> neg_2d;             // -2D
  std::vector<int> d_minus_d;          // D - D
  std::vector<int> size4_admissible;   // (-(D+D)) cap D minus (-2D cup -D)
  std::vector<int> size3_admissible;   // (-(D+D)) cap D cap (-2D) minus -D
};
DiffProfile diff_profile(const Group& g, const std::vector<int>& d);
DiffProfile diff_profile(const QDSet& d);

/// Partition of the coordinates of a cyclic product into the minimal
/// blocks such that every element of D is supported inside one block.
struct FactorSplit {
  std::vector<std::vector<int>> blocks;      // coordinate indices per block
  std::vector<Group> groups;                 // group of each block
  std::vector<std::vector<int>> sets;        // D restricted to each block
};
FactorSplit factor_split(const Group& g, const std::vector<int>& d);

/// Recognize D as an n-fold copy of one base set over equal cyclic
/// factors; nullopt when the shape does not match.
struct PowerDecomposition {
  Group base;
  std::vector<int> base_elements;
  int copies = 0;
};
std::optional<PowerDecomposition> power_decomposition(const Group& g,
                                                      const std::vector<int>& d);

}  // namespace qdslab

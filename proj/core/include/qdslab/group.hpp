#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qdslab/errors.hpp"

namespace qdslab {

enum class GroupKind { CyclicProduct, Cayley };

/// A finite group whose elements are indexed 0..order()-1.
///
/// Two representations are supported:
///  - CyclicProduct: C_{m1} + ... + C_{mr}. An element is a residue
///    sequence encoded in mixed radix, most significant factor first,
///    so index order equals lexicographic order on residue sequences
///    and the identity is index 0.
///  - Cayley: an explicit multiplication table, validated on
///    construction (Latin square, identity, two-sided inverses, and
///    exhaustive associativity for orders within the cap).
///
/// Groups are immutable after construction; all operations are pure.
class Group {
 public:
  static constexpr long long kCyclicOrderCap = 1'000'000;
  static constexpr int kCayleyOrderCap = 4096;

  static Group cyclic_product(std::vector<int> moduli,
                              long long order_cap = kCyclicOrderCap);
  static Group cyclic(int n) { return cyclic_product({n}); }
  static Group from_cayley(std::vector<std::vector<int>> table,
                           int order_cap = kCayleyOrderCap);

  GroupKind kind() const { return kind_; }
  int order() const { return order_; }
  bool is_abelian() const { return abelian_; }
  bool is_cyclic() const {
    return kind_ == GroupKind::CyclicProduct && moduli_.size() == 1;
  }
  bool is_cyclic_product() const { return kind_ == GroupKind::CyclicProduct; }

  /// Moduli of a cyclic product; empty for Cayley groups.
  const std::vector<int>& moduli() const { return moduli_; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  int identity() const { return identity_; }
  int op(int a, int b) const;
  int inverse(int a) const;

  /// Residue sequence of an element (CyclicProduct only).
  std::vector<int> residues(int a) const;
  int from_residues(const std::vector<int>& r) const;

  bool operator==(const Group& o) const;
  bool operator!=(const Group& o) const { return !(*this == o); }

 private:
  Group() = default;
  void check_element(int a) const;

  GroupKind kind_ = GroupKind::CyclicProduct;
  std::vector<int> moduli_;
  std::vector<long long> strides_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  int order_ = 1;
  int identity_ = 0;
  bool abelian_ = true;
};

/// Closure of S together with inverses and the identity; sorted.
std::vector<int> subgroup_generated(const Group& g, const std::vector<int>& s);

/// Left stabilizer {g : g*D = D}; sorted. A subgroup whose order divides
/// both |G| and |D| (for nonempty D).
std::vector<int> left_stabilizer(const Group& g, const std::vector<int>& d);

/// Direct sum. Cyclic products concatenate their moduli; any mix with a
/// Cayley group produces a validated Cayley table.
Group direct_sum(const Group& a, const Group& b);

/// Standard inclusions and projections of a direct sum, on element
/// indices. The sum encodes (x, y) as x * |b| + y.
int embed_first(const Group& a, const Group& b, int x);
int embed_second(const Group& a, const Group& b, int y);
std::pair<int, int> split_element(const Group& a, const Group& b, int xy);

/// A unit alpha of Z_n with alpha*D equal to a translate shift + D.
struct MultiplierMap {
  int factor;
  int shift;
};

/// All multiplier maps of D in a cyclic group, sorted by factor.
/// Always contains {1, 0}. The shift is the least witness.
std::vector<MultiplierMap> multiplier_maps(const Group& g,
                                           const std::vector<int>& d);

/// Coordinates where an element of a cyclic product is nonzero.
std::vector<int> element_support(const Group& g, int a);

/// Human-readable element label: "5" for rank-one groups and Cayley
/// indices, "1,0,2" for products.
std::string element_label(const Group& g, int a);
int parse_element_label(const Group& g, const std::string& text);

}  // namespace qdslab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdslab/qds.hpp"

namespace qdslab {

/// Group and set that generated a structure.
struct Provenance {
  Group group;
  QDSet qds;
};

/// A point/line incidence system. Points are indexed 0..num_points()-1;
/// for structures built from a group, point index equals element index
/// (so index order is the lexicographic label order). Lines are sorted
/// point-index sets; repeated cosets are stored once, labelled by the
/// least group element whose coset they are. Immutable after build;
/// all queries are pure and safe for concurrent readers.
class IncidenceStructure {
 public:
  /// Empty structure; overwrite with build/free_standing.
  IncidenceStructure() = default;

  /// The structure whose points are the group elements and whose lines
  /// are the distinct cosets b*D.
  static IncidenceStructure build(const Group& g, const QDSet& d);

  /// A structure given directly by its lines. Lines may repeat; no
  /// provenance is attached.
  static IncidenceStructure free_standing(int num_points,
                                          std::vector<std::vector<int>> lines);

  int num_points() const { return num_points_; }
  int num_lines() const { return static_cast<int>(lines_.size()); }
  const std::vector<int>& line(int l) const;
  int line_label(int l) const;
  const std::vector<int>& pencil(int p) const;
  bool incident(int p, int l) const;

  bool has_provenance() const { return static_cast<bool>(prov_); }
  const Provenance& provenance() const;

  /// Index of the line equal to the coset label*D (provenance only).
  int line_of_label(int label) const;

  /// True when every line corresponds to exactly one group label.
  bool labels_faithful() const;

  bool same_incidences(const IncidenceStructure& o) const {
    return num_points_ == o.num_points_ && lines_ == o.lines_;
  }

  long long incidence_count() const;

 private:
  void finish_indexes();
  int num_points_ = 0;
  std::vector<std::vector<int>> lines_;
  std::vector<int> labels_;
  std::vector<std::vector<int>> pencils_;
  std::vector<std::uint64_t> bits_;  // point-major incidence bitmap
  int words_ = 0;
  std::optional<Provenance> prov_;
  std::vector<int> coset_line_;
};

/// Partial linear space: two distinct points share at most one line.
bool is_pls(const IncidenceStructure& s);

/// Partial linear space with constant point degree equal to constant
/// line size, both at least 2.
bool is_configuration(const IncidenceStructure& s);

bool collinear(const IncidenceStructure& s, int a, int b);
std::optional<int> join(const IncidenceStructure& s, int a, int b);
std::optional<int> meet(const IncidenceStructure& s, int l1, int l2);

/// Label-algebra counterparts of pencil/collinear/join/meet for
/// structures with provenance; used to cross-check the combinatorial
/// queries against the coset arithmetic.
std::vector<int> pencil_algebraic(const IncidenceStructure& s, int a);
bool collinear_algebraic(const IncidenceStructure& s, int a, int b);
std::optional<int> join_algebraic(const IncidenceStructure& s, int a, int b);
std::optional<int> meet_algebraic(const IncidenceStructure& s, int l1, int l2);

/// Connected component of a point under collinearity.
struct Component {
  std::vector<int> points;               // sorted parent point indices
  std::vector<int> lines;                // parent lines inside the component
  IncidenceStructure sub;                // relabelled induced structure
};
Component component(const IncidenceStructure& s, int a);

/// Induced substructure around a point: all points collinear with the
/// center (center included). `lines` keeps the classical rule (at least
/// two local points); `meeting_lines` also lists lines that touch the
/// point set in a single point.
struct LocalLine {
  int line;
  std::vector<int> points;
};
struct Neighborhood {
  int center = 0;
  std::vector<int> points;
  std::vector<LocalLine> lines;
  std::vector<LocalLine> meeting_lines;
};
Neighborhood neighborhood(const IncidenceStructure& s, int a);

/// Structure with the roles of points and lines swapped.
IncidenceStructure dual(const IncidenceStructure& s);

/// The involutive correlation (a) -> [a^-1], [a] -> (a^-1) of an abelian
/// provenance structure. Requires faithful line labels.
struct Correlation {
  std::vector<int> point_to_line;
  std::vector<int> line_to_point;
};
Correlation standard_correlation(const IncidenceStructure& s);

/// Points a with a*a in D.
std::vector<int> selfconjugate_points(const Group& g, const std::vector<int>& d);
std::vector<int> selfconjugate_points(const IncidenceStructure& s);

/// Substructure obtained by freezing the coordinates outside `keep` to
/// the residues in `fixed` (given in ascending order of the frozen
/// coordinates), together with the isomorphic reference structure built
/// from the kept factors and the witnessing point maps.
struct JPart {
  std::vector<int> points;               // parent points of the part
  IncidenceStructure sub;                // induced substructure, relabelled
  std::vector<int> sub_point_to_parent;
  IncidenceStructure reference;          // build over the kept factors
  std::vector<int> reference_to_parent;  // reference point -> parent point
};
JPart j_part(const IncidenceStructure& s, const std::vector<int>& keep,
             const std::vector<int>& fixed);

/// build(direct_sum, qds_sum) of two provenance structures.
IncidenceStructure sum_structure(const IncidenceStructure& a,
                                 const IncidenceStructure& b);

/// n-fold sum of a structure with itself.
IncidenceStructure power_structure(const IncidenceStructure& s, int n);

enum class ExportFormat { Json, Matrix, LeviDot };
ExportFormat parse_export_format(const std::string& name);

/// Deterministic serialization; identical structures yield identical
/// bytes. Formats: json (schema in the CLI docs), matrix (one '0'/'1'
/// row per point), levi-dot (bipartite incidence graph).
std::string export_structure(const IncidenceStructure& s, ExportFormat format);

}  // namespace qdslab

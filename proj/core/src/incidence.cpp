#include "qdslab/incidence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace qdslab {

namespace {

void check_point(const IncidenceStructure& s, int p) {
  if (p < 0 || p >= s.num_points()) throw ElementOutOfRange("point out of range");
}

void check_line(const IncidenceStructure& s, int l) {
  if (l < 0 || l >= s.num_lines()) throw ElementOutOfRange("line out of range");
}

}  // namespace

IncidenceStructure IncidenceStructure::build(const Group& g, const QDSet& d) {
  if (d.group() != g) throw Error("set does not live in the given group");
  if (d.elements().empty()) throw EmptyDelta("empty set");
  IncidenceStructure s;
  s.num_points_ = g.order();
  s.coset_line_.assign(g.order(), -1);
  std::map<std::vector<int>, int> seen;
  for (int b = 0; b < g.order(); ++b) {
    std::vector<int> pts;
    pts.reserve(d.elements().size());
    for (int e : d.elements()) pts.push_back(g.op(b, e));
    std::sort(pts.begin(), pts.end());
    auto it = seen.find(pts);
    if (it == seen.end()) {
      int idx = static_cast<int>(s.lines_.size());
      seen.emplace(pts, idx);
      s.lines_.push_back(std::move(pts));
      s.labels_.push_back(b);
      s.coset_line_[b] = idx;
    } else {
      s.coset_line_[b] = it->second;
    }
  }
  // Count formulas: |G|/|G_D| lines, each of size |D|, point degree |D|/|G_D|.
  std::vector<int> stab = left_stabilizer(g, d.elements());
  const int stab_order = static_cast<int>(stab.size());
  if (static_cast<int>(s.lines_.size()) * stab_order != g.order())
    throw Error("line count does not match stabilizer index");
  s.prov_ = Provenance{g, d};
  s.finish_indexes();
  const int degree = d.size() / stab_order;
  for (int p = 0; p < s.num_points_; ++p)
    if (static_cast<int>(s.pencils_[p].size()) != degree)
      throw Error("point degree does not match |D|/|G_D|");
  return s;
}

IncidenceStructure IncidenceStructure::free_standing(
    int num_points, std::vector<std::vector<int>> lines) {
  if (num_points < 0) throw Error("negative point count");
  IncidenceStructure s;
  s.num_points_ = num_points;
  for (auto& l : lines) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    for (int p : l)
      if (p < 0 || p >= num_points) throw ElementOutOfRange("line point out of range");
  }
  s.lines_ = std::move(lines);
  s.labels_.resize(s.lines_.size());
  std::iota(s.labels_.begin(), s.labels_.end(), 0);
  s.finish_indexes();
  return s;
}

void IncidenceStructure::finish_indexes() {
  words_ = (num_lines() + 63) / 64;
  bits_.assign(static_cast<std::size_t>(num_points_) * words_, 0);
  pencils_.assign(num_points_, {});
  for (int l = 0; l < num_lines(); ++l)
    for (int p : lines_[l]) {
      bits_[static_cast<std::size_t>(p) * words_ + (l >> 6)] |= 1ull << (l & 63);
      pencils_[p].push_back(l);
    }
}

const std::vector<int>& IncidenceStructure::line(int l) const {
  check_line(*this, l);
  return lines_[l];
}

int IncidenceStructure::line_label(int l) const {
  check_line(*this, l);
  return labels_[l];
}

const std::vector<int>& IncidenceStructure::pencil(int p) const {
  check_point(*this, p);
  return pencils_[p];
}

bool IncidenceStructure::incident(int p, int l) const {
  check_point(*this, p);
  check_line(*this, l);
  return (bits_[static_cast<std::size_t>(p) * words_ + (l >> 6)] >> (l & 63)) & 1;
}

const Provenance& IncidenceStructure::provenance() const {
  if (!prov_) throw NoProvenance("structure has no provenance");
  return *prov_;
}

int IncidenceStructure::line_of_label(int label) const {
  if (!prov_) throw NoProvenance("structure has no provenance");
  if (label < 0 || label >= static_cast<int>(coset_line_.size()))
    throw ElementOutOfRange("label out of range");
  return coset_line_[label];
}

bool IncidenceStructure::labels_faithful() const {
  return prov_ && num_lines() == prov_->group.order();
}

long long IncidenceStructure::incidence_count() const {
  long long total = 0;
  for (const auto& l : lines_) total += static_cast<long long>(l.size());
  return total;
}

bool is_pls(const IncidenceStructure& s) {
  for (int l1 = 0; l1 < s.num_lines(); ++l1)
    for (int l2 = l1 + 1; l2 < s.num_lines(); ++l2) {
      const auto& a = s.line(l1);
      const auto& b = s.line(l2);
      int common = 0;
      std::size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else { ++common; ++i; ++j; }
        if (common > 1) return false;
      }
    }
  return true;
}

bool is_configuration(const IncidenceStructure& s) {
  if (!is_pls(s)) return false;
  if (s.num_points() == 0 || s.num_lines() == 0) return false;
  const int degree = static_cast<int>(s.pencil(0).size());
  const int size = static_cast<int>(s.line(0).size());
  if (degree != size || degree < 2) return false;
  for (int p = 0; p < s.num_points(); ++p)
    if (static_cast<int>(s.pencil(p).size()) != degree) return false;
  for (int l = 0; l < s.num_lines(); ++l)
    if (static_cast<int>(s.line(l).size()) != size) return false;
  return true;
}

bool collinear(const IncidenceStructure& s, int a, int b) {
  check_point(s, a);
  check_point(s, b);
  if (a == b) return !s.pencil(a).empty();
  for (int l : s.pencil(a))
    if (s.incident(b, l)) return true;
  return false;
}

std::optional<int> join(const IncidenceStructure& s, int a, int b) {
  check_point(s, a);
  check_point(s, b);
  if (a == b) throw DuplicateLine("join requires two distinct points");
  for (int l : s.pencil(a))
    if (s.incident(b, l)) return l;
  return std::nullopt;
}

std::optional<int> meet(const IncidenceStructure& s, int l1, int l2) {
  check_line(s, l1);
  check_line(s, l2);
  if (l1 == l2) throw DuplicateLine("meet requires two distinct lines");
  const auto& a = s.line(l1);
  const auto& b = s.line(l2);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (a[i] > b[j]) ++j;
    else return a[i];
  }
  return std::nullopt;
}

std::vector<int> pencil_algebraic(const IncidenceStructure& s, int a) {
  const Provenance& prov = s.provenance();
  const Group& g = prov.group;
  std::set<int> out;
  for (int d : prov.qds.elements()) out.insert(s.line_of_label(g.op(a, g.inverse(d))));
  return {out.begin(), out.end()};
}

bool collinear_algebraic(const IncidenceStructure& s, int a, int b) {
  const Provenance& prov = s.provenance();
  const Group& g = prov.group;
  if (a == b) return !prov.qds.elements().empty();
  int target = g.op(g.inverse(a), b);
  for (int d1 : prov.qds.elements())
    for (int d2 : prov.qds.elements())
      if (g.op(g.inverse(d1), d2) == target) return true;
  return false;
}

std::optional<int> join_algebraic(const IncidenceStructure& s, int a, int b) {
  const Provenance& prov = s.provenance();
  const Group& g = prov.group;
  if (a == b) throw DuplicateLine("join requires two distinct points");
  int target = g.op(g.inverse(a), b);
  for (int d1 : prov.qds.elements())
    for (int d2 : prov.qds.elements())
      if (g.op(g.inverse(d1), d2) == target)
        return s.line_of_label(g.op(a, g.inverse(d1)));
  return std::nullopt;
}

std::optional<int> meet_algebraic(const IncidenceStructure& s, int l1, int l2) {
  const Provenance& prov = s.provenance();
  const Group& g = prov.group;
  if (l1 == l2) throw DuplicateLine("meet requires two distinct lines");
  int a = s.line_label(l1), b = s.line_label(l2);
  int target = g.op(g.inverse(a), b);
  for (int d1 : prov.qds.elements())
    for (int d2 : prov.qds.elements())
      if (g.op(d1, g.inverse(d2)) == target) return g.op(a, d1);
  return std::nullopt;
}

Component component(const IncidenceStructure& s, int a) {
  check_point(s, a);
  std::vector<bool> in_pts(s.num_points(), false), in_lines(s.num_lines(), false);
  std::vector<int> work{a};
  in_pts[a] = true;
  while (!work.empty()) {
    int p = work.back();
    work.pop_back();
    for (int l : s.pencil(p)) {
      if (in_lines[l]) continue;
      in_lines[l] = true;
      for (int q : s.line(l))
        if (!in_pts[q]) {
          in_pts[q] = true;
          work.push_back(q);
        }
    }
  }
  Component c;
  std::vector<int> relabel(s.num_points(), -1);
  for (int p = 0; p < s.num_points(); ++p)
    if (in_pts[p]) {
      relabel[p] = static_cast<int>(c.points.size());
      c.points.push_back(p);
    }
  std::vector<std::vector<int>> sub_lines;
  for (int l = 0; l < s.num_lines(); ++l)
    if (in_lines[l]) {
      c.lines.push_back(l);
      std::vector<int> pts;
      for (int q : s.line(l)) pts.push_back(relabel[q]);
      sub_lines.push_back(std::move(pts));
    }
  c.sub = IncidenceStructure::free_standing(static_cast<int>(c.points.size()),
                                            std::move(sub_lines));
  return c;
}

Neighborhood neighborhood(const IncidenceStructure& s, int a) {
  check_point(s, a);
  Neighborhood n;
  n.center = a;
  std::vector<bool> in(s.num_points(), false);
  for (int p = 0; p < s.num_points(); ++p)
    if (collinear(s, a, p)) in[p] = true;
  for (int p = 0; p < s.num_points(); ++p)
    if (in[p]) n.points.push_back(p);
  for (int l = 0; l < s.num_lines(); ++l) {
    std::vector<int> local;
    for (int p : s.line(l))
      if (in[p]) local.push_back(p);
    if (local.empty()) continue;
    if (local.size() >= 2) n.lines.push_back({l, local});
    n.meeting_lines.push_back({l, std::move(local)});
  }
  return n;
}

IncidenceStructure dual(const IncidenceStructure& s) {
  std::vector<std::vector<int>> lines(s.num_points());
  for (int p = 0; p < s.num_points(); ++p) lines[p] = s.pencil(p);
  return IncidenceStructure::free_standing(s.num_lines(), std::move(lines));
}

Correlation standard_correlation(const IncidenceStructure& s) {
  const Provenance& prov = s.provenance();
  const Group& g = prov.group;
  if (!g.is_abelian()) throw NotAbelian("standard correlation needs an abelian group");
  if (!s.labels_faithful())
    throw LabelMapUnavailable("correlation needs one label per line");
  Correlation k;
  k.point_to_line.resize(s.num_points());
  k.line_to_point.resize(s.num_lines());
  for (int a = 0; a < s.num_points(); ++a)
    k.point_to_line[a] = s.line_of_label(g.inverse(a));
  for (int l = 0; l < s.num_lines(); ++l)
    k.line_to_point[l] = g.inverse(s.line_label(l));
  // Incidence-reversing by construction; verified here once.
  for (int a = 0; a < s.num_points(); ++a)
    for (int l : s.pencil(a))
      if (!s.incident(k.line_to_point[l], k.point_to_line[a]))
        throw Error("correlation failed incidence reversal");
  return k;
}

std::vector<int> selfconjugate_points(const Group& g, const std::vector<int>& d) {
  std::vector<int> set = d;
  std::sort(set.begin(), set.end());
  std::vector<int> out;
  for (int a = 0; a < g.order(); ++a)
    if (std::binary_search(set.begin(), set.end(), g.op(a, a))) out.push_back(a);
  return out;
}

std::vector<int> selfconjugate_points(const IncidenceStructure& s) {
  const Provenance& prov = s.provenance();
  return selfconjugate_points(prov.group, prov.qds.elements());
}

JPart j_part(const IncidenceStructure& s, const std::vector<int>& keep,
             const std::vector<int>& fixed) {
  const Provenance& prov = s.provenance();
  const Group& g = prov.group;
  if (!g.is_cyclic_product())
    throw BadProvenance("parts require a cyclic product group");
  const int r = static_cast<int>(g.moduli().size());
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) throw BadCoordinates("keep at least one coordinate");
  for (int c : kept)
    if (c < 0 || c >= r) throw BadCoordinates("coordinate out of range");
  std::vector<int> dropped;
  for (int c = 0; c < r; ++c)
    if (!std::binary_search(kept.begin(), kept.end(), c)) dropped.push_back(c);
  if (fixed.size() != dropped.size())
    throw BadCoordinates("fixed residues must match the dropped coordinates");
  for (std::size_t i = 0; i < dropped.size(); ++i)
    if (fixed[i] < 0 || fixed[i] >= g.moduli()[dropped[i]])
      throw BadCoordinates("fixed residue out of range");

  // Every set element must live entirely in the kept or dropped block.
  for (int e : prov.qds.elements()) {
    std::vector<int> supp = element_support(g, e);
    bool in_keep = true, in_drop = true;
    for (int c : supp) {
      if (std::binary_search(kept.begin(), kept.end(), c)) in_drop = false;
      else in_keep = false;
    }
    if (!in_keep && !in_drop)
      throw BadCoordinates("set element crosses the coordinate split");
  }

  JPart part;
  std::vector<int> relabel(s.num_points(), -1);
  for (int p = 0; p < s.num_points(); ++p) {
    std::vector<int> res = g.residues(p);
    bool match = true;
    for (std::size_t i = 0; i < dropped.size() && match; ++i)
      match = res[dropped[i]] == fixed[i];
    if (match) {
      relabel[p] = static_cast<int>(part.points.size());
      part.points.push_back(p);
    }
  }
  std::vector<std::vector<int>> sub_lines;
  for (int l = 0; l < s.num_lines(); ++l) {
    std::vector<int> local;
    for (int p : s.line(l))
      if (relabel[p] >= 0) local.push_back(relabel[p]);
    if (local.size() >= 2) sub_lines.push_back(std::move(local));
  }
  part.sub_point_to_parent = part.points;
  part.sub = IncidenceStructure::free_standing(
      static_cast<int>(part.points.size()), std::move(sub_lines));

  // Reference: the structure generated by the kept factors alone.
  std::vector<int> ref_moduli;
  for (int c : kept) ref_moduli.push_back(g.moduli()[c]);
  Group ref_group = Group::cyclic_product(ref_moduli);
  std::set<int> ref_set{ref_group.identity()};
  for (int e : prov.qds.elements()) {
    std::vector<int> supp = element_support(g, e);
    if (supp.empty()) continue;
    if (!std::binary_search(kept.begin(), kept.end(), supp[0])) continue;
    std::vector<int> res = g.residues(e);
    std::vector<int> proj;
    for (int c : kept) proj.push_back(res[c]);
    ref_set.insert(ref_group.from_residues(proj));
  }
  part.reference = IncidenceStructure::build(
      ref_group, QDSet(ref_group, {ref_set.begin(), ref_set.end()}));

  part.reference_to_parent.resize(ref_group.order());
  for (int x = 0; x < ref_group.order(); ++x) {
    std::vector<int> res(r, 0);
    std::vector<int> xres = ref_group.residues(x);
    for (std::size_t i = 0; i < kept.size(); ++i) res[kept[i]] = xres[i];
    for (std::size_t i = 0; i < dropped.size(); ++i) res[dropped[i]] = fixed[i];
    part.reference_to_parent[x] = g.from_residues(res);
  }

  // The coordinate map must carry reference incidences onto the part.
  if (part.reference.num_points() != part.sub.num_points() ||
      part.reference.num_lines() != part.sub.num_lines())
    throw Error("part does not match its reference structure");
  for (int l = 0; l < part.reference.num_lines(); ++l) {
    std::vector<int> image;
    for (int p : part.reference.line(l))
      image.push_back(relabel[part.reference_to_parent[p]]);
    std::sort(image.begin(), image.end());
    bool found = false;
    for (int m = 0; m < part.sub.num_lines() && !found; ++m)
      found = part.sub.line(m) == image;
    if (!found) throw Error("part reference line has no counterpart");
  }
  return part;
}

IncidenceStructure sum_structure(const IncidenceStructure& a,
                                 const IncidenceStructure& b) {
  const Provenance& pa = a.provenance();
  const Provenance& pb = b.provenance();
  QDSet d = qds_sum(pa.qds, pb.qds);
  return IncidenceStructure::build(d.group(), d);
}

IncidenceStructure power_structure(const IncidenceStructure& s, int n) {
  if (n < 1) throw Error("power requires n >= 1");
  IncidenceStructure out = s;
  for (int i = 1; i < n; ++i) out = sum_structure(out, s);
  return out;
}

ExportFormat parse_export_format(const std::string& name) {
  if (name == "json") return ExportFormat::Json;
  if (name == "matrix") return ExportFormat::Matrix;
  if (name == "levi-dot") return ExportFormat::LeviDot;
  throw UnknownFormat("unknown export format: " + name);
}

std::string export_structure(const IncidenceStructure& s, ExportFormat format) {
  std::ostringstream os;
  switch (format) {
    case ExportFormat::Matrix: {
      for (int p = 0; p < s.num_points(); ++p) {
        for (int l = 0; l < s.num_lines(); ++l) os << (s.incident(p, l) ? '1' : '0');
        os << '\n';
      }
      break;
    }
    case ExportFormat::LeviDot: {
      os << "graph levi {\n";
      for (int p = 0; p < s.num_points(); ++p) os << "  p" << p << ";\n";
      for (int l = 0; l < s.num_lines(); ++l) os << "  L" << l << ";\n";
      for (int p = 0; p < s.num_points(); ++p)
        for (int l : s.pencil(p)) os << "  p" << p << " -- L" << l << ";\n";
      os << "}\n";
      break;
    }
    case ExportFormat::Json: {
      os << "{\n  \"points\": [";
      for (int p = 0; p < s.num_points(); ++p) {
        if (p) os << ", ";
        if (s.has_provenance())
          os << '"' << element_label(s.provenance().group, p) << '"';
        else
          os << p;
      }
      os << "],\n  \"lines\": [";
      for (int l = 0; l < s.num_lines(); ++l) {
        if (l) os << ", ";
        os << "{\"label\": ";
        if (s.has_provenance())
          os << '"' << element_label(s.provenance().group, s.line_label(l)) << '"';
        else
          os << s.line_label(l);
        os << ", \"points\": [";
        const auto& pts = s.line(l);
        for (std::size_t i = 0; i < pts.size(); ++i) {
          if (i) os << ", ";
          os << pts[i];
        }
        os << "]}";
      }
      os << "],\n  \"num_points\": " << s.num_points()
         << ",\n  \"num_lines\": " << s.num_lines() << "\n}\n";
      break;
    }
  }
  return os.str();
}

}  // namespace qdslab

#include "qdslab/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace qdslab {

Group Group::cyclic_product(std::vector<int> moduli, long long order_cap) {
  if (moduli.empty()) throw Error("cyclic product needs at least one modulus");
  long long order = 1;
  for (int m : moduli) {
    if (m < 2) throw Error("modulus must be at least 2");
    order *= m;
    if (order > order_cap) throw OrderCapExceeded("group order exceeds cap");
  }
  Group g;
  g.kind_ = GroupKind::CyclicProduct;
  g.moduli_ = std::move(moduli);
  g.order_ = static_cast<int>(order);
  g.identity_ = 0;
  g.abelian_ = true;
  g.strides_.assign(g.moduli_.size(), 1);
  for (int i = static_cast<int>(g.moduli_.size()) - 2; i >= 0; --i)
    g.strides_[i] = g.strides_[i + 1] * g.moduli_[i + 1];
  return g;
}

Group Group::from_cayley(std::vector<std::vector<int>> table, int order_cap) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw NonGroupTable("empty table");
  if (n > order_cap) throw OrderCapExceeded("cayley table exceeds order cap");
  for (const auto& row : table)
    if (static_cast<int>(row.size()) != n)
      throw NonGroupTable("table is not square");
  for (const auto& row : table)
    for (int v : row)
      if (v < 0 || v >= n) throw NonGroupTable("entry out of range");

  // Latin square: every row and column is a permutation.
  for (int i = 0; i < n; ++i) {
    std::vector<bool> seen_row(n, false), seen_col(n, false);
    for (int j = 0; j < n; ++j) {
      if (seen_row[table[i][j]]) throw NonGroupTable("repeated entry in row");
      seen_row[table[i][j]] = true;
      if (seen_col[table[j][i]]) throw NonGroupTable("repeated entry in column");
      seen_col[table[j][i]] = true;
    }
  }

  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = table[e][x] == x && table[x][e] == x;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw NonGroupTable("no identity element");

  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (table[a][b] == identity && table[b][a] == identity) {
        inv[a] = b;
        break;
      }
    }
    if (inv[a] < 0) throw NonGroupTable("element without two-sided inverse");
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw NonGroupTable("associativity fails");

  bool abelian = true;
  for (int a = 0; a < n && abelian; ++a)
    for (int b = 0; b < n && abelian; ++b)
      abelian = table[a][b] == table[b][a];

  Group g;
  g.kind_ = GroupKind::Cayley;
  g.table_ = std::move(table);
  g.inv_ = std::move(inv);
  g.order_ = n;
  g.identity_ = identity;
  g.abelian_ = abelian;
  return g;
}

void Group::check_element(int a) const {
  if (a < 0 || a >= order_) throw ElementOutOfRange("element out of range");
}

int Group::op(int a, int b) const {
  check_element(a);
  check_element(b);
  if (kind_ == GroupKind::Cayley) return table_[a][b];
  int out = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    int ra = static_cast<int>(a / strides_[i]) % moduli_[i];
    int rb = static_cast<int>(b / strides_[i]) % moduli_[i];
    out += static_cast<int>(((ra + rb) % moduli_[i]) * strides_[i]);
  }
  return out;
}

int Group::inverse(int a) const {
  check_element(a);
  if (kind_ == GroupKind::Cayley) return inv_[a];
  int out = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    int ra = static_cast<int>(a / strides_[i]) % moduli_[i];
    out += static_cast<int>(((moduli_[i] - ra) % moduli_[i]) * strides_[i]);
  }
  return out;
}

std::vector<int> Group::residues(int a) const {
  check_element(a);
  if (kind_ != GroupKind::CyclicProduct)
    throw Error("residues require a cyclic product group");
  std::vector<int> r(moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    r[i] = static_cast<int>(a / strides_[i]) % moduli_[i];
  return r;
}

int Group::from_residues(const std::vector<int>& r) const {
  if (kind_ != GroupKind::CyclicProduct)
    throw Error("residues require a cyclic product group");
  if (r.size() != moduli_.size())
    throw ElementOutOfRange("residue sequence has wrong length");
  long long out = 0;
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (r[i] < 0 || r[i] >= moduli_[i])
      throw ElementOutOfRange("residue out of range");
    out += r[i] * strides_[i];
  }
  return static_cast<int>(out);
}

bool Group::operator==(const Group& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == GroupKind::CyclicProduct) return moduli_ == o.moduli_;
  return table_ == o.table_;
}

std::vector<int> subgroup_generated(const Group& g, const std::vector<int>& s) {
  std::vector<int> gens;
  for (int a : s) {
    gens.push_back(a);
    gens.push_back(g.inverse(a));
  }
  std::vector<bool> in(g.order(), false);
  std::vector<int> work{g.identity()};
  in[g.identity()] = true;
  while (!work.empty()) {
    int a = work.back();
    work.pop_back();
    for (int b : gens) {
      int c = g.op(a, b);
      if (!in[c]) {
        in[c] = true;
        work.push_back(c);
      }
    }
  }
  std::vector<int> out;
  for (int a = 0; a < g.order(); ++a)
    if (in[a]) out.push_back(a);
  return out;
}

std::vector<int> left_stabilizer(const Group& g, const std::vector<int>& d) {
  std::vector<int> sorted = d;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out;
  std::vector<int> image(sorted.size());
  for (int a = 0; a < g.order(); ++a) {
    for (std::size_t i = 0; i < sorted.size(); ++i) image[i] = g.op(a, sorted[i]);
    std::sort(image.begin(), image.end());
    if (image == sorted) out.push_back(a);
  }
  if (sorted.empty()) {
    out.resize(g.order());
    std::iota(out.begin(), out.end(), 0);
  }
  return out;
}

Group direct_sum(const Group& a, const Group& b) {
  if (a.is_cyclic_product() && b.is_cyclic_product()) {
    std::vector<int> moduli = a.moduli();
    moduli.insert(moduli.end(), b.moduli().begin(), b.moduli().end());
    return Group::cyclic_product(std::move(moduli));
  }
  const int na = a.order(), nb = b.order();
  if (static_cast<long long>(na) * nb > Group::kCayleyOrderCap)
    throw OrderCapExceeded("direct sum exceeds cayley order cap");
  std::vector<std::vector<int>> table(na * nb, std::vector<int>(na * nb));
  for (int x1 = 0; x1 < na; ++x1)
    for (int y1 = 0; y1 < nb; ++y1)
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2)
          table[x1 * nb + y1][x2 * nb + y2] =
              a.op(x1, x2) * nb + b.op(y1, y2);
  return Group::from_cayley(std::move(table));
}

int embed_first(const Group& a, const Group& b, int x) {
  if (x < 0 || x >= a.order()) throw ElementOutOfRange("embed out of range");
  return x * b.order() + b.identity();
}

int embed_second(const Group& a, const Group& b, int y) {
  if (y < 0 || y >= b.order()) throw ElementOutOfRange("embed out of range");
  return a.identity() * b.order() + y;
}

std::pair<int, int> split_element(const Group& a, const Group& b, int xy) {
  if (xy < 0 || xy >= a.order() * b.order())
    throw ElementOutOfRange("split out of range");
  return {xy / b.order(), xy % b.order()};
}

std::vector<MultiplierMap> multiplier_maps(const Group& g,
                                           const std::vector<int>& d) {
  if (!g.is_cyclic()) throw NotCyclic("multiplier maps require a cyclic group");
  const int n = g.order();
  std::vector<int> base = d;
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  std::vector<MultiplierMap> out;
  std::vector<int> scaled(base.size()), shifted(base.size());
  for (int alpha = 1; alpha < n; ++alpha) {
    if (std::gcd(alpha, n) != 1) continue;
    for (std::size_t i = 0; i < base.size(); ++i)
      scaled[i] = static_cast<int>((static_cast<long long>(alpha) * base[i]) % n);
    std::sort(scaled.begin(), scaled.end());
    for (int q = 0; q < n; ++q) {
      for (std::size_t i = 0; i < base.size(); ++i)
        shifted[i] = (q + base[i]) % n;
      std::sort(shifted.begin(), shifted.end());
      if (shifted == scaled) {
        out.push_back({alpha, q});
        break;
      }
    }
  }
  return out;
}

std::vector<int> element_support(const Group& g, int a) {
  std::vector<int> out;
  std::vector<int> r = g.residues(a);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] != 0) out.push_back(static_cast<int>(i));
  return out;
}

std::string element_label(const Group& g, int a) {
  if (a < 0 || a >= g.order()) throw ElementOutOfRange("element out of range");
  if (g.kind() == GroupKind::Cayley || g.moduli().size() == 1)
    return std::to_string(a);
  std::vector<int> r = g.residues(a);
  std::ostringstream os;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) os << ',';
    os << r[i];
  }
  return os.str();
}

int parse_element_label(const Group& g, const std::string& text) {
  std::vector<int> parts;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) throw ParseError("empty component in element label");
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(cur, &pos);
    } catch (const std::exception&) {
      throw ParseError("bad integer in element label: " + cur);
    }
    if (pos != cur.size()) throw ParseError("bad integer in element label: " + cur);
    parts.push_back(v);
    cur.clear();
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  flush();
  if (g.kind() == GroupKind::Cayley || g.moduli().size() == 1) {
    if (parts.size() != 1) throw ParseError("expected a single element index");
    if (parts[0] < 0 || parts[0] >= g.order())
      throw ElementOutOfRange("element out of range");
    return parts[0];
  }
  return g.from_residues(parts);
}

}  // namespace qdslab

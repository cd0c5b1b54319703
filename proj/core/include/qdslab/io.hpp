#pragma once

#include <cstdint>
#include <string>

#include "qdslab/incidence.hpp"

namespace qdslab {

inline constexpr const char* kVersion = "0.1.0";

/// On-disk description of a group plus candidate set. Cyclic products
/// list their moduli and write elements as residue sequences (bare
/// integers for a single factor); Cayley groups carry the full table and
/// write elements as indices. Unknown fields are rejected.
struct StructureDescription {
  Group group = Group::cyclic(2);
  QDSet qds = QDSet(Group::cyclic(2), {0});
  std::string name;
  std::string notes;
};

StructureDescription parse_description(const std::string& text);
StructureDescription load_description(const std::string& path);

/// Canonical serialization: sorted keys, sorted elements; reparsing
/// yields an equal description.
std::string serialize_description(const StructureDescription& d);

StructureDescription describe(const IncidenceStructure& s, std::string name = "");

/// FNV-1a digest used to stamp reports with their input.
std::uint64_t fnv1a64(const std::string& bytes);
std::string digest_hex(const std::string& bytes);

}  // namespace qdslab

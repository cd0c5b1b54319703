#include "qdslab/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qdslab {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw ParseError("unknown field '" + it.key() + "' in " + where);
  }
}

int element_from_json(const Group& g, const json& j) {
  if (j.is_number_integer()) {
    if (g.kind() == GroupKind::CyclicProduct && g.moduli().size() > 1)
      throw ParseError("product group elements must be residue arrays");
    int v = j.get<int>();
    if (v < 0 || v >= g.order()) throw ParseError("element index out of range");
    return v;
  }
  if (j.is_array()) {
    if (g.kind() != GroupKind::CyclicProduct)
      throw ParseError("cayley group elements must be indices");
    std::vector<int> res;
    for (const auto& c : j) {
      if (!c.is_number_integer()) throw ParseError("residue must be an integer");
      res.push_back(c.get<int>());
    }
    try {
      return g.from_residues(res);
    } catch (const ElementOutOfRange& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("element must be an integer or a residue array");
}

json element_to_json(const Group& g, int e) {
  if (g.kind() == GroupKind::Cayley || g.moduli().size() == 1) return json(e);
  return json(g.residues(e));
}

}  // namespace

StructureDescription parse_description(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid json: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("description must be a json object");
  reject_unknown(doc, {"group", "qds", "meta"}, "description");
  if (!doc.contains("group") || !doc.contains("qds"))
    throw ParseError("description needs 'group' and 'qds'");

  const json& jg = doc["group"];
  if (!jg.is_object()) throw ParseError("'group' must be an object");
  reject_unknown(jg, {"type", "moduli", "table"}, "group");
  if (!jg.contains("type") || !jg["type"].is_string())
    throw ParseError("group needs a string 'type'");
  std::string type = jg["type"].get<std::string>();

  Group group = Group::cyclic(2);
  if (type == "cyclic_product") {
    if (!jg.contains("moduli") || !jg["moduli"].is_array())
      throw ParseError("cyclic_product needs a 'moduli' array");
    std::vector<int> moduli;
    for (const auto& m : jg["moduli"]) {
      if (!m.is_number_integer()) throw ParseError("modulus must be an integer");
      moduli.push_back(m.get<int>());
    }
    try {
      group = Group::cyclic_product(moduli);
    } catch (const OrderCapExceeded&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  } else if (type == "cayley") {
    if (!jg.contains("table") || !jg["table"].is_array())
      throw ParseError("cayley needs a 'table' array");
    std::vector<std::vector<int>> table;
    for (const auto& row : jg["table"]) {
      if (!row.is_array()) throw ParseError("table rows must be arrays");
      std::vector<int> r;
      for (const auto& v : row) {
        if (!v.is_number_integer()) throw ParseError("table entry must be an integer");
        r.push_back(v.get<int>());
      }
      table.push_back(std::move(r));
    }
    try {
      group = Group::from_cayley(std::move(table));
    } catch (const OrderCapExceeded&) {
      throw;
    } catch (const NonGroupTable& e) {
      throw ParseError(e.what());
    }
  } else {
    throw ParseError("group type must be cyclic_product or cayley");
  }

  if (!doc["qds"].is_array()) throw ParseError("'qds' must be an array");
  std::vector<int> elements;
  for (const auto& e : doc["qds"]) elements.push_back(element_from_json(group, e));
  if (elements.empty()) throw ParseError("'qds' must be nonempty");

  StructureDescription desc{group, QDSet(group, elements), "", ""};
  if (doc.contains("meta")) {
    const json& jm = doc["meta"];
    if (!jm.is_object()) throw ParseError("'meta' must be an object");
    reject_unknown(jm, {"name", "notes"}, "meta");
    if (jm.contains("name")) desc.name = jm["name"].get<std::string>();
    if (jm.contains("notes")) desc.notes = jm["notes"].get<std::string>();
  }
  return desc;
}

StructureDescription load_description(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_description(buf.str());
}

std::string serialize_description(const StructureDescription& d) {
  json doc;
  if (d.group.kind() == GroupKind::CyclicProduct) {
    doc["group"] = {{"type", "cyclic_product"}, {"moduli", d.group.moduli()}};
  } else {
    doc["group"] = {{"type", "cayley"}, {"table", d.group.table()}};
  }
  json elems = json::array();
  for (int e : d.qds.elements()) elems.push_back(element_to_json(d.group, e));
  doc["qds"] = std::move(elems);
  if (!d.name.empty() || !d.notes.empty()) {
    json meta = json::object();
    if (!d.name.empty()) meta["name"] = d.name;
    if (!d.notes.empty()) meta["notes"] = d.notes;
    doc["meta"] = std::move(meta);
  }
  return doc.dump(2) + "\n";
}

StructureDescription describe(const IncidenceStructure& s, std::string name) {
  const Provenance& prov = s.provenance();
  return StructureDescription{prov.group, prov.qds, std::move(name), ""};
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_hex(const std::string& bytes) {
  static const char* hex = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace qdslab

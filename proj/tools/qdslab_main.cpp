// Command line front end: structure descriptions in, reports out.
//
// Exit codes: 0 success / all requested predicates true, 1 a predicate
// is false or no isomorphism exists, 2 input error, 3 resource cap.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdslab/autgroup.hpp"
#include "qdslab/geometry.hpp"
#include "qdslab/incidence.hpp"
#include "qdslab/io.hpp"

using nlohmann::json;
using namespace qdslab;

namespace {

struct Context {
  long long max_steps = 200'000'000;
  std::string out;
  SearchCaps caps() const { return SearchCaps{max_steps, 1'000'000}; }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_or_print(const std::string& out, const std::string& bytes) {
  if (out.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ParseError("cannot write file: " + out);
  f << bytes;
}

json labels_of(const Group& g, const std::vector<int>& elems) {
  json arr = json::array();
  for (int e : elems) arr.push_back(element_label(g, e));
  return arr;
}

int emit_report(const std::string& command, const std::string& input_bytes,
                json results, bool ok,
                std::chrono::steady_clock::time_point start) {
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count();
  json report{{"command", command},
              {"input_digest", digest_hex(input_bytes)},
              {"results", std::move(results)},
              {"version", kVersion},
              {"wall_time_ms", ms}};
  std::cout << report.dump(2) << "\n";
  return ok ? 0 : 1;
}

IncidenceStructure build_from(const StructureDescription& d) {
  return IncidenceStructure::build(d.group, d.qds);
}

int run_check(const Context& ctx, const std::string& file, bool q, bool star,
              bool perfect) {
  auto start = std::chrono::steady_clock::now();
  std::string bytes = slurp(file);
  StructureDescription d = parse_description(bytes);
  json results;
  bool all = true;
  if (q) {
    bool v = is_qds(d.qds);
    results["qds"] = v;
    all = all && v;
  }
  if (star) {
    bool v = satisfies_star(d.qds);
    results["star"] = v;
    all = all && v;
  }
  if (perfect) {
    bool v = is_perfect_difference_set(d.qds);
    results["perfect"] = v;
    all = all && v;
  }
  (void)ctx;
  return emit_report("check", bytes, std::move(results), all, start);
}

int run_build(const Context& ctx, const std::string& file) {
  auto start = std::chrono::steady_clock::now();
  std::string bytes = slurp(file);
  StructureDescription d = parse_description(bytes);
  IncidenceStructure s = build_from(d);
  json results{{"points", s.num_points()},
               {"lines", s.num_lines()},
               {"incidences", s.incidence_count()},
               {"line_size", static_cast<int>(s.line(0).size())},
               {"point_degree", static_cast<int>(s.pencil(0).size())},
               {"is_pls", is_pls(s)},
               {"is_configuration", is_configuration(s)}};
  if (!ctx.out.empty())
    write_or_print(ctx.out, export_structure(s, ExportFormat::Json));
  return emit_report("build", bytes, std::move(results), true, start);
}

int run_export(const Context& ctx, const std::string& file,
               const std::string& format) {
  std::string bytes = slurp(file);
  StructureDescription d = parse_description(bytes);
  IncidenceStructure s = build_from(d);
  write_or_print(ctx.out, export_structure(s, parse_export_format(format)));
  return 0;
}

int run_props(const Context& ctx, const std::string& file, bool veblen,
              bool desargues, bool pappus, bool dual_flag, bool completion) {
  auto start = std::chrono::steady_clock::now();
  std::string bytes = slurp(file);
  StructureDescription d = parse_description(bytes);
  IncidenceStructure s = build_from(d);
  json results;
  bool all = true;
  if (veblen) {
    VeblenReport r = veblen_check(s, ctx.max_steps);
    json entry{{"holds", r.holds}};
    if (r.counterexample) {
      const auto& c = *r.counterexample;
      entry["counterexample"] = {{"point", c[0]},
                                 {"lines", {c[1], c[2]}},
                                 {"transversals", {c[3], c[4]}}};
    }
    results["veblen"] = std::move(entry);
    all = all && r.holds;
  }
  if (desargues) {
    DesarguesReport r = desargues_check(s, ctx.max_steps);
    json entry{{"holds", r.holds}};
    if (r.counterexample) {
      const auto& c = *r.counterexample;
      entry["counterexample"] = {{"center", c.center},
                                 {"lines", c.lines},
                                 {"triangle1", c.triangle1},
                                 {"triangle2", c.triangle2},
                                 {"meets", c.meets}};
    }
    results["desargues"] = std::move(entry);
    all = all && r.holds;
  }
  if (pappus) {
    auto r = pappus_embed(s, ctx.max_steps);
    json entry{{"embedding_found", static_cast<bool>(r)}};
    if (r) {
      entry["points"] = r->points;
      entry["lines"] = r->lines;
    }
    results["pappus"] = std::move(entry);
    all = all && static_cast<bool>(r);
  }
  if (dual_flag) {
    Correlation k = standard_correlation(s);
    results["dual"] = {{"self_dual", true},
                       {"point_to_line", k.point_to_line},
                       {"line_to_point", k.line_to_point}};
  }
  if (completion) {
    CompletionReport r = unique_completion_check(s);
    results["unique_completion"] = {{"holds", r.holds()},
                                    {"strict", r.strict()},
                                    {"zero", r.zero_triples},
                                    {"one", r.one_triples},
                                    {"multi", r.multi_triples}};
    all = all && r.holds();
  }
  return emit_report("props", bytes, std::move(results), all, start);
}

int run_aut(const Context& ctx, const std::string& file, bool order_only,
            long long expected, const std::string& stab_label) {
  auto start = std::chrono::steady_clock::now();
  std::string bytes = slurp(file);
  StructureDescription d = parse_description(bytes);
  IncidenceStructure s = build_from(d);
  PermGroup group = automorphism_group(s, ctx.caps());
  json results{{"order", group.order},
               {"num_generators", group.generators.size()},
               {"num_point_orbits", group.point_orbits.size()}};
  if (!order_only) {
    json gens = json::array();
    for (const AutPair& g : group.generators)
      gens.push_back(json{{"points", g.point_perm}, {"lines", g.line_perm}});
    results["generators"] = std::move(gens);
  }
  bool ok = true;
  if (expected >= 0) {
    ok = group.order == static_cast<std::uint64_t>(expected);
    results["expected"] = expected;
    results["expected_matched"] = ok;
  }
  if (!stab_label.empty()) {
    int p = parse_element_label(d.group, stab_label);
    PermGroup st = stabilizer(s, p, ctx.caps());
    results["stabilizer"] = {{"point", element_label(d.group, p)},
                             {"order", st.order}};
  }
  return emit_report("aut", bytes, std::move(results), ok, start);
}

int run_iso(const Context& ctx, const std::string& file_a,
            const std::string& file_b) {
  auto start = std::chrono::steady_clock::now();
  std::string bytes_a = slurp(file_a);
  std::string bytes_b = slurp(file_b);
  IncidenceStructure sa = build_from(parse_description(bytes_a));
  IncidenceStructure sb = build_from(parse_description(bytes_b));
  auto witness = isomorphism(sa, sb, ctx.caps());
  json results{{"isomorphic", static_cast<bool>(witness)}};
  if (witness) {
    results["point_map"] = witness->point_perm;
    results["line_map"] = witness->line_perm;
  }
  return emit_report("iso", bytes_a + bytes_b, std::move(results),
                     static_cast<bool>(witness), start);
}

int run_make(const Context& ctx, const std::string& canonical,
             const std::vector<std::string>& sum,
             const std::vector<std::string>& power_args, int singer_q) {
  int selected = (!canonical.empty()) + (!sum.empty()) + (!power_args.empty()) +
                 (singer_q > 0);
  if (selected != 1)
    throw ParseError("choose exactly one of --canonical/--sum/--power/--singer");

  if (singer_q > 0) {
    std::vector<QDSet> sets = singer_search(singer_q);
    if (!ctx.out.empty()) {
      for (std::size_t i = 0; i < sets.size(); ++i) {
        StructureDescription d{sets[i].group(), sets[i],
                               "singer_q" + std::to_string(singer_q) + "_" +
                                   std::to_string(i + 1),
                               ""};
        std::ofstream f(ctx.out + std::to_string(i + 1) + ".json");
        if (!f) throw ParseError("cannot write output file");
        f << serialize_description(d);
      }
    } else {
      json arr = json::array();
      for (const QDSet& set : sets) {
        StructureDescription d{set.group(), set, "", ""};
        arr.push_back(json::parse(serialize_description(d)));
      }
      std::cout << arr.dump(2) << "\n";
    }
    return 0;
  }

  StructureDescription made;
  if (!canonical.empty()) {
    std::vector<int> moduli;
    std::string cur;
    std::istringstream in(canonical);
    while (std::getline(in, cur, ',')) moduli.push_back(std::stoi(cur));
    QDSet d = canonical_set(moduli);
    made = StructureDescription{d.group(), d, "", ""};
  } else if (!sum.empty()) {
    if (sum.size() != 2) throw ParseError("--sum needs two files");
    StructureDescription a = load_description(sum[0]);
    StructureDescription b = load_description(sum[1]);
    QDSet d = qds_sum(a.qds, b.qds);
    made = StructureDescription{d.group(), d, "", ""};
  } else {
    StructureDescription base = load_description(power_args[0]);
    int power_n = 0;
    try {
      power_n = std::stoi(power_args[1]);
    } catch (const std::exception&) {
      throw ParseError("--power needs an integer exponent");
    }
    if (power_n < 1) throw ParseError("--power needs n >= 1");
    QDSet d = base.qds;
    for (int i = 1; i < power_n; ++i) d = qds_sum(d, base.qds);
    made = StructureDescription{d.group(), d, "", ""};
  }
  write_or_print(ctx.out, serialize_description(made));
  return 0;
}

int run_neighborhood(const Context&, const std::string& file,
                     const std::string& point_label) {
  auto start = std::chrono::steady_clock::now();
  std::string bytes = slurp(file);
  StructureDescription d = parse_description(bytes);
  IncidenceStructure s = build_from(d);
  int p = parse_element_label(d.group, point_label);
  Neighborhood n = neighborhood(s, p);
  json lines = json::array();
  for (const LocalLine& l : n.lines)
    lines.push_back(json{{"line", element_label(d.group, s.line_label(l.line))},
                         {"points", labels_of(d.group, l.points)},
                         {"local_size", l.points.size()}});
  json meeting = json::array();
  for (const LocalLine& l : n.meeting_lines)
    meeting.push_back(json{{"line", element_label(d.group, s.line_label(l.line))},
                           {"local_size", l.points.size()}});
  json results{{"center", element_label(d.group, p)},
               {"points", labels_of(d.group, n.points)},
               {"lines", std::move(lines)},
               {"meeting_lines", std::move(meeting)}};
  return emit_report("neighborhood", bytes, std::move(results), true, start);
}

int run_component(const Context&, const std::string& file,
                  const std::string& point_label) {
  auto start = std::chrono::steady_clock::now();
  std::string bytes = slurp(file);
  StructureDescription d = parse_description(bytes);
  IncidenceStructure s = build_from(d);
  int p = parse_element_label(d.group, point_label);
  Component c = component(s, p);
  json results{{"point", element_label(d.group, p)},
               {"size", c.points.size()},
               {"lines", c.lines.size()},
               {"points", labels_of(d.group, c.points)},
               {"whole_structure", static_cast<int>(c.points.size()) ==
                                       s.num_points()}};
  return emit_report("component", bytes, std::move(results), true, start);
}

int run_part(const Context&, const std::string& file, const std::string& keep,
             const std::string& fix) {
  auto start = std::chrono::steady_clock::now();
  std::string bytes = slurp(file);
  StructureDescription d = parse_description(bytes);
  IncidenceStructure s = build_from(d);
  auto parse_ints = [](const std::string& text) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) out.push_back(std::stoi(cur));
    return out;
  };
  JPart part = j_part(s, parse_ints(keep), parse_ints(fix));
  json results{{"points", labels_of(d.group, part.points)},
               {"size", part.points.size()},
               {"lines", part.sub.num_lines()},
               {"reference_points", part.reference.num_points()},
               {"reference_lines", part.reference.num_lines()}};
  return emit_report("part", bytes, std::move(results), true, start);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incidence structures from quasi difference sets"};
  app.require_subcommand(1);
  Context ctx;
  app.add_option("--max-steps", ctx.max_steps, "search step budget")
      ->envname("QDSLAB_MAX_STEPS");

  std::string file, file_b, format = "json", point_label, stab_label;
  std::string canonical, keep, fix;
  std::vector<std::string> sum_files, power_args;
  bool flag_qds = false, flag_star = false, flag_perfect = false;
  bool flag_veblen = false, flag_desargues = false, flag_pappus = false;
  bool flag_dual = false, flag_completion = false, order_only = false;
  long long expected = -1;
  int singer_q = 0;

  CLI::App* c_check = app.add_subcommand("check", "evaluate set predicates");
  c_check->add_option("file", file)->required();
  c_check->add_flag("--qds", flag_qds);
  c_check->add_flag("--star", flag_star);
  c_check->add_flag("--perfect", flag_perfect);

  CLI::App* c_build = app.add_subcommand("build", "build and report counts");
  c_build->add_option("file", file)->required();
  c_build->add_option("--out", ctx.out);

  CLI::App* c_export = app.add_subcommand("export", "serialize a structure");
  c_export->add_option("file", file)->required();
  c_export->add_option("--format", format)->required();
  c_export->add_option("--out", ctx.out);

  CLI::App* c_props = app.add_subcommand("props", "geometric properties");
  c_props->add_option("file", file)->required();
  c_props->add_flag("--veblen", flag_veblen);
  c_props->add_flag("--desargues", flag_desargues);
  c_props->add_flag("--pappus", flag_pappus);
  c_props->add_flag("--dual", flag_dual);
  c_props->add_flag("--unique-completion", flag_completion);

  CLI::App* c_aut = app.add_subcommand("aut", "automorphism group");
  c_aut->add_option("file", file)->required();
  c_aut->add_flag("--order-only", order_only);
  c_aut->add_option("--expected", expected);
  c_aut->add_option("--stabilizer", stab_label);

  CLI::App* c_iso = app.add_subcommand("iso", "isomorphism test");
  c_iso->add_option("fileA", file)->required();
  c_iso->add_option("fileB", file_b)->required();

  CLI::App* c_make = app.add_subcommand("make", "emit structure descriptions");
  c_make->add_option("--canonical", canonical, "comma separated moduli");
  c_make->add_option("--sum", sum_files)->expected(2);
  c_make->add_option("--power", power_args, "base file and exponent")
      ->expected(2);
  c_make->add_option("--singer", singer_q);
  c_make->add_option("--out", ctx.out);

  CLI::App* c_nbhd = app.add_subcommand("neighborhood", "dump a neighborhood");
  c_nbhd->add_option("file", file)->required();
  c_nbhd->add_option("--point", point_label)->required();

  CLI::App* c_comp = app.add_subcommand("component", "connected component");
  c_comp->add_option("file", file)->required();
  c_comp->add_option("--point", point_label)->required();

  CLI::App* c_part = app.add_subcommand("part", "coordinate part extraction");
  c_part->add_option("file", file)->required();
  c_part->add_option("--keep", keep)->required();
  c_part->add_option("--fix", fix);

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_check->parsed())
      return run_check(ctx, file, flag_qds, flag_star, flag_perfect);
    if (c_build->parsed()) return run_build(ctx, file);
    if (c_export->parsed()) return run_export(ctx, file, format);
    if (c_props->parsed())
      return run_props(ctx, file, flag_veblen, flag_desargues, flag_pappus,
                       flag_dual, flag_completion);
    if (c_aut->parsed())
      return run_aut(ctx, file, order_only, expected, stab_label);
    if (c_iso->parsed()) return run_iso(ctx, file, file_b);
    if (c_make->parsed())
      return run_make(ctx, canonical, sum_files, power_args, singer_q);
    if (c_nbhd->parsed()) return run_neighborhood(ctx, file, point_label);
    if (c_comp->parsed()) return run_component(ctx, file, point_label);
    if (c_part->parsed()) return run_part(ctx, file, keep, fix);
  } catch (const OrderCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const SearchCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

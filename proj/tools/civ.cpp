// civ: command-line front end for the verification targets and exports.
//
//   civ verify <f4-table|f4-theorem|g2|finite-f4|lemmas|all> [options]
//   civ export <roots|table|graph|window> --format <json|csv|dot> [options]
//
// Exit codes: 0 all assertions pass, 1 an assertion failed, 2 usage error,
// 3 resource ceiling reached.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "civ/civgraph.hpp"
#include "civ/errors.hpp"
#include "civ/involutions.hpp"
#include "civ/serialize.hpp"
#include "civ/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Settings {
  std::string type = "F4";
  std::string class_spec;
  bool finite = false;
  int report_radius = 2;
  int storage_radius = 4;
  std::uint64_t seed = civ::VerifyOptions{}.seed;
  std::size_t ceiling = civ::kDefaultCeiling;
  std::size_t partner_samples = civ::VerifyOptions{}.partner_samples;
  std::size_t property_triples = civ::VerifyOptions{}.property_triples;
  std::string out;
  std::string format;
  std::string config;
};

/// Values from the config file fill in whatever was not given on the command line.
void apply_config(Settings& s, const CLI::App& app) {
  if (s.config.empty()) return;
  std::ifstream in(s.config);
  if (!in) throw civ::precondition_error("cannot read config file " + s.config);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw civ::precondition_error("config file " + s.config + ": " + e.what());
  }
  auto take = [&](const char* key, const char* flag, auto& field) {
    if (j.contains(key) && app.count(flag) == 0) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  take("type", "--type", s.type);
  take("class", "--class", s.class_spec);
  take("report_radius", "--report-radius", s.report_radius);
  take("storage_radius", "--storage-radius", s.storage_radius);
  take("seed", "--seed", s.seed);
  take("ceiling", "--ceiling", s.ceiling);
  take("partner_samples", "--samples", s.partner_samples);
  take("property_triples", "--triples", s.property_triples);
  take("out", "--out", s.out);
  take("format", "--format", s.format);
}

civ::VerifyOptions options_from(const Settings& s) {
  civ::VerifyOptions o;
  o.radii.report = s.report_radius;
  o.radii.storage = s.storage_radius;
  o.radii.ceiling = s.ceiling;
  o.seed = s.seed;
  o.partner_samples = s.partner_samples;
  o.property_triples = s.property_triples;
  return o;
}

std::string default_out_dir() {
  const char* env = std::getenv("CIV_OUT_DIR");
  return env && *env ? env : ".";
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

int cmd_verify(const std::string& target, const Settings& s) {
  const auto opt = options_from(s);
  auto rep = civ::run_verification(target, opt);
  const std::filesystem::path dir = s.out.empty() ? default_out_dir() : s.out;
  const std::string stem = "verify-" + target;
  write_file(dir / (stem + ".json"), rep.to_json().dump(2) + "\n");
  nlohmann::ordered_json meta;
  for (const auto& [k, v] : rep.timings) meta["timings_seconds"][k] = v;
  write_file(dir / (stem + ".meta.json"), meta.dump(2) + "\n");

  std::size_t failed = 0;
  for (const auto& r : rep.rows) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
    std::cout << '\n';
    failed += !r.passed;
  }
  std::cout << rep.rows.size() - failed << "/" << rep.rows.size() << " assertions passed; report "
            << (dir / (stem + ".json")).string() << '\n';
  return failed == 0 ? kExitPass : kExitFail;
}

/// --class accepts a class id, or a representative subset such as "r3,r5" / "{r3,r5}".
std::size_t resolve_affine_class(const civ::ClassTable& t, const std::string& spec) {
  if (spec.empty()) throw civ::precondition_error("--class is required for this export");
  if (std::all_of(spec.begin(), spec.end(), ::isdigit)) {
    std::size_t id = std::stoul(spec);
    if (id >= t.classes.size()) throw civ::precondition_error("class id out of range: " + spec);
    return id;
  }
  std::vector<int> idx;
  std::string cur;
  for (char ch : spec + ",") {
    if (std::isdigit(static_cast<unsigned char>(ch))) cur += ch;
    else if (!cur.empty()) idx.push_back(std::stoi(cur)), cur.clear();
  }
  civ::GeneratorSubset I(idx);
  for (const auto& c : t.classes)
    for (const auto& m : c.member_subsets)
      if (m == I) return c.id;
  throw civ::precondition_error("no class with representative subset " + I.to_string());
}

/// For finite graphs --class is a finite class id or its type name (first match).
std::size_t resolve_finite_class(const civ::FiniteInvolutionCatalog& cat, const std::string& spec) {
  if (spec.empty()) throw civ::precondition_error("--class is required for this export");
  if (std::all_of(spec.begin(), spec.end(), ::isdigit)) {
    std::size_t id = std::stoul(spec);
    if (id >= cat.classes().size()) throw civ::precondition_error("finite class id out of range: " + spec);
    return id;
  }
  for (const auto& c : cat.classes())
    if (c.type_name == spec || c.subset.to_string() == spec) return c.id;
  throw civ::precondition_error("no finite class named " + spec);
}

int cmd_export(const std::string& what, const Settings& s) {
  const std::string fmt = s.format.empty() ? (what == "table" ? "csv" : what == "graph" ? "dot" : "json") : s.format;
  auto bad_format = [&]() -> int {
    throw civ::precondition_error("format '" + fmt + "' is not available for '" + what + "'");
  };
  civ::AffineWeylContext ctx(civ::CoxeterType::parse(s.type));
  const auto opt = options_from(s);
  if (opt.radii.report < 0 || opt.radii.report > opt.radii.storage || opt.radii.storage > 8)
    throw civ::precondition_error("radii must satisfy 0 <= report <= storage <= 8");
  std::string text;

  if (what == "roots") {
    if (fmt == "json") {
      text = civ::io::to_json(ctx.roots).dump(2) + "\n";
    } else if (fmt == "csv") {
      std::ostringstream os;
      os << "index,length,height,coordinates\n";
      for (std::size_t i = 0; i < ctx.roots.size(); ++i) {
        const auto& r = ctx.roots.root(i);
        os << i << ',' << civ::to_string(r.length_class) << ',' << r.height() << ",\"";
        for (std::size_t k = 0; k < r.vector.size(); ++k) os << (k ? " " : "") << r.vector[k].to_string();
        os << "\"\n";
      }
      text = os.str();
    } else {
      return bad_format();
    }
  } else if (what == "table") {
    auto t = ctx.class_table(opt.radii);
    if (fmt == "csv") text = civ::io::table_csv(t);
    else if (fmt == "json") text = civ::io::to_json(t).dump(2) + "\n";
    else return bad_format();
  } else if (what == "graph" && s.finite) {
    const auto& G = *ctx.group;
    const auto& c = ctx.catalog.at(resolve_finite_class(ctx.catalog, s.class_spec));
    auto g = civ::finite_class_graph(G, c);
    if (fmt == "dot") {
      text = civ::io::to_dot(g, [](civ::Index a) { return "w" + std::to_string(a); }, ctx.roots.name() + " " + c.type_name);
    } else if (fmt == "json") {
      nlohmann::ordered_json j;
      j["type"] = ctx.roots.name();
      j["class"] = c.type_name;
      j["vertices"] = g.vertices;
      j["edges"] = g.edge_count();
      j["components"] = civ::components(g).size();
      j["diameter"] = civ::io::distance_json(civ::diameter(g));
      text = j.dump(2) + "\n";
    } else {
      return bad_format();
    }
  } else if (what == "graph" || what == "window") {
    auto t = ctx.class_table(opt.radii);
    const std::size_t id = resolve_affine_class(t, s.class_spec);
    const auto& G = *ctx.group;
    const auto& w = t.windows[id];
    if (what == "window") {
      if (fmt != "json") return bad_format();
      text = civ::io::to_json(G, t.classes[id], w).dump(2) + "\n";
    } else {
      auto g = civ::affine_class_graph(G, w);
      if (fmt == "dot") {
        text = civ::io::to_dot(g, [&](const civ::PackedAffine& x) { return civ::io::packed_label(G, x); },
                               ctx.roots.name() + " " + t.classes[id].subgraph_type + t.classes[id].representative_subset.to_string());
      } else if (fmt == "json") {
        text = civ::io::to_json(G, t.classes[id], civ::diameter_from_graph(g, w)).dump(2) + "\n";
      } else if (fmt == "csv") {
        text = civ::io::distance_csv(civ::diameter_from_graph(g, w));
      } else {
        return bad_format();
      }
    }
  } else {
    throw civ::precondition_error("unknown export '" + what + "'");
  }

  if (s.out.empty() && !std::getenv("CIV_OUT_DIR")) {
    std::cout << text;
  } else {
    std::filesystem::path p = s.out.empty() ? std::filesystem::path(default_out_dir()) / (what + "." + fmt) : std::filesystem::path(s.out);
    write_file(p, text);
    std::cerr << "wrote " << p.string() << '\n';
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Involution classes and commuting involution graphs of affine Weyl groups"};
  app.require_subcommand(1);
  Settings s;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--type", s.type, "Root system type for exports (e.g. F4, G2, B3)");
    sub->add_option("--class", s.class_spec, "Class id or representative subset, e.g. 3 or r3,r5");
    sub->add_option("--report-radius", s.report_radius, "Report radius (max-norm of translation coefficients)");
    sub->add_option("--storage-radius", s.storage_radius, "Storage radius used for routing paths");
    sub->add_option("--out", s.out, "Output directory (verify) or file (export); defaults to $CIV_OUT_DIR");
    sub->add_option("--format", s.format, "Output format: json, csv or dot");
    sub->add_option("--seed", s.seed, "Seed for sampled checks");
    sub->add_option("--ceiling", s.ceiling, "Element ceiling for orbit closures");
    sub->add_option("--samples", s.partner_samples, "Number of sampled (x, b) pairs for the partner suite");
    sub->add_option("--triples", s.property_triples, "Number of random triples for group-law checks");
    sub->add_option("--config", s.config, "JSON config file; command-line flags take precedence");
  };

  std::string target;
  auto* verify = app.add_subcommand("verify", "Run a verification target and write a JSON report");
  verify->add_option("target", target, "f4-table | f4-theorem | g2 | finite-f4 | lemmas | all")->required();
  add_common(verify);

  std::string what;
  auto* exp = app.add_subcommand("export", "Export roots, the class table, a class window or a graph");
  exp->add_option("what", what, "roots | table | window | graph")->required();
  exp->add_flag("--finite", s.finite, "Export the graph of a finite class of W instead of an affine window");
  add_common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    CLI::App* sub = verify->parsed() ? verify : exp;
    apply_config(s, *sub);
    return verify->parsed() ? cmd_verify(target, s) : cmd_export(what, s);
  } catch (const civ::resource_error& e) {
    std::cerr << "resource ceiling: " << e.what() << '\n';
    return kExitResource;
  } catch (const civ::precondition_error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const civ::construction_error& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}

#pragma once

/**
 * JSON, CSV and DOT output. Every listing is emitted in a fixed order and
 * JSON objects keep insertion order, so identical inputs give byte-identical
 * files. Exact rationals are always written as "p/q" strings (integers too:
 * "2/1"), which keeps a single parse path for readers.
 */

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "civ/affine.hpp"
#include "civ/affine_group.hpp"
#include "civ/civgraph.hpp"
#include "civ/involutions.hpp"
#include "civ/rootsys.hpp"
#include "civ/weyl.hpp"

namespace civ::io {

using json = nlohmann::ordered_json;

inline json to_json(const Scalar& s) { return s.to_string(); }

inline json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& c : v) out.push_back(c.to_string());
  return out;
}

inline Vector vector_from_json(const json& j) {
  std::vector<Scalar> c;
  for (const auto& s : j) c.push_back(Scalar::parse(s.get<std::string>()));
  return Vector(std::move(c));
}

/// {type, rank, roots, simple_roots, highest_root}; roots in the system's fixed order.
inline json to_json(const RootSystem& rs) {
  json out;
  out["type"] = rs.name();
  out["rank"] = rs.rank();
  json roots = json::array();
  for (const auto& r : rs.roots()) roots.push_back(to_json(r.vector));
  out["roots"] = std::move(roots);
  out["simple_roots"] = rs.simple_root_indices();
  out["highest_root"] = rs.highest_root_index();
  return out;
}

/// Row i is the image of e_i.
inline json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

inline json to_json(const WeylElement& w) { return to_json(w.matrix()); }

inline json to_json(const AffineElement& x) {
  json out;
  out["matrix"] = to_json(x.finite_part());
  out["translation_coeffs"] = x.translation().coefficients();
  return out;
}

inline json to_json(const AffineGroup& G, const PackedAffine& x) { return to_json(G.unpack(x)); }

/// Compact form for windows: finite-group index plus coroot coefficients.
inline json packed_json(const AffineGroup& G, const PackedAffine& x) {
  json out;
  out["hat"] = x.hat;
  out["translation_coeffs"] = std::vector<std::int32_t>(x.coeffs.begin(), x.coeffs.begin() + static_cast<std::ptrdiff_t>(G.rank()));
  return out;
}

inline json to_json(const WeylSet& s) {
  json out;
  out["closure"] = s.closure == WeylSet::Closure::group ? "group" : "conjugation";
  out["closure_depth"] = s.closure_depth;
  out["size"] = s.size();
  json gens = json::array();
  for (const auto& g : s.generators) gens.push_back(to_json(g));
  out["generators"] = std::move(gens);
  json el = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) el.push_back(json{{"depth", s.depth[i]}, {"matrix", to_json(s.elements[i])}});
  out["elements"] = std::move(el);
  return out;
}

inline json to_json(const ClassDescriptor& c) {
  json out;
  out["id"] = c.id;
  out["graph_type"] = c.subgraph_type;
  out["representative"] = c.representative_subset.to_string();
  std::vector<std::string> members;
  for (const auto& I : c.member_subsets) members.push_back(I.to_string());
  out["member_subsets"] = members;
  out["underlying_type"] = c.underlying_type;
  out["underlying_class"] = c.underlying_class;
  out["coset_invariant"] = c.invariant.coset;
  return out;
}

inline json to_json(const AffineGroup& G, const ClassDescriptor& c, const InvolutionClassWindow& w,
                    bool full_elements = true) {
  json out;
  out["class"] = to_json(c);
  out["storage_radius"] = w.storage_radius;
  out["report_radius"] = w.report_radius;
  out["saturated_at_report_radius"] = w.saturated_at_report_radius;
  out["size"] = w.elements.size();
  out["report_size"] = w.report_count();
  json el = json::array();
  for (const auto& x : w.elements) el.push_back(full_elements ? to_json(G, x) : packed_json(G, x));
  out["elements"] = std::move(el);
  return out;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

/// One row per class, in class-id order.
inline std::string table_csv(const ClassTable& t) {
  std::ostringstream os;
  os << "graph_type,representative_indices,underlying_type\n";
  for (const auto& c : t.classes)
    os << csv_quote(c.subgraph_type) << ',' << csv_quote(c.representative_subset.to_string()) << ','
       << csv_quote(c.underlying_type) << '\n';
  return os.str();
}

inline json to_json(const ClassTable& t) {
  json out;
  out["storage_radius"] = t.radii.storage;
  out["report_radius"] = t.radii.report;
  json rows = json::array();
  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    json r = to_json(t.classes[i]);
    r["window_size"] = t.windows[i].elements.size();
    r["report_size"] = t.windows[i].report_count();
    r["saturated"] = t.windows[i].saturated_at_report_radius;
    rows.push_back(std::move(r));
  }
  out["classes"] = std::move(rows);
  json certs = json::array();
  for (const auto& c : t.certificates) certs.push_back(json{{"pair", {c.first, c.second}}, {"basis", to_string(c.basis)}});
  out["distinctness"] = std::move(certs);
  return out;
}

inline json distance_json(std::size_t d) { return d == kUnreachable ? json(nullptr) : json(d); }

inline json to_json(const Histogram& h) {
  json out = json::array();
  for (const auto& [d, n] : h) out.push_back(json{{"distance", distance_json(d)}, {"pairs", n}});
  return out;
}

/// {class, radii, components, histogram, max_distance, witnesses, ...}.
inline json to_json(const AffineGroup& G, const ClassDescriptor& c, const DiameterReport& r) {
  json out;
  out["class"] = to_json(c);
  out["radii"] = json{{"report", r.report_radius}, {"storage", r.storage_radius}};
  out["storage_vertices"] = r.storage_vertices;
  out["report_vertices"] = r.report_vertices;
  out["edges"] = r.edges;
  out["saturated"] = r.saturated;
  out["connected_on_report_slice"] = r.connected_on_report_slice;
  out["components"] = r.report_components;
  out["histogram"] = to_json(r.histogram);
  json per = json::array();
  for (std::size_t rad = 0; rad < r.per_radius.size(); ++rad)
    per.push_back(json{{"radius", rad}, {"histogram", to_json(r.per_radius[rad])}});
  out["per_radius"] = std::move(per);
  out["max_distance"] = distance_json(r.max_observed_distance);
  json wit = json::array();
  if (r.report_vertices > 1)
    wit.push_back(json{{"first", packed_json(G, r.report_slice[r.witness.first])},
                       {"second", packed_json(G, r.report_slice[r.witness.second])},
                       {"distance", distance_json(r.at(r.witness.first, r.witness.second))}});
  out["witnesses"] = std::move(wit);
  return out;
}

/// Report-slice distance matrix; unreachable pairs are written as "inf".
inline std::string distance_csv(const DiameterReport& r) {
  std::ostringstream os;
  os << "vertex";
  for (std::size_t j = 0; j < r.report_vertices; ++j) os << ",v" << j;
  os << '\n';
  for (std::size_t i = 0; i < r.report_vertices; ++i) {
    os << 'v' << i;
    for (std::size_t j = 0; j < r.report_vertices; ++j) {
      auto d = r.at(i, j);
      os << ',';
      if (d == kUnreachable) os << "inf";
      else os << d;
    }
    os << '\n';
  }
  return os.str();
}

inline std::string packed_label(const AffineGroup& G, const PackedAffine& x) {
  std::string s = "w" + std::to_string(x.hat) + ":(";
  for (std::size_t i = 0; i < G.rank(); ++i) s += (i ? "," : "") + std::to_string(x.coeffs[i]);
  return s + ")";
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

/**
 * Undirected DOT graph. Vertices are n0, n1, ... with `label(vertex)` as the
 * label; each connected component gets its own colour from a fixed palette.
 */
template <class V, class Label>
std::string to_dot(const CIVGraph<V>& g, Label label, const std::string& name = "civ") {
  static constexpr const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::vector<std::size_t> comp_of(g.size(), 0);
  auto comps = components(g);
  for (std::size_t k = 0; k < comps.size(); ++k)
    for (auto v : comps[k]) comp_of[v] = k;
  std::ostringstream os;
  os << "graph \"" << dot_escape(name) << "\" {\n";
  if (g.window) os << "  // report_radius=" << g.window->report_radius << " storage_radius=" << g.window->storage_radius << '\n';
  os << "  node [style=filled];\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    os << "  n" << i << " [label=\"" << dot_escape(label(g.vertices[i])) << "\", fillcolor=\""
       << palette[comp_of[i] % std::size(palette)] << "\", component=" << comp_of[i] << "];\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    for (auto j : g.adjacency[i])
      if (i < j) os << "  n" << i << " -- n" << j << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace civ::io

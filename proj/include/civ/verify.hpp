#pragma once

/**
 * Named verification targets. Each target runs a group of checks and records
 * one Assertion per check, tagged with the module invariant it instantiates
 * and a one-line statement (in our own words) of the claim being tested.
 *
 * Targets:
 *   finite-f4   finite W(F4): order, involution classes, finite graphs
 *   f4-table    the 12 involution classes of affine F4 and their windows
 *   f4-theorem  window evidence for connectivity/diameter of affine F4 graphs
 *   g2          the corresponding statements for affine G2
 *   lemmas      exhaustive and randomized checks of the general lemmas
 *   all         everything above
 */

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "civ/affine.hpp"
#include "civ/affine_group.hpp"
#include "civ/civgraph.hpp"
#include "civ/involutions.hpp"
#include "civ/rootsys.hpp"
#include "civ/weyl.hpp"

namespace civ {

struct Assertion {
  std::string name;
  std::string invariant;
  std::string claim;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  WindowRadii radii;
  std::uint64_t seed = 20240611;
  int k_range = 3;
  std::size_t partner_samples = 2000;
  std::size_t property_triples = 10000;
  int property_translation_bound = 3;
};

struct VerificationReport {
  std::string target;
  VerifyOptions options;
  std::vector<Assertion> rows;
  std::vector<std::pair<std::string, std::int64_t>> counts;
  std::vector<std::pair<std::string, double>> timings;  // seconds; written to the sidecar only
  std::vector<std::string> notes;

  bool passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const Assertion& a) { return a.passed; });
  }

  bool check(std::string name, std::string invariant, std::string claim, bool ok, std::string detail = {}) {
    rows.push_back({std::move(name), std::move(invariant), std::move(claim), ok, std::move(detail)});
    return ok;
  }

  void count(std::string name, std::int64_t v) { counts.emplace_back(std::move(name), v); }

  void append(const VerificationReport& o) {
    rows.insert(rows.end(), o.rows.begin(), o.rows.end());
    counts.insert(counts.end(), o.counts.begin(), o.counts.end());
    timings.insert(timings.end(), o.timings.begin(), o.timings.end());
    notes.insert(notes.end(), o.notes.begin(), o.notes.end());
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["target"] = target;
    j["passed"] = passed();
    j["parameters"] = {{"storage_radius", options.radii.storage},
                       {"report_radius", options.radii.report},
                       {"ceiling", options.radii.ceiling},
                       {"seed", options.seed},
                       {"k_range", options.k_range},
                       {"partner_samples", options.partner_samples},
                       {"property_triples", options.property_triples}};
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (const auto& [k, v] : counts) c[k] = v;
    j["counts"] = std::move(c);
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& r : rows)
      a.push_back({{"name", r.name}, {"invariant", r.invariant}, {"claim", r.claim}, {"passed", r.passed}, {"detail", r.detail}});
    j["assertions"] = std::move(a);
    j["notes"] = notes;
    return j;
  }
};

/// Expected rows of the affine F4 class table: (graph type, representative, underlying type).
struct TableRow {
  const char* graph_type;
  GeneratorSubset representative;
  const char* underlying_type;
};

inline const std::vector<TableRow>& f4_expected_table() {
  static const std::vector<TableRow> rows = {
      {"A1", {1}, "A1"},
      {"A1", {3}, "A1"},
      {"A1^2", {1, 3}, "A1^2"},
      {"A1^2", {3, 5}, "B2"},
      {"B2", {2, 3}, "B2"},
      {"B3", {1, 2, 3}, "B3"},
      {"B3", {2, 3, 4}, "B3"},
      {"A1^3", {1, 3, 5}, "B3"},
      {"B2×A1", {2, 3, 5}, "B3"},
      {"F4", {1, 2, 3, 4}, "F4"},
      {"B4", {2, 3, 4, 5}, "F4"},
      {"B3×A1", {1, 2, 3, 5}, "F4"},
  };
  return rows;
}

/// Degrees of the basic invariants; |W| is their product.
inline std::optional<std::vector<int>> weyl_degrees(const CoxeterType& t) {
  if (t.family == 'F' && t.rank == 4) return std::vector<int>{2, 6, 8, 12};
  if (t.family == 'G' && t.rank == 2) return std::vector<int>{2, 6};
  return std::nullopt;
}

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

/// BFS distance tables of the finite class graph of every finite class, keyed by table index.
struct FiniteDistances {
  std::vector<CIVGraph<Index>> graphs;
  std::vector<std::unordered_map<Index, std::size_t>> position;
  std::vector<std::vector<std::vector<std::size_t>>> dist;

  FiniteDistances(const AffineGroup& G, const FiniteInvolutionCatalog& cat) {
    for (const auto& c : cat.classes()) {
      graphs.push_back(finite_class_graph(G, c));
      const auto& g = graphs.back();
      std::unordered_map<Index, std::size_t> pos;
      for (std::size_t i = 0; i < g.size(); ++i) pos[g.vertices[i]] = i;
      position.push_back(std::move(pos));
      std::vector<std::vector<std::size_t>> d;
      for (std::size_t i = 0; i < g.size(); ++i) d.push_back(bfs_distances(g, i));
      dist.push_back(std::move(d));
    }
  }

  std::size_t operator()(std::size_t cls, Index a, Index b) const {
    return dist[cls][position[cls].at(a)][position[cls].at(b)];
  }
  bool connected(std::size_t cls) const { return components(graphs[cls]).size() == 1; }
};

}  // namespace detail

/**
 * Builds (once) everything the targets share for one type: the group, its
 * diagram and finite classes, and the class table at the requested radii.
 */
class VerificationContext {
 public:
  VerificationContext(CoxeterType type, const VerifyOptions& opt) : ctx_(type), opt_(opt) {}

  const AffineWeylContext& context() const { return ctx_; }
  const AffineGroup& group() const { return *ctx_.group; }
  const VerifyOptions& options() const { return opt_; }

  const ClassTable& table() {
    if (!table_) table_ = ctx_.class_table(opt_.radii);
    return *table_;
  }

  const std::vector<CIVGraph<PackedAffine>>& graphs() {
    if (graphs_.empty())
      for (const auto& w : table().windows) graphs_.push_back(affine_class_graph(group(), w));
    return graphs_;
  }

  const std::vector<DiameterReport>& reports() {
    if (reports_.empty())
      for (std::size_t i = 0; i < table().windows.size(); ++i)
        reports_.push_back(diameter_from_graph(graphs()[i], table().windows[i]));
    return reports_;
  }

  const detail::FiniteDistances& finite_distances() {
    if (!finite_) finite_.emplace(group(), ctx_.catalog);
    return *finite_;
  }

  const std::vector<std::uint32_t>& supports() {
    if (supports_.empty()) supports_ = parabolic_supports(group().finite());
    return supports_;
  }

 private:
  AffineWeylContext ctx_;
  VerifyOptions opt_;
  std::optional<ClassTable> table_;
  std::vector<CIVGraph<PackedAffine>> graphs_;
  std::vector<DiameterReport> reports_;
  std::optional<detail::FiniteDistances> finite_;
  std::vector<std::uint32_t> supports_;
};

// ---------------------------------------------------------------------------
// finite-f4 (and the finite half of g2)

inline void verify_finite_group(VerificationContext& vc, VerificationReport& rep) {
  detail::Stopwatch sw;
  const auto& ctx = vc.context();
  const auto& W = vc.group().finite();
  const std::string T = ctx.roots.name();

  WeylSet closure = generate_group(ctx.roots);
  rep.count(T + ".order", static_cast<std::int64_t>(closure.size()));
  rep.check(T + ".order.closure-vs-table", "weyl: generate_group",
            "breadth-first closure of the simple reflections and the indexed table agree on |W|",
            closure.size() == W.size(), std::to_string(closure.size()) + " vs " + std::to_string(W.size()));
  if (auto deg = weyl_degrees(ctx.roots.type())) {
    std::size_t prod = 1;
    for (int d : *deg) prod *= static_cast<std::size_t>(d);
    rep.check(T + ".order.degrees", "weyl: generate_group", "|W| equals the product of the degrees of W",
              prod == closure.size(), "product of degrees " + std::to_string(prod));
  }

  std::size_t involutions = 0;
  for (Index a = 0; a < W.size(); ++a) involutions += W.is_involution(a);
  std::size_t covered = 0;
  std::vector<std::size_t> sizes;
  for (const auto& c : ctx.catalog.classes()) covered += c.size(), sizes.push_back(c.size());
  rep.count(T + ".involutions", static_cast<std::int64_t>(involutions));
  rep.count(T + ".involution_classes", static_cast<std::int64_t>(ctx.catalog.classes().size()));
  rep.check(T + ".classes.partition", "weyl: conjugacy classes partition the involutions",
            "every involution of W lies in exactly one class generated from a Richardson subset",
            covered == involutions, "class sizes " + detail::join_sizes(sizes));

  bool longest_ok = true;
  for (const auto& c : ctx.catalog.classes())
    for (const auto& I : c.subsets) {
      auto le = longest_element(ctx.roots, I);
      longest_ok &= le.is_central && ctx.catalog.class_of(W.index_of(le.element)) == std::optional<std::size_t>(c.id);
      std::vector<int> simple0;
      for (int i : I.indices) simple0.push_back(i - 1);
      longest_ok &= inversion_count(le.element, parabolic_positive_roots(ctx.roots, simple0)) == le.length;
    }
  rep.check(T + ".longest.characterization", "weyl: longest-element characterization",
            "each representative w_I is central in W_I and sends every positive root of Phi_I negative", longest_ok);

  const auto& fd = vc.finite_distances();
  for (const auto& c : ctx.catalog.classes()) {
    const auto& g = fd.graphs[c.id];
    const auto comps = components(g);
    const std::size_t diam = diameter(g);
    const bool central = c.size() == 1;
    const std::string base = T + ".finite-graph." + c.type_name + c.subset.to_string();
    rep.count(base + ".vertices", static_cast<std::int64_t>(g.size()));
    rep.count(base + ".components", static_cast<std::int64_t>(comps.size()));
    if (central) {
      rep.check(base + ".singleton", "civgraph: components", "the central involution forms a one-vertex graph",
                g.size() == 1 && g.edge_count() == 0);
    } else if (T == "F4" && c.type_name == "B2") {
      rep.check(base + ".size", "weyl: conjugacy_class", "the class of (r2 r3)^2 has 18 elements", c.size() == 18,
                std::to_string(c.size()));
      rep.check(base + ".connected-diameter-2", "civgraph: build_graph",
                "the finite graph of the class of (r2 r3)^2 is connected and its diameter is exactly 2",
                comps.size() == 1 && diam == 2, "components " + std::to_string(comps.size()) + ", diameter " +
                                                     (diam == kUnreachable ? std::string("inf") : std::to_string(diam)));
    } else {
      rep.check(base + ".disconnected", "civgraph: components", "this non-central class has a disconnected finite graph",
                comps.size() > 1, "components " + std::to_string(comps.size()));
    }
  }
  rep.timings.emplace_back(T + ".finite", sw.seconds());
}

// ---------------------------------------------------------------------------
// f4-table

inline void verify_f4_table(VerificationContext& vc, VerificationReport& rep) {
  detail::Stopwatch sw;
  const auto& ctx = vc.context();
  const auto& G = vc.group();
  const auto& W = G.finite();
  const auto& rs = ctx.roots;
  const auto& d = ctx.diagram;

  const std::vector<std::tuple<int, int, int>> labels = {{1, 2, 3}, {2, 3, 4}, {3, 4, 3}, {4, 5, 3}};
  bool diagram_ok = d.nodes() == 5;
  for (int i = 1; i <= 5 && diagram_ok; ++i)
    for (int j = i + 1; j <= 5; ++j) {
      int expect = 2;
      for (auto [a, b, m] : labels)
        if (a == i && b == j) expect = m;
      diagram_ok &= d.label(i, j) == expect;
    }
  rep.check("F4.diagram", "involutions: AffineDiagram",
            "the affine F4 diagram is the path r1-r2-r3-r4-r5 with labels 3,4,3,3", diagram_ok);

  const auto& t = vc.table();
  rep.count("F4.affine_classes", static_cast<std::int64_t>(t.classes.size()));
  rep.check("F4.table.count", "involutions: dedupe_classes", "Richardson subsets of the affine F4 diagram fall into 12 classes",
            t.classes.size() == 12, std::to_string(t.classes.size()));

  std::set<std::string> seen_rows;
  for (const auto& row : f4_expected_table()) {
    const std::string name = std::string("F4.table.row.") + row.graph_type + row.representative.to_string();
    auto it = std::find_if(t.classes.begin(), t.classes.end(),
                           [&](const ClassDescriptor& c) { return c.representative_subset == row.representative; });
    if (it == t.classes.end()) {
      rep.check(name, "involutions: ClassDescriptor", "a class with this representative subset exists", false, "missing");
      continue;
    }
    seen_rows.insert(row.representative.to_string());
    std::string got = it->subgraph_type + " " + it->representative_subset.to_string() + " " + it->underlying_type;
    rep.check(name, "involutions: ClassDescriptor",
              "graph type, representative subset and underlying finite class match the expected table row",
              it->subgraph_type == row.graph_type && it->underlying_type == row.underlying_type, got);
  }

  // The {r3,r5} identification: g = r4 r3 r2 r3 r4 r1 (applied left to right).
  const auto e = [&](std::size_t i) { return Vector::unit(4, i); };
  WeylElement g = WeylElement::identity(rs);
  for (int node : {4, 3, 2, 3, 4, 1}) g = g * simple_reflection(rs, static_cast<std::size_t>(node - 1));
  const bool images = g.apply(e(0) + e(1)) == e(2) + e(3) && g.apply(e(2) - e(3)) == e(2) - e(3);
  rep.check("F4.table.r3r5.witness-images", "weyl: apply",
            "the word r4 r3 r2 r3 r4 r1 sends e1+e2 to e3+e4 and fixes e3-e4", images);
  WeylElement s_pair = reflection(rs, e(2) - e(3)) * reflection(rs, e(0) + e(1));
  WeylElement conj = inverse(g) * s_pair * g;
  WeylElement r3r2 = simple_reflection(rs, 2) * simple_reflection(rs, 1);
  const bool witness = conj == reflection(rs, e(2) - e(3)) * reflection(rs, e(2) + e(3)) &&
                       conj == reflection(rs, e(2)) * reflection(rs, e(3)) && conj == r3r2 * r3r2;
  rep.check("F4.table.r3r5.witness-conjugate", "affine: affine_conjugate",
            "conjugating s_{e3-e4} s_{e1+e2} by that word gives s_{e3} s_{e4} = (r3 r2)^2", witness);
  AffineElement conj_aff = affine_conjugate(AffineElement(s_pair, LatticeVector::zero(rs)), AffineElement(g, LatticeVector::zero(rs)));
  rep.check("F4.table.r3r5.witness-affine", "affine: affine_conjugate",
            "the same conjugation computed in the affine group has finite part s_{e3} s_{e4}",
            conj_aff.finite_part() == reflection(rs, e(2)) * reflection(rs, e(3)));
  PackedAffine r3r5 = G.word({3, 5});
  auto r3r5_cls = ctx.catalog.class_of(r3r5.hat);
  auto r2r3_cls = ctx.catalog.class_of(W.index_of(r3r2 * r3r2));
  rep.check("F4.table.r3r5.underlying", "involutions: underlying_class",
            "hat(r3 r5) is conjugate in W to (r3 r2)^2, so the underlying class is of type B2",
            r3r5_cls && r2r3_cls && *r3r5_cls == *r2r3_cls && ctx.catalog.at(*r3r5_cls).type_name == "B2");

  std::map<std::string, std::size_t> basis_count;
  bool all_certified = true;
  for (const auto& c : t.certificates) {
    ++basis_count[to_string(c.basis)];
    all_certified &= c.basis != DistinctnessBasis::window_only;
  }
  for (const auto& [k, v] : basis_count) rep.count("F4.distinctness." + k, static_cast<std::int64_t>(v));
  rep.check("F4.table.distinctness", "involutions: dedupe_classes",
            "every pair of classes is separated by its hat class or by the exact lattice-coset invariant", all_certified);

  bool saturated = true, window_ok = true, oracle_ok = true;
  const auto& sup = vc.supports();
  std::map<std::size_t, std::vector<PackedAffine>> by_hat;
  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    const auto& w = t.windows[i];
    saturated &= w.saturated_at_report_radius;
    for (const auto& x : w.elements) {
      window_ok &= G.is_involution(x) && support_condition(x, sup, G.rank()) &&
                   ctx.catalog.class_of(x.hat) == std::optional<std::size_t>(t.classes[i].underlying_class) &&
                   x.max_norm() <= w.storage_radius;
      by_hat[t.classes[i].underlying_class].push_back(x);
    }
    rep.count("F4.window." + std::to_string(i) + ".size", static_cast<std::int64_t>(w.elements.size()));
    rep.count("F4.window." + std::to_string(i) + ".report_size", static_cast<std::int64_t>(w.report_count()));
  }
  for (auto& [cls, elems] : by_hat) {
    std::sort(elems.begin(), elems.end(), window_order);
    auto box = involutions_in_box(G, ctx.catalog.at(cls), vc.options().radii.storage);
    oracle_ok &= box == elems;
  }
  rep.check("F4.windows.saturated", "involutions: InvolutionClassWindow",
            "re-running every window at storage radius + 1 leaves its report slice unchanged", saturated);
  rep.check("F4.windows.members", "involutions: hat compatibility",
            "every window element is an involution, meets the support condition, has its hat in the class's underlying class, and lies within the storage radius",
            window_ok);
  rep.check("F4.windows.box-oracle", "involutions: class_orbit",
            "for each finite class, the union of the windows over it equals the set of all involutions with that hat found by direct box enumeration",
            oracle_ok);
  rep.timings.emplace_back("F4.table", sw.seconds());
}

// ---------------------------------------------------------------------------
// f4-theorem / g2 window evidence

namespace detail {

inline bool zero_translation(const PackedAffine& x) {
  return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](std::int32_t c) { return c == 0; });
}

/// Some report pair lies in different finite components and also in different affine components.
inline std::optional<std::pair<std::size_t, std::size_t>> hat_obstruction(const DiameterReport& r, std::size_t cls,
                                                                          const FiniteDistances& fd) {
  for (std::size_t i = 0; i < r.report_vertices; ++i)
    for (std::size_t j = i + 1; j < r.report_vertices; ++j)
      if (fd(cls, r.report_slice[i].hat, r.report_slice[j].hat) == kUnreachable && r.at(i, j) == kUnreachable)
        return std::make_pair(i, j);
  return std::nullopt;
}

}  // namespace detail

/**
 * Per-class evidence shared by the F4 and G2 targets: hat bound, monotonicity
 * in the storage radius, saturation, and disconnection via the hat map or
 * via pairwise non-commutation.
 */
inline void verify_window_graphs(VerificationContext& vc, VerificationReport& rep) {
  const auto& ctx = vc.context();
  const auto& G = vc.group();
  const auto& t = vc.table();
  const auto& fd = vc.finite_distances();
  const auto& opt = vc.options();
  const std::string T = ctx.roots.name();

  std::optional<ClassTable> smaller;
  if (opt.radii.storage - 1 >= opt.radii.report) {
    WindowRadii r = opt.radii;
    r.storage -= 1;
    smaller = ctx.class_table(r);
  }

  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    const auto& c = t.classes[i];
    const auto& g = vc.graphs()[i];
    const auto& r = vc.reports()[i];
    const std::string base = T + ".class." + c.subgraph_type + c.representative_subset.to_string();

    bool symmetric = true;
    for (std::size_t v = 0; v < g.size(); ++v)
      for (auto w : g.adjacency[v]) symmetric &= w != v && g.adjacent(w, v);
    rep.check(base + ".adjacency", "civgraph: CIVGraph", "adjacency is symmetric and has no loops", symmetric);

    rep.check(base + ".saturated", "involutions: InvolutionClassWindow",
              "the report slice does not change when the storage radius grows by one", r.saturated);

    bool hat_bound = true;
    for (std::size_t a = 0; a < r.report_vertices; ++a)
      for (std::size_t b = 0; b < r.report_vertices; ++b) {
        auto fin = fd(c.underlying_class, r.report_slice[a].hat, r.report_slice[b].hat);
        auto aff = r.at(a, b);
        if (fin != kUnreachable && aff != kUnreachable) hat_bound &= aff >= fin;
        else if (fin == kUnreachable) hat_bound &= aff == kUnreachable;
      }
    rep.check(base + ".hat-bound", "civgraph: hat bound",
              "no two report-slice elements are closer than their hats are in the finite graph", hat_bound);

    if (smaller) {
      const auto& sw = smaller->windows[i];
      bool mono = sw.report_slice() == r.report_slice;
      if (mono) {
        auto sr = diameter_from_graph(affine_class_graph(G, sw), sw);
        for (std::size_t k = 0; k < r.distances.size(); ++k) mono &= r.distances[k] <= sr.distances[k];
      }
      rep.check(base + ".monotone", "civgraph: monotonicity in storage radius",
                "enlarging the storage radius by one never lengthens a report-slice distance", mono);
    }

    rep.count(base + ".storage_vertices", static_cast<std::int64_t>(r.storage_vertices));
    rep.count(base + ".report_vertices", static_cast<std::int64_t>(r.report_vertices));
    rep.count(base + ".edges", static_cast<std::int64_t>(r.edges));
    rep.count(base + ".report_components", static_cast<std::int64_t>(r.report_components));
    if (r.connected_on_report_slice)
      rep.count(base + ".max_distance", static_cast<std::int64_t>(r.max_observed_distance));
  }
}

inline void verify_f4_theorem(VerificationContext& vc, VerificationReport& rep) {
  detail::Stopwatch sw;
  const auto& G = vc.group();
  const auto& t = vc.table();
  const auto& fd = vc.finite_distances();
  verify_window_graphs(vc, rep);

  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    const auto& c = t.classes[i];
    const auto& w = t.windows[i];
    const auto& g = vc.graphs()[i];
    const auto& r = vc.reports()[i];
    const std::string base = "F4.class." + c.subgraph_type + c.representative_subset.to_string();
    const auto& fc = vc.context().catalog.at(c.underlying_class);
    const bool central_hat = fc.size() == 1;

    if (central_hat) {
      rep.check(base + ".totally-disconnected", "involutions: central-involution classes",
                "when the hat is central, no two distinct window elements commute", g.edge_count() == 0,
                std::to_string(g.edge_count()) + " edges among " + std::to_string(g.size()) + " vertices");
      continue;
    }
    if (!fd.connected(c.underlying_class)) {
      auto ob = detail::hat_obstruction(r, c.underlying_class, fd);
      std::string detail_text;
      if (ob)
        detail_text = "hats " + std::to_string(r.report_slice[ob->first].hat) + " and " +
                      std::to_string(r.report_slice[ob->second].hat) + " lie in different finite components";
      rep.check(base + ".disconnected", "civgraph: hat bound",
                "the window graph is disconnected, witnessed by two elements whose hats are in different components of the finite graph",
                !r.connected_on_report_slice && ob.has_value(), detail_text);
      continue;
    }

    // The two classes over the B2 finite class.
    const bool has_zero = std::any_of(w.elements.begin(), w.elements.end(), detail::zero_translation);
    const std::size_t bound = has_zero ? 3 : 4;
    rep.check(base + ".connected", "civgraph: diameter_estimate",
              "all report-slice pairs are joined by paths inside the storage window", r.connected_on_report_slice,
              std::to_string(r.report_components) + " component(s) meet the report slice");
    rep.check(base + ".diameter-bound", "civgraph: diameter_estimate",
              "every report-slice pair is at distance at most " + std::to_string(bound),
              r.connected_on_report_slice && r.max_observed_distance <= bound,
              "largest observed distance " + (r.max_observed_distance == kUnreachable ? std::string("inf")
                                                                                      : std::to_string(r.max_observed_distance)));
    if (has_zero) {
      // Decomposition through zero-translation vertices (k = 1, d = 2).
      std::vector<std::size_t> zeros;
      for (std::size_t v = 0; v < g.size(); ++v)
        if (detail::zero_translation(g.vertices[v])) zeros.push_back(v);
      bool near_zero = true;
      for (std::size_t v = 0; v < r.report_vertices; ++v) {
        bool ok = detail::zero_translation(g.vertices[v]);
        for (auto z : zeros) ok |= g.adjacent(v, z);
        near_zero &= ok;
      }
      bool zero_distances = true;
      for (auto z1 : zeros) {
        auto dz = bfs_distances(g, z1);
        for (auto z2 : zeros) zero_distances &= dz[z2] <= fd(c.underlying_class, g.vertices[z1].hat, g.vertices[z2].hat);
      }
      rep.check(base + ".decomposition.near-zero", "civgraph: composite bound (zero-translation route)",
                "every report-slice element equals or commutes with an element of the class whose translation is zero",
                near_zero, std::to_string(zeros.size()) + " zero-translation elements");
      rep.check(base + ".decomposition.zero-subgraph", "civgraph: composite bound (zero-translation route)",
                "zero-translation elements are no farther apart than their hats are in the finite graph", zero_distances);
    } else {
      // Decomposition through same-hat pairs (k = 2, d = 2).
      std::size_t same_hat = 0;
      for (std::size_t a = 0; a < r.report_vertices; ++a)
        for (std::size_t b = 0; b < r.report_vertices; ++b)
          if (r.report_slice[a].hat == r.report_slice[b].hat) same_hat = std::max(same_hat, r.at(a, b));
      bool fin_diam = diameter(fd.graphs[c.underlying_class]) == 2;
      rep.check(base + ".decomposition.same-hat", "civgraph: composite bound (same-hat route)",
                "report-slice elements with a common hat are at distance at most 2", same_hat <= 2,
                "largest same-hat distance " + (same_hat == kUnreachable ? std::string("inf") : std::to_string(same_hat)));
      rep.check(base + ".decomposition.finite-diameter", "civgraph: composite bound (same-hat route)",
                "the finite graph of the hat class has diameter 2", fin_diam);
      bool lower = false;
      for (std::size_t a = 0; a < r.report_vertices && !lower; ++a)
        for (std::size_t b = 0; b < r.report_vertices; ++b)
          if (G.finite().mul(r.report_slice[a].hat, r.report_slice[b].hat) !=
                  G.finite().mul(r.report_slice[b].hat, r.report_slice[a].hat) &&
              r.at(a, b) >= 2) {
            lower = true;
            break;
          }
      rep.check(base + ".lower-bound", "civgraph: distance",
                "some pair with non-commuting hats is at distance at least 2", lower);
    }
  }
  rep.timings.emplace_back("F4.theorem", sw.seconds());
}

inline void verify_g2(VerificationContext& vc, VerificationReport& rep) {
  detail::Stopwatch sw;
  const auto& ctx = vc.context();
  const auto& d = ctx.diagram;
  rep.check("G2.diagram", "involutions: AffineDiagram", "the affine G2 diagram is the path r1-r2-r3 with labels 6,3",
            d.nodes() == 3 && d.label(1, 2) == 6 && d.label(2, 3) == 3 && d.label(1, 3) == 2);
  verify_finite_group(vc, rep);
  rep.check("G2.order", "weyl: generate_group", "W(G2) is dihedral of order 12", vc.group().finite().size() == 12);

  std::set<std::string> types;
  for (const auto& I : enumerate_richardson_subsets(d)) types.insert(*subgraph_type_name(d.coxeter, I));
  std::string joined;
  for (const auto& s : types) joined += (joined.empty() ? "" : ",") + s;
  rep.check("G2.richardson-types", "involutions: enumerate_richardson_subsets",
            "qualifying subgraphs of the affine G2 diagram are of types A1, A1^2 and G2 only",
            types == std::set<std::string>{"A1", "A1^2", "G2"}, joined);

  const auto& t = vc.table();
  rep.count("G2.affine_classes", static_cast<std::int64_t>(t.classes.size()));
  verify_window_graphs(vc, rep);
  const auto& fd = vc.finite_distances();
  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    const auto& c = t.classes[i];
    const auto& g = vc.graphs()[i];
    const auto& r = vc.reports()[i];
    const auto& fc = ctx.catalog.at(c.underlying_class);
    const std::string base = "G2.class." + c.subgraph_type + c.representative_subset.to_string();
    rep.check(base + ".disconnected", "civgraph: components", "the window graph has more than one component",
              !r.connected_on_report_slice && r.report_components > 1);
    if (fc.size() == 1) {
      rep.check(base + ".no-commuting-pairs", "involutions: central-involution classes",
                "with central hat, no two distinct window elements commute", g.edge_count() == 0);
    } else {
      const auto& fg = fd.graphs[c.underlying_class];
      rep.check(base + ".finite-reflection-class", "civgraph: hat bound",
                "the hat class is a class of three reflections whose finite graph has no edges",
                fc.size() == 3 && fg.edge_count() == 0);
      rep.check(base + ".hat-obstruction", "civgraph: hat bound",
                "two window elements with distinct hats lie in different components",
                detail::hat_obstruction(r, c.underlying_class, fd).has_value());
    }
  }
  rep.timings.emplace_back("G2", sw.seconds());
}

// ---------------------------------------------------------------------------
// lemmas

namespace detail {

inline bool reflections_commute(const RootSystem& rs, const Vector& a, const Vector& b) {
  auto sa = reflection(rs, a), sb = reflection(rs, b);
  return sa * sb == sb * sa;
}

}  // namespace detail

/// Lemma on commuting reflections, exhaustive over ordered root pairs.
inline std::size_t commute1_exceptions(const RootSystem& rs) {
  std::vector<WeylElement> refl;
  for (const auto& r : rs.roots()) refl.push_back(reflection(rs, r.vector));
  std::size_t bad = 0;
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < rs.size(); ++j) {
      const auto& a = rs.root(i).vector;
      const auto& b = rs.root(j).vector;
      bool lhs = refl[i] * refl[j] == refl[j] * refl[i];
      bool rhs = inner_product(a, b).is_zero() || a == b || a == -b;
      bad += lhs != rhs;
    }
  return bad;
}

/// Lemma on commuting affine reflections, exhaustive over positive-root pairs and k, l in [-K, K].
inline std::pair<std::size_t, std::size_t> commute_exceptions(const RootSystem& rs, int K) {
  std::vector<Vector> pos;
  for (const auto& r : rs.roots())
    if (r.is_positive()) pos.push_back(r.vector);
  std::vector<std::vector<AffineElement>> refl(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (int k = -K; k <= K; ++k) refl[i].push_back(affine_reflection(rs, pos[i], k));
  std::size_t bad = 0, tested = 0;
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j)
      for (int k = -K; k <= K; ++k)
        for (int l = -K; l <= K; ++l) {
          const auto& x = refl[i][static_cast<std::size_t>(k + K)];
          const auto& y = refl[j][static_cast<std::size_t>(l + K)];
          bool lhs = commutes(x, y);
          bool rhs = inner_product(pos[i], pos[j]).is_zero() || (i == j && k == l);
          bad += lhs != rhs;
          ++tested;
        }
  return {bad, tested};
}

/// Random affine element with translation coefficients in [-bound, bound].
inline PackedAffine random_packed(const AffineGroup& G, std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(G.finite().size() - 1));
  std::uniform_int_distribution<int> coef(-bound, bound);
  PackedAffine x;
  x.hat = pick(rng);
  for (std::size_t i = 0; i < G.rank(); ++i) x.coeffs[i] = coef(rng);
  return x;
}

struct PropertyTally {
  std::size_t triples = 0;
  std::size_t associativity = 0;
  std::size_t inverse = 0;
  std::size_t conjugation = 0;
  std::size_t packed_route = 0;
};

/// Group-law identities on random triples, in exact arithmetic, with the packed route cross-checked.
inline PropertyTally property_identities(const AffineGroup& G, std::uint64_t seed, std::size_t triples, int bound) {
  std::mt19937_64 rng(seed);
  PropertyTally out;
  const auto id = AffineElement::identity(G.roots());
  for (std::size_t n = 0; n < triples; ++n) {
    PackedAffine px = random_packed(G, rng, bound), py = random_packed(G, rng, bound), pz = random_packed(G, rng, bound);
    AffineElement x = G.unpack(px), y = G.unpack(py), z = G.unpack(pz);
    out.associativity += !((x * y) * z == x * (y * z));
    out.inverse += !(x * affine_inverse(x) == id && affine_inverse(x) * x == id);
    out.conjugation += !(affine_conjugate(x, y) == affine_conjugate_by_product(x, y));
    out.packed_route += !(G.unpack(G.compose(px, py)) == x * y && G.unpack(G.inverse(pz)) == affine_inverse(z) &&
                          G.unpack(G.conjugate(px, pz)) == affine_conjugate(x, z) &&
                          G.commutes(px, py) == commutes(x, y));
    ++out.triples;
  }
  return out;
}

struct PartnerTally {
  std::size_t eligible = 0;
  std::size_t sampled = 0;
  std::size_t v_not_in_lattice = 0;
  std::size_t w_not_in_lattice = 0;
  std::size_t not_commuting = 0;
  std::size_t identity_failures = 0;
  std::size_t partner_not_in_class = 0;
  std::size_t found_outside_window = 0;
  std::size_t conclusion_failures = 0;
  std::vector<std::string> log;  // one line per logged occurrence (bounded)
};

/**
 * Samples (x, b) with x in the report slice of a class whose hat class is
 * connected in W and b != hat(x) an element of the hat class commuting with
 * hat(x); runs check_partner on each.
 */
inline PartnerTally partner_suite(VerificationContext& vc, std::uint64_t seed, std::size_t samples,
                                  std::size_t log_limit = 25) {
  const auto& G = vc.group();
  const auto& W = G.finite();
  const auto& cat = vc.context().catalog;
  const auto& t = vc.table();
  ClassInvariantComputer invariant(cat);
  std::vector<std::tuple<std::size_t, PackedAffine, Index>> pairs;
  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    const auto& fc = cat.at(t.classes[i].underlying_class);
    if (fc.size() == 1 || !vc.finite_distances().connected(fc.id)) continue;
    for (const auto& x : t.windows[i].report_slice())
      for (Index b : fc.elements)
        if (b != x.hat && W.mul(b, x.hat) == W.mul(x.hat, b)) pairs.emplace_back(i, x, b);
  }
  PartnerTally out;
  out.eligible = pairs.size();
  std::mt19937_64 rng(seed);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  if (pairs.size() > samples) {
    pairs.resize(samples);
    std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
      if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
      if (!(std::get<1>(a) == std::get<1>(b))) return window_order(std::get<1>(a), std::get<1>(b));
      return std::get<2>(a) < std::get<2>(b);
    });
  }
  auto log = [&](const std::string& s) {
    if (out.log.size() < log_limit) out.log.push_back(s);
  };
  for (const auto& [cls, x, b] : pairs) {
    auto o = check_partner(G, cat, invariant, t.windows[cls], x, b);
    ++out.sampled;
    const std::string where = "class " + std::to_string(cls) + " x=" + std::to_string(x.hat) + " b=" + std::to_string(b);
    if (!o.auxiliary_in_lattice) ++out.w_not_in_lattice, log(where + ": auxiliary w not in the coroot lattice");
    if (!o.v_in_lattice) {
      ++out.v_not_in_lattice;
      log(where + ": closed-form v not in the coroot lattice");
    } else {
      out.not_commuting += !o.commutes_direct;
      out.identity_failures += !o.product_identity;
      if (!o.partner_in_class) ++out.partner_not_in_class, log(where + ": closed-form partner lies in another class");
    }
    out.found_outside_window += o.found_outside_window;
    out.conclusion_failures += !o.conclusion_holds;
  }
  return out;
}

inline void verify_lemmas(VerificationContext& f4, VerificationContext& g2, VerificationReport& rep) {
  detail::Stopwatch sw;
  const auto& opt = f4.options();
  for (VerificationContext* vc : {&f4, &g2}) {
    const auto& rs = vc->context().roots;
    const std::string T = rs.name();
    auto bad = commute1_exceptions(rs);
    rep.check(T + ".commute1", "affine: commuting reflections",
              "two reflections commute exactly when their roots are orthogonal or equal up to sign", bad == 0,
              std::to_string(rs.size() * rs.size()) + " ordered pairs, " + std::to_string(bad) + " exceptions");
  }
  {
    auto [bad, tested] = commute_exceptions(f4.context().roots, opt.k_range);
    rep.check("F4.commute", "affine: commuting affine reflections",
              "s_{alpha,k} and s_{beta,l} commute exactly when alpha and beta are orthogonal, or alpha = beta and k = l",
              bad == 0, std::to_string(tested) + " pairs, " + std::to_string(bad) + " exceptions");
  }

  for (VerificationContext* vc : {&f4, &g2}) {
    const auto& G = vc->group();
    const std::string T = vc->context().roots.name();
    const auto& sup = vc->supports();
    std::size_t checked = 0, bad = 0;
    for (const auto& c : vc->table().classes) ++checked, bad += !support_condition(c.representative, sup, G.rank());
    for (const auto& w : vc->table().windows)
      for (const auto& x : w.elements) ++checked, bad += !(G.is_involution(x) && support_condition(x, sup, G.rank()));
    rep.check(T + ".support-condition", "affine: involution shape",
              "for every involution (a,u) produced, u is supported on the smallest standard parabolic containing a",
              bad == 0, std::to_string(checked) + " elements, " + std::to_string(bad) + " violations");

    // Fixed vectors: v supported on nodes commuting with all of I is fixed by W_I.
    const auto& d = vc->context().diagram;
    std::size_t fixed_bad = 0, fixed_checked = 0;
    for (const auto& c : vc->table().classes) {
      const auto& I = c.representative_subset;
      std::vector<std::size_t> J;
      for (std::size_t s = 1; s <= G.rank(); ++s)
        if (std::all_of(I.indices.begin(), I.indices.end(),
                        [&](int r) { return r != static_cast<int>(s) && d.label(r, static_cast<int>(s)) == 2; }))
          J.push_back(s);
      Parabolic p = parabolic(d, I);
      for (const auto& b : p.elements)
        for (std::size_t s : J) {
          Coeffs v{};
          v[s - 1] = 1;
          ++fixed_checked;
          fixed_bad += G.finite().act(v, b.hat) != v;
        }
    }
    rep.check(T + ".fixed-vectors", "affine: fixed-vector property",
              "coroots of nodes commuting with all of I are fixed by every element of W_I", fixed_bad == 0,
              std::to_string(fixed_checked) + " checks, " + std::to_string(fixed_bad) + " failures");
  }

  {
    auto p = partner_suite(f4, opt.seed, opt.partner_samples);
    rep.count("F4.partner.eligible", static_cast<std::int64_t>(p.eligible));
    rep.count("F4.partner.sampled", static_cast<std::int64_t>(p.sampled));
    rep.count("F4.partner.v_not_in_lattice", static_cast<std::int64_t>(p.v_not_in_lattice));
    rep.count("F4.partner.w_not_in_lattice", static_cast<std::int64_t>(p.w_not_in_lattice));
    rep.count("F4.partner.closed_form_not_in_class", static_cast<std::int64_t>(p.partner_not_in_class));
    rep.count("F4.partner.found_outside_window", static_cast<std::int64_t>(p.found_outside_window));
    for (const auto& l : p.log) rep.notes.push_back("partner: " + l);
    rep.check("F4.partner.samples", "involutions: commuting_partner", "at least 1000 (x, b) pairs were examined",
              p.sampled >= std::min<std::size_t>(1000, p.eligible) && p.sampled >= 1000, std::to_string(p.sampled));
    rep.check("F4.partner.commutes", "involutions: commuting_partner",
              "whenever v = (u - u^b)/2 is a lattice vector, (b, v) commutes with (a, u) by direct multiplication",
              p.not_commuting == 0);
    rep.check("F4.partner.product-identity", "involutions: commuting_partner",
              "both products of (a,u) and (b,v) equal (ab, (u + u^b)/2)", p.identity_failures == 0);
    rep.check("F4.partner.conclusion", "involutions: commuting_partner",
              "for every sampled pair some (b, v') in the class of (a, u) commutes with (a, u)", p.conclusion_failures == 0,
              std::to_string(p.conclusion_failures) + " failures");
  }

  for (VerificationContext* vc : {&f4, &g2}) {
    const std::string T = vc->context().roots.name();
    auto tally = property_identities(vc->group(), opt.seed, opt.property_triples, opt.property_translation_bound);
    rep.check(T + ".group-laws", "affine: product law, inverse, closed-form conjugation",
              "associativity, inverses and closed-form conjugation hold exactly on random triples, and the packed route agrees",
              tally.associativity + tally.inverse + tally.conjugation + tally.packed_route == 0,
              std::to_string(tally.triples) + " triples; failures assoc " + std::to_string(tally.associativity) +
                  ", inverse " + std::to_string(tally.inverse) + ", conj " + std::to_string(tally.conjugation) +
                  ", packed " + std::to_string(tally.packed_route));
  }
  rep.timings.emplace_back("lemmas", sw.seconds());
}

// ---------------------------------------------------------------------------
// Dispatch

inline const std::vector<std::string>& verification_targets() {
  static const std::vector<std::string> t = {"f4-table", "f4-theorem", "g2", "finite-f4", "lemmas", "all"};
  return t;
}

inline VerificationReport run_verification(const std::string& target, const VerifyOptions& opt) {
  if (std::find(verification_targets().begin(), verification_targets().end(), target) == verification_targets().end())
    throw precondition_error("unknown verification target '" + target + "'");
  if (opt.radii.report < 0 || opt.radii.report > opt.radii.storage || opt.radii.storage > 8)
    throw precondition_error("radii must satisfy 0 <= report <= storage <= 8");
  VerificationReport rep;
  rep.target = target;
  rep.options = opt;
  detail::Stopwatch total;
  std::unique_ptr<VerificationContext> f4, g2;
  auto F4 = [&]() -> VerificationContext& {
    if (!f4) f4 = std::make_unique<VerificationContext>(CoxeterType{'F', 4}, opt);
    return *f4;
  };
  auto G2 = [&]() -> VerificationContext& {
    if (!g2) g2 = std::make_unique<VerificationContext>(CoxeterType{'G', 2}, opt);
    return *g2;
  };
  const bool all = target == "all";
  if (all || target == "finite-f4") verify_finite_group(F4(), rep);
  if (all || target == "f4-table") verify_f4_table(F4(), rep);
  if (all || target == "f4-theorem") verify_f4_theorem(F4(), rep);
  if (all || target == "g2") verify_g2(G2(), rep);
  if (all || target == "lemmas") verify_lemmas(F4(), G2(), rep);
  rep.timings.emplace_back("total", total.seconds());
  return rep;
}

}  // namespace civ

#pragma once

/**
 * Involution conjugacy classes of an affine Weyl group.
 *
 * Every involution is conjugate to the longest element w_I of a finite
 * standard parabolic W_I in which w_I is central (Richardson), and two such
 * w_I, w_J are conjugate exactly when I and J are W~-equivalent. This header
 * enumerates the qualifying subsets I of the affine diagram, groups them into
 * classes, and materializes each (infinite) class as a finite window: all
 * members whose translation coefficients have max-norm <= a radius.
 *
 * Class identity has two independent witnesses here:
 *  - windowed orbit closure (conjugation chains that stay inside the window);
 *  - an exact invariant. For x = (a,u), conjugating by (g,w) with g in
 *    C_W(a) gives (a, u^g + w - w^a), so the classes over a fixed hat a are
 *    the C_W(a)-orbits on L_a / (1-a)Z, where L_a = {u in Z : u^a = -u}.
 *    Since 2 L_a lies in (1-a)Z and L_a meets 2Z in 2 L_a, that quotient
 *    embeds in Z/2Z, so the invariant is a bit mask (ClassInvariant).
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "civ/affine.hpp"
#include "civ/affine_group.hpp"
#include "civ/errors.hpp"
#include "civ/rootsys.hpp"
#include "civ/weyl.hpp"

namespace civ {

using Index = FiniteGroupTable::Index;

// ---------------------------------------------------------------------------
// Coxeter diagrams and subgraph types

/// Square Coxeter matrix over 0-based nodes; 0 encodes an infinite label.
using CoxeterMatrix = std::vector<std::vector<int>>;

namespace detail {

inline std::optional<std::string> classify_component(const CoxeterMatrix& m, const std::vector<int>& comp) {
  const std::size_t k = comp.size();
  if (k == 1) return "A1";
  std::map<int, std::vector<std::pair<int, int>>> adj;  // node -> (neighbor, label)
  std::size_t edges = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      int l = m[comp[i]][comp[j]];
      if (l == 2) continue;
      if (l == 0) return std::nullopt;
      adj[comp[i]].push_back({comp[j], l});
      adj[comp[j]].push_back({comp[i], l});
      ++edges;
    }
  if (edges != k - 1) return std::nullopt;  // a cycle

  std::vector<int> branch;
  for (int v : comp)
    if (adj[v].size() >= 3) branch.push_back(v);

  if (branch.empty()) {
    int end = comp[0];
    for (int v : comp)
      if (adj[v].size() == 1) {
        end = v;
        break;
      }
    std::vector<int> labels;
    int prev = -1, cur = end;
    while (true) {
      int next = -1;
      for (auto [nb, l] : adj[cur])
        if (nb != prev) next = nb, labels.push_back(l);
      if (next < 0) break;
      prev = cur, cur = next;
    }
    const std::string n = std::to_string(k);
    auto count = [&](int x) { return std::count(labels.begin(), labels.end(), x); };
    if (count(3) == static_cast<long>(labels.size())) return "A" + n;
    if (k == 2 && labels[0] == 4) return "B2";
    if (k == 2 && labels[0] == 6) return "G2";
    if (count(4) == 1 && count(3) == static_cast<long>(labels.size()) - 1 &&
        (labels.front() == 4 || labels.back() == 4))
      return "B" + n;
    if (labels == std::vector<int>{3, 4, 3}) return "F4";
    return std::nullopt;
  }

  if (branch.size() != 1 || adj[branch[0]].size() != 3) return std::nullopt;
  for (int v : comp)
    for (auto [nb, l] : adj[v])
      if (l != 3) return std::nullopt;
  std::vector<int> arms;
  for (auto [start, l] : adj[branch[0]]) {
    int len = 1, prev = branch[0], cur = start;
    while (adj[cur].size() == 2) {
      int next = adj[cur][0].first == prev ? adj[cur][1].first : adj[cur][0].first;
      prev = cur, cur = next, ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(arms[2] + 3);
  if (arms == std::vector<int>{1, 2, 2}) return "E6";
  if (arms == std::vector<int>{1, 2, 3}) return "E7";
  if (arms == std::vector<int>{1, 2, 4}) return "E8";
  return std::nullopt;
}

inline int component_rank(const std::string& name) { return std::stoi(name.substr(1)); }

}  // namespace detail

/// Connected components of the subgraph on `nodes` (1-based labels).
inline std::vector<std::vector<int>> diagram_components(const CoxeterMatrix& m, const GeneratorSubset& nodes) {
  std::vector<std::vector<int>> comps;
  std::vector<int> todo;
  for (int v : nodes.indices) todo.push_back(v - 1);
  std::vector<bool> used(m.size(), false);
  for (int s : todo) {
    if (used[s]) continue;
    std::vector<int> comp{s};
    used[s] = true;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (int t : todo)
        if (!used[t] && m[comp[h]][t] != 2) used[t] = true, comp.push_back(t);
    std::sort(comp.begin(), comp.end());
    comps.push_back(comp);
  }
  return comps;
}

/**
 * Component-wise Coxeter type of the subdiagram on I, e.g. "B2×A1", "A1^3".
 * Components are listed by decreasing rank; repeated types collapse to a
 * power. nullopt if some component is not a finite type.
 */
inline std::optional<std::string> subgraph_type_name(const CoxeterMatrix& m, const GeneratorSubset& I) {
  if (I.size() == 0) return std::string("1");
  std::vector<std::string> names;
  for (const auto& comp : diagram_components(m, I)) {
    auto t = detail::classify_component(m, comp);
    if (!t) return std::nullopt;
    names.push_back(*t);
  }
  std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
    int ra = detail::component_rank(a), rb = detail::component_rank(b);
    return ra != rb ? ra > rb : a < b;
  });
  std::string out;
  for (std::size_t i = 0; i < names.size();) {
    std::size_t j = i;
    while (j < names.size() && names[j] == names[i]) ++j;
    if (!out.empty()) out += "×";
    out += names[i];
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

/// Whether the longest element of an irreducible finite type is central (acts as -1).
inline bool type_has_central_longest(const std::string& component) {
  const char f = component[0];
  const int n = detail::component_rank(component);
  switch (f) {
    case 'A': return n == 1;
    case 'B': return true;
    case 'D': return n % 2 == 0;
    case 'E': return n == 7 || n == 8;
    case 'F':
    case 'G': return true;
    default: return false;
  }
}

struct AffineDiagram {
  std::shared_ptr<const AffineGroup> group;
  CoxeterMatrix coxeter;  // (n+1) x (n+1), 0-based

  std::size_t nodes() const { return coxeter.size(); }
  /// m(i, j) for 1-based node labels; 0 means infinity.
  int label(int i, int j) const { return coxeter.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j - 1)); }
  GeneratorSubset all_nodes() const {
    std::vector<int> v;
    for (std::size_t i = 1; i <= nodes(); ++i) v.push_back(static_cast<int>(i));
    return GeneratorSubset(v);
  }
  GeneratorSubset finite_nodes() const {
    std::vector<int> v;
    for (std::size_t i = 1; i < nodes(); ++i) v.push_back(static_cast<int>(i));
    return GeneratorSubset(v);
  }
};

/// Affine diagram with labels computed as orders of r_i r_j.
inline AffineDiagram build_affine_diagram(std::shared_ptr<const AffineGroup> group) {
  AffineDiagram d;
  const std::size_t n = group->node_count();
  d.coxeter.assign(n, std::vector<int>(n, 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        d.coxeter[i][j] =
            static_cast<int>(group->order(group->compose(group->simple_reflections()[i], group->simple_reflections()[j]), 12));
  d.group = std::move(group);
  return d;
}

// ---------------------------------------------------------------------------
// Standard parabolic subgroups of W~

struct Parabolic {
  GeneratorSubset subset;
  bool finite = false;
  std::optional<std::string> type_name;
  std::size_t order = 0;
  PackedAffine longest;  // w_I
  std::size_t length = 0;
  bool central = false;
  std::vector<PackedAffine> elements;  // W_I in discovery order, when finite
};

/// Generates W_I inside W~. Subsets whose group exceeds `ceiling` are reported infinite.
inline Parabolic parabolic(const AffineDiagram& d, const GeneratorSubset& I, std::size_t ceiling = 200000) {
  const auto& G = *d.group;
  Parabolic p;
  p.subset = I;
  p.type_name = subgraph_type_name(d.coxeter, I);
  std::vector<PackedAffine> gens;
  for (int i : I.indices) gens.push_back(G.generator(i));
  ElementSet<PackedAffine> sub;
  try {
    sub = orbit_closure<PackedAffine>({AffineGroup::identity()}, gens,
                                      [&](const PackedAffine& x, const PackedAffine& g) { return G.compose(x, g); },
                                      ElementSet<PackedAffine>::Closure::group, ceiling);
  } catch (const resource_error&) {
    return p;
  }
  p.finite = true;
  p.order = sub.size();
  std::size_t best = 0, ties = 0;
  for (std::size_t k = 0; k < sub.size(); ++k) {
    if (sub.depth[k] > sub.depth[best]) best = k, ties = 0;
    if (sub.depth[k] == sub.depth[best]) ++ties;
  }
  if (ties != 1) throw consistency_error("parabolic: longest element not unique for " + I.to_string());
  p.longest = sub.elements[best];
  p.length = sub.depth[best];
  p.central = std::all_of(gens.begin(), gens.end(), [&](const PackedAffine& g) { return G.commutes(p.longest, g); });
  p.elements = std::move(sub.elements);
  return p;
}

/**
 * All nonempty I within `nodes` with W_I finite and w_I central in W_I,
 * ordered by size then lexicographically. Centrality is computed; the result
 * is cross-checked against the irreducible types whose longest element is -1.
 */
inline std::vector<GeneratorSubset> enumerate_richardson_subsets(const AffineDiagram& d, const GeneratorSubset& nodes) {
  std::vector<GeneratorSubset> out;
  const std::size_t k = nodes.size();
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> v;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) v.push_back(nodes.indices[i]);
    GeneratorSubset I(v);
    Parabolic p = parabolic(d, I);
    if (p.finite != p.type_name.has_value())
      throw consistency_error("finiteness of W_I disagrees with its diagram type for " + I.to_string());
    if (!p.finite) continue;
    bool expected = true;
    for (const auto& comp : diagram_components(d.coxeter, I))
      expected = expected && type_has_central_longest(*detail::classify_component(d.coxeter, comp));
    if (expected != p.central)
      throw consistency_error("centrality of w_I disagrees with its diagram type for " + I.to_string());
    if (p.central) out.push_back(I);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<GeneratorSubset> enumerate_richardson_subsets(const AffineDiagram& d) {
  return enumerate_richardson_subsets(d, d.all_nodes());
}

// ---------------------------------------------------------------------------
// Involution classes of the finite group W

struct FiniteClass {
  std::size_t id = 0;
  std::string type_name;
  GeneratorSubset subset;                // minimal Richardson subset of the finite diagram
  std::vector<GeneratorSubset> subsets;  // every Richardson subset landing here
  Index representative = 0;              // w_subset
  std::vector<Index> elements;           // discovery order, representative first
  std::vector<Index> conjugators;        // conjugate(representative, conjugators[i]) == elements[i]
  std::vector<Index> centralizer;        // C_W(representative)

  std::size_t size() const { return elements.size(); }
};

/**
 * The involution classes of W, found from the Richardson subsets of the
 * finite diagram and checked to partition all involutions of W.
 */
class FiniteInvolutionCatalog {
 public:
  FiniteInvolutionCatalog() = default;

  explicit FiniteInvolutionCatalog(const AffineDiagram& d) : group_(d.group) {
    const auto& W = group_->finite();
    class_of_.assign(W.size(), -1);
    for (const auto& I : enumerate_richardson_subsets(d, d.finite_nodes())) {
      Index w = parabolic(d, I).longest.hat;
      if (class_of_[w] >= 0) {
        classes_[static_cast<std::size_t>(class_of_[w])].subsets.push_back(I);
        continue;
      }
      FiniteClass c;
      c.id = classes_.size();
      c.type_name = *subgraph_type_name(d.coxeter, I);
      c.subset = I;
      c.subsets = {I};
      c.representative = w;
      c.elements = {w};
      c.conjugators = {FiniteGroupTable::identity()};
      class_of_[w] = static_cast<int>(c.id);
      for (std::size_t h = 0; h < c.elements.size(); ++h)
        for (Index s : W.generators()) {
          Index y = W.conjugate(c.elements[h], s);
          if (class_of_[y] >= 0) {
            if (class_of_[y] != static_cast<int>(c.id)) throw consistency_error("finite classes overlap");
            continue;
          }
          class_of_[y] = static_cast<int>(c.id);
          c.elements.push_back(y);
          c.conjugators.push_back(W.mul(c.conjugators[h], s));
        }
      for (Index g = 0; g < W.size(); ++g)
        if (W.conjugate(w, g) == w) c.centralizer.push_back(g);
      classes_.push_back(std::move(c));
    }
    for (Index a = 0; a < W.size(); ++a)
      if (W.is_involution(a) && class_of_[a] < 0)
        throw consistency_error("an involution of W lies in no Richardson class");
    position_.assign(W.size(), 0);
    for (auto& c : classes_) {
      for (std::size_t i = 0; i < c.elements.size(); ++i) position_[c.elements[i]] = static_cast<Index>(i);
    }
  }

  const std::vector<FiniteClass>& classes() const { return classes_; }
  const FiniteClass& at(std::size_t id) const { return classes_.at(id); }
  std::optional<std::size_t> class_of(Index a) const {
    int c = class_of_.at(a);
    if (c < 0) return std::nullopt;
    return static_cast<std::size_t>(c);
  }
  /// h with conjugate(representative, h) == a, for an involution a.
  Index conjugator_of(Index a) const {
    const auto& c = classes_.at(class_of(a).value());
    return c.conjugators[position_[a]];
  }
  const AffineGroup& group() const { return *group_; }

 private:
  std::shared_ptr<const AffineGroup> group_;
  std::vector<FiniteClass> classes_;
  std::vector<int> class_of_;
  std::vector<Index> position_;
};

// ---------------------------------------------------------------------------
// Exact class invariant

struct ClassInvariant {
  std::size_t finite_class = 0;
  std::uint32_t coset = 0;  // canonical C_W(a)-orbit representative in L_a/(1-a)Z, as a bit mask

  friend bool operator==(const ClassInvariant&, const ClassInvariant&) = default;
  friend auto operator<=>(const ClassInvariant&, const ClassInvariant&) = default;
};

namespace detail {

inline std::uint32_t parity_mask(const Coeffs& c, std::size_t rank) {
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < rank; ++i) m |= static_cast<std::uint32_t>(c[i] & 1) << i;
  return m;
}

/// Echelon basis over F2 with distinct leading bits; reduce() is canonical on cosets.
struct F2Span {
  std::vector<std::uint32_t> rows;  // sorted by leading bit, descending

  static int lead(std::uint32_t x) { return 31 - __builtin_clz(x); }

  void add(std::uint32_t x) {
    x = reduce(x);
    if (!x) return;
    rows.push_back(x);
    std::sort(rows.begin(), rows.end(), [](auto a, auto b) { return lead(a) > lead(b); });
  }
  std::uint32_t reduce(std::uint32_t x) const {
    for (auto r : rows)
      if (x >> lead(r) & 1u) x ^= r;
    return x;
  }
};

}  // namespace detail

class ClassInvariantComputer {
 public:
  explicit ClassInvariantComputer(const FiniteInvolutionCatalog& cat) : cat_(&cat) {
    const auto& G = cat.group();
    const std::size_t n = G.rank();
    for (const auto& c : cat.classes()) {
      detail::F2Span span;
      for (std::size_t i = 0; i < n; ++i) {
        Coeffs e{};
        e[i] = 1;
        Coeffs img = G.finite().act(e, c.representative);
        for (std::size_t j = 0; j < n; ++j) e[j] -= img[j];
        span.add(detail::parity_mask(e, n));
      }
      spans_.push_back(span);
    }
  }

  /// Requires x to be an involution.
  ClassInvariant operator()(const PackedAffine& x) const {
    const auto& G = cat_->group();
    const auto& W = G.finite();
    const std::size_t id = cat_->class_of(x.hat).value();
    const auto& c = cat_->at(id);
    // x^(h^-1) = (representative, u^(h^-1))
    Coeffs u = W.act(x.coeffs, W.inverse(cat_->conjugator_of(x.hat)));
    std::uint32_t best = UINT32_MAX;
    for (Index g : c.centralizer) best = std::min(best, spans_[id].reduce(detail::parity_mask(W.act(u, g), G.rank())));
    return {id, best};
  }

 private:
  const FiniteInvolutionCatalog* cat_;
  std::vector<detail::F2Span> spans_;
};

// ---------------------------------------------------------------------------
// Windows

struct WindowRadii {
  int storage = 4;
  int report = 2;
  std::size_t ceiling = kDefaultCeiling;
};

struct ClassDescriptor {
  std::size_t id = 0;
  GeneratorSubset representative_subset;
  std::vector<GeneratorSubset> member_subsets;
  PackedAffine representative;  // w_I for the representative subset
  PackedAffine seed;            // small-norm conjugate of the representative
  std::string subgraph_type;
  std::size_t underlying_class = 0;  // FiniteInvolutionCatalog id of the hat class
  std::string underlying_type;
  ClassInvariant invariant;
};

/// Total order used for every window listing: max-norm, hat, coefficients.
inline bool window_order(const PackedAffine& a, const PackedAffine& b) {
  auto na = a.max_norm(), nb = b.max_norm();
  if (na != nb) return na < nb;
  if (a.hat != b.hat) return a.hat < b.hat;
  return a.coeffs < b.coeffs;
}

struct InvolutionClassWindow {
  std::size_t class_id = 0;
  int storage_radius = 0;
  int report_radius = 0;
  std::vector<PackedAffine> elements;  // sorted by window_order; report slice is a prefix
  bool saturated_at_report_radius = false;

  std::size_t report_count() const {
    return static_cast<std::size_t>(std::count_if(elements.begin(), elements.end(),
                                                  [&](const PackedAffine& x) { return x.max_norm() <= report_radius; }));
  }
  std::vector<PackedAffine> report_slice() const {
    return {elements.begin(), elements.begin() + static_cast<std::ptrdiff_t>(report_count())};
  }
  bool contains(const PackedAffine& x) const {
    return std::binary_search(elements.begin(), elements.end(), x, window_order);
  }
};

/// Affine simple reflections plus translations by +-simple coroots. Both
/// sets generate W~; the translations keep conjugation steps short in the
/// max-norm, which the reflection r_{n+1} alone does not.
inline std::vector<PackedAffine> window_conjugators(const AffineGroup& G) {
  std::vector<PackedAffine> conj = G.simple_reflections();
  for (std::size_t i = 0; i < G.rank(); ++i)
    for (int sgn : {1, -1}) {
      Coeffs c{};
      c[i] = sgn;
      conj.push_back(G.translation(c));
    }
  return conj;
}

/// Conjugation closure of `seed` under window_conjugators(), pruned at `radius`.
inline std::vector<PackedAffine> window_closure(const AffineGroup& G, const PackedAffine& seed, int radius,
                                                std::size_t ceiling) {
  if (seed.max_norm() > radius) return {};
  const auto conj = window_conjugators(G);
  std::unordered_set<PackedAffine> seen{seed};
  std::vector<PackedAffine> out{seed};
  for (std::size_t h = 0; h < out.size(); ++h)
    for (const auto& r : conj) {
      PackedAffine y = G.conjugate(out[h], r);
      if (y.max_norm() > radius || !seen.insert(y).second) continue;
      out.push_back(y);
      if (out.size() > ceiling)
        throw resource_error("class window exceeded ceiling of " + std::to_string(ceiling) + " elements");
    }
  std::sort(out.begin(), out.end(), window_order);
  return out;
}

/// Strict descent key for seed reduction: (max-norm, l1-norm).
inline std::pair<std::int32_t, std::int32_t> norm_key(const PackedAffine& x) {
  std::int32_t l1 = 0;
  for (auto c : x.coeffs) l1 += c < 0 ? -c : c;
  return {x.max_norm(), l1};
}

/**
 * Greedy descent to a small-norm conjugate of x, using conjugation by the
 * affine simple reflections and by translations along +-simple coroots.
 */
inline PackedAffine reduce_into_window(const AffineGroup& G, PackedAffine x) {
  const auto conj = window_conjugators(G);
  for (bool improved = true; improved;) {
    improved = false;
    for (const auto& g : conj) {
      PackedAffine y = G.conjugate(x, g);
      if (norm_key(y) < norm_key(x)) {
        x = y;
        improved = true;
      }
    }
  }
  return x;
}

/**
 * Window of a class. Saturation is computed by re-running the closure at
 * storage_radius + 1 and comparing the report slices.
 */
inline InvolutionClassWindow class_orbit(const AffineGroup& G, const ClassDescriptor& c, int storage_radius,
                                         int report_radius, std::size_t ceiling = kDefaultCeiling) {
  if (report_radius < 0 || report_radius > storage_radius)
    throw precondition_error("class_orbit: need 0 <= report_radius <= storage_radius");
  if (c.seed.max_norm() > storage_radius)
    throw precondition_error("class_orbit: class seed lies outside the storage radius");
  InvolutionClassWindow w;
  w.class_id = c.id;
  w.storage_radius = storage_radius;
  w.report_radius = report_radius;
  w.elements = window_closure(G, c.seed, storage_radius, ceiling);
  auto bigger = window_closure(G, c.seed, storage_radius + 1, ceiling);
  auto slice = [&](const std::vector<PackedAffine>& v) {
    std::vector<PackedAffine> s;
    for (const auto& x : v)
      if (x.max_norm() <= report_radius) s.push_back(x);
    return s;
  };
  w.saturated_at_report_radius = slice(w.elements) == slice(bigger);
  return w;
}

/// Every involution (a,u) with a in the finite class and max-norm(u) <= radius,
/// found by direct enumeration of the box. Independent of orbit closure.
inline std::vector<PackedAffine> involutions_in_box(const AffineGroup& G, const FiniteClass& hat_class, int radius) {
  std::vector<PackedAffine> out;
  const std::size_t n = G.rank();
  Coeffs c{};
  for (std::size_t i = 0; i < n; ++i) c[i] = -radius;
  while (true) {
    for (Index a : hat_class.elements) {
      PackedAffine x{a, c};
      if (G.is_involution(x)) out.push_back(x);
    }
    std::size_t i = 0;
    while (i < n && c[i] == radius) c[i++] = -radius;
    if (i == n) break;
    ++c[i];
  }
  std::sort(out.begin(), out.end(), window_order);
  return out;
}

// ---------------------------------------------------------------------------
// Class table

enum class DistinctnessBasis { hat_class, coset_invariant, window_only };

inline const char* to_string(DistinctnessBasis b) {
  switch (b) {
    case DistinctnessBasis::hat_class: return "hat-class";
    case DistinctnessBasis::coset_invariant: return "coset-invariant";
    case DistinctnessBasis::window_only: return "distinct-within-window";
  }
  return "?";
}

struct Distinctness {
  std::size_t first = 0, second = 0;
  DistinctnessBasis basis = DistinctnessBasis::window_only;
};

struct ClassTable {
  std::vector<ClassDescriptor> classes;
  std::vector<InvolutionClassWindow> windows;  // at radii.storage / radii.report
  std::vector<Distinctness> certificates;      // one per unordered pair of classes
  WindowRadii radii;
};

/**
 * Groups Richardson subsets into classes: a subset joins an existing class
 * when its seed lies in that class's storage window. The exact invariant must
 * agree with every merge decision. Representatives are the first subset of
 * each class in (size, lexicographic) order.
 */
inline ClassTable dedupe_classes(const AffineDiagram& d, const FiniteInvolutionCatalog& cat,
                                 const std::vector<GeneratorSubset>& subsets, const WindowRadii& radii) {
  const auto& G = *d.group;
  ClassInvariantComputer invariant(cat);
  ClassTable t;
  t.radii = radii;
  auto ordered = subsets;
  std::sort(ordered.begin(), ordered.end());
  for (const auto& I : ordered) {
    Parabolic p = parabolic(d, I);
    if (!p.finite || !p.central) throw precondition_error("dedupe_classes: " + I.to_string() + " is not a Richardson subset");
    PackedAffine seed = reduce_into_window(G, p.longest);
    ClassInvariant inv = invariant(p.longest);
    bool merged = false;
    for (std::size_t k = 0; k < t.classes.size(); ++k) {
      if (!t.windows[k].contains(seed)) continue;
      if (!(t.classes[k].invariant == inv)) throw consistency_error("window merge contradicts the class invariant");
      t.classes[k].member_subsets.push_back(I);
      merged = true;
      break;
    }
    if (merged) continue;
    ClassDescriptor c;
    c.id = t.classes.size();
    c.representative_subset = I;
    c.member_subsets = {I};
    c.representative = p.longest;
    c.seed = seed;
    c.subgraph_type = *p.type_name;
    c.underlying_class = cat.class_of(p.longest.hat).value();
    c.underlying_type = cat.at(c.underlying_class).type_name;
    c.invariant = inv;
    t.windows.push_back(class_orbit(G, c, radii.storage, radii.report, radii.ceiling));
    t.classes.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < t.classes.size(); ++i)
    for (std::size_t j = i + 1; j < t.classes.size(); ++j) {
      Distinctness cert{i, j, DistinctnessBasis::window_only};
      if (t.classes[i].underlying_class != t.classes[j].underlying_class)
        cert.basis = DistinctnessBasis::hat_class;
      else if (!(t.classes[i].invariant == t.classes[j].invariant))
        cert.basis = DistinctnessBasis::coset_invariant;
      t.certificates.push_back(cert);
    }
  return t;
}

// ---------------------------------------------------------------------------
// Hat map

inline const WeylElement& hat(const AffineElement& x) { return x.finite_part(); }
inline Index hat(const PackedAffine& x) { return x.hat; }

inline const FiniteClass& underlying_class(const FiniteInvolutionCatalog& cat, const ClassDescriptor& c) {
  return cat.at(c.underlying_class);
}

/**
 * For each element a of W, the node set (bit i-1 for r_i) of the smallest
 * standard parabolic subgroup containing a. Parabolics intersect as
 * W_I & W_J = W_{I&J}, so this is the intersection of every I with a in W_I.
 */
inline std::vector<std::uint32_t> parabolic_supports(const FiniteGroupTable& W) {
  const std::size_t n = W.rank();
  if (n > 6) throw resource_error("parabolic_supports: rank too large for subset enumeration");
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> support(W.size(), full);
  for (std::uint32_t mask = 0; mask < full; ++mask) {
    std::vector<Index> elems{FiniteGroupTable::identity()};
    std::vector<bool> seen(W.size(), false);
    seen[0] = true;
    for (std::size_t h = 0; h < elems.size(); ++h)
      for (std::size_t i = 0; i < n; ++i) {
        if (!(mask >> i & 1u)) continue;
        Index y = W.mul(elems[h], W.generators()[i]);
        if (!seen[y]) seen[y] = true, elems.push_back(y);
      }
    for (Index a : elems) support[a] &= mask;
  }
  return support;
}

/// Coefficients of u vanish outside the support of a (checked for involutions (a,u)).
inline bool support_condition(const PackedAffine& x, const std::vector<std::uint32_t>& supports, std::size_t rank) {
  for (std::size_t i = 0; i < rank; ++i)
    if (x.coeffs[i] != 0 && !(supports[x.hat] >> i & 1u)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Commuting partner construction

/**
 * Given an involution x = (a,u) and an involution b commuting with a,
 * returns (b, v) with v = (u - u^b)/2. Then
 *     (a,u)(b,v) = (ab, (u + u^b)/2) = (b,v)(a,u),
 * which is re-checked by direct multiplication. Whether (b,v) is conjugate
 * to x is NOT implied and must be checked separately (see PartnerOutcome).
 *
 * Throws precondition_error if the hypotheses fail and lattice_error if v is
 * not in the coroot lattice.
 */
inline AffineElement commuting_partner(const AffineElement& x, const WeylElement& b) {
  const auto& a = x.finite_part();
  if (!is_involution(x)) throw precondition_error("commuting_partner: x is not an involution");
  if (!b.is_involution()) throw precondition_error("commuting_partner: b is not an involution");
  if (!(a * b == b * a)) throw precondition_error("commuting_partner: b does not commute with hat(x)");
  const Vector& u = x.translation().vector();
  Vector v = Scalar(1, 2) * (u - b.apply(u));
  AffineElement y(b, LatticeVector::from_vector(x.system(), v));
  if (!commutes(x, y)) throw consistency_error("commuting_partner: constructed partner does not commute");
  return y;
}

struct PartnerOutcome {
  bool v_in_lattice = false;
  bool commutes_direct = false;    // by direct multiplication both ways
  bool product_identity = false;   // both products equal (ab, (u + u^b)/2)
  bool auxiliary_in_lattice = false;  // w = (u - u^g)/2 for the chosen g with g^-1 a g = b
  bool partner_in_class = false;      // (b, v) has x's class invariant
  bool conclusion_holds = false;      // some (b, v') in x's class commutes with x
  bool found_outside_window = false;  // the (b, v') found lies beyond the storage window
  std::int32_t witness_norm = -1;     // max-norm of the (b, v') found, -1 if none
};

/**
 * Smallest max-norm involution (b, v) commuting with x and having the class
 * invariant `target`, searched box by box up to `max_radius`.
 */
inline std::optional<PackedAffine> find_commuting_in_class(const AffineGroup& G, const ClassInvariantComputer& invariant,
                                                           const ClassInvariant& target, const PackedAffine& x, Index b,
                                                           int max_radius) {
  const std::size_t n = G.rank();
  for (int r = 0; r <= max_radius; ++r) {
    Coeffs v{};
    for (std::size_t i = 0; i < n; ++i) v[i] = -r;
    while (true) {
      PackedAffine y{b, v};
      if (y.max_norm() == r && G.is_involution(y) && G.commutes(x, y) && invariant(y) == target) return y;
      std::size_t i = 0;
      while (i < n && v[i] == r) v[i++] = -r;
      if (i == n) break;
      ++v[i];
    }
  }
  return std::nullopt;
}

/**
 * Runs the partner construction for x in class window `win` and checks every
 * claim about it. The auxiliary conjugator uses g = h_a^-1 h_b from the
 * catalog's conjugators. When (b, v) is not in x's class, a commuting
 * (b, v') in the class is looked for in the window and then, exactly, in
 * growing boxes up to `search_radius`.
 */
inline PartnerOutcome check_partner(const AffineGroup& G, const FiniteInvolutionCatalog& cat,
                                    const ClassInvariantComputer& invariant, const InvolutionClassWindow& win,
                                    const PackedAffine& xp, Index b_index, int search_radius = 12) {
  PartnerOutcome out;
  const auto& W = G.finite();
  const AffineElement x = G.unpack(xp);
  const WeylElement& a = x.finite_part();
  const WeylElement& b = W.element(b_index);
  const Vector& u = x.translation().vector();

  Index g = W.mul(W.inverse(cat.conjugator_of(xp.hat)), cat.conjugator_of(b_index));
  if (W.conjugate(xp.hat, g) != b_index) throw consistency_error("check_partner: conjugator is wrong");
  Vector w_aux = Scalar(1, 2) * (u - W.element(g).apply(u));
  out.auxiliary_in_lattice = G.roots().lattice_coefficients(w_aux).has_value();

  const ClassInvariant target = invariant(xp);
  try {
    AffineElement y = commuting_partner(x, b);
    out.v_in_lattice = true;
    AffineElement xy = x * y, yx = y * x;
    out.commutes_direct = xy == yx;
    Vector half = Scalar(1, 2) * (u + b.apply(u));
    out.product_identity = xy.finite_part() == a * b && xy.translation().vector() == half &&
                           yx.translation().vector() == half;
    out.partner_in_class = invariant(G.pack(y)) == target;
  } catch (const lattice_error&) {
    out.v_in_lattice = false;
  }
  if (out.partner_in_class && out.commutes_direct) {
    out.conclusion_holds = true;
    out.witness_norm = G.pack(commuting_partner(x, b)).max_norm();
    return out;
  }
  for (const auto& y : win.elements)
    if (y.hat == b_index && G.commutes(xp, y)) {
      out.conclusion_holds = true;
      out.witness_norm = y.max_norm();
      return out;
    }
  if (auto y = find_commuting_in_class(G, invariant, target, xp, b_index, search_radius)) {
    out.conclusion_holds = true;
    out.found_outside_window = true;
    out.witness_norm = y->max_norm();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Everything for one affine type, built once.

struct AffineWeylContext {
  RootSystem roots;
  std::shared_ptr<const AffineGroup> group;
  AffineDiagram diagram;
  FiniteInvolutionCatalog catalog;

  explicit AffineWeylContext(const RootSystem& rs)
      : roots(rs),
        group(std::make_shared<const AffineGroup>(rs)),
        diagram(build_affine_diagram(group)),
        catalog(diagram) {}
  explicit AffineWeylContext(CoxeterType t) : AffineWeylContext(build_root_system(t)) {}

  ClassTable class_table(const WindowRadii& radii) const {
    return dedupe_classes(diagram, catalog, enumerate_richardson_subsets(diagram), radii);
  }
};

}  // namespace civ

#pragma once

/**
 * Commuting involution graphs: vertices are involutions of one class, with an
 * edge between distinct commuting elements.
 *
 * Affine classes are infinite, so graphs are built on a storage window and
 * distances are only ever reported between report-slice vertices, with
 * shortest paths free to route through the larger storage slice. Nothing here
 * claims the diameter of the infinite graph.
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "civ/affine_group.hpp"
#include "civ/errors.hpp"
#include "civ/involutions.hpp"

namespace civ {

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

struct WindowMeta {
  int report_radius = 0;
  int storage_radius = 0;
};

template <class V>
struct CIVGraph {
  std::vector<V> vertices;
  std::vector<std::vector<std::uint32_t>> adjacency;  // sorted neighbor lists
  std::optional<WindowMeta> window;

  std::size_t size() const { return vertices.size(); }
  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& a : adjacency) e += a.size();
    return e / 2;
  }
  bool adjacent(std::size_t i, std::size_t j) const {
    return std::binary_search(adjacency[i].begin(), adjacency[i].end(), static_cast<std::uint32_t>(j));
  }
};

/**
 * All-pairs commutation graph. Vertices must be distinct involutions; the
 * order given is kept as the vertex order.
 */
template <class V, class Commutes, class IsInvolution, class Hash = std::hash<V>>
CIVGraph<V> build_graph(std::vector<V> vertices, Commutes&& commutes, IsInvolution&& is_involution) {
  {
    std::unordered_map<V, std::size_t, Hash> seen;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (!is_involution(vertices[i])) throw precondition_error("build_graph: vertex is not an involution");
      if (!seen.emplace(vertices[i], i).second) throw precondition_error("build_graph: duplicate vertex");
    }
  }
  CIVGraph<V> g;
  g.adjacency.resize(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (commutes(vertices[i], vertices[j])) {
        g.adjacency[i].push_back(static_cast<std::uint32_t>(j));
        g.adjacency[j].push_back(static_cast<std::uint32_t>(i));
      }
  for (auto& a : g.adjacency) std::sort(a.begin(), a.end());
  g.vertices = std::move(vertices);
  return g;
}

/// Breadth-first distances from `source`; kUnreachable across components.
template <class V>
std::vector<std::size_t> bfs_distances(const CIVGraph<V>& g, std::size_t source) {
  if (source >= g.size()) throw precondition_error("bfs_distances: vertex not in graph");
  std::vector<std::size_t> dist(g.size(), kUnreachable);
  std::vector<std::uint32_t> queue{static_cast<std::uint32_t>(source)};
  dist[source] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    auto v = queue[h];
    for (auto w : g.adjacency[v])
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

template <class V>
std::size_t distance(const CIVGraph<V>& g, std::size_t x, std::size_t y) {
  if (y >= g.size()) throw precondition_error("distance: vertex not in graph");
  return bfs_distances(g, x)[y];
}

/// Connected components, each sorted, ordered by smallest vertex.
template <class V>
std::vector<std::vector<std::uint32_t>> components(const CIVGraph<V>& g) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> done(g.size(), false);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (done[s]) continue;
    std::vector<std::uint32_t> comp{static_cast<std::uint32_t>(s)};
    done[s] = true;
    for (std::size_t h = 0; h < comp.size(); ++h)
      for (auto w : g.adjacency[comp[h]])
        if (!done[w]) done[w] = true, comp.push_back(w);
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

/// Largest finite distance, or kUnreachable if disconnected. Exhaustive; for finite graphs.
template <class V>
std::size_t diameter(const CIVGraph<V>& g) {
  std::size_t d = 0;
  for (std::size_t s = 0; s < g.size(); ++s)
    for (auto x : bfs_distances(g, s)) d = std::max(d, x);
  return d;
}

/// Graph of a finite involution class of W, vertices as table indices.
inline CIVGraph<Index> finite_class_graph(const AffineGroup& G, const FiniteClass& c) {
  const auto& W = G.finite();
  auto verts = c.elements;
  std::sort(verts.begin(), verts.end());
  return build_graph(
      std::move(verts), [&](Index a, Index b) { return W.mul(a, b) == W.mul(b, a); },
      [&](Index a) { return W.is_involution(a); });
}

/// Graph on a class window (storage slice).
inline CIVGraph<PackedAffine> affine_class_graph(const AffineGroup& G, const InvolutionClassWindow& w) {
  auto g = build_graph(
      w.elements, [&](const PackedAffine& x, const PackedAffine& y) { return G.commutes(x, y); },
      [&](const PackedAffine& x) { return G.is_involution(x); });
  g.window = WindowMeta{w.report_radius, w.storage_radius};
  return g;
}

using Histogram = std::map<std::size_t, std::size_t>;  // distance -> unordered pair count

struct DiameterReport {
  std::size_t class_id = 0;
  int report_radius = 0;
  int storage_radius = 0;
  std::size_t storage_vertices = 0;
  std::size_t report_vertices = 0;
  std::size_t edges = 0;
  bool saturated = false;
  bool connected_on_report_slice = false;
  std::size_t max_observed_distance = 0;  // kUnreachable when disconnected
  std::pair<std::size_t, std::size_t> witness{0, 0};  // report-slice indices realizing the max
  Histogram histogram;
  std::vector<Histogram> per_radius;  // [r] covers pairs with both ends of max-norm <= r
  std::size_t report_components = 0;  // components of the storage graph meeting the report slice
  std::vector<std::size_t> distances;  // report_vertices^2, row-major
  std::vector<PackedAffine> report_slice;

  std::size_t at(std::size_t i, std::size_t j) const { return distances[i * report_vertices + j]; }
};

/// Distances among report-slice vertices (a prefix of the window order) routed through the whole graph.
inline DiameterReport diameter_from_graph(const CIVGraph<PackedAffine>& g, const InvolutionClassWindow& w) {
  DiameterReport r;
  r.class_id = w.class_id;
  r.report_radius = w.report_radius;
  r.storage_radius = w.storage_radius;
  r.storage_vertices = g.size();
  r.report_vertices = w.report_count();
  r.edges = g.edge_count();
  r.saturated = w.saturated_at_report_radius;
  r.report_slice = w.report_slice();
  const std::size_t n = r.report_vertices;
  r.distances.assign(n * n, kUnreachable);
  r.per_radius.assign(static_cast<std::size_t>(w.report_radius) + 1, {});
  std::size_t best = 0;
  bool connected = true;
  for (std::size_t i = 0; i < n; ++i) {
    auto d = bfs_distances(g, i);
    for (std::size_t j = 0; j < n; ++j) {
      r.distances[i * n + j] = d[j];
      if (j <= i) continue;
      ++r.histogram[d[j]];
      auto span = std::max(g.vertices[i].max_norm(), g.vertices[j].max_norm());
      for (auto rad = static_cast<std::size_t>(span); rad < r.per_radius.size(); ++rad) ++r.per_radius[rad][d[j]];
      if (d[j] == kUnreachable) connected = false;
      if (d[j] > best || (d[j] == kUnreachable && best != kUnreachable)) {
        best = d[j];
        r.witness = {i, j};
      }
    }
  }
  r.connected_on_report_slice = connected;
  r.max_observed_distance = connected ? best : kUnreachable;
  for (const auto& comp : components(g))
    if (!comp.empty() && comp.front() < n) ++r.report_components;
  return r;
}

/// Builds the storage-radius window and graph of class `c` and measures report-slice distances.
inline DiameterReport diameter_estimate(const AffineGroup& G, const ClassDescriptor& c, int report_radius,
                                        int storage_radius, std::size_t ceiling = kDefaultCeiling) {
  auto w = class_orbit(G, c, storage_radius, report_radius, ceiling);
  return diameter_from_graph(affine_class_graph(G, w), w);
}

}  // namespace civ

#pragma once

/**
 * Finite Weyl group elements and orbit closures.
 *
 * Action convention: group elements act on the RIGHT. `apply(w, v)` is v^w,
 * and products compose left to right:
 *
 *     apply(compose(w1, w2), v) == apply(w2, apply(w1, v)).
 *
 * This is what makes the semidirect product law (a,u)(b,v) = (ab, u^b + v)
 * hold literally in affine.hpp. A WeylElement stores the matrix whose row i is
 * the image of e_i, so v^w is the row-vector product v * M and
 * compose(w1, w2) is M1 * M2.
 */

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "civ/errors.hpp"
#include "civ/linalg.hpp"
#include "civ/rootsys.hpp"

namespace civ {

class WeylElement {
 public:
  WeylElement() = default;

  static WeylElement identity(const RootSystem& rs) { return WeylElement(rs, Matrix::identity(rs.ambient_dim())); }

  /// Wraps a matrix; rejects maps that are not orthogonal or do not permute the roots.
  static WeylElement from_matrix(const RootSystem& rs, Matrix m) {
    WeylElement w(rs, std::move(m));
    if (!w.is_orthogonal() || !w.permutes_roots()) throw precondition_error("matrix is not a Weyl group element");
    return w;
  }

  const RootSystem& system() const { return rs_; }
  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }

  /// Image of e_i.
  Vector basis_image(std::size_t i) const { return m_.row(i); }

  Vector apply(const Vector& v) const {
    if (v.size() != dim()) throw dimension_error("WeylElement::apply: dimension mismatch");
    return v * m_;
  }

  bool is_identity() const { return m_ == Matrix::identity(dim()); }
  bool is_involution() const { return !is_identity() && (m_ * m_) == Matrix::identity(dim()); }

  bool is_orthogonal() const { return m_ * m_.transpose() == Matrix::identity(dim()); }

  bool permutes_roots() const {
    for (const auto& r : rs_.roots())
      if (!rs_.contains(apply(r.vector))) return false;
    return true;
  }

  friend WeylElement compose(const WeylElement& a, const WeylElement& b) {
    if (!(a.rs_ == b.rs_)) throw system_mismatch("compose: elements of different root systems");
    return WeylElement(a.rs_, a.m_ * b.m_);
  }

  /// Orthogonal, so the inverse is the transpose.
  friend WeylElement inverse(const WeylElement& a) { return WeylElement(a.rs_, a.m_.transpose()); }

  friend WeylElement operator*(const WeylElement& a, const WeylElement& b) { return compose(a, b); }

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.rs_ == b.rs_ && a.m_ == b.m_; }

 private:
  WeylElement(RootSystem rs, Matrix m) : rs_(std::move(rs)), m_(std::move(m)) {}

  RootSystem rs_;
  Matrix m_;
};

inline Vector apply(const WeylElement& w, const Vector& v) { return w.apply(v); }

/// The orthogonal reflection s_alpha; alpha must be a root of `rs`.
inline WeylElement reflection(const RootSystem& rs, const Vector& alpha) {
  if (!rs.contains(alpha)) throw precondition_error("reflection: " + alpha.to_string() + " is not a root");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < rs.ambient_dim(); ++i) rows.push_back(reflect(alpha, Vector::unit(rs.ambient_dim(), i)));
  return WeylElement::from_matrix(rs, Matrix::from_rows(rows));
}

inline WeylElement simple_reflection(const RootSystem& rs, std::size_t i) {
  return reflection(rs, rs.simple_root(i).vector);
}

inline std::vector<WeylElement> simple_reflections(const RootSystem& rs) {
  std::vector<WeylElement> out;
  for (std::size_t i = 0; i < rs.rank(); ++i) out.push_back(simple_reflection(rs, i));
  return out;
}

/// Product of a word of elements, left to right.
template <class T>
T product(const std::vector<T>& word, T identity) {
  for (const auto& w : word) identity = identity * w;
  return identity;
}

/// A sorted set of generator labels (1-based node numbers r1, r2, ...).
struct GeneratorSubset {
  std::vector<int> indices;

  GeneratorSubset() = default;
  GeneratorSubset(std::initializer_list<int> il) : indices(il) { normalize(); }
  explicit GeneratorSubset(std::vector<int> v) : indices(std::move(v)) { normalize(); }

  std::size_t size() const { return indices.size(); }
  bool contains(int i) const { return std::binary_search(indices.begin(), indices.end(), i); }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < indices.size(); ++i) s += (i ? ",r" : "r") + std::to_string(indices[i]);
    return s + "}";
  }

  /// Size first, then lexicographic.
  friend bool operator<(const GeneratorSubset& a, const GeneratorSubset& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.indices < b.indices;
  }
  friend bool operator==(const GeneratorSubset&, const GeneratorSubset&) = default;

 private:
  void normalize() {
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
      throw precondition_error("GeneratorSubset: repeated index");
  }
};

inline constexpr std::size_t kDefaultCeiling = 1'000'000;

/**
 * A deduplicated list of group elements plus how it was produced.
 *
 * `depth[i]` is the breadth-first layer at which elements[i] was found; for a
 * group closure under right multiplication by involutive generators that is
 * the word length of the element.
 */
template <class T, class Hash = std::hash<T>>
struct ElementSet {
  enum class Closure { group, conjugation };

  std::vector<T> elements;
  std::vector<std::size_t> depth;
  std::vector<T> generators;
  Closure closure = Closure::group;
  std::size_t closure_depth = 0;

  std::size_t size() const { return elements.size(); }
  bool contains(const T& x) const { return index_.count(x) != 0; }
  std::optional<std::size_t> index_of(const T& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Returns false if already present.
  bool insert(T x, std::size_t d) {
    auto [it, fresh] = index_.emplace(x, elements.size());
    if (!fresh) return false;
    elements.push_back(std::move(x));
    depth.push_back(d);
    closure_depth = std::max(closure_depth, d);
    return true;
  }

 private:
  std::unordered_map<T, std::size_t, Hash> index_;
};

/**
 * Breadth-first closure of `seeds` under x -> step(x, g) for every generator g.
 * Throws resource_error once more than `ceiling` elements are found.
 */
template <class T, class Hash = std::hash<T>, class Step>
ElementSet<T, Hash> orbit_closure(const std::vector<T>& seeds, const std::vector<T>& gens, Step step,
                                  typename ElementSet<T, Hash>::Closure kind, std::size_t ceiling) {
  ElementSet<T, Hash> out;
  out.generators = gens;
  out.closure = kind;
  std::size_t head = 0;
  for (const auto& s : seeds) out.insert(s, 0);
  while (head < out.elements.size()) {
    const std::size_t cur = head++;
    for (const auto& g : gens) {
      T next = step(out.elements[cur], g);
      if (out.insert(std::move(next), out.depth[cur] + 1) && out.size() > ceiling)
        throw resource_error("orbit closure exceeded ceiling of " + std::to_string(ceiling) +
                             " elements (group too large or infinite)");
    }
  }
  return out;
}

}  // namespace civ

template <>
struct std::hash<civ::WeylElement> {
  std::size_t operator()(const civ::WeylElement& w) const noexcept { return std::hash<civ::Matrix>{}(w.matrix()); }
};

namespace civ {

using WeylSet = ElementSet<WeylElement>;

/// Generates the finite group spanned by `gens` by right multiplication.
inline WeylSet generate_group(const std::vector<WeylElement>& gens, std::size_t ceiling = kDefaultCeiling) {
  if (gens.empty()) throw precondition_error("generate_group: no generators");
  return orbit_closure<WeylElement>({WeylElement::identity(gens[0].system())}, gens,
                                    [](const WeylElement& x, const WeylElement& g) { return x * g; },
                                    WeylSet::Closure::group, ceiling);
}

inline WeylSet generate_group(const RootSystem& rs, std::size_t ceiling = kDefaultCeiling) {
  return generate_group(simple_reflections(rs), ceiling);
}

/// Conjugacy class of w under the generators of `group` (w^g = g^-1 w g).
inline WeylSet conjugacy_class(const WeylElement& w, const WeylSet& group) {
  if (!group.contains(w)) throw precondition_error("conjugacy_class: element not in group");
  return orbit_closure<WeylElement>({w}, group.generators,
                                    [](const WeylElement& x, const WeylElement& g) { return inverse(g) * x * g; },
                                    WeylSet::Closure::conjugation, group.size());
}

/// Positive roots of the standard parabolic subsystem on the given simple-root indices (0-based).
inline std::vector<Vector> parabolic_positive_roots(const RootSystem& rs, const std::vector<int>& simple0) {
  std::vector<Vector> out;
  for (const auto& r : rs.roots()) {
    if (!r.is_positive()) continue;
    bool inside = true;
    for (std::size_t i = 0; i < r.coefficients.size(); ++i)
      if (r.coefficients[i] != 0 && std::find(simple0.begin(), simple0.end(), static_cast<int>(i)) == simple0.end())
        inside = false;
    if (inside) out.push_back(r.vector);
  }
  return out;
}

/// Number of positive roots in `positive` sent to negative roots by w.
inline std::size_t inversion_count(const WeylElement& w, const std::vector<Vector>& positive) {
  const auto& rs = w.system();
  std::size_t n = 0;
  for (const auto& p : positive) {
    auto idx = rs.index_of(w.apply(p));
    if (!idx) throw consistency_error("inversion_count: image is not a root");
    if (!rs.root(*idx).is_positive()) ++n;
  }
  return n;
}

struct LongestElement {
  WeylElement element;
  bool is_central = false;
  std::size_t length = 0;
};

/**
 * Longest element w_I of the standard parabolic W_I of a finite Weyl group.
 * I holds 1-based simple-reflection labels. The maximal-length element is
 * taken from the breadth-first layers of W_I and cross-checked against the
 * inversion count on the positive roots of Phi_I.
 */
inline LongestElement longest_element(const RootSystem& rs, const GeneratorSubset& I) {
  if (I.size() == 0) return {WeylElement::identity(rs), true, 0};
  std::vector<WeylElement> gens;
  std::vector<int> simple0;
  for (int i : I.indices) {
    if (i < 1 || static_cast<std::size_t>(i) > rs.rank())
      throw precondition_error("longest_element: index r" + std::to_string(i) + " outside the finite diagram");
    gens.push_back(simple_reflection(rs, static_cast<std::size_t>(i - 1)));
    simple0.push_back(i - 1);
  }
  WeylSet sub = generate_group(gens);
  std::size_t best = 0, count = 0;
  for (std::size_t k = 0; k < sub.size(); ++k) {
    if (sub.depth[k] > sub.depth[best]) best = k, count = 0;
    if (sub.depth[k] == sub.depth[best]) ++count;
  }
  if (count != 1) throw consistency_error("longest_element: maximal length not unique");
  LongestElement out{sub.elements[best], true, sub.depth[best]};
  auto positives = parabolic_positive_roots(rs, simple0);
  if (inversion_count(out.element, positives) != out.length || out.length != positives.size())
    throw consistency_error("longest_element: length and inversion count disagree");
  for (const auto& g : gens)
    if (!(out.element * g == g * out.element)) out.is_central = false;
  return out;
}

}  // namespace civ

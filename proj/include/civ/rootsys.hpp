#pragma once

/**
 * Crystallographic root systems with exact rational coordinates.
 *
 * A RootSystem is a cheap value handle onto immutable shared data, so it can
 * be copied freely and used as the "owning system" of group elements.
 *
 * Coordinates:
 *   F4  ambient R^4, simple roots 1/2(e1-e2-e3-e4), e4, e3-e4, e2-e3;
 *       long roots have norm 2, short roots norm 1.
 *   G2  ambient R^3, roots +-(ei-ej) (short, norm 2) and +-(2ei-ej-ek)
 *       (long, norm 6); simple roots e1-e2 and -2e1+e2+e3.
 *   An  ambient R^{n+1}, simple roots ei - e(i+1).
 *   Bn  simple roots ei - e(i+1), en.
 *   Cn  simple roots ei - e(i+1), 2en.
 *   Dn  simple roots ei - e(i+1), e(n-1) + en.
 *
 * Roots are ordered by (coefficient sum in the simple-root basis, then
 * lexicographically on ambient coordinates), so negative roots come first
 * and the highest root is last.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "civ/errors.hpp"
#include "civ/linalg.hpp"

namespace civ {

inline constexpr int kMaxRank = 8;

struct CoxeterType {
  char family = 'A';  // one of A B C D F G
  int rank = 1;

  std::string name() const { return std::string(1, family) + std::to_string(rank); }

  static CoxeterType parse(const std::string& text) {
    if (text.size() < 2) throw construction_error("unknown Coxeter type '" + text + "'");
    CoxeterType t;
    t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    try {
      std::size_t used = 0;
      t.rank = std::stoi(text.substr(1), &used);
      if (used != text.size() - 1) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw construction_error("unknown Coxeter type '" + text + "'");
    }
    return t;
  }

  friend bool operator==(const CoxeterType&, const CoxeterType&) = default;
};

enum class LengthClass { short_root, long_root };

inline const char* to_string(LengthClass c) { return c == LengthClass::long_root ? "long" : "short"; }

struct Root {
  Vector vector;
  LengthClass length_class = LengthClass::long_root;
  std::vector<std::int64_t> coefficients;  // in the simple-root basis
  Scalar norm;                             // <a, a>

  std::int64_t height() const { return std::accumulate(coefficients.begin(), coefficients.end(), std::int64_t{0}); }
  bool is_positive() const { return height() > 0; }
};

/// alpha^vee = 2 alpha / <alpha, alpha>.
inline Vector coroot(const Vector& alpha) {
  Scalar n = inner_product(alpha, alpha);
  if (n.is_zero()) throw precondition_error("coroot: zero vector");
  return (Scalar(2) / n) * alpha;
}

/// s_alpha(v) = v - <alpha, v> alpha^vee.
inline Vector reflect(const Vector& alpha, const Vector& v) { return v - inner_product(alpha, v) * coroot(alpha); }

class RootSystem {
 public:
  RootSystem() = default;

  /// Closes `simple_roots` under their reflections and validates the result.
  static RootSystem from_simple_roots(CoxeterType type, const std::vector<Vector>& simple_roots) {
    if (simple_roots.empty()) throw construction_error("root system needs at least one simple root");
    auto d = std::make_shared<Data>();
    d->type = type;
    d->ambient_dim = simple_roots[0].size();
    for (const auto& s : simple_roots)
      if (s.size() != d->ambient_dim) throw construction_error("simple roots have inconsistent dimension");

    // Breadth-first closure under the simple reflections.
    std::unordered_set<Vector> seen(simple_roots.begin(), simple_roots.end());
    std::deque<Vector> frontier(simple_roots.begin(), simple_roots.end());
    constexpr std::size_t kRootCeiling = 100000;
    while (!frontier.empty()) {
      Vector v = std::move(frontier.front());
      frontier.pop_front();
      for (const auto& s : simple_roots) {
        Vector w = reflect(s, v);
        if (seen.insert(w).second) {
          if (seen.size() > kRootCeiling) throw construction_error("root closure does not terminate");
          frontier.push_back(std::move(w));
        }
      }
    }

    try {
      d->simple_basis = BasisCoordinates(simple_roots);
    } catch (const construction_error&) {
      throw construction_error(type.name() + ": simple roots are linearly dependent");
    }
    std::vector<Vector> simple_coroots;
    for (const auto& s : simple_roots) simple_coroots.push_back(coroot(s));
    d->coroot_basis = BasisCoordinates(simple_coroots);
    d->simple_coroots = simple_coroots;

    Scalar max_norm;
    for (const auto& v : seen) {
      Root r;
      r.vector = v;
      r.norm = inner_product(v, v);
      auto c = d->simple_basis.coordinates(v);
      if (!c) throw consistency_error("root outside span of simple roots");
      bool nonneg = true, nonpos = true;
      for (const auto& x : *c) {
        if (!x.is_integer()) throw construction_error(type.name() + ": non-integral root coefficient");
        r.coefficients.push_back(x.numerator());
        nonneg = nonneg && !x.is_negative();
        nonpos = nonpos && !x.is_positive();
      }
      if (!nonneg && !nonpos) throw construction_error(type.name() + ": root with mixed-sign coefficients");
      max_norm = std::max(max_norm, r.norm);
      d->roots.push_back(std::move(r));
    }
    for (auto& r : d->roots) r.length_class = r.norm == max_norm ? LengthClass::long_root : LengthClass::short_root;

    std::sort(d->roots.begin(), d->roots.end(), [](const Root& a, const Root& b) {
      if (a.height() != b.height()) return a.height() < b.height();
      return a.vector < b.vector;
    });
    for (std::size_t i = 0; i < d->roots.size(); ++i) d->index.emplace(d->roots[i].vector, i);
    for (const auto& s : simple_roots) d->simple.push_back(d->index.at(s));

    // Highest root: unique maximum of the coefficient sum.
    const auto top = d->roots.back().height();
    if (d->roots.size() >= 2 && d->roots[d->roots.size() - 2].height() == top)
      throw consistency_error(type.name() + ": highest root is not unique");
    d->highest = d->roots.size() - 1;

    RootSystem rs;
    rs.d_ = std::move(d);
    rs.validate();
    return rs;
  }

  CoxeterType type() const { return d_->type; }
  std::string name() const { return d_->type.name(); }
  std::size_t ambient_dim() const { return d_->ambient_dim; }
  std::size_t rank() const { return d_->simple.size(); }
  const std::vector<Root>& roots() const { return d_->roots; }
  const Root& root(std::size_t i) const { return d_->roots.at(i); }
  std::size_t size() const { return d_->roots.size(); }

  const std::vector<std::size_t>& simple_root_indices() const { return d_->simple; }
  const Root& simple_root(std::size_t i) const { return d_->roots.at(d_->simple.at(i)); }
  std::vector<Vector> simple_roots() const {
    std::vector<Vector> out;
    for (auto i : d_->simple) out.push_back(d_->roots[i].vector);
    return out;
  }

  std::size_t highest_root_index() const { return d_->highest; }
  const Root& highest_root() const { return d_->roots[d_->highest]; }

  /// Simple coroots; they form a Z-basis of the coroot lattice.
  const std::vector<Vector>& coroot_lattice_basis() const { return d_->simple_coroots; }

  std::optional<std::size_t> index_of(const Vector& v) const {
    auto it = d_->index.find(v);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Vector& v) const { return d_->index.count(v) != 0; }

  /// Coefficients over the simple coroots; nullopt unless v lies in the coroot lattice.
  std::optional<std::vector<std::int64_t>> lattice_coefficients(const Vector& v) const {
    if (v.size() != ambient_dim()) throw dimension_error("lattice_coefficients: dimension mismatch");
    auto c = d_->coroot_basis.coordinates(v);
    if (!c) return std::nullopt;
    std::vector<std::int64_t> out;
    for (const auto& x : *c) {
      if (!x.is_integer()) return std::nullopt;
      out.push_back(x.numerator());
    }
    return out;
  }

  /// Coordinates over the simple coroots without the integrality requirement.
  std::optional<Vector> coroot_coordinates(const Vector& v) const { return d_->coroot_basis.coordinates(v); }

  Vector lattice_vector(const std::vector<std::int64_t>& coeffs) const {
    if (coeffs.size() != rank()) throw dimension_error("lattice_vector: wrong number of coefficients");
    Vector v(ambient_dim());
    for (std::size_t i = 0; i < coeffs.size(); ++i) v += Scalar(coeffs[i]) * d_->simple_coroots[i];
    return v;
  }

  /// Coxeter matrix entry m(i, j) of the finite diagram, from the angle between simple roots.
  int coxeter_label(std::size_t i, std::size_t j) const {
    if (i == j) return 1;
    const auto& a = simple_root(i);
    const auto& b = simple_root(j);
    Scalar ip = inner_product(a.vector, b.vector);
    Scalar cos2 = ip * ip / (a.norm * b.norm);
    if (cos2 == Scalar(0)) return 2;
    if (cos2 == Scalar(1, 4)) return 3;
    if (cos2 == Scalar(1, 2)) return 4;
    if (cos2 == Scalar(3, 4)) return 6;
    throw consistency_error("simple roots at a non-crystallographic angle");
  }

  friend bool operator==(const RootSystem& a, const RootSystem& b) { return a.d_ == b.d_; }
  bool valid() const { return d_ != nullptr; }

 private:
  struct Data {
    CoxeterType type;
    std::size_t ambient_dim = 0;
    std::vector<Root> roots;
    std::vector<std::size_t> simple;
    std::size_t highest = 0;
    std::vector<Vector> simple_coroots;
    BasisCoordinates simple_basis;
    BasisCoordinates coroot_basis;
    std::unordered_map<Vector, std::size_t> index;
  };

  void validate() const {
    for (const auto& r : d_->roots) {
      if (!contains(-r.vector)) throw construction_error(name() + ": roots not closed under negation");
      for (const auto& s : simple_roots())
        if (!contains(reflect(s, r.vector))) throw construction_error(name() + ": not closed under reflections");
    }
    // Only +-gamma among the multiples of gamma: with closure under negation
    // it is enough that 2*gamma and gamma/2 are never roots.
    for (const auto& r : d_->roots) {
      if (contains(Scalar(2) * r.vector) || contains(Scalar(1, 2) * r.vector))
        throw construction_error(name() + ": non-reduced root system");
    }
  }

  std::shared_ptr<const Data> d_;
};

inline Scalar inner_product(const Root& a, const Root& b) { return inner_product(a.vector, b.vector); }
inline Vector coroot(const Root& alpha) { return coroot(alpha.vector); }

/// Builds one of the supported irreducible root systems (rank <= 8).
inline RootSystem build_root_system(CoxeterType type) {
  const int n = type.rank;
  auto e = [](std::size_t dim, std::size_t i) { return Vector::unit(dim, i); };
  std::vector<Vector> simple;
  auto chain = [&](std::size_t dim, int count) {
    for (int i = 0; i < count; ++i) simple.push_back(e(dim, i) - e(dim, i + 1));
  };
  auto bad = [&] { return construction_error("unsupported root system type " + type.name()); };
  switch (type.family) {
    case 'A':
      if (n < 1 || n > kMaxRank) throw bad();
      chain(n + 1, n);
      break;
    case 'B':
      if (n < 2 || n > kMaxRank) throw bad();
      chain(n, n - 1);
      simple.push_back(e(n, n - 1));
      break;
    case 'C':
      if (n < 2 || n > kMaxRank) throw bad();
      chain(n, n - 1);
      simple.push_back(Scalar(2) * e(n, n - 1));
      break;
    case 'D':
      if (n < 4 || n > kMaxRank) throw bad();
      chain(n, n - 1);
      simple.push_back(e(n, n - 2) + e(n, n - 1));
      break;
    case 'F':
      if (n != 4) throw bad();
      simple = {Vector{Scalar(1, 2), Scalar(-1, 2), Scalar(-1, 2), Scalar(-1, 2)}, Vector{0, 0, 0, 1},
                Vector{0, 0, 1, -1}, Vector{0, 1, -1, 0}};
      break;
    case 'G':
      if (n != 2) throw bad();
      simple = {Vector{1, -1, 0}, Vector{-2, 1, 1}};
      break;
    default:
      throw bad();
  }
  return RootSystem::from_simple_roots(type, simple);
}

inline RootSystem build_root_system(const std::string& type) { return build_root_system(CoxeterType::parse(type)); }

}  // namespace civ

#pragma once

/**
 * Indexed representation of W~ for bulk work (orbit windows, all-pairs
 * commutation).
 *
 * The finite group W is enumerated once into a FiniteGroupTable: every
 * element gets an index, a multiplication table, and an integer matrix for
 * its action on the coroot lattice in simple-coroot coordinates. An affine
 * element then packs into (hat index, coefficient array), and the product
 * law (a,u)(b,v) = (ab, u^b + v) runs on table lookups and small integer
 * matrix products. `pack`/`unpack` convert to and from the exact rational
 * AffineElement, and the tests hold the two routes against each other.
 */

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "civ/affine.hpp"
#include "civ/errors.hpp"
#include "civ/rootsys.hpp"
#include "civ/weyl.hpp"

namespace civ {

using Coeffs = std::array<std::int32_t, kMaxRank>;

struct PackedAffine {
  std::uint32_t hat = 0;  // index into FiniteGroupTable
  Coeffs coeffs{};        // simple-coroot coefficients; entries >= rank are zero

  std::int32_t max_norm() const {
    std::int32_t m = 0;
    for (auto c : coeffs) m = std::max(m, c < 0 ? -c : c);
    return m;
  }

  friend bool operator==(const PackedAffine&, const PackedAffine&) = default;
};

}  // namespace civ

template <>
struct std::hash<civ::PackedAffine> {
  std::size_t operator()(const civ::PackedAffine& x) const noexcept {
    std::size_t h = x.hat;
    for (auto c : x.coeffs) h = h * 0x100000001b3ULL ^ static_cast<std::uint32_t>(c);
    return h;
  }
};

namespace civ {

class FiniteGroupTable {
 public:
  using Index = std::uint32_t;
  static constexpr std::size_t kDefaultTableLimit = 20000;

  explicit FiniteGroupTable(const RootSystem& rs, std::size_t table_limit = kDefaultTableLimit)
      : rs_(rs), rank_(rs.rank()) {
    const auto gens = simple_reflections(rs);
    const std::size_t ng = gens.size();
    std::vector<LatticeMatrix> gen_lat;
    for (const auto& g : gens) gen_lat.push_back(lattice_matrix_of(g));

    elements_.push_back(WeylElement::identity(rs));
    index_.emplace(elements_[0], 0);
    lattice_.push_back(identity_lattice());
    length_.push_back(0);
    parent_.push_back(0);
    parent_gen_.push_back(0);
    std::vector<std::vector<Index>> rmul;
    for (std::size_t head = 0; head < elements_.size(); ++head) {
      rmul.emplace_back(ng);
      for (std::size_t s = 0; s < ng; ++s) {
        WeylElement y = elements_[head] * gens[s];
        auto [it, fresh] = index_.emplace(y, static_cast<Index>(elements_.size()));
        if (fresh) {
          if (elements_.size() >= table_limit)
            throw resource_error("FiniteGroupTable: |W| exceeds table limit " + std::to_string(table_limit));
          elements_.push_back(std::move(y));
          lattice_.push_back(lattice_product(lattice_[head], gen_lat[s]));
          length_.push_back(length_[head] + 1);
          parent_.push_back(static_cast<Index>(head));
          parent_gen_.push_back(static_cast<Index>(s));
        }
        rmul[head][s] = it->second;
      }
    }
    for (std::size_t s = 0; s < ng; ++s) generators_.push_back(rmul[0][s]);

    // Full table: a*b = (a*parent(b)) * s(b), filled in discovery order of b.
    const std::size_t n = elements_.size();
    mult_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) mult_[a * n] = static_cast<Index>(a);
    for (std::size_t b = 1; b < n; ++b)
      for (std::size_t a = 0; a < n; ++a) mult_[a * n + b] = rmul[mult_[a * n + parent_[b]]][parent_gen_[b]];
    inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (mult_[a * n + b] == 0) {
          inverse_[a] = static_cast<Index>(b);
          break;
        }
  }

  const RootSystem& system() const { return rs_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t rank() const { return rank_; }
  static constexpr Index identity() { return 0; }

  const WeylElement& element(Index i) const { return elements_.at(i); }
  const std::vector<WeylElement>& elements() const { return elements_; }
  Index index_of(const WeylElement& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) throw precondition_error("FiniteGroupTable: element not in W");
    return it->second;
  }
  const std::vector<Index>& generators() const { return generators_; }
  std::size_t length(Index i) const { return length_.at(i); }

  Index mul(Index a, Index b) const { return mult_[static_cast<std::size_t>(a) * size() + b]; }
  Index inverse(Index a) const { return inverse_[a]; }
  Index conjugate(Index a, Index g) const { return mul(mul(inverse_[g], a), g); }
  bool is_involution(Index a) const { return a != 0 && mul(a, a) == 0; }

  /// coeffs(u^w) from coeffs(u).
  Coeffs act(const Coeffs& u, Index w) const {
    const auto& m = lattice_[w];
    Coeffs out{};
    for (std::size_t i = 0; i < rank_; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < rank_; ++j) out[j] += u[i] * m[i * kMaxRank + j];
    }
    return out;
  }

 private:
  using LatticeMatrix = std::array<std::int32_t, kMaxRank * kMaxRank>;

  LatticeMatrix identity_lattice() const {
    LatticeMatrix m{};
    for (std::size_t i = 0; i < rank_; ++i) m[i * kMaxRank + i] = 1;
    return m;
  }

  LatticeMatrix lattice_matrix_of(const WeylElement& w) const {
    LatticeMatrix m{};
    const auto& basis = rs_.coroot_lattice_basis();
    for (std::size_t i = 0; i < rank_; ++i) {
      auto c = rs_.lattice_coefficients(w.apply(basis[i]));
      if (!c) throw consistency_error("Weyl element does not preserve the coroot lattice");
      for (std::size_t j = 0; j < rank_; ++j) m[i * kMaxRank + j] = static_cast<std::int32_t>((*c)[j]);
    }
    return m;
  }

  LatticeMatrix lattice_product(const LatticeMatrix& a, const LatticeMatrix& b) const {
    LatticeMatrix c{};
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t k = 0; k < rank_; ++k)
        for (std::size_t j = 0; j < rank_; ++j) c[i * kMaxRank + j] += a[i * kMaxRank + k] * b[k * kMaxRank + j];
    return c;
  }

  RootSystem rs_;
  std::size_t rank_;
  std::vector<WeylElement> elements_;
  std::unordered_map<WeylElement, Index> index_;
  std::vector<LatticeMatrix> lattice_;
  std::vector<std::size_t> length_;
  std::vector<Index> parent_;
  std::vector<Index> parent_gen_;
  std::vector<Index> generators_;
  std::vector<Index> mult_;
  std::vector<Index> inverse_;
};

/// W~ for one root system in indexed form. Immutable after construction.
class AffineGroup {
 public:
  explicit AffineGroup(const RootSystem& rs, std::size_t table_limit = FiniteGroupTable::kDefaultTableLimit)
      : rs_(rs), finite_(rs, table_limit) {
    for (const auto& r : affine_simple_reflections(rs)) simple_.push_back(pack(r));
  }

  const RootSystem& roots() const { return rs_; }
  const FiniteGroupTable& finite() const { return finite_; }
  std::size_t rank() const { return rs_.rank(); }
  /// Nodes of the affine diagram: r_1..r_{n+1}.
  std::size_t node_count() const { return rank() + 1; }

  const std::vector<PackedAffine>& simple_reflections() const { return simple_; }
  const PackedAffine& generator(int node) const { return simple_.at(static_cast<std::size_t>(node - 1)); }

  static PackedAffine identity() { return {}; }

  PackedAffine translation(const Coeffs& c) const { return {FiniteGroupTable::identity(), c}; }

  PackedAffine compose(const PackedAffine& x, const PackedAffine& y) const {
    PackedAffine r;
    r.hat = finite_.mul(x.hat, y.hat);
    r.coeffs = finite_.act(x.coeffs, y.hat);
    for (std::size_t i = 0; i < rank(); ++i) r.coeffs[i] += y.coeffs[i];
    return r;
  }

  PackedAffine inverse(const PackedAffine& x) const {
    PackedAffine r;
    r.hat = finite_.inverse(x.hat);
    r.coeffs = finite_.act(x.coeffs, r.hat);
    for (auto& c : r.coeffs) c = -c;
    return r;
  }

  /// g^-1 x g.
  PackedAffine conjugate(const PackedAffine& x, const PackedAffine& g) const {
    return compose(compose(inverse(g), x), g);
  }

  bool commutes(const PackedAffine& x, const PackedAffine& y) const {
    if (finite_.mul(x.hat, y.hat) != finite_.mul(y.hat, x.hat)) return false;
    Coeffs xy = finite_.act(x.coeffs, y.hat);
    Coeffs yx = finite_.act(y.coeffs, x.hat);
    for (std::size_t i = 0; i < rank(); ++i)
      if (xy[i] + y.coeffs[i] != yx[i] + x.coeffs[i]) return false;
    return true;
  }

  /// u^a + u == 0 with a^2 == 1, excluding the identity.
  bool is_involution(const PackedAffine& x) const {
    if (finite_.mul(x.hat, x.hat) != FiniteGroupTable::identity()) return false;
    if (x == identity()) return false;
    Coeffs ua = finite_.act(x.coeffs, x.hat);
    for (std::size_t i = 0; i < rank(); ++i)
      if (ua[i] + x.coeffs[i] != 0) return false;
    return true;
  }

  PackedAffine pack(const AffineElement& x) const {
    if (!(x.system() == rs_)) throw system_mismatch("AffineGroup::pack: element of a different system");
    PackedAffine p;
    p.hat = finite_.index_of(x.finite_part());
    const auto& c = x.translation().coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) p.coeffs[i] = static_cast<std::int32_t>(c[i]);
    return p;
  }

  AffineElement unpack(const PackedAffine& p) const {
    std::vector<std::int64_t> c(p.coeffs.begin(), p.coeffs.begin() + static_cast<std::ptrdiff_t>(rank()));
    return AffineElement(finite_.element(p.hat), LatticeVector::from_coefficients(rs_, std::move(c)));
  }

  /// Product of generator nodes, left to right (e.g. {2,3,2,3} is r2 r3 r2 r3).
  PackedAffine word(const std::vector<int>& nodes) const {
    PackedAffine x = identity();
    for (int n : nodes) x = compose(x, generator(n));
    return x;
  }

  /// Order of x, or 0 if it exceeds `cap`.
  std::size_t order(const PackedAffine& x, std::size_t cap = 64) const {
    PackedAffine p = x;
    for (std::size_t k = 1; k <= cap; ++k) {
      if (p == identity()) return k;
      p = compose(p, x);
    }
    return 0;
  }

 private:
  RootSystem rs_;
  FiniteGroupTable finite_;
  std::vector<PackedAffine> simple_;
};

}  // namespace civ

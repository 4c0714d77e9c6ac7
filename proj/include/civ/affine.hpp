#pragma once

/**
 * Affine Weyl group W~ = W |x Z, with Z the coroot lattice.
 *
 * Elements are pairs (a, u) with a in W and u in Z. With the right-action
 * convention of weyl.hpp:
 *
 *     (a,u)(b,v)   = (ab, u^b + v)
 *     (a,u)^-1     = (a^-1, -u^(a^-1))
 *     (a,u)^(g,w)  = (g^-1 a g, u^g + w - w^(g^-1 a g))
 *     s_{alpha,k}  = (s_alpha, k alpha^vee)
 *
 * and (a,u) acts on V by v -> v^a + u.
 */

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "civ/errors.hpp"
#include "civ/linalg.hpp"
#include "civ/rootsys.hpp"
#include "civ/weyl.hpp"

namespace civ {

/// A coroot-lattice vector carried both as an ambient vector and as integer
/// coefficients over the simple coroots. The two forms always agree.
class LatticeVector {
 public:
  LatticeVector() = default;

  static LatticeVector zero(const RootSystem& rs) {
    return LatticeVector(Vector(rs.ambient_dim()), std::vector<std::int64_t>(rs.rank(), 0));
  }

  /// Throws lattice_error if v is not in the coroot lattice.
  static LatticeVector from_vector(const RootSystem& rs, const Vector& v) {
    auto c = rs.lattice_coefficients(v);
    if (!c) throw lattice_error("vector " + v.to_string() + " is not in the coroot lattice");
    return LatticeVector(v, std::move(*c));
  }

  static LatticeVector from_coefficients(const RootSystem& rs, std::vector<std::int64_t> coeffs) {
    Vector v = rs.lattice_vector(coeffs);
    return LatticeVector(std::move(v), std::move(coeffs));
  }

  const Vector& vector() const { return v_; }
  const std::vector<std::int64_t>& coefficients() const { return c_; }
  bool is_zero() const { return v_.is_zero(); }

  /// Max-norm of the coefficient vector; this is what window radii bound.
  std::int64_t max_norm() const {
    std::int64_t m = 0;
    for (auto x : c_) m = std::max(m, x < 0 ? -x : x);
    return m;
  }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.c_ == b.c_; }

 private:
  LatticeVector(Vector v, std::vector<std::int64_t> c) : v_(std::move(v)), c_(std::move(c)) {}

  Vector v_;
  std::vector<std::int64_t> c_;
};

class AffineElement {
 public:
  AffineElement() = default;
  AffineElement(WeylElement a, LatticeVector u) : a_(std::move(a)), u_(std::move(u)) {
    if (u_.vector().size() != a_.dim()) throw dimension_error("AffineElement: translation has wrong dimension");
  }

  static AffineElement identity(const RootSystem& rs) {
    return AffineElement(WeylElement::identity(rs), LatticeVector::zero(rs));
  }
  static AffineElement translation(const RootSystem& rs, const Vector& u) {
    return AffineElement(WeylElement::identity(rs), LatticeVector::from_vector(rs, u));
  }

  const WeylElement& finite_part() const { return a_; }
  const LatticeVector& translation() const { return u_; }
  const RootSystem& system() const { return a_.system(); }

  bool is_identity() const { return a_.is_identity() && u_.is_zero(); }

  friend bool operator==(const AffineElement& x, const AffineElement& y) { return x.a_ == y.a_ && x.u_ == y.u_; }

 private:
  WeylElement a_;
  LatticeVector u_;
};

/// (a,u)(b,v) = (ab, u^b + v).
inline AffineElement affine_compose(const AffineElement& x, const AffineElement& y) {
  const auto& b = y.finite_part();
  WeylElement ab = compose(x.finite_part(), b);
  Vector t = b.apply(x.translation().vector()) + y.translation().vector();
  return AffineElement(std::move(ab), LatticeVector::from_vector(x.system(), t));
}

inline AffineElement operator*(const AffineElement& x, const AffineElement& y) { return affine_compose(x, y); }

/// (a,u)^-1 = (a^-1, -u^(a^-1)).
inline AffineElement affine_inverse(const AffineElement& x) {
  WeylElement ai = inverse(x.finite_part());
  Vector t = -ai.apply(x.translation().vector());
  return AffineElement(ai, LatticeVector::from_vector(x.system(), t));
}

/// g^-1 x g as a literal three-fold product.
inline AffineElement affine_conjugate_by_product(const AffineElement& x, const AffineElement& g) {
  return affine_inverse(g) * x * g;
}

/// x^g = (g^-1 a g, u^g + w - w^(g^-1 a g)) for x = (a,u), g = (g,w).
inline AffineElement affine_conjugate(const AffineElement& x, const AffineElement& g) {
  const auto& gf = g.finite_part();
  WeylElement b = inverse(gf) * x.finite_part() * gf;
  const Vector& w = g.translation().vector();
  Vector t = gf.apply(x.translation().vector()) + w - b.apply(w);
  AffineElement out(b, LatticeVector::from_vector(x.system(), t));
#ifndef NDEBUG
  if (!(out == affine_conjugate_by_product(x, g)))
    throw consistency_error("affine_conjugate: closed form disagrees with the product");
#endif
  return out;
}

/// s_{alpha,k} = (s_alpha, k alpha^vee).
inline AffineElement affine_reflection(const RootSystem& rs, const Vector& alpha, std::int64_t k) {
  WeylElement s = reflection(rs, alpha);
  return AffineElement(std::move(s), LatticeVector::from_vector(rs, Scalar(k) * coroot(alpha)));
}

/// v -> v^a + u.
inline Vector affine_apply(const AffineElement& x, const Vector& v) {
  return x.finite_part().apply(v) + x.translation().vector();
}

/// x != 1 and x^2 == 1. Computed both from the product and from the
/// criterion a^2 = 1, u^a + u = 0; the two must agree.
inline bool is_involution(const AffineElement& x) {
  const bool by_product = !x.is_identity() && (x * x).is_identity();
  const auto& a = x.finite_part();
  const auto& u = x.translation().vector();
  const bool by_shape = !x.is_identity() && (a * a).is_identity() && (a.apply(u) + u).is_zero();
  if (by_product != by_shape) throw consistency_error("is_involution: the two criteria disagree");
  return by_product;
}

inline bool commutes(const AffineElement& x, const AffineElement& y) {
  if (!(x.system() == y.system())) throw system_mismatch("commutes: elements of different systems");
  return x * y == y * x;
}

/// The affine simple reflections r_1..r_n = (s_alpha_i, 0) and r_{n+1} = (s_alpha~, alpha~^vee).
inline std::vector<AffineElement> affine_simple_reflections(const RootSystem& rs) {
  std::vector<AffineElement> out;
  for (std::size_t i = 0; i < rs.rank(); ++i) out.push_back(affine_reflection(rs, rs.simple_root(i).vector, 0));
  out.push_back(affine_reflection(rs, rs.highest_root().vector, 1));
  return out;
}

}  // namespace civ

template <>
struct std::hash<civ::AffineElement> {
  std::size_t operator()(const civ::AffineElement& x) const noexcept {
    std::size_t h = std::hash<civ::WeylElement>{}(x.finite_part());
    for (auto c : x.translation().coefficients()) h = h * 1000003u ^ std::hash<std::int64_t>{}(c);
    return h;
  }
};

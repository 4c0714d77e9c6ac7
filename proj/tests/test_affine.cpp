#include <gtest/gtest.h>

#include <random>

#include "civ/affine.hpp"
#include "civ/affine_group.hpp"
#include "oracles.hpp"

using namespace civ;

namespace {

Vector e4(std::size_t i) { return oracle::e(4, i); }

struct F4 : ::testing::Test {
  RootSystem rs = build_root_system("F4");
  AffineElement lin(const WeylElement& a) { return AffineElement(a, LatticeVector::zero(rs)); }
  AffineElement el(const WeylElement& a, const Vector& u) { return AffineElement(a, LatticeVector::from_vector(rs, u)); }
  WeylElement s(const Vector& a) { return reflection(rs, a); }
};

/// The affine map v -> v^a + u written out with the oracle reflection, for a product of reflections.
Vector oracle_affine_apply(const std::vector<Vector>& reflections, const Vector& u, const Vector& v) {
  Vector w = v;
  for (const auto& a : reflections) w = oracle::reflect(a, w);
  return w + u;
}

}  // namespace

TEST_F(F4, ComposeExample) {
  const WeylElement a = s(e4(0)) * s(e4(1)), b = s(e4(2)) * s(e4(3));
  // (a, e1+e2)(b, 0) = (ab, (e1+e2)^b) and b fixes e1+e2.
  auto xy = el(a, e4(0) + e4(1)) * lin(b);
  EXPECT_EQ(xy.finite_part(), s(e4(0)) * s(e4(1)) * s(e4(2)) * s(e4(3)));
  EXPECT_EQ(xy.translation().vector(), e4(0) + e4(1));
  // (1, e1+e2)(ab, 0) = (ab, (e1+e2)^{ab}) and ab = -1.
  auto t = AffineElement::translation(rs, e4(0) + e4(1)) * lin(a * b);
  EXPECT_EQ(t.finite_part(), a * b);
  EXPECT_EQ(t.translation().vector(), -(e4(0) + e4(1)));
  // (a, 0)(b, e1+e2) = (ab, e1+e2).
  EXPECT_EQ((lin(a) * el(b, e4(0) + e4(1))).translation().vector(), e4(0) + e4(1));
}

TEST_F(F4, ActionMatchesCompose) {
  auto x = el(s(e4(0)) * s(e4(1)), e4(0) + e4(1));
  auto y = el(s(e4(2) - e4(3)), e4(2) - e4(3));
  for (const auto& r : rs.roots()) {
    // Right action: apply x first, then y.
    EXPECT_EQ(affine_apply(x * y, r.vector), affine_apply(y, affine_apply(x, r.vector)));
    EXPECT_EQ(affine_apply(x, r.vector), oracle_affine_apply({e4(0), e4(1)}, e4(0) + e4(1), r.vector));
  }
}

TEST_F(F4, InverseExample) {
  auto x = el(s(e4(2) - e4(3)), e4(0) + e4(1));
  auto xi = affine_inverse(x);
  // (a,u)^-1 = (a^-1, -u^(a^-1)); s_{e3-e4} fixes e1+e2.
  EXPECT_EQ(xi.finite_part(), s(e4(2) - e4(3)));
  EXPECT_EQ(xi.translation().vector(), -(e4(0) + e4(1)));
  EXPECT_TRUE((x * xi).is_identity());
  EXPECT_TRUE((xi * x).is_identity());
}

TEST_F(F4, IsInvolutionExamples) {
  // s_e3 s_e4 negates e3+e4, so (s_e3 s_e4, e3+e4) is an involution; with e1+e2 it is not.
  EXPECT_TRUE(is_involution(el(s(e4(2)) * s(e4(3)), e4(2) + e4(3))));
  EXPECT_FALSE(is_involution(el(s(e4(2)) * s(e4(3)), e4(0) + e4(1))));
  EXPECT_FALSE(is_involution(AffineElement::identity(rs)));
  EXPECT_FALSE(is_involution(AffineElement::translation(rs, e4(0) + e4(1))));
  EXPECT_TRUE(is_involution(lin(s(e4(0)))));
}

TEST_F(F4, AffineSimpleReflections) {
  auto r = affine_simple_reflections(rs);
  ASSERT_EQ(r.size(), 5u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(r[i].finite_part(), simple_reflection(rs, i));
    EXPECT_TRUE(r[i].translation().is_zero());
  }
  // r5 = (s_{e1+e2}, e1+e2): the highest root is long, so it is its own coroot.
  EXPECT_EQ(r[4].finite_part(), s(e4(0) + e4(1)));
  EXPECT_EQ(r[4].translation().vector(), e4(0) + e4(1));
  for (const auto& x : r) EXPECT_TRUE(is_involution(x));
}

TEST_F(F4, AffineReflectionFixesItsHyperplane) {
  // s_{alpha,k} fixes every v with <alpha, v> = k.
  for (const auto& a : rs.roots()) {
    if (!a.is_positive()) continue;
    for (int k = -2; k <= 2; ++k) {
      auto x = affine_reflection(rs, a.vector, k);
      Vector p = (Scalar(k) / oracle::dot(a.vector, a.vector)) * a.vector;
      EXPECT_EQ(oracle::dot(a.vector, p), Scalar(k));
      EXPECT_EQ(affine_apply(x, p), p);
    }
  }
}

TEST_F(F4, ConjugationClosedFormExample) {
  // Conjugating (s_e3 s_e4, 0) by the translation (1, e1+e2) leaves it alone since
  // s_e3 s_e4 fixes e1+e2, while conjugating by (1, e3+e4) adds 2(e3+e4).
  auto x = lin(s(e4(2)) * s(e4(3)));
  auto t1 = AffineElement::translation(rs, e4(0) + e4(1));
  auto t2 = AffineElement::translation(rs, e4(2) + e4(3));
  EXPECT_EQ(affine_conjugate(x, t1), x);
  EXPECT_EQ(affine_conjugate(x, t2).translation().vector(), Scalar(2) * (e4(2) + e4(3)));
  EXPECT_EQ(affine_conjugate(x, t2), affine_conjugate_by_product(x, t2));
}

TEST_F(F4, ConjugatingR2R3SquaredByFiniteElementMatchesFiniteConjugation) {
  auto x = lin(s(e4(2)) * s(e4(3)));
  auto g = lin(s(e4(0) - e4(2)) * s(e4(1) - e4(3)));
  EXPECT_EQ(affine_conjugate(x, g), lin(s(e4(0)) * s(e4(1))));
}

TEST_F(F4, LatticeErrors) {
  EXPECT_THROW(LatticeVector::from_vector(rs, e4(0)), lattice_error);
  EXPECT_THROW(LatticeVector::from_vector(rs, Scalar(1, 2) * Vector{1, 1, 1, 1}), lattice_error);
  EXPECT_THROW(AffineElement::translation(rs, e4(0)), lattice_error);
  EXPECT_NO_THROW(LatticeVector::from_vector(rs, Vector{1, 1, 1, 1}));
  // (s_e1, e1) has v^a + u = 0 but e1 is not a coroot-lattice vector, so it is not in the group.
  EXPECT_THROW(el(s(e4(0)), e4(0)), lattice_error);
}

TEST_F(F4, LatticeVectorFormsAgree) {
  auto lv = LatticeVector::from_coefficients(rs, {1, -2, 0, 3});
  EXPECT_EQ(LatticeVector::from_vector(rs, lv.vector()).coefficients(), lv.coefficients());
  EXPECT_EQ(lv.max_norm(), 3);
  EXPECT_TRUE(oracle::in_f4_coroot_lattice(lv.vector()));
}

TEST(AffineSystems, MismatchThrows) {
  auto f4 = build_root_system("F4");
  auto g2 = build_root_system("G2");
  EXPECT_THROW(commutes(AffineElement::identity(f4), AffineElement::identity(g2)), system_mismatch);
}

TEST(AffineLaws, RandomizedOnBothRoutes) {
  for (const char* type : {"F4", "G2", "B3"}) {
    auto rs = build_root_system(type);
    AffineGroup G(rs);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(G.finite().size() - 1));
    std::uniform_int_distribution<int> coef(-3, 3);
    auto random = [&] {
      PackedAffine p;
      p.hat = pick(rng);
      for (std::size_t i = 0; i < G.rank(); ++i) p.coeffs[i] = coef(rng);
      return p;
    };
    const auto id = AffineElement::identity(rs);
    for (int n = 0; n < 300; ++n) {
      auto px = random(), py = random(), pz = random();
      auto x = G.unpack(px), y = G.unpack(py), z = G.unpack(pz);
      EXPECT_EQ(G.pack(x), px);
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * affine_inverse(x), id);
      EXPECT_EQ(affine_conjugate(x, y), affine_conjugate_by_product(x, y));
      EXPECT_EQ(G.unpack(G.compose(px, py)), x * y);
      EXPECT_EQ(G.unpack(G.inverse(px)), affine_inverse(x));
      EXPECT_EQ(G.unpack(G.conjugate(px, py)), affine_conjugate(x, y));
      EXPECT_EQ(G.commutes(px, py), commutes(x, y));
      EXPECT_EQ(G.is_involution(px), is_involution(x));
      // Action on a point agrees with the composed map.
      Vector v = rs.root(static_cast<std::size_t>(n) % rs.size()).vector;
      EXPECT_EQ(affine_apply(x * y, v), affine_apply(y, affine_apply(x, v)));
    }
  }
}

TEST(AffineCommute, ReflectionsExhaustiveSmallRange) {
  // Two affine reflections commute exactly when the roots are orthogonal or they coincide.
  auto rs = build_root_system("G2");
  std::vector<Vector> pos;
  for (const auto& r : rs.roots())
    if (r.is_positive()) pos.push_back(r.vector);
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = 0; j < pos.size(); ++j)
      for (int k = -2; k <= 2; ++k)
        for (int l = -2; l <= 2; ++l) {
          auto x = affine_reflection(rs, pos[i], k), y = affine_reflection(rs, pos[j], l);
          bool expect = oracle::dot(pos[i], pos[j]).is_zero() || (i == j && k == l);
          EXPECT_EQ(commutes(x, y), expect);
        }
}

TEST(AffineGroupIndexed, WordsAndOrders) {
  AffineGroup G(build_root_system("F4"));
  EXPECT_EQ(G.node_count(), 5u);
  EXPECT_EQ(G.order(G.word({2, 3})), 4u);
  EXPECT_EQ(G.order(G.word({3, 4})), 3u);
  EXPECT_EQ(G.order(G.word({1, 3})), 2u);
  EXPECT_EQ(G.order(G.word({3, 5})), 2u);
  EXPECT_EQ(G.order(G.word({4, 5})), 3u);
  EXPECT_EQ(G.order(G.word({1, 5})), 2u);
  // A pure translation has infinite order.
  Coeffs c{};
  c[0] = 1;
  EXPECT_EQ(G.order(G.translation(c)), 0u);
  EXPECT_TRUE(G.is_involution(G.word({2, 3, 2, 3})));
  EXPECT_FALSE(G.is_involution(AffineGroup::identity()));
}

TEST(AffineGroupIndexed, FiniteTableLimits) {
  EXPECT_THROW(AffineGroup(build_root_system("F4"), 100), resource_error);
  FiniteGroupTable W(build_root_system("G2"));
  EXPECT_EQ(W.size(), 12u);
  for (FiniteGroupTable::Index a = 0; a < W.size(); ++a) {
    EXPECT_EQ(W.mul(a, W.inverse(a)), FiniteGroupTable::identity());
    EXPECT_EQ(W.element(W.mul(a, 3)), W.element(a) * W.element(3));
  }
  EXPECT_THROW(W.index_of(WeylElement::identity(build_root_system("G2"))), precondition_error);
}

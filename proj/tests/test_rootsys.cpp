#include <gtest/gtest.h>

#include <set>

#include "civ/rootsys.hpp"
#include "oracles.hpp"

using namespace civ;

namespace {

Vector half(int a, int b, int c, int d) { return Scalar(1, 2) * Vector{a, b, c, d}; }

/// Highest root by the "nothing above it" test: the unique root gamma with
/// gamma + alpha_i neither a root nor zero for every simple alpha_i.
Vector oracle_highest(const std::vector<Vector>& simple) {
  auto roots = oracle::root_closure(simple);
  std::vector<Vector> found;
  for (const auto& g : roots) {
    bool top = true;
    for (const auto& a : simple) {
      Vector s = g + a;
      if (s.is_zero() || roots.count(s)) top = false;
    }
    if (top) found.push_back(g);
  }
  EXPECT_EQ(found.size(), 1u);
  return found.at(0);
}

}  // namespace

TEST(RootSystemF4, HasFortyEightRootsSplitLongShort) {
  auto rs = build_root_system("F4");
  ASSERT_EQ(rs.size(), 48u);
  std::size_t n_long = 0, n_unit = 0, n_half = 0;
  for (const auto& r : rs.roots()) {
    if (r.length_class == LengthClass::long_root) {
      ++n_long;
      EXPECT_EQ(r.norm, Scalar(2));
    } else {
      EXPECT_EQ(r.norm, Scalar(1));
      bool all_half = true;
      for (const auto& c : r.vector) all_half = all_half && !c.is_integer();
      (all_half ? n_half : n_unit)++;
    }
  }
  EXPECT_EQ(n_long, 24u);
  EXPECT_EQ(n_unit, 8u);
  EXPECT_EQ(n_half, 16u);
}

TEST(RootSystemF4, LongRootsArePlusMinusEiPlusMinusEj) {
  auto rs = build_root_system("F4");
  std::set<Vector> expected;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      for (int si : {-1, 1})
        for (int sj : {-1, 1}) expected.insert(Scalar(si) * oracle::e(4, i) + Scalar(sj) * oracle::e(4, j));
  std::set<Vector> got;
  for (const auto& r : rs.roots())
    if (r.length_class == LengthClass::long_root) got.insert(r.vector);
  EXPECT_EQ(got, expected);
}

TEST(RootSystemF4, SimpleAndHighestRoots) {
  auto rs = build_root_system("F4");
  ASSERT_EQ(rs.rank(), 4u);
  EXPECT_EQ(rs.simple_root(0).vector, half(1, -1, -1, -1));
  EXPECT_EQ(rs.simple_root(1).vector, oracle::e(4, 3));
  EXPECT_EQ(rs.simple_root(2).vector, oracle::e(4, 2) - oracle::e(4, 3));
  EXPECT_EQ(rs.simple_root(3).vector, oracle::e(4, 1) - oracle::e(4, 2));
  EXPECT_EQ(rs.highest_root().vector, oracle::e(4, 0) + oracle::e(4, 1));
  EXPECT_EQ(rs.highest_root().vector, oracle_highest(rs.simple_roots()));
  // e1 + e2 = 2 alpha1 + 4 alpha2 + 3 alpha3 + 2 alpha4.
  EXPECT_EQ(rs.highest_root().coefficients, (std::vector<std::int64_t>{2, 4, 3, 2}));
}

TEST(RootSystemF4, CoxeterLabelsFollowTheDiagram) {
  auto rs = build_root_system("F4");
  EXPECT_EQ(rs.coxeter_label(0, 1), 3);
  EXPECT_EQ(rs.coxeter_label(1, 2), 4);
  EXPECT_EQ(rs.coxeter_label(2, 3), 3);
  EXPECT_EQ(rs.coxeter_label(0, 2), 2);
  EXPECT_EQ(rs.coxeter_label(0, 3), 2);
  EXPECT_EQ(rs.coxeter_label(1, 3), 2);
  EXPECT_EQ(rs.coxeter_label(2, 2), 1);
}

TEST(RootSystemF4, CorootLatticeIsEvenSumIntegerVectors) {
  auto rs = build_root_system("F4");
  // Every vector with coordinates in {-3/2, -1, ..., 3/2}.
  std::vector<Scalar> vals;
  for (int k = -3; k <= 3; ++k) vals.push_back(Scalar(k, 2));
  std::size_t members = 0;
  for (const auto& a : vals)
    for (const auto& b : vals)
      for (const auto& c : vals)
        for (const auto& d : vals) {
          Vector v{a, b, c, d};
          bool in = rs.lattice_coefficients(v).has_value();
          EXPECT_EQ(in, oracle::in_f4_coroot_lattice(v)) << v.to_string();
          members += in;
          if (in) {
            EXPECT_EQ(rs.lattice_vector(*rs.lattice_coefficients(v)), v);
          }
        }
  EXPECT_GT(members, 0u);
}

TEST(RootSystemG2, NormalizationAndRoots) {
  auto rs = build_root_system("G2");
  auto oracle_roots = oracle::root_closure({Vector{1, -1, 0}, Vector{-2, 1, 1}});
  ASSERT_EQ(oracle_roots.size(), 12u);
  ASSERT_EQ(rs.size(), 12u);
  for (const auto& r : rs.roots()) {
    EXPECT_TRUE(oracle_roots.count(r.vector));
    EXPECT_TRUE(r.norm == Scalar(2) || r.norm == Scalar(6));
    EXPECT_EQ(r.length_class == LengthClass::long_root, r.norm == Scalar(6));
    Scalar sum = 0;
    for (const auto& c : r.vector) sum += c;
    EXPECT_TRUE(sum.is_zero());
  }
  // Highest root 3 alpha_short + 2 alpha_long.
  Vector expected = Scalar(3) * Vector{1, -1, 0} + Scalar(2) * Vector{-2, 1, 1};
  EXPECT_EQ(rs.highest_root().vector, expected);
  EXPECT_EQ(rs.highest_root().vector, oracle_highest(rs.simple_roots()));
  EXPECT_EQ(rs.coxeter_label(0, 1), 6);
}

TEST(RootSystemB2, SubsystemInsideF4Coordinates) {
  Vector a = oracle::e(4, 2) - oracle::e(4, 3), b = oracle::e(4, 3);
  auto rs = RootSystem::from_simple_roots(CoxeterType{'B', 2}, {a, b});
  EXPECT_EQ(rs.size(), oracle::root_closure({a, b}).size());
  EXPECT_EQ(rs.size(), 8u);
  EXPECT_EQ(rs.highest_root().vector, oracle_highest({a, b}));
  EXPECT_EQ(rs.highest_root().vector, oracle::e(4, 2) + oracle::e(4, 3));
}

class AllTypes : public ::testing::TestWithParam<std::string> {};

TEST_P(AllTypes, StructuralInvariants) {
  auto rs = build_root_system(GetParam());
  auto closure = oracle::root_closure(rs.simple_roots());
  ASSERT_EQ(rs.size(), closure.size());
  const auto& roots = rs.roots();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& r = roots[i];
    EXPECT_TRUE(closure.count(r.vector));
    EXPECT_TRUE(rs.contains(-r.vector));
    EXPECT_FALSE(rs.contains(Scalar(2) * r.vector));
    EXPECT_FALSE(rs.contains(Scalar(1, 2) * r.vector));
    EXPECT_EQ(rs.index_of(r.vector), i);
    for (const auto& c : r.vector) EXPECT_TRUE((Scalar(2) * c).is_integer());
    bool nonneg = std::all_of(r.coefficients.begin(), r.coefficients.end(), [](auto c) { return c >= 0; });
    bool nonpos = std::all_of(r.coefficients.begin(), r.coefficients.end(), [](auto c) { return c <= 0; });
    EXPECT_TRUE(nonneg || nonpos);
    for (const auto& s : rs.simple_roots()) {
      EXPECT_TRUE(rs.contains(oracle::reflect(s, r.vector)));
      // Crystallographic: <r, s^vee> is an integer.
      EXPECT_TRUE((Scalar(2) * oracle::dot(r.vector, s) / oracle::dot(s, s)).is_integer());
    }
    if (i > 0) {
      EXPECT_LE(roots[i - 1].height(), r.height());
    }
  }
  EXPECT_EQ(rs.highest_root_index(), rs.size() - 1);
  EXPECT_EQ(rs.highest_root().vector, oracle_highest(rs.simple_roots()));
  std::size_t positive = 0;
  for (const auto& r : roots) positive += r.is_positive();
  EXPECT_EQ(2 * positive, rs.size());
}

TEST_P(AllTypes, CorootInvolution) {
  auto rs = build_root_system(GetParam());
  for (const auto& r : rs.roots()) {
    Vector cv = coroot(r);
    EXPECT_EQ(coroot(cv), r.vector);
    EXPECT_EQ(oracle::dot(r.vector, cv), Scalar(2));
    EXPECT_TRUE(rs.lattice_coefficients(cv).has_value());
  }
}

INSTANTIATE_TEST_SUITE_P(Types, AllTypes,
                         ::testing::Values("A1", "A2", "A3", "B2", "B3", "C3", "D4", "F4", "G2"));

TEST(RootSystem, ClassicalSizes) {
  EXPECT_EQ(build_root_system("A3").size(), 12u);
  EXPECT_EQ(build_root_system("B3").size(), oracle::root_closure({Vector{1, -1, 0}, Vector{0, 1, -1}, Vector{0, 0, 1}}).size());
  EXPECT_EQ(build_root_system("B3").size(), 18u);
  EXPECT_EQ(build_root_system("C3").size(), 18u);
  EXPECT_EQ(build_root_system("D4").size(), 24u);
}

TEST(Coroot, Examples) {
  EXPECT_EQ(coroot(oracle::e(4, 3)), Scalar(2) * oracle::e(4, 3));
  EXPECT_EQ(coroot(half(1, -1, -1, -1)), (Vector{1, -1, -1, -1}));
  Vector l = oracle::e(4, 2) - oracle::e(4, 3);
  EXPECT_EQ(coroot(l), l);
  EXPECT_THROW(coroot(Vector(3)), precondition_error);
}

TEST(RootSystem, ConstructionErrors) {
  EXPECT_THROW(build_root_system("F5"), construction_error);
  EXPECT_THROW(build_root_system("G3"), construction_error);
  EXPECT_THROW(build_root_system("D3"), construction_error);
  EXPECT_THROW(build_root_system("A0"), construction_error);
  EXPECT_THROW(build_root_system("A9"), construction_error);
  EXPECT_THROW(build_root_system("X2"), construction_error);
  EXPECT_THROW(build_root_system("B"), construction_error);
  EXPECT_THROW(build_root_system("B2x"), construction_error);
  EXPECT_THROW(RootSystem::from_simple_roots(CoxeterType{'A', 2}, {}), construction_error);
  EXPECT_THROW(RootSystem::from_simple_roots(CoxeterType{'A', 2}, {Vector{1, -1, 0}, Vector{0, 1}}), construction_error);
  // Two copies of a root are not a simple system.
  EXPECT_THROW(RootSystem::from_simple_roots(CoxeterType{'A', 2}, {Vector{1, -1, 0}, Vector{-1, 1, 0}}),
               construction_error);
}

TEST(RootSystem, TypeParsing) {
  EXPECT_EQ(CoxeterType::parse("f4"), (CoxeterType{'F', 4}));
  EXPECT_EQ(CoxeterType::parse("G2").name(), "G2");
}

TEST(RootSystem, LatticeDimensionChecks) {
  auto rs = build_root_system("G2");
  EXPECT_THROW(rs.lattice_coefficients(Vector(4)), dimension_error);
  EXPECT_THROW(rs.lattice_vector({1}), dimension_error);
}

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "civ/weyl.hpp"
#include "oracles.hpp"

using namespace civ;

namespace {

Vector e4(std::size_t i) { return oracle::e(4, i); }

WeylElement word(const RootSystem& rs, std::initializer_list<int> nodes) {
  WeylElement w = WeylElement::identity(rs);
  for (int n : nodes) w = w * simple_reflection(rs, static_cast<std::size_t>(n - 1));
  return w;
}

/// Conjugacy class by brute force over the whole group: { g^-1 w g }.
std::set<std::vector<Scalar>> brute_class(const WeylElement& w, const WeylSet& group) {
  std::set<std::vector<Scalar>> out;
  for (const auto& g : group.elements) out.insert((inverse(g) * w * g).matrix().entries());
  return out;
}

Matrix scalar_matrix(int s, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

}  // namespace

TEST(Reflection, MatchesTheFormulaOnEveryRoot) {
  auto rs = build_root_system("F4");
  for (const auto& a : rs.roots()) {
    auto s = reflection(rs, a.vector);
    EXPECT_TRUE(s.is_involution());
    EXPECT_EQ(s.apply(a.vector), -a.vector);
    for (const auto& b : rs.roots()) EXPECT_EQ(s.apply(b.vector), oracle::reflect(a.vector, b.vector));
  }
}

TEST(Reflection, HalfVectorExample) {
  auto rs = build_root_system("F4");
  auto s = reflection(rs, Scalar(1, 2) * Vector{1, -1, -1, -1});
  // e1 - <a,e1> a^vee with <a,e1> = 1/2 and a^vee = (1,-1,-1,-1).
  EXPECT_EQ(s.apply(e4(0)), (Scalar(1, 2) * Vector{1, 1, 1, 1}));
  EXPECT_THROW(reflection(rs, Vector{1, 1, 1, 1}), precondition_error);
}

TEST(WeylWords, SquareOfR3R2IsProductOfTwoShortReflections) {
  auto rs = build_root_system("F4");
  WeylElement x = word(rs, {3, 2, 3, 2});
  EXPECT_EQ(x, reflection(rs, e4(2)) * reflection(rs, e4(3)));
  EXPECT_EQ(x, word(rs, {2, 3, 2, 3}));
  // It negates e3 and e4 and fixes e1, e2.
  EXPECT_EQ(x.apply(e4(0)), e4(0));
  EXPECT_EQ(x.apply(e4(2)), -e4(2));
}

TEST(WeylWords, ConjugatingPairToFirstCoordinates) {
  auto rs = build_root_system("F4");
  WeylElement g = reflection(rs, e4(0) - e4(2)) * reflection(rs, e4(1) - e4(3));
  WeylElement a = reflection(rs, e4(2)) * reflection(rs, e4(3));
  EXPECT_EQ(inverse(g) * a * g, reflection(rs, e4(0)) * reflection(rs, e4(1)));
}

TEST(WeylAction, RightActionCompatibility) {
  auto rs = build_root_system("F4");
  auto W = generate_group(rs);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, W.size() - 1);
  for (int n = 0; n < 200; ++n) {
    const auto& a = W.elements[pick(rng)];
    const auto& b = W.elements[pick(rng)];
    for (const auto& r : rs.roots()) EXPECT_EQ((a * b).apply(r.vector), b.apply(a.apply(r.vector)));
    EXPECT_EQ(inverse(a) * a, WeylElement::identity(rs));
    EXPECT_TRUE(a.is_orthogonal());
    EXPECT_TRUE(a.permutes_roots());
  }
}

TEST(WeylGroup, OrderOfF4) {
  auto rs = build_root_system("F4");
  auto W = generate_group(rs);
  EXPECT_EQ(W.size(), oracle::permutation_group_order(rs.simple_roots()));
  EXPECT_EQ(W.size(), 2u * 6u * 8u * 12u);
  EXPECT_EQ(W.size(), 1152u);
  EXPECT_EQ(W.closure, WeylSet::Closure::group);
  // Closure depth is the length of the longest element, the number of positive roots.
  EXPECT_EQ(W.closure_depth, 24u);
}

TEST(WeylGroup, OrdersOfSmallGroups) {
  auto g2 = build_root_system("G2");
  EXPECT_EQ(generate_group(g2).size(), oracle::permutation_group_order(g2.simple_roots()));
  EXPECT_EQ(generate_group(g2).size(), 12u);
  auto f4 = build_root_system("F4");
  EXPECT_EQ(generate_group({reflection(f4, e4(2) - e4(3))}).size(), 2u);
  auto b3 = build_root_system("B3");
  EXPECT_EQ(generate_group(b3).size(), oracle::permutation_group_order(b3.simple_roots()));
  EXPECT_EQ(generate_group(b3).size(), 48u);
}

TEST(WeylGroup, CeilingAndEmptyGenerators) {
  auto rs = build_root_system("F4");
  EXPECT_THROW(generate_group(rs, 100), resource_error);
  EXPECT_THROW(generate_group(std::vector<WeylElement>{}), precondition_error);
}

TEST(WeylGroup, MixedSystemsAreRejected) {
  auto f4 = build_root_system("F4");
  auto b4 = build_root_system("B4");
  EXPECT_THROW(simple_reflection(f4, 0) * simple_reflection(b4, 0), system_mismatch);
  EXPECT_THROW(simple_reflection(f4, 0).apply(Vector(3)), dimension_error);
}

TEST(WeylElementChecks, FromMatrixRejectsNonElements) {
  auto rs = build_root_system("F4");
  EXPECT_THROW(WeylElement::from_matrix(rs, scalar_matrix(2, 4)), precondition_error);
  // -1 is in W(F4).
  EXPECT_NO_THROW(WeylElement::from_matrix(rs, scalar_matrix(-1, 4)));
}

TEST(LongestElement, CentralityAndLength) {
  auto rs = build_root_system("F4");
  auto full = longest_element(rs, GeneratorSubset{1, 2, 3, 4});
  EXPECT_TRUE(full.is_central);
  EXPECT_EQ(full.length, 24u);
  EXPECT_EQ(full.element.matrix(), scalar_matrix(-1, 4));

  auto b2 = longest_element(rs, GeneratorSubset{2, 3});
  EXPECT_TRUE(b2.is_central);
  EXPECT_EQ(b2.length, 4u);
  EXPECT_EQ(b2.element, word(rs, {2, 3, 2, 3}));

  auto a2 = longest_element(rs, GeneratorSubset{3, 4});
  EXPECT_EQ(a2.element, word(rs, {3, 4, 3}));
  EXPECT_EQ(a2.length, 3u);
  EXPECT_FALSE(a2.is_central);
  // Oracle for non-centrality: w0 does not commute with r3.
  auto r3 = simple_reflection(rs, 2);
  EXPECT_NE(a2.element * r3, r3 * a2.element);

  auto single = longest_element(rs, GeneratorSubset{1});
  EXPECT_EQ(single.element, simple_reflection(rs, 0));
  EXPECT_EQ(longest_element(rs, GeneratorSubset{}).element, WeylElement::identity(rs));
  EXPECT_THROW(longest_element(rs, GeneratorSubset{5}), precondition_error);
}

TEST(LongestElement, SendsPositiveParabolicRootsNegative) {
  auto rs = build_root_system("F4");
  for (GeneratorSubset I : {GeneratorSubset{1, 2}, GeneratorSubset{2, 3, 4}, GeneratorSubset{1, 3}}) {
    auto le = longest_element(rs, I);
    std::vector<int> simple0;
    for (int i : I.indices) simple0.push_back(i - 1);
    auto pos = parabolic_positive_roots(rs, simple0);
    EXPECT_EQ(inversion_count(le.element, pos), pos.size());
    EXPECT_EQ(le.length, pos.size());
  }
}

TEST(ConjugacyClass, ClassOfR2R3SquaredHasEighteenElements) {
  auto rs = build_root_system("F4");
  auto W = generate_group(rs);
  auto x = word(rs, {2, 3, 2, 3});
  auto cls = conjugacy_class(x, W);
  EXPECT_EQ(cls.closure, WeylSet::Closure::conjugation);
  EXPECT_EQ(cls.size(), 18u);
  std::set<std::vector<Scalar>> got;
  for (const auto& y : cls.elements) got.insert(y.matrix().entries());
  EXPECT_EQ(got, brute_class(x, W));
}

TEST(ConjugacyClass, CentralElementIsAlone) {
  auto rs = build_root_system("F4");
  auto W = generate_group(rs);
  auto w0 = longest_element(rs, GeneratorSubset{1, 2, 3, 4}).element;
  EXPECT_EQ(conjugacy_class(w0, W).size(), 1u);
  EXPECT_EQ(conjugacy_class(WeylElement::identity(rs), W).size(), 1u);
}

TEST(ConjugacyClass, ReflectionClassesMatchBruteForce) {
  auto rs = build_root_system("F4");
  auto W = generate_group(rs);
  for (std::size_t i = 0; i < 4; ++i) {
    auto s = simple_reflection(rs, i);
    auto cls = conjugacy_class(s, W);
    EXPECT_EQ(cls.size(), 12u);  // 24 long or 24 short roots, one reflection per pair
    EXPECT_EQ(cls.size(), brute_class(s, W).size());
  }
}

TEST(ConjugacyClass, RequiresMembership) {
  auto rs = build_root_system("F4");
  auto sub = generate_group({simple_reflection(rs, 0)});
  EXPECT_THROW(conjugacy_class(simple_reflection(rs, 1), sub), precondition_error);
}

TEST(GeneratorSubset, NormalizesAndRejectsRepeats) {
  GeneratorSubset s{3, 1, 2};
  EXPECT_EQ(s.indices, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(s.to_string(), "{r1,r2,r3}");
  EXPECT_THROW((GeneratorSubset{1, 1}), precondition_error);
  EXPECT_TRUE((GeneratorSubset{5}) < (GeneratorSubset{1, 2}));
}

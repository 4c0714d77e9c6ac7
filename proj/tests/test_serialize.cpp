#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "civ/serialize.hpp"

using namespace civ;
using civ::io::json;

namespace {

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::size_t count_matches(const std::string& s, const std::regex& re) {
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST(RootsJson, F4Document) {
  auto rs = build_root_system("F4");
  json j = io::to_json(rs);
  EXPECT_EQ(j["type"], "F4");
  EXPECT_EQ(j["rank"], 4);
  ASSERT_EQ(j["roots"].size(), 48u);
  const std::regex pq("-?[0-9]+/[0-9]+");
  for (const auto& r : j["roots"]) {
    ASSERT_EQ(r.size(), 4u);
    for (const auto& c : r) EXPECT_TRUE(std::regex_match(c.get<std::string>(), pq)) << c;
  }
  EXPECT_EQ(j["highest_root"], 47);
  EXPECT_EQ(io::vector_from_json(j["roots"][j["highest_root"].get<std::size_t>()]), (Vector{1, 1, 0, 0}));
  std::vector<std::size_t> simple = j["simple_roots"];
  ASSERT_EQ(simple.size(), 4u);
  EXPECT_EQ(io::vector_from_json(j["roots"][simple[0]]), (Scalar(1, 2) * Vector{1, -1, -1, -1}));
  // Round trip of every root.
  for (std::size_t i = 0; i < rs.size(); ++i) EXPECT_EQ(io::vector_from_json(j["roots"][i]), rs.root(i).vector);
}

TEST(RootsJson, IntegersAreWrittenAsFractions) {
  EXPECT_EQ(io::to_json(Scalar(2)), "2/1");
  EXPECT_EQ(io::to_json(Scalar(-1, 2)), "-1/2");
  EXPECT_EQ(io::to_json(Scalar(0)), "0/1");
}

TEST(ElementJson, AffineElementHasMatrixAndCoefficients) {
  auto rs = build_root_system("F4");
  AffineGroup G(rs);
  auto r5 = G.generator(5);
  json j = io::to_json(G, r5);
  ASSERT_EQ(j["matrix"].size(), 4u);
  // Coordinates in the simple coroot basis: e1+e2 = a1v + 2 a2v + 3 a3v + 2 a4v.
  EXPECT_EQ(j["translation_coeffs"], json(std::vector<int>{1, 2, 3, 2}));
  json p = io::packed_json(G, r5);
  EXPECT_EQ(p["hat"], r5.hat);
  EXPECT_EQ(p["translation_coeffs"].size(), 4u);
}

TEST(TableCsv, TwelveRowsAndQuoting) {
  AffineWeylContext ctx(CoxeterType{'F', 4});
  auto t = ctx.class_table(WindowRadii{2, 1});
  std::string csv = io::table_csv(t);
  EXPECT_EQ(count_lines(csv), 13u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "graph_type,representative_indices,underlying_type");
  EXPECT_NE(csv.find("A1^2,\"{r3,r5}\",B2\n"), std::string::npos);
  EXPECT_NE(csv.find("A1,{r1},A1\n"), std::string::npos);
  EXPECT_EQ(io::csv_quote("a,b"), "\"a,b\"");
  EXPECT_EQ(io::csv_quote("say \"x\""), "\"say \"\"x\"\"\"");
  EXPECT_EQ(io::csv_quote("plain"), "plain");

  json j = io::to_json(t);
  EXPECT_EQ(j["classes"].size(), 12u);
  EXPECT_EQ(j["distinctness"].size(), 66u);
  EXPECT_EQ(j["storage_radius"], 2);
}

TEST(GraphExport, FiniteB2DotHasEighteenVertices) {
  AffineWeylContext ctx(CoxeterType{'F', 4});
  const auto& G = *ctx.group;
  const FiniteClass* b2 = nullptr;
  for (const auto& c : ctx.catalog.classes())
    if (c.type_name == "B2") b2 = &c;
  ASSERT_NE(b2, nullptr);
  auto g = finite_class_graph(G, *b2);
  std::string dot = io::to_dot(g, [](Index a) { return "w" + std::to_string(a); }, "B2");
  EXPECT_EQ(count_matches(dot, std::regex("\\n  n[0-9]+ \\[label=")), 18u);
  EXPECT_EQ(count_matches(dot, std::regex(" -- ")), g.edge_count());
  EXPECT_EQ(dot.rfind("graph \"B2\" {", 0), 0u);
  EXPECT_EQ(dot.back(), '\n');
}

TEST(GraphExport, DistanceFormats) {
  EXPECT_TRUE(io::distance_json(kUnreachable).is_null());
  EXPECT_EQ(io::distance_json(3), 3);
  Histogram h{{1, 4}, {kUnreachable, 2}};
  json jh = io::to_json(h);
  EXPECT_EQ(jh[1]["distance"], nullptr);
  EXPECT_EQ(jh[1]["pairs"], 2);
  EXPECT_EQ(io::dot_escape("a\"b\\"), "a\\\"b\\\\");
}

TEST(GraphExport, DiameterReportJsonAndCsv) {
  AffineWeylContext ctx(CoxeterType{'G', 2});
  auto t = ctx.class_table(WindowRadii{2, 1});
  const auto& G = *ctx.group;
  auto r = diameter_estimate(G, t.classes[0], 1, 2);
  json j = io::to_json(G, t.classes[0], r);
  EXPECT_EQ(j["radii"]["report"], 1);
  EXPECT_EQ(j["radii"]["storage"], 2);
  EXPECT_EQ(j["report_vertices"], r.report_vertices);
  std::string csv = io::distance_csv(r);
  EXPECT_EQ(count_lines(csv), r.report_vertices + 1);
  if (!r.connected_on_report_slice) {
    EXPECT_NE(csv.find("inf"), std::string::npos);
  }
  EXPECT_EQ(io::packed_label(G, AffineGroup::identity()), "w0:(0,0)");
}

TEST(Determinism, RepeatedBuildsGiveIdenticalBytes) {
  auto dump = [] {
    AffineWeylContext ctx(CoxeterType{'F', 4});
    auto t = ctx.class_table(WindowRadii{2, 1});
    const auto& G = *ctx.group;
    std::ostringstream os;
    os << io::to_json(ctx.roots).dump(2) << io::to_json(t).dump(2) << io::table_csv(t);
    for (std::size_t i = 0; i < t.classes.size(); ++i) {
      os << io::to_json(G, t.classes[i], t.windows[i], false).dump();
      auto g = affine_class_graph(G, t.windows[i]);
      os << io::to_dot(g, [&](const PackedAffine& x) { return io::packed_label(G, x); });
    }
    return os.str();
  };
  EXPECT_EQ(dump(), dump());
}

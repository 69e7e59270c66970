#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "adsg/commands.hpp"
#include "adsg/errors.hpp"
#include "adsg/json_io.hpp"
#include "support.hpp"

namespace adsg {
namespace {

using testing::Rng;

const Json kPants = {{"type", "pants"}, {"lengths", {2, 2, 2}}};
const Json kTriangle = {{"ab", 1.0 / 3}, {"bc", 1.0 / 3}, {"ac", 1.0 / 3}};

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

const std::string& artifact(const CommandResult& r, const std::string& name) {
  for (const auto& [n, text] : r.artifacts) {
    if (n == name) return text;
  }
  static const std::string none;
  ADD_FAILURE() << "missing artifact " << name;
  return none;
}

// -- value encodings -------------------------------------------------------------

TEST(JsonTest, GroupElementRoundTrip) {
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    const GroupElement g = testing::random_group(rng);
    const GroupElement h = group_element_from_json(Json::parse(to_json(g).dump()));
    EXPECT_TRUE(g.approx_equal(h, 1e-15));
  }
  // Unnormalized input is scaled to determinant 1.
  const GroupElement d = group_element_from_json(Json::parse("[[4, 0], [0, 1]]"));
  EXPECT_NEAR(d.a(), 2.0, 1e-15);
  EXPECT_NEAR(d.d(), 0.5, 1e-15);
}

TEST(JsonTest, OtherValuesRoundTrip) {
  Rng rng(2);
  const AlgebraElement x = testing::random_algebra(rng);
  EXPECT_LT(testing::alg_gap(algebra_element_from_json(to_json(x)), x), 1e-15);
  const HPoint p(0.25, 1.5);
  EXPECT_EQ(hpoint_from_json(to_json(p)).x(), 0.25);
  EXPECT_EQ(word_from_json(Json("a B a a")), Word::parse("aBaa"));
  const Representation r{{testing::random_group(rng), testing::random_group(rng)}};
  const Representation r2 = representation_from_json(to_json(r));
  ASSERT_EQ(r2.rank(), 2);
  EXPECT_TRUE(r2.generators[1].approx_equal(r.generators[1], 1e-15));
  const Cocycle u{r, {testing::random_algebra(rng), testing::random_algebra(rng)}};
  const Cocycle u2 = cocycle_from_json(to_json(u));
  EXPECT_LT(testing::alg_gap(u2.values[0], u.values[0]), 1e-15);
  EXPECT_TRUE(u2.base.generators[0].approx_equal(r.generators[0], 1e-15));
}

TEST(JsonTest, SurfaceAndSystem) {
  const SchottkyGroup g = surface_from_json(kPants);
  EXPECT_EQ(g.surface, SurfaceType::Pants);
  const ArcComplex cx = enumerate_arc_systems(g, 3);
  const WeightedArcSystem x = weighted_system_from_json(cx, kTriangle);
  EXPECT_EQ(x.arcs.size(), 3u);
  const WeightedArcSystem y =
      weighted_system_from_json(cx, weighted_system_to_json(cx, x));
  EXPECT_EQ(x.arcs, y.arcs);
  EXPECT_EQ(x.weights, y.weights);
  const WeightedArcSystem z = weighted_system_from_json(cx, Json::parse(R"([["ab", 1], ["bc", 2]])"));
  EXPECT_EQ(z.arcs.size(), 2u);
}

TEST(JsonTest, MalformedInput) {
  EXPECT_THROW(group_element_from_json(Json::parse("[[1, 2], [3]]")), InputError);
  EXPECT_THROW(group_element_from_json(Json::parse("[[0, 1], [1, 0]]")), InputError);
  EXPECT_THROW(group_element_from_json(Json::parse(R"([["x", 0], [0, 1]])")), InputError);
  EXPECT_THROW(algebra_element_from_json(Json::parse("[[1, 0], [0, 1]]")), InputError);
  EXPECT_THROW(hpoint_from_json(Json::parse("[0, -1]")), InputError);
  EXPECT_THROW(word_from_json(Json::parse("3")), InputError);
  EXPECT_THROW(word_from_json(Json("a?")), InputError);
  EXPECT_THROW(surface_from_json(Json::parse(R"({"type": "sphere", "lengths": [1]})")), InputError);
  EXPECT_THROW(require(Json::object(), "j"), InputError);
  const ArcComplex cx = enumerate_arc_systems(surface_from_json(kPants), 3);
  EXPECT_THROW(weighted_system_from_json(cx, Json::parse(R"({"zz": 1})")), InputError);
  EXPECT_THROW(weighted_system_from_json(cx, Json::parse(R"({"aa": 1, "bb": 1})")), InputError);
}

// -- commands -----------------------------------------------------------------------

TEST(CommandTest, ReportsEmbedVersionAndConfig) {
  const Json config = {{"matrix", {{2, 0}, {0, 0.5}}}};
  const CommandResult r = run_command("classify", config);
  EXPECT_EQ(r.report.at("version"), library_version());
  EXPECT_EQ(r.report.at("command"), "classify");
  EXPECT_EQ(r.report.at("config"), config);
  EXPECT_EQ(r.report.at("result").at("class"), "hyperbolic");
}

TEST(CommandTest, ClassifyParabolic) {
  const CommandResult r = run_command("classify", {{"matrix", {{1, 0}, {1, 1}}}});
  EXPECT_EQ(r.report.at("result").at("class"), "parabolic");
  EXPECT_EQ(r.report.at("result").at("subsets").at("C"), true);
  EXPECT_EQ(r.report.at("result").at("subsets").at("T"), true);
}

TEST(CommandTest, DeltaOfDiagonal) {
  const double e = std::exp(1.0);
  const CommandResult r = run_command("delta", {{"a", {{1, 0}, {0, 1}}}, {"b", {{e, 0}, {0, 1 / e}}}});
  const Json& res = r.report.at("result");
  EXPECT_EQ(res.at("kind"), "real");
  EXPECT_NEAR(res.at("value").get<double>(), 1.0, 1e-12);
  EXPECT_EQ(res.at("crossratio").at("kind"), "real");
  EXPECT_EQ(res.at("line"), "spacelike");
}

TEST(CommandTest, FigureRowsMatchData) {
  const CommandResult r = run_command("figure", {{"format", "svg"}});
  const FigureData data = figure_data(24);
  EXPECT_EQ(r.report.at("result").at("points").get<std::size_t>(), data.points.size());
  EXPECT_EQ(count_lines(artifact(r, "figure.csv")), static_cast<int>(data.points.size()) + 1);
  EXPECT_NE(artifact(r, "figure.svg").find("</svg>"), std::string::npos);
}

TEST(CommandTest, PropernessOfIdenticalPair) {
  const Json j = to_json(schottky_fuchsian(SurfaceType::Pants, {2, 2, 2}).j);
  const CommandResult r = run_command("properness", {{"j", j}, {"rho", j}, {"n", 6}});
  EXPECT_EQ(r.report.at("result").at("verdict"), "violated");
  EXPECT_EQ(r.report.at("result").at("search").at("witness"), true);
}

TEST(CommandTest, AdmissibleZeroCocycle) {
  const Representation j = schottky_fuchsian(SurfaceType::Pants, {2, 2, 2}).j;
  const CommandResult r = run_command("admissible", {{"cocycle", to_json(zero_cocycle(j))}});
  EXPECT_EQ(r.report.at("result").at("verdict"), "violated");
}

TEST(CommandTest, StripThenInvert) {
  const CommandResult s = run_command("strip", {{"surface", kPants}, {"system", kTriangle}});
  const Json& res = s.report.at("result");
  EXPECT_LT(res.at("length_ratio").at("value").get<double>(), 1.0);
  const CommandResult inv =
      run_command("invert", {{"surface", kPants}, {"cocycle", res.at("cocycle")}});
  const Json& ir = inv.report.at("result");
  EXPECT_EQ(ir.at("positive_count"), 1);
  EXPECT_LT(ir.at("residual").get<double>(), 1e-8);
  for (const auto& [name, w] : ir.at("solution").items()) {
    EXPECT_NEAR(w.get<double>(), 1.0 / 3, 1e-8) << name;
  }
}

TEST(CommandTest, DeterministicGivenSeed) {
  const Json config = {{"surface", kPants}, {"system", kTriangle}, {"mode", "macro"},
                       {"samples", 4},      {"seed", 11}};
  const std::string a = run_command("fibration", config).report.dump();
  const std::string b = run_command("fibration", config).report.dump();
  EXPECT_EQ(a, b);
  Json other = config;
  other["seed"] = 12;
  EXPECT_NE(run_command("fibration", other).report.dump(), a);
}

TEST(CommandTest, InputAndDomainErrors) {
  EXPECT_THROW(run_command("nope", Json::object()), InputError);
  EXPECT_THROW(run_command("classify", Json::array()), InputError);
  EXPECT_THROW(run_command("classify", Json::object()), InputError);
  EXPECT_THROW(run_command("fibration", {{"surface", kPants}, {"system", kTriangle}, {"samples", 0}}),
               InputError);
  try {
    run_command("strip", {{"surface", kPants}, {"system", kTriangle}, {"scale", 50.0}});
    FAIL() << "expected StripsOverlap";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StripsOverlap);
  }
  try {
    const Json bad = {{"type", "torus"}, {"lengths", {0.5, 0.5}}};
    run_command("strip", {{"surface", bad}, {"system", {{"t_a", 1}}}});
    FAIL() << "expected NotPingPong";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPingPong);
  }
}

TEST(CommandTest, ErrorReportShape) {
  const Json r = error_report("strip", {{"scale", 50}}, "StripsOverlap", 19, "overlap");
  EXPECT_EQ(r.at("error").at("code"), "StripsOverlap");
  EXPECT_EQ(r.at("error").at("value"), 19);
  EXPECT_EQ(r.at("config").at("scale"), 50);
  EXPECT_EQ(r.at("version"), library_version());
}

}  // namespace
}  // namespace adsg

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crcc/io.hpp"
#include "crcc/regions.hpp"
#include "support/random_pmf.hpp"

using namespace crcc;

namespace {

std::string data(const std::string& name) { return read_file(std::string(CRCC_DATA_DIR) + "/" + name); }

LinearSystem unit_cube() {
  LinearSystem sys(rate_triple());
  for (const auto& v : rate_triple()) sys.add({{v, 1}}, 1.0, std::nullopt, v + " <= 1");
  sys.add_nonnegativity(rate_triple());
  return sys;
}

}  // namespace

TEST_CASE("pmf files") {
  SUBCASE("round trip") {
    std::mt19937_64 rng(83);
    const auto spec = testing::random_spec(Form::general, rng);
    const auto back = parse_pmf_json(pmf_to_json(spec));
    CHECK(back.variables == spec.variables);
    REQUIRE(back.factors.size() == spec.factors.size());
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
      CHECK(back.factors[i].child == spec.factors[i].child);
      CHECK(back.factors[i].parents == spec.factors[i].parents);
      CHECK(back.factors[i].table == spec.factors[i].table);
    }
  }
  SUBCASE("shipped examples build") {
    for (const char* f : {"independent.json", "noiseless_rx2.json", "negative_rx2.json", "sicc_pass.json",
                          "sicc_fail.json", "binning_flip11.json", "binning_flip25.json"}) {
      CHECK_NOTHROW(build_joint(parse_pmf_json(data(f))));
    }
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS(parse_pmf_json("{"), ParseError);
    CHECK_THROWS_AS(parse_pmf_json(R"({"variables": [], "factors": [], "extra": 1})"), ParseError);
    CHECK_THROWS_AS(parse_pmf_json(R"({"variables": [{"name": "A", "size": 0}], "factors": []})"), ParseError);
    CHECK_THROWS_AS(parse_pmf_json(R"({"variables": [{"name": "A", "size": 2}],
                                       "factors": [{"child": "A", "table": ["x", 1]}]})"),
                    ParseError);
    const auto spec = parse_pmf_json(R"({"variables": [{"name": "A", "size": 2}],
                                         "factors": [{"child": "A", "table": [0.5, 0.51]}]})");
    CHECK_THROWS_WITH_AS(build_joint(spec), doctest::Contains("p(A)"), NonStochasticTable);
    CHECK_THROWS_AS(read_file("/nonexistent/file.json"), InputError);
  }
}

TEST_CASE("family files and expressions") {
  CHECK(Expression::parse("1 - 2*p").evaluate({{"p", 0.25}}) == doctest::Approx(0.5));
  CHECK(Expression::parse("(1-p)*(1-q)/2").evaluate({{"p", 0.5}, {"q", 0.0}}) == doctest::Approx(0.25));
  CHECK(Expression::parse("-p + 3").evaluate({{"p", 1}}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(Expression::parse("1 +"), ParseError);
  CHECK_THROWS_AS(Expression::parse("(p"), ParseError);
  CHECK_THROWS_AS(Expression::parse("p").evaluate({}), UnknownVariable);

  const auto family = parse_family_json(data("family_bsc.json"));
  CHECK(family.grid_size() == 11);
  CHECK(family.grid_point(10).at("p") == doctest::Approx(0.5));
  CHECK(family.describe_point(2) == "p=0.1");
  CHECK_NOTHROW(build_joint(family.instantiate(4)));

  auto broken = family;
  broken.parameters[0].max = 2.0;
  CHECK_THROWS_WITH_AS(broken.instantiate(10), doctest::Contains("grid point p=2"), InvalidFactorization);

  CHECK_THROWS_AS(parse_family_json(R"({"variables": [], "factors": [],
      "parameters": [{"name": "p", "min": 0, "max": 1, "steps": 2}, {"name": "p", "min": 0, "max": 1, "steps": 2}]})"),
                  ParseError);
  auto huge = family;
  huge.parameters.push_back({"q", 0, 1, 1000});
  huge.parameters.push_back({"r", 0, 1, 1000});
  CHECK_THROWS_AS(huge.grid_size(), InvalidConfig);
}

TEST_CASE("region files round-trip") {
  std::mt19937_64 rng(89);
  const auto c = bound_constants(testing::random_pmf(Form::general, rng));
  for (const auto& sys : {theorem1_system(c), theorem2_region(c)}) {
    VertexSet vs;
    vs.variables = sys.variables;
    vs.points.push_back(Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(sys.dim()), 0.1, 1.0 / 3.0));
    const auto text = region_to_json(sys, &vs);
    VertexSet vs_back;
    const auto back = parse_region_json(text, &vs_back);
    CHECK(back.variables == sys.variables);
    REQUIRE(back.size() == sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i) {
      CHECK(back.rows[i].coeffs == sys.rows[i].coeffs);
      CHECK(back.rows[i].rhs == sys.rows[i].rhs);
      CHECK(back.rows[i].label == sys.rows[i].label);
      CHECK(back.rows[i].symbolic == sys.rows[i].symbolic);
    }
    CHECK(back.constants == sys.constants);
    REQUIRE(vs_back.size() == 1);
    CHECK(vs_back.points[0] == vs.points[0]);
    CHECK(region_to_json(back, &vs_back) == text);
  }
  CHECK_THROWS_AS(parse_region_json(R"({"variables": ["x"], "inequalities": [{"coeffs": [0.5], "rhs": 1}]})"),
                  ParseError);
}

TEST_CASE("point CSV") {
  const auto csv = points_csv({"a", "b"}, {Eigen::Vector2d(0.1, 1.0 / 3.0)});
  CHECK(csv == "a,b\n0.10000000000000001,0.33333333333333331\n");
}

TEST_CASE("slices") {
  SUBCASE("a point region gives a single point") {
    LinearSystem zero(rate_triple());
    for (const auto& v : rate_triple()) zero.add({{v, 1}}, 0.0, std::nullopt, v + " <= 0");
    zero.add_nonnegativity(rate_triple());
    const auto poly = slice_polygon(zero, "R0", 0.0);
    REQUIRE(poly.size() == 1);
    CHECK(poly[0].isZero());
  }
  SUBCASE("cube sliced mid-range is a closed counter-clockwise square") {
    const auto poly = slice_polygon(unit_cube(), "R0", 0.5);
    REQUIRE(poly.size() == 5);
    CHECK(poly.front() == poly.back());
    double area = 0;
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) area += poly[i][0] * poly[i + 1][1] - poly[i + 1][0] * poly[i][1];
    CHECK(area / 2 == doctest::Approx(1.0));
  }
  SUBCASE("outside the region the slice is empty") {
    CHECK(slice_polygon(unit_cube(), "R0", 2.0).empty());
  }
  SUBCASE("noiseless receiver 2 region reaches (0, 1)") {
    const auto c = bound_constants(build_joint(parse_pmf_json(data("noiseless_rx2.json"))));
    const auto poly = slice_polygon(theorem2_region(c), "R0", 0.0);
    bool found = false;
    for (const auto& p : poly) found |= (p - Eigen::Vector2d(0, 1)).norm() < 1e-9;
    CHECK(found);
  }
}

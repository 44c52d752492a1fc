#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "crcc/errors.hpp"
#include "crcc/lp.hpp"
#include "crcc/polytope.hpp"
#include "crcc/rational.hpp"

using namespace crcc;

namespace {

LinearSystem box(const std::vector<std::string>& vars, double hi) {
  LinearSystem sys(vars);
  for (const auto& v : vars) sys.add({{v, 1}}, hi, std::nullopt, v + " <= hi");
  sys.add_nonnegativity(vars);
  return sys;
}

// Random bounded system in the unit box [0,1]^3 plus a few random cuts.
LinearSystem random_system(std::mt19937_64& rng, int cuts) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_real_distribution<double> rhs(0.2, 2.0);
  auto sys = box({"x", "y", "z"}, 1.0);
  for (int k = 0; k < cuts; ++k) {
    std::vector<std::pair<std::string, Rational>> terms{{"x", coef(rng)}, {"y", coef(rng)}, {"z", coef(rng)}};
    if (std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second.is_zero(); })) continue;
    sys.add(terms, rhs(rng), std::nullopt, "cut" + std::to_string(k));
  }
  return sys;
}

// Does some x make (x, y, z) feasible? Interval of x from the rows.
bool extends_in_x(const LinearSystem& sys, double y, double z) {
  double lo = -1e300, hi = 1e300;
  for (const auto& r : sys.rows) {
    const double a = r.coeffs[0].to_double();
    const double rest = r.rhs - r.coeffs[1].to_double() * y - r.coeffs[2].to_double() * z;
    if (a > 0) hi = std::min(hi, rest / a);
    else if (a < 0) lo = std::max(lo, rest / a);
    else if (rest < -1e-12) return false;
  }
  return lo <= hi + 1e-12;
}

}  // namespace

TEST_CASE("rational arithmetic is exact") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(Rational(-4, -6) == Rational(2, 3));
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational::parse("-7/21") == Rational(-1, 3));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::approximate(0.25) == Rational(1, 4));
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("x"), ParseError);
  CHECK_THROWS_AS(Rational(INT64_MAX) + Rational(1), RationalOverflow);
}

TEST_CASE("simplex solves small programs in both scalar types") {
  Eigen::MatrixXd a(3, 2);
  a << 1, 1, 1, 0, 0, 1;
  const Eigen::Vector3d b(4, 3, 2);
  const auto sol = maximize<double>(a, b, Eigen::Vector2d(1, 2));
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.value == doctest::Approx(6.0));

  RationalMatrix ar = a.unaryExpr([](double v) { return Rational::approximate(v); });
  RationalVector br = b.unaryExpr([](double v) { return Rational::approximate(v); });
  RationalVector cr(2);
  cr << Rational(1), Rational(2);
  const auto exact = maximize<Rational>(ar, br, cr);
  REQUIRE(exact.status == LpStatus::optimal);
  CHECK(exact.value == Rational(6));

  Eigen::MatrixXd open(1, 2);
  open << 1, -1;
  CHECK(maximize<double>(open, Eigen::VectorXd::Ones(1), Eigen::Vector2d(1, 0)).status == LpStatus::unbounded);
  Eigen::MatrixXd contra(2, 1);
  contra << 1, -1;
  CHECK(maximize<double>(contra, Eigen::Vector2d(0, -1), Eigen::VectorXd::Ones(1)).status == LpStatus::infeasible);
}

TEST_CASE("Fourier-Motzkin elimination of one variable") {
  LinearSystem sys({"x", "y"});
  sys.add({{"x", 1}}, 3, std::nullopt, "a");
  sys.add({{"x", -1}}, -1, std::nullopt, "b");
  sys.add({{"x", 1}, {"y", 1}}, 5, std::nullopt, "c");
  const auto out = fme_eliminate(sys, "x");
  CHECK(out.variables == std::vector<std::string>{"y"});
  REQUIRE(out.size() == 2);
  int bounds = 0, vacuous = 0;
  for (const auto& r : out.rows) {
    if (r.is_zero()) {
      ++vacuous;
      CHECK(r.rhs == doctest::Approx(2.0));
    } else {
      ++bounds;
      CHECK(r.coeffs[0] == Rational(1));
      CHECK(r.rhs == doctest::Approx(4.0));
    }
  }
  CHECK(bounds == 1);
  CHECK(vacuous == 1);
  const auto pruned = remove_redundant(out);
  REQUIRE(pruned.size() == 1);
  CHECK(pruned.rows[0].rhs == doctest::Approx(4.0));
  CHECK_THROWS_AS(fme_eliminate(sys, "w"), UnknownVariable);
}

TEST_CASE("elimination agrees with the extension oracle on random systems") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.25, 1.25);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sys = random_system(rng, 5);
    const auto shadow = fme_eliminate(sys, "x");
    for (int k = 0; k < 1000; ++k) {
      const double y = u(rng), z = u(rng);
      const bool inside = shadow.contains(Eigen::Vector2d(y, z), 1e-12);
      const bool oracle = extends_in_x(sys, y, z);
      if (inside != oracle) {
        // Only points within rounding distance of the boundary may disagree.
        CHECK(std::abs(shadow.max_violation(Eigen::Vector2d(y, z))) < 1e-9);
      }
    }
  }
}

TEST_CASE("redundancy removal keeps the feasible set") {
  SUBCASE("dominated bound") {
    LinearSystem sys({"x"});
    sys.add({{"x", 1}}, 1, std::nullopt, "x <= 1");
    sys.add({{"x", 1}}, 2, std::nullopt, "x <= 2");
    const auto res = remove_redundant_detailed(sys);
    REQUIRE(res.system.size() == 1);
    CHECK(res.system.rows[0].label == "x <= 1");
    CHECK(res.removed == std::vector<std::string>{"x <= 2"});
  }
  SUBCASE("sampling oracle") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-0.25, 1.25);
    for (int trial = 0; trial < 10; ++trial) {
      const auto sys = random_system(rng, 8);
      const auto pruned = remove_redundant(sys);
      CHECK(pruned.size() <= sys.size());
      for (int k = 0; k < 1000; ++k) {
        const Eigen::Vector3d x(u(rng), u(rng), u(rng));
        if (std::abs(sys.max_violation(x)) < 1e-9) continue;
        CHECK(sys.contains(x, 0.0) == pruned.contains(x, 0.0));
      }
    }
  }
  SUBCASE("infeasible systems yield a certificate row") {
    LinearSystem sys({"x"});
    sys.add({{"x", 1}}, 1, std::nullopt, "x <= 1");
    sys.add({{"x", -1}}, -2, std::nullopt, "x >= 2");
    const auto res = remove_redundant_detailed(sys);
    CHECK(res.infeasible);
    REQUIRE(res.system.size() == 1);
    CHECK(res.system.rows[0].is_zero());
    CHECK(res.system.rows[0].rhs < 0.0);
    CHECK(res.system.rows[0].label.find("infeasible") == 0);
    CHECK_FALSE(is_feasible(sys));
  }
}

TEST_CASE("vertex enumeration") {
  SUBCASE("unit square") {
    const auto vs = enumerate_vertices(box({"x", "y"}, 1.0));
    CHECK(vs.size() == 4);
  }
  SUBCASE("single point") {
    const auto vs = enumerate_vertices(box({"x", "y", "z"}, 0.0));
    REQUIRE(vs.size() == 1);
    CHECK(vs.points[0].isZero());
  }
  SUBCASE("random bounded systems: vertices lie inside with at least d tight rows") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      const auto sys = random_system(rng, 4);
      const auto vs = enumerate_vertices(sys);
      REQUIRE_FALSE(vs.empty());
      for (const auto& v : vs.points) {
        CHECK(sys.contains(v, 1e-9));
        int tight = 0;
        for (const auto& r : sys.rows) tight += std::abs(r.slack(v)) <= 1e-9;
        CHECK(tight >= 3);
      }
      for (std::size_t i = 1; i < vs.size(); ++i) CHECK((vs.points[i] - vs.points[i - 1]).norm() > 1e-8);
    }
  }
  SUBCASE("errors") {
    LinearSystem ray({"x"});
    ray.add_nonnegativity({"x"});
    CHECK_THROWS_AS(enumerate_vertices(ray), Unbounded);
    CHECK_THROWS_AS(enumerate_vertices(box({"a", "b", "c", "d", "e", "f", "g", "h", "i"}, 1.0)), TooManyVariables);
    LinearSystem empty({"x"});
    empty.add({{"x", 1}}, -1, std::nullopt, "x <= -1");
    empty.add_nonnegativity({"x"});
    CHECK(enumerate_vertices(empty).empty());
  }
}

TEST_CASE("projection") {
  SUBCASE("cube onto two coordinates is the unit square") {
    const auto sq = project(box({"x", "y", "z"}, 1.0), {"x", "y"});
    CHECK(sq.variables == std::vector<std::string>{"x", "y"});
    CHECK(systems_equal(sq, box({"x", "y"}, 1.0), 1e-9).sets_equal());
    CHECK(sq.size() == 4);
  }
  SUBCASE("projection onto every variable only prunes") {
    auto sys = box({"x", "y"}, 1.0);
    sys.add({{"x", 1}, {"y", 1}}, 3, std::nullopt, "loose");
    const auto out = project(sys, {"x", "y"});
    CHECK(out.size() == 4);
    CHECK(out.find("loose") == nullptr);
  }
  SUBCASE("random systems match the vertex shadow") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
      const auto sys = random_system(rng, 5);
      const auto proj = project(sys, {"y", "z"});
      std::vector<Eigen::VectorXd> shadow;
      for (const auto& v : enumerate_vertices(sys).points) shadow.push_back(v.tail(2));
      const auto hull = hull_system(shadow, {"y", "z"});
      CHECK(systems_equal(proj, hull.system, 1e-8).sets_equal());
    }
  }
}

TEST_CASE("systems_equal verdicts and witnesses") {
  const auto sq = box({"x", "y"}, 1.0);
  CHECK(systems_equal(sq, sq, 1e-9).verdict == Verdict::equal);

  auto loose = sq;
  loose.add({{"x", 1}}, 2, std::nullopt, "x <= 2");
  CHECK(systems_equal(sq, loose, 1e-9).verdict == Verdict::equal);

  const auto small = box({"x", "y"}, 0.9);
  const auto rep = systems_equal(sq, small, 1e-9);
  CHECK(rep.verdict == Verdict::subset_b_in_a);
  CHECK_FALSE(rep.passed);
  REQUIRE_FALSE(rep.violations.empty());
  for (const auto& v : rep.violations) {
    CHECK(v.owner == 'b');
    CHECK(v.magnitude == doctest::Approx(0.1));
    CHECK(sq.contains(v.witness, 1e-9));
    CHECK((v.witness.array() == 1.0).any());
  }
  CHECK(systems_equal(small, sq, 1e-9).verdict == Verdict::subset_a_in_b);

  LinearSystem other({"x", "z"});
  CHECK_THROWS_AS(systems_equal(sq, other, 1e-9), InputError);
}

TEST_CASE("substitution rewrites the coordinates exactly") {
  LinearSystem sys({"S1", "T1"});
  sys.add({{"S1", 1}}, 2, std::nullopt, "s");
  sys.add({{"T1", 1}}, 3, std::nullopt, "t");

  const auto same = substitute(sys, {});
  CHECK(same.variables == sys.variables);
  CHECK(same.rows[0].coeffs == sys.rows[0].coeffs);

  const auto out = substitute(sys, {{"R1", "S1", {{"S1", 1}, {"T1", 1}}}});
  CHECK(out.variables == std::vector<std::string>{"R1", "T1"});
  REQUIRE(out.size() == 2);
  CHECK(out.rows[0].coeffs[0] == Rational(1));
  CHECK(out.rows[0].coeffs[1] == Rational(-1));
  CHECK(out.rows[0].rhs == 2.0);
  CHECK(out.rows[1].coeffs[0] == Rational(0));
  CHECK(out.rows[1].coeffs[1] == Rational(1));

  CHECK_THROWS_AS(substitute(sys, {{"R1", "S1", {{"T1", 1}}}}), SingularSubstitution);
}

TEST_CASE("hull of a point cloud") {
  std::vector<Eigen::VectorXd> pts{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1),
                                   Eigen::Vector2d(1, 1), Eigen::Vector2d(0.5, 0.5)};
  const auto hull = hull_system(pts, {"x", "y"});
  CHECK(hull.vertices.size() == 4);
  CHECK(hull.affine_dim == 2);
  CHECK(systems_equal(hull.system, box({"x", "y"}, 1.0), 1e-9).sets_equal());
  for (const auto& p : pts) CHECK(hull.system.contains(p, 1e-12));

  const auto point = hull_system({Eigen::Vector2d(0.25, 0.5)}, {"x", "y"});
  CHECK(point.affine_dim == 0);
  CHECK(point.system.contains(Eigen::Vector2d(0.25, 0.5), 1e-12));
  CHECK_FALSE(point.system.contains(Eigen::Vector2d(0.25, 0.6), 1e-6));

  CHECK_FALSE(is_feasible(hull_system({}, {"x"}).system));
}

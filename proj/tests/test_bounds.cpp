#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crcc/bounds.hpp"
#include "crcc/io.hpp"
#include "crcc/polytope.hpp"
#include "support/random_pmf.hpp"

using namespace crcc;

namespace {

JointPmf data_pmf(const std::string& name) {
  return build_joint(parse_pmf_json(read_file(std::string(CRCC_DATA_DIR) + "/" + name)));
}

// General structure, every auxiliary independent of the others, random channel.
JointPmf independent_layers(std::mt19937_64& rng) {
  auto spec = testing::random_spec(Form::general, rng, {.channel_alpha = 0.3});
  for (auto& f : spec.factors) {
    if (f.child.size() == 2 || f.child[0] == "X1" || f.child[0] == "X2" || f.parents.empty()) continue;
    const std::size_t rows = f.table.size() / 2;
    for (std::size_t r = 0; r < rows; ++r) {
      f.table[2 * r] = f.table[0];
      f.table[2 * r + 1] = f.table[1];
    }
  }
  return build_joint(spec);
}

}  // namespace

TEST_CASE("bound constants of hand-checkable pmfs") {
  SUBCASE("mutually independent variables") {
    const auto c = bound_constants(data_pmf("independent.json"));
    for (double v : c.values()) CHECK(v == 0.0);
  }
  SUBCASE("receiver 2 observes W2 noiselessly") {
    const auto pmf = data_pmf("noiseless_rx2.json");
    const auto c = bound_constants(pmf);
    CHECK(c.b2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.d2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.a1 == 0.0);
    check_bound_invariants(c, pmf);
  }
  SUBCASE("receiver-2 constants can be negative") {
    const auto c = bound_constants(data_pmf("negative_rx2.json"));
    CHECK(c.a2 == doctest::Approx(-1.0).epsilon(1e-12));
  }
}

TEST_CASE("correction terms and binning thresholds") {
  std::mt19937_64 rng(41);
  SUBCASE("the independent-layer structure forces every correction term to zero") {
    for (int k = 0; k < 20; ++k) {
      const auto pmf = testing::random_pmf(Form::ic_hodtani, rng);
      const auto t = correction_terms(pmf);
      CHECK(t.w2_w1u1 <= 1e-12);
      CHECK(t.u2_u1w1w2 - t.u2_w2 <= 1e-12);
    }
    const auto pmf = testing::random_pmf(Form::ic_hk, rng);
    CHECK(correction_terms(pmf).max_abs() <= 1e-12);
    const auto th = binning_thresholds(pmf);
    CHECK(th.u1 == 0.0);
    CHECK(th.w2 == 0.0);
    CHECK(th.u2 == 0.0);
  }
  SUBCASE("W2 copying a uniform W1 costs one bit of binning") {
    FactorizationSpec spec = structure_of(Form::general);
    for (const auto& name : canonical_variables()) spec.variables.push_back({name, name == "W0" ? 1 : 2});
    auto fill = [&](const std::string& child, std::vector<double> table) {
      for (auto& f : spec.factors) {
        if (f.child[0] == child) f.table = std::move(table);
      }
    };
    fill("W0", {1.0});
    fill("W1", {0.5, 0.5});
    fill("U1", {0.5, 0.5, 0.5, 0.5});
    fill("W2", {1, 0, 1, 0, 0, 1, 0, 1});
    fill("U2", std::vector<double>(16, 0.5));
    fill("X1", std::vector<double>(8, 0.5));
    fill("X2", std::vector<double>(8, 0.5));
    fill("Y1", std::vector<double>(16, 0.25));
    const auto th = binning_thresholds(build_joint(spec));
    CHECK(th.w2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(th.u1 == 0.0);
  }
  SUBCASE("random pmfs have non-negative thresholds and consistent constants") {
    for (int k = 0; k < 20; ++k) {
      const auto pmf = testing::random_pmf(Form::general, rng);
      const auto th = binning_thresholds(pmf);
      CHECK(th.u1 >= 0.0);
      CHECK(th.w2 >= 0.0);
      CHECK(th.u2 >= 0.0);
      const auto c = bound_constants(pmf);
      CHECK_NOTHROW(check_bound_invariants(c, pmf));
      CHECK(c.h2 - c.g2 == doctest::Approx(cond_mutual_information(pmf, {"Y2"}, {"W0"})).epsilon(1e-10));
      CHECK(c.c2 == doctest::Approx(cond_mutual_information(pmf, {"Y2"}, {"W1"}, {"W0", "W2", "U2"}) +
                                    cond_mutual_information(pmf, {"U2"}, {"W2"}, {"W0"}) +
                                    cond_mutual_information(pmf, {"W1"}, {"W2", "U2"}, {"W0"}))
                        .epsilon(1e-12));
    }
  }
}

TEST_CASE("five-rate system") {
  SUBCASE("shape and labels") {
    const auto sys = theorem1_system(BoundConstants{});
    CHECK(sys.size() == 21);
    CHECK(sys.variables == std::vector<std::string>{"T0", "T1", "S1", "T2", "S2"});
    CHECK(sys.rows.front().label == "(3-1)");
    CHECK(sys.rows[15].label == "(3-16)");
    CHECK(theorem1_labels(2).front() == "(3-9)");
    CHECK_NOTHROW(sys.check_invariants());
  }
  SUBCASE("all-zero constants leave only the origin") {
    const auto vs = enumerate_vertices(theorem1_system(BoundConstants{}));
    REQUIRE(vs.size() == 1);
    CHECK(vs.points[0].isZero());
  }
  SUBCASE("vertices of random constants satisfy every row") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int k = 0; k < 10; ++k) {
      ConstantTable t;
      for (const auto& n : BoundConstants::names()) t[n] = u(rng);
      const auto sys = theorem1_system(BoundConstants::from_table(t));
      const auto vs = enumerate_vertices(sys);
      REQUIRE_FALSE(vs.empty());
      for (const auto& v : vs.points) CHECK(sys.max_violation(v) <= 1e-9);
    }
  }
  SUBCASE("missing canonical variable") {
    const auto pmf = JointPmf({{"W0", 2}}, Eigen::Vector2d(0.5, 0.5));
    CHECK_THROWS_AS(bound_constants(pmf), UnknownVariable);
  }
}

TEST_CASE("error-analysis systems") {
  std::mt19937_64 rng(47);
  SUBCASE("receiver 2 shape") {
    const auto sys = appendix_a_system(testing::random_pmf(Form::general, rng), Receiver::rx2);
    CHECK(sys.size() == 23);
    CHECK(sys.variables == std::vector<std::string>{"T0", "T1", "t2", "Z2", "T2", "S2"});
    CHECK(sys.rows.front().label == "(A-1)");
    CHECK(sys.find("(A-15)") != nullptr);
    CHECK(appendix_a_claimed_redundant(Receiver::rx2).size() == 7);
    CHECK_NOTHROW(sys.check_invariants());
  }
  SUBCASE("receiver 1 mirror") {
    const auto sys = appendix_a_system(testing::random_pmf(Form::general, rng), Receiver::rx1);
    CHECK(sys.size() == 23);
    CHECK(sys.find("(A-15')") != nullptr);
    CHECK_NOTHROW(sys.check_invariants());
  }
  SUBCASE("independent layers: every right-hand side is the bare observation term") {
    const auto pmf = independent_layers(rng);
    CHECK(correction_terms(pmf).max_abs() <= 1e-12);
    for (auto side : {Receiver::rx2, Receiver::rx1}) {
      const auto sys = appendix_a_system(pmf, side);
      for (const auto& label : appendix_a_labels(side)) {
        const auto* row = sys.find(label);
        REQUIRE(row != nullptr);
        REQUIRE(row->symbolic.has_value());
        std::string observation;
        for (const auto& [name, k] : row->symbolic->terms()) {
          if (name.rfind("I(Y", 0) == 0) observation = name;
        }
        REQUIRE_FALSE(observation.empty());
        CHECK(row->rhs == doctest::Approx(sys.constants.at(observation)).epsilon(1e-12));
      }
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "crcc/errors.hpp"
#include "crcc/probability.hpp"
#include "support/mi_oracle.hpp"
#include "support/random_pmf.hpp"

using namespace crcc;

namespace {

JointPmf from_factors(std::vector<Variable> vars, std::vector<Factor> factors) {
  return build_joint(FactorizationSpec{std::move(vars), std::move(factors)});
}

}  // namespace

TEST_CASE("build_joint multiplies the factor tables") {
  SUBCASE("all alphabets of size one give a single unit entry") {
    const auto pmf = from_factors({{"A", 1}, {"B", 1}}, {});
    REQUIRE(pmf.num_entries() == 1);
    CHECK(pmf.probs()[0] == doctest::Approx(1.0));
  }
  SUBCASE("two independent uniform bits") {
    const auto pmf = from_factors({{"A", 2}, {"B", 2}}, {{{"A"}, {}, {0.5, 0.5}}, {{"B"}, {}, {0.5, 0.5}}});
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(pmf.probs()[i] == doctest::Approx(0.25));
  }
  SUBCASE("copy channel puts the mass on the diagonal") {
    const auto pmf =
        from_factors({{"W0", 2}, {"W1", 2}}, {{{"W0"}, {}, {0.5, 0.5}}, {{"W1"}, {"W0"}, {1, 0, 0, 1}}});
    CHECK(pmf.at({0, 0}) == 0.5);
    CHECK(pmf.at({0, 1}) == 0.0);
    CHECK(pmf.at({1, 0}) == 0.0);
    CHECK(pmf.at({1, 1}) == 0.5);
  }
}

TEST_CASE("build_joint rejects malformed specifications") {
  CHECK_THROWS_AS(from_factors({{"A", 2}}, {{{"A"}, {}, {0.5, 0.51}}}), NonStochasticTable);
  CHECK_THROWS_AS(from_factors({{"A", 2}, {"B", 2}}, {{{"A"}, {"B"}, {1, 0, 0, 1}}, {{"B"}, {}, {0.5, 0.5}}}),
                  CyclicFactorOrder);
  CHECK_THROWS_AS(from_factors({{"A", 2}}, {{{"A"}, {}, {1.0}}}), NonStochasticTable);
  CHECK_THROWS_AS(from_factors({{"A", 2}}, {}), InvalidFactorization);
  CHECK_THROWS_AS(from_factors({{"A", 2}}, {{{"A"}, {}, {-0.5, 1.5}}}), NonStochasticTable);
  CHECK_THROWS_WITH_AS(from_factors({{"A", 2}}, {{{"A"}, {}, {0.5, 0.51}}}), doctest::Contains("p(A)"),
                       NonStochasticTable);

  std::vector<Variable> vars;
  for (const auto& name : canonical_variables()) vars.push_back({name, 2});
  std::vector<Factor> factors;
  for (const auto& name : canonical_variables()) {
    if (name != "Y1" && name != "Y2") factors.push_back({{name}, {}, {0.5, 0.5}});
  }
  CHECK_THROWS_AS(from_factors(vars, factors), MissingChannelFactor);
}

TEST_CASE("marginalize sums out the other variables") {
  const auto diag = JointPmf({{"A", 2}, {"B", 2}}, Eigen::Vector4d(0.5, 0, 0, 0.5));
  const auto b = marginalize(diag, {"B"});
  REQUIRE(b.num_variables() == 1);
  CHECK(b.probs()[0] == doctest::Approx(0.5));
  CHECK(b.probs()[1] == doctest::Approx(0.5));

  const auto full = marginalize(diag, {"A", "B"});
  CHECK(full.probs() == diag.probs());

  const auto uniform = JointPmf({{"A", 2}, {"B", 2}}, Eigen::Vector4d::Constant(0.25));
  CHECK(marginalize(uniform, {"A"}).probs().isApprox(Eigen::Vector2d(0.5, 0.5)));
}

TEST_CASE("entropy in bits") {
  CHECK(entropy(JointPmf({{"A", 1}}, Eigen::VectorXd::Ones(1)), {"A"}) == 0.0);
  CHECK(entropy(JointPmf({{"A", 2}}, Eigen::Vector2d(0.5, 0.5)), {"A"}) == doctest::Approx(1.0));
  const double p = 0.11;
  const double oracle = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
  const double h = entropy(JointPmf({{"A", 2}}, Eigen::Vector2d(p, 1 - p)), {"A"});
  CHECK(h == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(std::abs(h - 0.4999) < 1e-3);
}

TEST_CASE("conditional mutual information of small channels") {
  const auto indep = JointPmf({{"X", 2}, {"Y", 2}}, Eigen::Vector4d::Constant(0.25));
  CHECK(cond_mutual_information(indep, {"X"}, {"Y"}) == 0.0);

  const auto copy = JointPmf({{"X", 2}, {"Y", 2}}, Eigen::Vector4d(0.5, 0, 0, 0.5));
  CHECK(cond_mutual_information(copy, {"X"}, {"Y"}) == doctest::Approx(1.0));

  const double f = 0.11;
  const auto bsc = JointPmf({{"X", 2}, {"Y", 2}}, Eigen::Vector4d((1 - f) / 2, f / 2, f / 2, (1 - f) / 2));
  const double mi = cond_mutual_information(bsc, {"X"}, {"Y"});
  CHECK(mi == doctest::Approx(testing::direct_cmi(bsc, {"X"}, {"Y"}, {})).epsilon(1e-13));
  CHECK(std::abs(mi - 0.5) < 1e-3);

  CHECK_THROWS_AS(cond_mutual_information(bsc, {"X"}, {"X"}), OverlappingSets);
  CHECK_THROWS_AS(cond_mutual_information(bsc, {"X"}, {"Z"}), UnknownVariable);
}

TEST_CASE("mutual information agrees with direct summation on random pmfs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pmf = testing::random_joint({size(rng), size(rng), size(rng)}, rng);
    CHECK(std::abs(cond_mutual_information(pmf, {"V0"}, {"V1"}, {"V2"}) - testing::direct_cmi(pmf, {"V0"}, {"V1"}, {"V2"})) <=
          1e-12);
    CHECK(std::abs(cond_mutual_information(pmf, {"V0"}, {"V1", "V2"}) - testing::direct_cmi(pmf, {"V0"}, {"V1", "V2"}, {})) <=
          1e-12);
    // Symmetry and the chain rule.
    CHECK(std::abs(cond_mutual_information(pmf, {"V0"}, {"V1"}, {"V2"}) -
                   cond_mutual_information(pmf, {"V1"}, {"V0"}, {"V2"})) <= 1e-10);
    CHECK(std::abs(cond_mutual_information(pmf, {"V0"}, {"V1", "V2"}) -
                   cond_mutual_information(pmf, {"V0"}, {"V2"}) -
                   cond_mutual_information(pmf, {"V0"}, {"V1"}, {"V2"})) <= 1e-10);
    CHECK(cond_mutual_information(pmf, {"V0"}, {"V1"}, {"V2"}) >= 0.0);
  }
}

TEST_CASE("check_factorization measures conditional dependence") {
  std::mt19937_64 rng(5);
  SUBCASE("a pmf built from a spec satisfies that spec") {
    const auto spec = testing::random_spec(Form::general, rng);
    const auto rep = check_factorization(build_joint(spec), spec, 1e-12);
    CHECK(rep.passed);
    CHECK(rep.max_deviation <= 1e-12);
  }
  SUBCASE("full independence satisfies every coarser structure") {
    FactorizationSpec indep;
    for (const auto& name : canonical_variables()) {
      indep.variables.push_back({name, 2});
      if (name != "Y1" && name != "Y2") indep.factors.push_back({{name}, {}, {0.5, 0.5}});
    }
    indep.factors.push_back({{"Y1", "Y2"}, {"X1", "X2"}, std::vector<double>(16, 0.25)});
    const auto pmf = build_joint(indep);
    CHECK(check_factorization(pmf, structure_of(Form::ic_hodtani), 1e-12).passed);
    CHECK(check_factorization(pmf, structure_of(Form::general), 1e-12).passed);
  }
  SUBCASE("U2 correlated with U1 breaks the independent-layer structure") {
    auto spec = testing::random_spec(Form::general, rng);
    for (auto& f : spec.factors) {
      if (f.child == VarSet{"U2"}) {
        // p(u2 | w0, w2, w1, u1): copy u1 with probability 0.9.
        for (std::size_t r = 0; r < f.table.size() / 2; ++r) {
          const bool u1 = r % 2 == 1;
          f.table[2 * r] = u1 ? 0.1 : 0.9;
          f.table[2 * r + 1] = u1 ? 0.9 : 0.1;
        }
      }
    }
    const auto rep = check_factorization(build_joint(spec), structure_of(Form::ic_hodtani), 1e-9);
    CHECK_FALSE(rep.passed);
    CHECK(rep.max_deviation > 0.1);
  }
}

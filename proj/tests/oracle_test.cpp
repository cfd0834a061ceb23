#include <gtest/gtest.h>

#include "kcps/kcps.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace kcps;
using namespace kcps::testkit;

TEST(OracleCount, Examples) {
  EXPECT_EQ(oracle_count(CnfFormula(3)), 8);
  EXPECT_EQ(oracle_count(CnfFormula(1, {Clause{1}, Clause{-1}})), 0);
  EXPECT_EQ(oracle_count(CnfFormula(2, {Clause{1, 2}})), 3);
  EXPECT_EQ(oracle_count(equal3_formula()), 2);
}

TEST(OracleMaxsat, Examples) {
  EXPECT_EQ(oracle_maxsat(CnfFormula(1, {Clause{1}, Clause{-1}})), 1u);
  EXPECT_EQ(oracle_maxsat(CnfFormula(3)), 0u);
  EXPECT_EQ(oracle_maxsat(CnfFormula(2, {Clause{1}, Clause{1, 2}})), 2u);
  EXPECT_EQ(oracle_maxsat(CnfFormula(2, {Clause{}, Clause{1}})), 1u);
}

TEST(Oracle, RefusesLargeInstances) {
  try {
    oracle_count(CnfFormula(21));
    FAIL();
  } catch (const OracleError& e) {
    EXPECT_EQ(e.code(), OracleErrc::TooLarge);
  }
  EXPECT_THROW(oracle_maxsat(CnfFormula(40)), OracleError);
  EXPECT_EQ(oracle_count(CnfFormula(21), OracleLimit{21}), BigCount(1) << 21);
}

TEST(OracleEquiv, Examples) {
  EXPECT_FALSE(oracle_equiv(CnfFormula(1), single_true(1)).has_value());

  auto cex = oracle_equiv(CnfFormula(1, {Clause{1}}), single_true(1, 1));
  ASSERT_TRUE(cex.has_value());
  EXPECT_EQ(cex->assignment, Assignment::from_index(1, 0));
  EXPECT_EQ(cex->direction, FailedImplication::CircuitImpliesFormula);

  auto other = oracle_equiv(CnfFormula(1), single_false(1, 1, 1));
  ASSERT_TRUE(other.has_value());
  EXPECT_EQ(other->direction, FailedImplication::FormulaImpliesCircuit);

  EXPECT_THROW(oracle_equiv(CnfFormula(2), single_true(1)), OracleError);
}

TEST(OracleEquiv, FirstCounterexampleIsLexicographic) {
  // F = (x1), D = T over 2 vars: models of D not of F are 00 and 01; 00 comes first.
  auto cex = oracle_equiv(CnfFormula(2, {Clause{1}}), single_true(2, 1));
  ASSERT_TRUE(cex.has_value());
  EXPECT_EQ(cex->assignment, Assignment::from_index(2, 0));
}

TEST(OracleCorrect, Examples) {
  EXPECT_FALSE(oracle_correct(single_false(1, 1, 1), CnfFormula(1, {Clause{1}})));
  DnnfBuilder b(1, 1);
  auto f = b.add_false(1);
  auto t = b.add_true();
  b.add_decision(1, f, t);
  EXPECT_TRUE(oracle_correct(std::move(b).build(), CnfFormula(1, {Clause{1}})));
  EXPECT_TRUE(oracle_correct(equal3_circuit(), equal3_formula()));
}

TEST(Property, CompiledCertificatesAgreeWithOracle) {
  Rng rng(61);
  for (int i = 0; i < 150; ++i) {
    const auto n = uniform(rng, 0, 12);
    auto f = random_cnf(rng, n, uniform(rng, 0, 30), 1, 4);
    auto d = compile(f, {coin(rng, 0.5) ? BranchPolicy::MostFrequent : BranchPolicy::SmallestIndex,
                         coin(rng, 0.5)});
    ASSERT_TRUE(oracle_correct(d, f));
    ASSERT_FALSE(oracle_equiv(f, d).has_value());
    ASSERT_EQ(oracle_count(f), count_models(d));
  }
}

TEST(Property, CheckCorrectMatchesDefinition) {
  Rng rng(62);
  int incorrect = 0;
  for (int i = 0; i < 400; ++i) {
    const auto n = uniform(rng, 1, 9);
    auto f = random_cnf(rng, n, uniform(rng, 1, 8), 1, 3);
    auto d = RandomDnnf(rng, n, f.num_clauses()).build(8);
    bool fast;
    try {
      fast = check_correct(d, f).correct();
    } catch (const CheckError& e) {
      ASSERT_EQ(e.code(), CheckErrc::TautologicalLabel);
      fast = false;
    }
    ASSERT_EQ(fast, oracle_correct(d, f));
    incorrect += fast ? 0 : 1;
  }
  EXPECT_GT(incorrect, 0);
  EXPECT_LT(incorrect, 400);
}

TEST(Property, MaxsatPipelineMatchesOracle) {
  Rng rng(63);
  for (int i = 0; i < 100; ++i) {
    const auto n = uniform(rng, 1, 6);
    auto f = random_cnf(rng, n, uniform(rng, 0, 12 - n), 1, 3);
    auto d = compile(build_tilde(f).formula);
    auto v = check_kcps_max(f, d);
    ASSERT_TRUE(v.is_valid()) << v.rejection().detail;
    ASSERT_EQ(v.value(), oracle_maxsat(f));
  }
}

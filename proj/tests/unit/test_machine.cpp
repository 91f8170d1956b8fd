#include <gtest/gtest.h>

#include "atrlab/errors.hpp"
#include "atrlab/machine.hpp"
#include "oracles.hpp"

using namespace atrlab;

namespace {

BigNat idx(const Program& p) { return p.index(); }

}  // namespace

TEST(Sequences, CodingIsABijectionOnSmallCodes) {
  for (int c = 0; c < 400; ++c) {
    auto xs = decode_sequence(c);
    EXPECT_EQ(encode_sequence(xs), BigNat(c));
  }
  EXPECT_EQ(encode_sequence({}), BigNat(0));
  EXPECT_EQ(encode_sequence({0}), BigNat(1));
  EXPECT_EQ(encode_sequence({0, 0}), BigNat(2));
}

TEST(Programs, SmallIndices) {
  EXPECT_EQ(Program::decode(0).size(), 0u);
  EXPECT_EQ(Program::decode(1).instructions().at(0).op, Opcode::Halt);
  EXPECT_EQ(Program::decode(2).size(), 2u);
  EXPECT_EQ(idx(programs::halt_now()), BigNat(1));
  for (const Program& p : programs::default_suite()) EXPECT_EQ(Program::decode(p.index()).codes(), p.codes());
}

TEST(Run, ImmediateHalt) {
  auto out = run(idx(programs::halt_now()), {}, 1, 0);
  EXPECT_EQ(out, (RunOutcome{RunStatus::Halted, 1}));
}

TEST(Run, SelfJumpExhaustsItsBudget) {
  EXPECT_EQ(run(idx(programs::loop_forever()), {}, 100, 0).status, RunStatus::Exhausted);
}

TEST(Run, QueryOutsideTheStringBlocks) {
  EXPECT_EQ(run(idx(programs::halt_on_one(0)), {}, 10, 0).status, RunStatus::Blocked);
}

TEST(Run, EmptyProgramNeverHalts) { EXPECT_EQ(run(BigNat(0), {}, 50, 0).status, RunStatus::Exhausted); }

TEST(MinimalPairs, HaltNeedsNoQueries) {
  auto e = idx(programs::halt_now());
  auto pairs = minimal_halting_pairs(e, static_cast<Nat>(e), 5);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_TRUE(pairs[0].sigma.empty());
  EXPECT_EQ(pairs[0].steps, 1u);
}

TEST(MinimalPairs, LoopHasNone) { EXPECT_TRUE(minimal_halting_pairs(programs::loop_forever(), 0, 50).empty()); }

TEST(MinimalPairs, PositiveQueryTrace) {
  // QUERY r1 (r1 = 0): answer 1 jumps to HALT. One step for the query, one for HALT.
  auto pairs = minimal_halting_pairs(programs::halt_on_one(0), 0, 10);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].sigma, (OracleString{{0, true}}));
  EXPECT_EQ(pairs[0].steps, 2u);
}

TEST(MinimalPairs, TwoQueriesTrace) {
  // QUERY 0, INC r1 twice, QUERY 2, HALT.
  auto pairs = minimal_halting_pairs(programs::halt_on_both(0, 2), 4, 20);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].sigma, (OracleString{{0, true}, {2, true}}));
  EXPECT_EQ(pairs[0].steps, 5u);
}

TEST(MinimalPairs, QueryEitherWayGivesTwoPairs) {
  auto pairs = minimal_halting_pairs(programs::query_then_halt(), 5, 10);
  ASSERT_EQ(pairs.size(), 2u);
  std::set<OracleString> sigmas{pairs[0].sigma, pairs[1].sigma};
  EXPECT_EQ(sigmas, (std::set<OracleString>{{{0, false}}, {{0, true}}}));
}

TEST(MinimalPairs, RemovingAnyAddressBlocks) {
  for (const Program& p : programs::default_suite()) {
    for (Nat x = 0; x < 3; ++x) {
      for (const HaltingPair& hp : minimal_halting_pairs(p, x, 40)) {
        for (const auto& [a, bit] : hp.sigma) {
          OracleString less = hp.sigma;
          less.erase(a);
          EXPECT_EQ(run(p.index(), less, 40, x).status, RunStatus::Blocked);
        }
        EXPECT_EQ(run(p.index(), hp.sigma, 40, x), (RunOutcome{RunStatus::Halted, hp.steps}));
      }
    }
  }
}

TEST(Run, BudgetAndOracleMonotonicity) {
  for (int e = 0; e < 300; ++e) {
    for (const auto& X : oracle::subsets(3)) {
      auto base = run(Program::decode(e), oracle_from_set(X), 30, e);
      if (!base.halted()) continue;
      for (Nat s : {31u, 45u, 80u}) EXPECT_EQ(run(Program::decode(e), oracle_from_set(X), s, e), base);
    }
    for (const HaltingPair& hp : minimal_halting_pairs(BigNat(e), e, 30)) {
      OracleString more = hp.sigma;
      for (Nat a = 0; a < 12; ++a) more.emplace(a, a % 2 == 0);
      EXPECT_EQ(run(BigNat(e), more, 30, e), (RunOutcome{RunStatus::Halted, hp.steps}));
    }
  }
}

TEST(Run, Deterministic) {
  for (int e = 0; e < 200; ++e) {
    OracleString s{{0, true}, {1, false}};
    EXPECT_EQ(run(BigNat(e), s, 25, 3), run(BigNat(e), s, 25, 3));
  }
}

TEST(Jump, BoundedContainsHaltIndex) {
  auto J = JumpOperator::bounded(4, 5);
  auto out = apply_jump(J, {});
  EXPECT_TRUE(out.count(1));
  EXPECT_FALSE(out.count(0));
}

TEST(Jump, SyntheticLookup) {
  auto J = JumpOperator::synthetic({{{}, {0}}});
  EXPECT_EQ(apply_jump(J, {}), (std::set<Nat>{0}));
  EXPECT_THROW(apply_jump(J, {3}), SyntheticMiss);
}

TEST(Jump, BoundedOracleSensitivity) {
  // Indices 0..3 decode to: nothing, [HALT], [HALT, HALT], [INC r0]; none queries.
  auto J = JumpOperator::bounded(4, 5);
  EXPECT_EQ(apply_jump(J, {0}), apply_jump(J, {}));
  EXPECT_EQ(apply_jump(J, {}), (std::set<Nat>{1, 2}));
}

TEST(Jump, SuiteSemantics) {
  auto J = JumpOperator::suite(programs::default_suite(), 50);
  for (const auto& X : oracle::subsets(3)) {
    std::set<Nat> mapped;
    for (Nat a : X) mapped.insert(a == 1 ? 2 : (a == 2 ? 8 : 0));
    std::set<Nat> expect{1, 5};
    if (mapped.count(0)) expect.insert(2);
    if (!mapped.count(0)) expect.insert(3);
    if (mapped.count(0) && mapped.count(2)) expect.insert(4);
    if (mapped.count(8)) expect.insert(6);
    EXPECT_EQ(apply_jump(J, mapped), expect);
  }
}

TEST(Jump, PairsAgreeWithDirectRuns) {
  EXPECT_TRUE(jump_vs_pairs_consistency(static_cast<Nat>(idx(programs::halt_now())), {}, 5));
  EXPECT_TRUE(jump_vs_pairs_consistency(0, {0, 1}, 50));
  for (Nat e = 0; e < 64; ++e)
    for (const auto& X : oracle::subsets(4)) EXPECT_TRUE(jump_vs_pairs_consistency(e, X, 30)) << e;
}

TEST(Jump, PairsAgreeForQueryingProgram) {
  Program p = programs::halt_on_one(0);
  std::set<Nat> X{0};
  bool direct = run(p, oracle_from_set(X), 10, 0).halted();
  auto pairs = minimal_halting_pairs(p, 0, 10);
  bool via_pairs = std::any_of(pairs.begin(), pairs.end(), [&](const HaltingPair& hp) { return consistent_with(hp.sigma, X); });
  EXPECT_TRUE(direct);
  EXPECT_EQ(direct, via_pairs);
}

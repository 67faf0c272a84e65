// Copyright 2026 The pimatch Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracle.h"
#include "pimatch/associated_market.h"
#include "pimatch/decomposition.h"
#include "pimatch/error.h"
#include "pimatch/generator.h"
#include "pimatch/stability.h"
#include "test_support.h"

namespace pimatch {
namespace {

using namespace pimatch::testing;  // NOLINT

std::vector<std::vector<int>> worker_sides(const std::vector<Matching11>& ms) {
  std::vector<std::vector<int>> out;
  for (const Matching11& m : ms) out.push_back(m.worker_side());
  return out;
}

std::vector<std::vector<int>> assignments(const std::vector<MatchingM1>& ms) {
  std::vector<std::vector<int>> out;
  for (const MatchingM1& m : ms) out.push_back(m.assignment());
  return out;
}

ManyToOneMarket one_by_one(bool firm_accepts, bool worker_accepts) {
  std::vector<std::vector<int>> order;
  if (firm_accepts) order.push_back({0});
  return ManyToOneMarket({"w1"}, {"phi1"},
                         {ChoiceFunction::FromOrders(1, to_orders(order, 1))},
                         {worker_accepts ? WorkerPreference(1, {0}) : WorkerPreference(1, {})});
}

OneToOneMarket associated(const ManyToOneMarket& m) {
  return build_associated_market(m, decompose_market(m));
}

oracle::OneToOne oracle_associated(const ManyToOneMarket& m, const OneToOneMarket& a) {
  return oracle::associate(to_oracle(m), orders_of(a.decomposition()));
}

TEST(CheckStableM1, KnownStableMatchingPasses) {
  EXPECT_TRUE(check_stable_m1(example_market(), mu_firms()).stable);
}

TEST(CheckStableM1, EmptyMatchingIsPairBlocked) {
  const ManyToOneMarket m = example_market();
  const MatchingM1 empty(4, 2);
  const StabilityReport r = check_stable_m1(m, empty);
  ASSERT_FALSE(r.stable);
  EXPECT_EQ(r.block, BlockCase::kPair);
  // Pairs are scanned worker-major, so (w1, phi1) comes before (w1, phi2).
  EXPECT_EQ(r.worker, W1);
  EXPECT_EQ(r.firm, PHI1);
  EXPECT_TRUE(witness_replays(m, empty, r));
  const oracle::Market o = example_oracle_market();
  EXPECT_TRUE(o.choice[PHI2][oracle::bit(W1)] & oracle::bit(W1));
  EXPECT_TRUE(oracle::better(o.worker_pref[W1], PHI2, -1));
}

TEST(CheckStableM1, SingleMutualPairPasses) {
  EXPECT_TRUE(check_stable_m1(one_by_one(true, true), MatchingM1(1, std::vector<int>{0})).stable);
}

TEST(CheckStableM1, FirmAndWorkerBlocks) {
  const ManyToOneMarket m = example_market();
  // phi1 holding {w1,w2,w3} would drop w3.
  const MatchingM1 crowded = mu_of({W1, W2, W3}, {W4});
  const StabilityReport r = check_stable_m1(m, crowded);
  EXPECT_EQ(r.block, BlockCase::kFirm);
  EXPECT_EQ(r.firm, PHI1);
  EXPECT_TRUE(witness_replays(m, crowded, r));

  const MatchingM1 unwanted(1, std::vector<int>{0});
  const StabilityReport u = check_stable_m1(one_by_one(true, false), unwanted);
  EXPECT_EQ(u.block, BlockCase::kWorker);
  EXPECT_TRUE(witness_replays(one_by_one(true, false), unwanted, u));
}

TEST(CheckStableM1, RejectsMalformedMatching) {
  EXPECT_THROW(check_stable_m1(example_market(), MatchingM1(3, 2)), ValidationError);
  EXPECT_THROW(MatchingM1(2, {0, 5, kNone, kNone}), ValidationError);
}

TEST(EnumerateStableM1, ExampleHasTheFourKnownMatchings) {
  const std::vector<MatchingM1> found = enumerate_stable_m1(example_market());
  std::vector<MatchingM1> expected = {mu_firms(), mu_one(), mu_two(), mu_workers()};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(found, expected);
  EXPECT_EQ(assignments(found), oracle::all_stable_m1(example_oracle_market()));
}

TEST(EnumerateStableM1, TrivialMarkets) {
  const std::vector<MatchingM1> none = enumerate_stable_m1(one_by_one(false, true));
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none[0], MatchingM1(1, 1));
  const std::vector<MatchingM1> pair = enumerate_stable_m1(one_by_one(true, true));
  ASSERT_EQ(pair.size(), 1u);
  EXPECT_EQ(pair[0], MatchingM1(1, std::vector<int>{0}));
}

TEST(CheckStableStar, FirmProposingOutcomePasses) {
  EXPECT_TRUE(check_stable_star(example_associated(), lambda_firms()).stable);
}

TEST(CheckStableStar, LowerCopyHoldingTopWorkerIsBlocked) {
  const OneToOneMarket m = example_associated();
  // As the firm-proposing outcome, but w1 sits with f12 while f11 is free.
  const Matching11 lambda = lambda_of({{copy_id(PHI1, 2), W1}, {copy_id(PHI1, 4), W2},
                                       {copy_id(PHI2, 1), W3}, {copy_id(PHI2, 4), W4}});
  const StabilityReport r = check_stable_star(m, lambda);
  ASSERT_FALSE(r.stable);
  EXPECT_EQ(r.block, BlockCase::kPair);
  EXPECT_EQ(r.copy, copy_id(PHI1, 1));
  EXPECT_EQ(r.worker, W1);
  EXPECT_TRUE(witness_replays_star(m, lambda, r));
}

TEST(CheckStableStar, EmptyMatchingIsPairBlocked) {
  const OneToOneMarket m = example_associated();
  const Matching11 empty(4, 12);
  const StabilityReport r = check_stable_star(m, empty);
  EXPECT_EQ(r.block, BlockCase::kPair);
  EXPECT_TRUE(witness_replays_star(m, empty, r));
}

TEST(CheckStableStar, IndividualCases) {
  const OneToOneMarket m = example_associated();
  // f12 ranks w1 above w2; pairing f12 with w2 while f11 holds w1 is envy.
  const Matching11 envy = lambda_of({{copy_id(PHI1, 1), W1}, {copy_id(PHI1, 2), W2}});
  const StabilityReport e = check_stable_star(m, envy);
  EXPECT_EQ(e.block, BlockCase::kCopyEnvy);
  EXPECT_EQ(e.copy, copy_id(PHI1, 2));
  EXPECT_EQ(e.sibling, copy_id(PHI1, 1));
  EXPECT_TRUE(witness_replays_star(m, envy, e));

  const ManyToOneMarket lonely = one_by_one(true, false);
  const OneToOneMarket a = associated(lonely);
  const Matching11 forced = lambda_of({{0, 0}}, 1, 1);
  const StabilityReport w = check_stable_star(a, forced);
  EXPECT_EQ(w.block, BlockCase::kWorker);
  EXPECT_TRUE(witness_replays_star(a, forced, w));
}

TEST(CheckStableStar, RejectsForeignShapes) {
  EXPECT_THROW(check_stable_star(example_associated(), Matching11(4, 11)), ValidationError);
}

TEST(CheckStableClassical, KnownUniqueMatchingPasses) {
  EXPECT_TRUE(check_stable_classical_11(example_associated(), lambda_workers()).stable);
}

TEST(CheckStableClassical, FirmProposingOutcomeIsBlocked) {
  const OneToOneMarket m = example_associated();
  const StabilityReport r = check_stable_classical_11(m, lambda_firms());
  ASSERT_FALSE(r.stable);
  EXPECT_EQ(r.block, BlockCase::kPair);
  EXPECT_TRUE(witness_replays_classical(m, lambda_firms(), r));
  // (f22, w4) blocks: w4 prefers f22 to f24 and f22 is free.
  const oracle::OneToOne o = example_oracle_associated();
  oracle::OneToOneMatching l = to_oracle(lambda_firms());
  EXPECT_TRUE(oracle::better(o.worker_pref[W4], copy_id(PHI2, 2), l[W4]));
  EXPECT_TRUE(oracle::better(o.order[copy_id(PHI2, 2)], W4, -1));
}

TEST(CheckStableClassical, EmptyMarketPasses) {
  const ManyToOneMarket empty({}, {}, {}, {});
  const OneToOneMarket a = associated(empty);
  EXPECT_TRUE(check_stable_classical_11(a, Matching11(0, 0)).stable);
  EXPECT_EQ(enumerate_stable_classical_11(a).size(), 1u);
  EXPECT_EQ(enumerate_stable_star(a).size(), 1u);
}

TEST(EnumerateStableStar, ExampleHasTheFourKnownMatchings) {
  const OneToOneMarket m = example_associated();
  std::vector<Matching11> expected = {lambda_firms(), lambda_one(), lambda_two(),
                                      lambda_workers()};
  std::sort(expected.begin(), expected.end());
  const std::vector<Matching11> found = enumerate_stable_star(m);
  EXPECT_EQ(found, expected);
  const oracle::OneToOne o = example_oracle_associated();
  EXPECT_EQ(worker_sides(found), oracle::all_matchings(o, [&](const auto& l) {
              return oracle::stable_star(o, l);
            }));
}

TEST(EnumerateStableStar, ComparingAgainstTheHoldingCopyAdmitsExtraMatchings) {
  // If the pair condition also compared w with the copy w already sits at,
  // a worker could never move up between copies of one firm and the stable*
  // set would no longer mirror the four stable matchings.
  const oracle::OneToOne o = example_oracle_associated();
  const auto literal =
      oracle::all_matchings(o, [&](const auto& l) { return oracle::stable_star(o, l, true); });
  EXPECT_GT(literal.size(), 4u);
  const Matching11 spread = lambda_of({{copy_id(PHI1, 2), W1}, {copy_id(PHI1, 4), W2},
                                       {copy_id(PHI2, 1), W3}, {copy_id(PHI2, 4), W4}});
  EXPECT_TRUE(oracle::stable_star(o, to_oracle(spread), true));
  EXPECT_FALSE(check_stable_star(example_associated(), spread).stable);
}

TEST(EnumerateStableStar, SingleMutualPair) {
  const OneToOneMarket a = associated(one_by_one(true, true));
  const std::vector<Matching11> found = enumerate_stable_star(a);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].copy_of(0), 0);
}

TEST(EnumerateClassical, ExampleHasOnlyOneMatching) {
  const OneToOneMarket m = example_associated();
  const std::vector<Matching11> found = enumerate_stable_classical_11(m);
  EXPECT_EQ(found, std::vector<Matching11>{lambda_workers()});
  const oracle::OneToOne o = example_oracle_associated();
  EXPECT_EQ(worker_sides(found), oracle::all_matchings(o, [&](const auto& l) {
              return oracle::stable_classical(o, l);
            }));
  const std::vector<Matching11> single = enumerate_stable_classical_11(associated(one_by_one(true, true)));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].copy_of(0), 0);
}

TEST(EnumerateClassical, MeetsStableStarOnlyInWorkerOptimalMatching) {
  const OneToOneMarket m = example_associated();
  const std::vector<Matching11> star = enumerate_stable_star(m);
  const std::vector<Matching11> classical = enumerate_stable_classical_11(m);
  std::vector<Matching11> both;
  std::set_intersection(star.begin(), star.end(), classical.begin(), classical.end(),
                        std::back_inserter(both));
  EXPECT_EQ(both, std::vector<Matching11>{lambda_workers()});
}

TEST(Enumeration, CapIsEnforcedAndDoublingChangesNothing) {
  const ManyToOneMarket m1 = example_market();
  const OneToOneMarket m = example_associated();
  Limits tiny;
  tiny.enumeration_cap = 10;
  EXPECT_THROW(enumerate_stable_m1(m1, tiny), SizeError);
  EXPECT_THROW(enumerate_stable_star(m, tiny), SizeError);
  EXPECT_THROW(enumerate_stable_classical_11(m, tiny), SizeError);
  Limits doubled;
  doubled.enumeration_cap *= 2;
  EXPECT_EQ(enumerate_stable_m1(m1, doubled), enumerate_stable_m1(m1));
  EXPECT_EQ(enumerate_stable_star(m, doubled), enumerate_stable_star(m));
  EXPECT_EQ(enumerate_stable_classical_11(m, doubled), enumerate_stable_classical_11(m));
}

// Random matchings on random markets: every verdict agrees with the
// definitions and every witness replays.
TEST(StabilityProperties, VerdictsAgreeWithOracleAndWitnessesReplay) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    GenParams p;
    p.workers = 1 + static_cast<int>(seed % 4);
    p.firms = 1 + static_cast<int>(seed % 3);
    p.max_orders = 3;
    p.density = seed % 3 == 0 ? 0.5 : 0.9;
    p.seed = seed;
    const ManyToOneMarket m1 = gen_random_market(p);
    const OneToOneMarket m = associated(m1);
    const oracle::Market o1 = to_oracle(m1);
    const oracle::OneToOne o = oracle_associated(m1, m);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<int> firm_of(m1.worker_count());
      for (int& f : firm_of) f = static_cast<int>(rng() % (m1.firm_count() + 1)) - 1;
      const MatchingM1 mu(m1.firm_count(), firm_of);
      const StabilityReport r1 = check_stable_m1(m1, mu);
      ASSERT_EQ(r1.stable, oracle::stable_m1(o1, firm_of)) << seed;
      if (!r1.stable) {
        ASSERT_TRUE(witness_replays(m1, mu, r1)) << seed;
      }

      std::vector<int> copies(m.copy_count());
      for (int c = 0; c < m.copy_count(); ++c) copies[c] = c;
      std::shuffle(copies.begin(), copies.end(), rng);
      oracle::OneToOneMatching l(m.worker_count(), -1);
      for (int w = 0; w < m.worker_count(); ++w) {
        if (w < m.copy_count() && rng() % 3 != 0) l[w] = copies[w];
      }
      const Matching11 lambda = from_oracle(l, m.copy_count());
      const StabilityReport rs = check_stable_star(m, lambda);
      ASSERT_EQ(rs.stable, oracle::stable_star(o, l)) << seed;
      if (!rs.stable) {
        ASSERT_TRUE(witness_replays_star(m, lambda, rs)) << seed;
      }
      const StabilityReport rc = check_stable_classical_11(m, lambda);
      ASSERT_EQ(rc.stable, oracle::stable_classical(o, l)) << seed;
      if (!rc.stable) {
        ASSERT_TRUE(witness_replays_classical(m, lambda, rc)) << seed;
      }
    }
  }
}

// Every solution set on small random markets equals the brute-force oracle,
// pruned or not.
TEST(StabilityProperties, EnumeratorsMatchOracleAndUnprunedScan) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    GenParams p;
    p.workers = 1 + static_cast<int>(seed % 3);
    p.firms = 1 + static_cast<int>(seed % 2);
    p.max_orders = 3;
    p.density = seed % 4 == 0 ? 0.5 : 1.0;
    p.seed = 1000 + seed;
    const ManyToOneMarket m1 = gen_random_market(p);
    const OneToOneMarket m = associated(m1);
    const oracle::OneToOne o = oracle_associated(m1, m);

    const auto stable = enumerate_stable_m1(m1);
    ASSERT_EQ(stable, enumerate_stable_m1(m1, {}, Pruning::kOff)) << seed;
    ASSERT_EQ(assignments(stable), oracle::all_stable_m1(to_oracle(m1))) << seed;

    const auto star = enumerate_stable_star(m);
    ASSERT_EQ(star, enumerate_stable_star(m, {}, Pruning::kOff)) << seed;
    ASSERT_EQ(worker_sides(star), oracle::all_matchings(o, [&](const auto& l) {
                return oracle::stable_star(o, l);
              })) << seed;

    const auto classical = enumerate_stable_classical_11(m);
    ASSERT_EQ(classical, enumerate_stable_classical_11(m, {}, Pruning::kOff)) << seed;
    ASSERT_EQ(worker_sides(classical), oracle::all_matchings(o, [&](const auto& l) {
                return oracle::stable_classical(o, l);
              })) << seed;
  }
}

}  // namespace
}  // namespace pimatch

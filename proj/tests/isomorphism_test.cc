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
#include <vector>

#include "oracle.h"
#include "pimatch/associated_market.h"
#include "pimatch/decomposition.h"
#include "pimatch/generator.h"
#include "pimatch/isomorphism.h"
#include "pimatch/stability.h"
#include "test_support.h"

namespace pimatch {
namespace {

using namespace pimatch::testing;  // NOLINT

// Lowest-index copy whose order puts w first among the firm's workers.
oracle::OneToOneMatching inverse_oracle(const oracle::OneToOne& a, const oracle::ManyToOne& mu) {
  oracle::OneToOneMatching lambda(a.k, -1);
  std::vector<bool> taken(a.firm.size(), false);
  for (int w = 0; w < a.k; ++w) {
    if (mu[w] == -1) continue;
    for (std::size_t c = 0; c < a.firm.size(); ++c) {
      if (a.firm[c] != mu[w] || taken[c]) continue;
      int best = -1;
      for (int x : a.order[c]) {
        if (mu[x] == mu[w]) {
          best = x;
          break;
        }
      }
      if (best == w) {
        lambda[w] = static_cast<int>(c);
        taken[c] = true;
        break;
      }
    }
  }
  return lambda;
}

TEST(MapT, ExampleImages) {
  const OneToOneMarket m = example_associated();
  EXPECT_EQ(map_T(lambda_firms(), m), mu_firms());
  EXPECT_EQ(map_T(lambda_workers(), m), mu_workers());
  // The two middle labels cross over under T.
  EXPECT_EQ(map_T(lambda_one(), m), mu_two());
  EXPECT_EQ(map_T(lambda_two(), m), mu_one());
}

TEST(MapTInv, ExampleImages) {
  const OneToOneMarket m = example_associated();
  EXPECT_EQ(map_T_inv(mu_firms(), m), lambda_firms());
  EXPECT_EQ(map_T_inv(mu_workers(), m), lambda_workers());
  EXPECT_EQ(map_T_inv(mu_one(), m), lambda_two());
  EXPECT_EQ(map_T_inv(mu_two(), m), lambda_one());
}

TEST(MapTInv, AgreesWithOracleOnExample) {
  const OneToOneMarket m = example_associated();
  const oracle::OneToOne o = example_oracle_associated();
  for (const MatchingM1& mu : {mu_firms(), mu_one(), mu_two(), mu_workers()}) {
    EXPECT_EQ(to_oracle(map_T_inv(mu, m)), inverse_oracle(o, mu.assignment()));
  }
}

TEST(MapTInv, EmptyMatchingStaysEmpty) {
  const OneToOneMarket m = example_associated();
  EXPECT_EQ(map_T_inv(MatchingM1(4, 2), m), Matching11(4, 12));
  EXPECT_EQ(map_T(Matching11(4, 12), m), MatchingM1(4, 2));
}

TEST(MapTInv, WorkerNobodyRanksFirstIsRejected) {
  const ManyToOneMarket m1({"w1", "w2"}, {"phi1"},
                           {ChoiceFunction::FromOrders(2, to_orders({{0, 1}}, 2))},
                           {WorkerPreference(1, {0}), WorkerPreference(1, {0})});
  const OneToOneMarket m = build_associated_market(m1, decompose_market(m1));
  EXPECT_THROW(map_T_inv(MatchingM1(1, std::vector<int>{0, 0}), m), AxiomError);
}

TEST(MapT, RejectsMismatchedSizes) {
  EXPECT_THROW(map_T(Matching11(3, 12), example_associated()), ValidationError);
  EXPECT_THROW(map_T_inv(MatchingM1(3, 2), example_associated()), ValidationError);
}

TEST(VerifyIsomorphism, ExamplePairsFourWithFour) {
  const IsomorphismReport r = verify_isomorphism(example_market(), example_associated());
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.failures.empty());
  ASSERT_EQ(r.stable.size(), 4u);
  ASSERT_EQ(r.stable_star.size(), 4u);
  ASSERT_EQ(r.forward.size(), 4u);
  ASSERT_EQ(r.backward.size(), 4u);
  for (const auto& [lambda, mu] : r.forward) {
    EXPECT_EQ(map_T(lambda, example_associated()), mu);
    EXPECT_TRUE(std::count(r.stable.begin(), r.stable.end(), mu));
  }
  for (const auto& [mu, lambda] : r.backward) {
    EXPECT_TRUE(std::count(r.stable_star.begin(), r.stable_star.end(), lambda));
  }
}

TEST(VerifyIsomorphism, LexicographicIndexingAlsoPasses) {
  const ManyToOneMarket m1 = example_market();
  const OneToOneMarket m = build_associated_market(m1, decompose_market(m1));
  EXPECT_NE(m.decomposition().orders, example_associated().decomposition().orders);
  EXPECT_TRUE(verify_isomorphism(m1, m).passed);
}

TEST(RuralHospital, ExampleCountsAreConstant) {
  const RhtReport r = rural_hospital_check(example_market(), example_associated());
  const oracle::Market o = example_oracle_market();
  EXPECT_EQ(r.lad_holds, oracle::lad(o.choice[0]) && oracle::lad(o.choice[1]));
  EXPECT_TRUE(r.counts_constant);
  EXPECT_TRUE(r.passed);
  ASSERT_EQ(r.copies_matched.size(), 4u);
  for (const auto& row : r.copies_matched) EXPECT_EQ(row, (std::vector<int>{2, 2}));
  for (const auto& row : r.firm_sizes) EXPECT_EQ(row, (std::vector<int>{2, 2}));
}

TEST(RuralHospital, WithoutLadTheReportIsInformational) {
  // C({w2,w3}) = {w2,w3} but C({w1,w2,w3}) = {w1}.
  const ManyToOneMarket m1(
      {"w1", "w2", "w3"}, {"phi1"},
      {ChoiceFunction::FromOrders(3, to_orders({{0, 1, 2}, {0, 2, 1}}, 3))},
      {WorkerPreference(1, {0}), WorkerPreference(1, {0}), WorkerPreference(1, {0})});
  const OneToOneMarket m = build_associated_market(m1, decompose_market(m1));
  const RhtReport r = rural_hospital_check(m1, m);
  EXPECT_FALSE(r.lad_holds);
  EXPECT_EQ(r.firm_lad, std::vector<bool>{false});
  EXPECT_TRUE(r.passed);
}

// S*(M), S(𝓜) and both maps against brute force on random markets.
TEST(IsomorphismProperties, RandomMarketsMatchOracle) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    GenParams p;
    p.workers = 1 + static_cast<int>(seed % 4);
    p.firms = 1 + static_cast<int>((seed / 4) % 3);
    p.max_orders = 1 + static_cast<int>((seed / 12) % 3);
    p.density = seed % 2 == 0 ? 0.7 : 1.0;
    p.seed = 9000 + seed;
    const ManyToOneMarket m1 = gen_random_market(p);
    const OneToOneMarket m = build_associated_market(m1, decompose_market(m1));
    const oracle::Market om = to_oracle(m1);
    const oracle::OneToOne o = oracle::associate(om, orders_of(m.decomposition()));

    const IsomorphismReport r = verify_isomorphism(m1, m);
    ASSERT_TRUE(r.passed) << seed;
    const auto star = oracle::all_matchings(
        o, [&](const oracle::OneToOneMatching& l) { return oracle::stable_star(o, l); });
    const auto stable = oracle::all_stable_m1(om);
    ASSERT_EQ(r.stable_star.size(), star.size()) << seed;
    ASSERT_EQ(r.stable.size(), stable.size()) << seed;
    for (std::size_t i = 0; i < star.size(); ++i) {
      EXPECT_EQ(to_oracle(r.stable_star[i]), star[i]) << seed;
    }
    for (std::size_t i = 0; i < stable.size(); ++i) {
      EXPECT_EQ(r.stable[i].assignment(), stable[i]) << seed;
    }
    for (const auto& mu : stable) {
      const oracle::OneToOneMatching back = inverse_oracle(o, mu);
      EXPECT_EQ(to_oracle(map_T_inv(MatchingM1(m1.firm_count(), mu), m)), back) << seed;
      EXPECT_EQ(oracle::collapse(o, back), mu) << seed;
    }

    const RhtReport rht = rural_hospital_check(m1, m);
    bool lad = true;
    for (const auto& t : om.choice) lad = lad && oracle::lad(t);
    ASSERT_EQ(rht.lad_holds, lad) << seed;
    if (lad) {
      ASSERT_TRUE(rht.counts_constant) << seed;
      ASSERT_TRUE(rht.passed) << seed;
    }
  }
}

}  // namespace
}  // namespace pimatch

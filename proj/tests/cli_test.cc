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
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pimatch/cli.h"
#include "pimatch/market_io.h"
#include "test_support.h"

namespace pimatch {
namespace {

using namespace pimatch::testing;  // NOLINT

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pimatch");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string example() { return fixture("data/example1.json"); }
std::string fx(const std::string& name) { return fixture("tests/fixtures/" + name); }

std::map<std::string, std::string> copies_of(const Json& matching) {
  std::map<std::string, std::string> out;
  for (const Json& pair : matching["copies"]) {
    if (!pair[1].is_null()) out[pair[0]] = pair[1];
  }
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "pimatch_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(CliValidate, ExampleIsPathIndependent) {
  const CliRun r = cli({"validate", example()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = r.json();
  EXPECT_TRUE(j["path_independent"]);
  ASSERT_EQ(j["firms"].size(), 2u);
  for (const Json& f : j["firms"]) {
    EXPECT_TRUE(f["path_independence"]["passed"]);
    EXPECT_TRUE(f["substitutability"]["passed"]);
    EXPECT_TRUE(f["consistency"]["passed"]);
  }
}

TEST(CliValidate, SubstitutabilityViolationPrintsWitness) {
  const CliRun r = cli({"validate", fx("subst_violation.json")});
  EXPECT_EQ(r.code, kExitAxiomFailure);
  const Json s = r.json()["firms"][0]["substitutability"];
  EXPECT_FALSE(s["passed"]);
  EXPECT_EQ(s["witness"]["sets"][0], Json::array({"a", "b"}));
  EXPECT_EQ(s["witness"]["workers"], Json::array({"a", "b"}));
}

TEST(CliValidate, LadFailureIsInformational) {
  const CliRun r = cli({"validate", fx("lad_violation.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_FALSE(r.json()["firms"][0]["lad"]["passed"]);
}

TEST(CliValidate, InputErrors) {
  EXPECT_EQ(cli({"validate", fx("malformed.json")}).code, kExitInputError);
  EXPECT_EQ(cli({"validate", fx("unknown_label.json")}).code, kExitInputError);
  EXPECT_EQ(cli({"validate", fx("absent.json")}).code, kExitInputError);
  EXPECT_EQ(cli({"validate"}).code, kExitInputError);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(cli({"solve", "--proposing", "nobody", example()}).code, kExitInputError);
  const CliRun r = cli({"validate", fx("malformed.json")});
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
}

TEST(CliValidate, OversizedMarketHitsTheCap) {
  EXPECT_EQ(cli({"validate", fx("oversized.json")}).code, kExitCapExceeded);
}

TEST(CliDecompose, ExplicitIndexingIsKept) {
  const CliRun r = cli({"decompose", example()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["copy_count"], 12);
  for (int firm : {PHI1, PHI2}) {
    const Json& copies = j.at("firms").at(firm).at("copies");
    ASSERT_EQ(copies.size(), 6u);
    const std::vector<std::vector<int>> orders = example_orders(firm);
    for (int c = 0; c < 6; ++c) {
      std::vector<std::string> want;
      for (int w : orders[c]) want.push_back("w" + std::to_string(w + 1));
      EXPECT_EQ(copies.at(c).at("order"), Json(want));
      EXPECT_EQ(copies.at(c).at("copy"), "phi" + std::to_string(firm + 1) + "#" + std::to_string(c + 1));
    }
  }
}

TEST(CliDecompose, LexicographicIndexingWithoutHints) {
  const Json with = cli({"decompose", example()}).json();
  const CliRun r = cli({"decompose", fx("example1_lexicographic.json")});
  ASSERT_EQ(r.code, kExitOk);
  const Json without = r.json();
  for (int firm : {PHI1, PHI2}) {
    std::set<Json> a, b;
    std::vector<std::vector<std::string>> seq;
    for (const Json& c : with["firms"][firm]["copies"]) a.insert(c["order"]);
    for (const Json& c : without["firms"][firm]["copies"]) {
      b.insert(c["order"]);
      seq.push_back(c["order"].get<std::vector<std::string>>());
    }
    EXPECT_EQ(a, b);
    EXPECT_TRUE(std::is_sorted(seq.begin(), seq.end()));
  }
}

TEST(CliDecompose, SingleOrderFirm) {
  const Json j = cli({"decompose", fx("single_order.json")}).json();
  ASSERT_EQ(j["firms"][0]["copies"].size(), 1u);
  EXPECT_EQ(j["firms"][0]["copies"][0]["order"], Json::array({"w2", "w3", "w1"}));
}

TEST(CliSolve, ExampleFirmsProposing) {
  const CliRun r = cli({"solve", example()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["proposing"], "firms");
  const std::map<std::string, std::string> want = {
      {"phi1#1", "w1"}, {"phi1#4", "w2"}, {"phi2#1", "w3"}, {"phi2#4", "w4"}};
  EXPECT_EQ(copies_of(j["matching"]), want);
  EXPECT_EQ(j["many_to_one"]["firms"][0], Json::array({"phi1", {"w1", "w2"}}));
}

TEST(CliSolve, ExampleWorkersProposing) {
  const CliRun r = cli({"solve", "--proposing", "workers", example()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::map<std::string, std::string> want = {
      {"phi1#1", "w3"}, {"phi1#2", "w4"}, {"phi2#1", "w2"}, {"phi2#2", "w1"}};
  EXPECT_EQ(copies_of(r.json()["matching"]), want);
}

TEST(CliSolve, TraceIsJsonLines) {
  const CliRun r = cli({"solve", "--trace", "--proposing", "workers", example()});
  ASSERT_EQ(r.code, kExitOk);
  std::istringstream in(r.out);
  std::vector<Json> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(Json::parse(line));
  ASSERT_GE(lines.size(), 2u);
  EXPECT_EQ(lines[0]["stage"], 1);
  EXPECT_TRUE(lines[0].contains("valid_offers"));
  EXPECT_EQ(lines.back()["stages"], static_cast<int>(lines.size()) - 1);
}

TEST(CliSolve, OneByOne) {
  const CliRun r = cli({"solve", fx("one_by_one.json")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.json()["matching"]["workers"][0], Json::array({"w1", "phi1#1"}));
}

TEST(CliSolve, UnstableOutputIsAVerificationFailure) {
  const std::string path = scratch("reentry.json").string();
  ASSERT_EQ(cli({"gen", "--workers", "5", "--firms", "3", "--jmax", "4", "--density", "1.0",
                 "--seed", "529", "--out", path})
                .code,
            kExitOk);
  EXPECT_EQ(cli({"solve", path}).code, kExitVerificationFailure);
  EXPECT_EQ(cli({"solve", "--reauthorize", path}).code, kExitOk);
}

TEST(CliEnumerate, ExampleCounts) {
  const std::pair<const char*, int> cases[] = {
      {"stable", 4}, {"stable-star", 4}, {"classical", 1}};
  for (const auto& [solution, count] : cases) {
    const CliRun r = cli({"enumerate", "--concept", solution, example()});
    ASSERT_EQ(r.code, kExitOk) << solution;
    EXPECT_EQ(r.json()["count"], count) << solution;
    EXPECT_EQ(r.json()["matchings"].size(), static_cast<std::size_t>(count));
    const CliRun unpruned = cli({"enumerate", "--unpruned", "--concept", solution, example()});
    EXPECT_EQ(unpruned.out, r.out) << solution;
  }
}

TEST(CliEnumerate, TrivialMarkets) {
  for (const char* solution : {"stable", "stable-star", "classical"}) {
    const Json none = cli({"enumerate", "--concept", solution, fx("no_acceptability.json")}).json();
    EXPECT_EQ(none["count"], 1) << solution;
    const Json one = cli({"enumerate", "--concept", solution, fx("one_by_one.json")}).json();
    EXPECT_EQ(one["count"], 1) << solution;
  }
}

TEST(CliVerify, ExamplePasses) {
  const CliRun r = cli({"verify", example()});
  ASSERT_EQ(r.code, kExitOk) << r.out << r.err;
  EXPECT_NE(r.out.find("phi1#1"), std::string::npos);
}

TEST(CliVerify, GeneratedMarketsPass) {
  for (int seed = 0; seed < 10; ++seed) {
    const std::string path = scratch("gen" + std::to_string(seed) + ".json").string();
    ASSERT_EQ(cli({"gen", "--workers", "4", "--firms", "2", "--seed", std::to_string(seed),
                   "--out", path})
                  .code,
              kExitOk);
    EXPECT_EQ(cli({"verify", path}).code, kExitOk) << seed;
  }
}

TEST(CliVerify, OversizedMarketHitsTheCap) {
  EXPECT_EQ(cli({"verify", fx("oversized.json")}).code, kExitCapExceeded);
}

TEST(CliGen, DeterministicAndParseable) {
  const CliRun a = cli({"gen", "--workers", "3", "--firms", "2", "--seed", "11"});
  const CliRun b = cli({"gen", "--workers", "3", "--firms", "2", "--seed", "11"});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  const MarketFile f = parse_market_text(a.out);
  EXPECT_EQ(f.market.worker_count(), 3);
  EXPECT_EQ(f.market.firm_count(), 2);
}

TEST(CliGen, RejectsBadParameters) {
  EXPECT_EQ(cli({"gen", "--density", "0"}).code, kExitInputError);
  EXPECT_EQ(cli({"gen", "--workers", "0"}).code, kExitInputError);
}

TEST(Cli, OutputIsDeterministic) {
  for (const char* cmd : {"validate", "decompose", "solve", "enumerate", "verify"}) {
    EXPECT_EQ(cli({cmd, example()}).out, cli({cmd, example()}).out) << cmd;
  }
}

}  // namespace
}  // namespace pimatch

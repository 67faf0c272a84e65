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

#include "pimatch/cli.h"

#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pimatch/associated_market.h"
#include "pimatch/decomposition.h"
#include "pimatch/deferred_acceptance.h"
#include "pimatch/error.h"
#include "pimatch/generator.h"
#include "pimatch/isomorphism.h"
#include "pimatch/market_io.h"
#include "pimatch/stability.h"

namespace pimatch {
namespace {

struct Associated {
  Decomposition decomposition;
  OneToOneMarket market;
};

Associated associate(const MarketFile& file, const Limits& limits) {
  Decomposition d = decompose_market(file.market, file.copy_indexing, limits);
  OneToOneMarket m = build_associated_market(file.market, d, limits);
  return {std::move(d), std::move(m)};
}

int cmd_validate(const std::string& path, const Limits& limits, std::ostream& out) {
  const MarketFile file = load_market_file(path, limits);
  const ManyToOneMarket& m = file.market;
  bool all_pi = true;
  Json firms = Json::array();
  for (int f = 0; f < m.firm_count(); ++f) {
    const ChoiceFunction& cf = m.choice(f);
    const AxiomReport pi = check_path_independence(cf, limits);
    all_pi = all_pi && pi.passed;
    firms.push_back({{"firm", m.firm_label(f)},
                     {"path_independence", to_json(m.worker_labels(), pi)},
                     {"substitutability",
                      to_json(m.worker_labels(), check_substitutability(cf, limits))},
                     {"consistency", to_json(m.worker_labels(), check_consistency(cf, limits))},
                     {"lad", to_json(m.worker_labels(), check_lad(cf, limits))}});
  }
  Json doc = {{"firms", std::move(firms)}, {"path_independent", all_pi}};
  if (all_pi) {
    // An explicit copy indexing must name exactly the decomposition's orders.
    decompose_market(m, file.copy_indexing, limits);
  }
  out << doc.dump(2) << '\n';
  return all_pi ? kExitOk : kExitAxiomFailure;
}

int cmd_decompose(const std::string& path, const Limits& limits, std::ostream& out) {
  const MarketFile file = load_market_file(path, limits);
  const Decomposition d = decompose_market(file.market, file.copy_indexing, limits);
  out << to_json(file.market, d).dump(2) << '\n';
  return kExitOk;
}

int cmd_solve(const std::string& path, const std::string& proposing, bool trace,
              bool reauthorize, const Limits& limits, std::ostream& out) {
  const MarketFile file = load_market_file(path, limits);
  const Associated a = associate(file, limits);
  const Proposer proposer = proposing == "firms" ? Proposer::kCopies : Proposer::kWorkers;
  DaOptions options;
  options.reauthorize = reauthorize;
  if (trace) {
    options.on_stage = [&](const DaStage& stage) {
      out << to_json(a.market, proposer, stage).dump() << '\n';
    };
  }
  const DaResult result = proposer == Proposer::kCopies
                              ? da_firm_proposing(a.market, options)
                              : da_worker_proposing(a.market, options);
  Json doc = {{"proposing", proposing},
              {"stages", result.trace.stages.size()},
              {"matching", to_json(a.market, result.matching)},
              {"many_to_one", to_json(file.market, map_T(result.matching, a.market))}};
  // With a trace, stdout is a stream of JSON lines ending in the result.
  out << (trace ? doc.dump() : doc.dump(2)) << '\n';
  return kExitOk;
}

int cmd_enumerate(const std::string& path, const std::string& solution, bool unpruned,
                  const Limits& limits, std::ostream& out) {
  const MarketFile file = load_market_file(path, limits);
  const Pruning pruning = unpruned ? Pruning::kOff : Pruning::kOn;
  Json matchings = Json::array();
  if (solution == "stable") {
    for (const MatchingM1& mu : enumerate_stable_m1(file.market, limits, pruning)) {
      matchings.push_back(to_json(file.market, mu));
    }
  } else {
    const Associated a = associate(file, limits);
    const std::vector<Matching11> found =
        solution == "stable-star" ? enumerate_stable_star(a.market, limits, pruning)
                                 : enumerate_stable_classical_11(a.market, limits, pruning);
    for (const Matching11& lambda : found) matchings.push_back(to_json(a.market, lambda));
  }
  Json doc = {{"concept", solution},
              {"count", matchings.size()},
              {"matchings", std::move(matchings)}};
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& path, const Limits& limits, std::ostream& out) {
  const MarketFile file = load_market_file(path, limits);
  const Associated a = associate(file, limits);
  const IsomorphismReport iso = verify_isomorphism(file.market, a.market, limits);
  const RhtReport rht = rural_hospital_check(file.market, a.market, limits);
  Json doc = {{"isomorphism", to_json(file.market, a.market, iso)},
              {"rural_hospitals", to_json(file.market, a.market, rht)},
              {"passed", iso.passed && rht.passed}};
  out << doc.dump(2) << '\n';
  return iso.passed && rht.passed ? kExitOk : kExitVerificationFailure;
}

int cmd_gen(const GenParams& params, const std::string& path, std::ostream& out) {
  const MarketFile file{gen_random_market(params), {}};
  const std::string text = serialize_market(file).dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream f(path);
  if (!(f << text)) throw ValidationError("cannot write '" + path + "'");
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Path-independent many-to-one matching toolkit", "pimatch"};
  app.require_subcommand(1);

  std::string path;
  auto add_path = [&](CLI::App* sub) {
    sub->add_option("market", path, "Market file (JSON)")->required();
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check choice-function axioms");
  add_path(validate_cmd);
  CLI::App* decompose_cmd = app.add_subcommand("decompose", "Print each firm's linear orders");
  add_path(decompose_cmd);

  CLI::App* solve_cmd = app.add_subcommand("solve", "Run deferred acceptance");
  add_path(solve_cmd);
  std::string proposing = "firms";
  bool trace = false;
  bool reauthorize = false;
  solve_cmd->add_option("--proposing", proposing, "Proposing side")
      ->check(CLI::IsMember({"firms", "workers"}));
  solve_cmd->add_flag("--trace", trace, "Emit one JSON line per stage");
  solve_cmd->add_flag("--reauthorize", reauthorize,
                      "Let copies denied authorization propose again later");

  CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "List a solution set");
  add_path(enumerate_cmd);
  std::string solution = "stable";
  bool unpruned = false;
  enumerate_cmd->add_option("--concept", solution, "Solution concept")
      ->check(CLI::IsMember({"stable", "stable-star", "classical"}));
  enumerate_cmd->add_flag("--unpruned", unpruned, "Scan the full candidate space");

  CLI::App* verify_cmd = app.add_subcommand("verify", "Check the isomorphism and rural hospitals");
  add_path(verify_cmd);

  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a random market");
  GenParams params;
  std::string out_path;
  gen_cmd->add_option("--workers", params.workers, "Number of workers");
  gen_cmd->add_option("--firms", params.firms, "Number of firms");
  gen_cmd->add_option("--jmax", params.max_orders, "Most linear orders per firm");
  gen_cmd->add_option("--density", params.density, "Acceptance probability");
  gen_cmd->add_option("--seed", params.seed, "Random seed");
  gen_cmd->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    const Limits limits = Limits::FromEnvironment();
    if (*validate_cmd) return cmd_validate(path, limits, out);
    if (*decompose_cmd) return cmd_decompose(path, limits, out);
    if (*solve_cmd) return cmd_solve(path, proposing, trace, reauthorize, limits, out);
    if (*enumerate_cmd) return cmd_enumerate(path, solution, unpruned, limits, out);
    if (*verify_cmd) return cmd_verify(path, limits, out);
    validate(params);
    return cmd_gen(params, out_path, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const AxiomError& e) {
    err << "axiom failure: " << e.what() << '\n';
    return kExitAxiomFailure;
  } catch (const SizeError& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kExitCapExceeded;
  } catch (const Error& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerificationFailure;
  }
}

}  // namespace pimatch

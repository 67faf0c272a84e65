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

#include "pimatch/deferred_acceptance.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "pimatch/stability.h"

namespace pimatch {
namespace {

// Visiting order for agents within a stage.
class Visitor {
 public:
  explicit Visitor(const std::optional<std::uint64_t>& seed) {
    if (seed.has_value()) rng_.emplace(*seed);
  }

  std::vector<int> order(std::vector<int> agents) {
    if (rng_.has_value()) std::shuffle(agents.begin(), agents.end(), *rng_);
    return agents;
  }

  std::vector<int> all(int count) {
    std::vector<int> agents(static_cast<std::size_t>(count));
    std::iota(agents.begin(), agents.end(), 0);
    return order(std::move(agents));
  }

 private:
  std::optional<std::mt19937_64> rng_;
};

void sort_lists(std::vector<std::vector<int>>& lists) {
  for (auto& l : lists) std::sort(l.begin(), l.end());
}

void finish(const OneToOneMarket& market, const Matching11& matching, const char* side) {
  const StabilityReport report = check_stable_star(market, matching);
  if (!report.stable) {
    throw InternalError(std::string(side) + "-proposing deferred acceptance produced a "
                        "matching that is not stable* (" +
                        std::string(block_case_name(report.block)) + ")");
  }
}

}  // namespace

DaResult da_firm_proposing(const OneToOneMarket& market, const DaOptions& options) {
  const int copies = market.copy_count();
  const int workers = market.worker_count();
  Visitor visitor(options.shuffle_seed);
  DaResult result{Matching11(workers, copies), DaTrace{Proposer::kCopies, {}}};
  Matching11& lambda = result.matching;

  // next[c]: position in c's order of the worker it is targeting.
  std::vector<std::size_t> next(static_cast<std::size_t>(copies), 0);
  std::vector<int> pool = visitor.all(copies);
  std::vector<bool> waiting(static_cast<std::size_t>(copies), false);

  for (int stage = 1;; ++stage) {
    DaStage record;
    record.stage = stage;
    record.offers.assign(static_cast<std::size_t>(workers), {});
    record.rejections.assign(static_cast<std::size_t>(workers), {});
    const Matching11 previous = lambda;
    bool any_offer = false;

    for (int c : pool) {
      const LinearOrder& order = market.order(c);
      if (next[c] >= order.size()) continue;
      const int target = order.at(next[c]);
      bool authorized = true;
      if (stage > 1) {
        for (int sibling : market.copies_of(market.firm_of(c))) {
          const int held = previous.worker_of(sibling);
          if (sibling != c && held != kNone && held != target &&
              order.prefers(held, target)) {
            authorized = false;
            break;
          }
        }
      }
      record.authorizations.push_back({c, target, authorized});
      waiting[c] = !authorized;
      if (authorized) {
        record.offers[target].push_back(c);
        any_offer = true;
      }
    }

    for (int w : visitor.all(workers)) {
      std::vector<int> candidates = record.offers[w];
      const int held = previous.copy_of(w);
      if (held != kNone) candidates.push_back(held);
      if (candidates.empty()) continue;
      const CopyPreference& pref = market.preference(w);
      int best = kNone;
      for (int c : candidates) {
        if (pref.prefers(c, best)) best = c;
      }
      for (int c : candidates) {
        if (c != best) record.rejections[w].push_back(c);
      }
      if (best != kNone && best != held) lambda.match(best, w);
      if (best == kNone && held != kNone) lambda.unmatch_worker(w);
    }

    std::vector<int> rejected;
    for (int w = 0; w < workers; ++w) {
      for (int c : record.rejections[w]) {
        // A copy displaced by a better offer still holds nothing.
        if (lambda.worker_of(c) == w) lambda.unmatch_copy(c);
        ++next[c];
        rejected.push_back(c);
      }
    }

    std::sort(record.authorizations.begin(), record.authorizations.end(),
              [](const Authorization& a, const Authorization& b) { return a.copy < b.copy; });
    sort_lists(record.offers);
    sort_lists(record.rejections);
    record.matching = lambda;
    if (options.on_stage) options.on_stage(record);
    result.trace.stages.push_back(std::move(record));

    std::vector<int> upcoming = rejected;
    if (options.reauthorize) {
      for (int c = 0; c < copies; ++c) {
        if (waiting[c] && lambda.worker_of(c) == kNone &&
            next[c] < market.order(c).size()) {
          upcoming.push_back(c);
        }
      }
    }
    std::sort(upcoming.begin(), upcoming.end());
    upcoming.erase(std::unique(upcoming.begin(), upcoming.end()), upcoming.end());

    const bool stop = rejected.empty() && (!options.reauthorize || !any_offer);
    if (stop) break;
    pool = visitor.order(std::move(upcoming));
  }

  finish(market, lambda, "firm-copies");
  return result;
}

DaResult da_worker_proposing(const OneToOneMarket& market, const DaOptions& options) {
  const int copies = market.copy_count();
  const int workers = market.worker_count();
  Visitor visitor(options.shuffle_seed);
  DaResult result{Matching11(workers, copies), DaTrace{Proposer::kWorkers, {}}};
  Matching11& lambda = result.matching;

  // next[w]: position in w's lifted preference of the copy it is targeting.
  std::vector<std::size_t> next(static_cast<std::size_t>(workers), 0);
  std::vector<int> pool = visitor.all(workers);

  for (int stage = 1;; ++stage) {
    DaStage record;
    record.stage = stage;
    record.offers.assign(static_cast<std::size_t>(copies), {});
    record.valid_offers.assign(static_cast<std::size_t>(copies), {});
    record.rejections.assign(static_cast<std::size_t>(copies), {});
    const Matching11 previous = lambda;

    for (int w : pool) {
      const CopyPreference& pref = market.preference(w);
      if (next[w] < pref.size()) record.offers[pref.at(next[w])].push_back(w);
    }

    for (int c : visitor.all(copies)) {
      const LinearOrder& order = market.order(c);
      for (int w : record.offers[c]) {
        bool valid = true;
        for (int sibling : market.copies_of(market.firm_of(c))) {
          const int held = previous.worker_of(sibling);
          if (held != kNone && order.prefers(held, w)) {
            valid = false;
            break;
          }
        }
        if (valid) record.valid_offers[c].push_back(w);
      }
      std::vector<int> candidates = record.valid_offers[c];
      const int held = previous.worker_of(c);
      if (held != kNone) candidates.push_back(held);
      int best = kNone;
      for (int w : candidates) {
        if (order.prefers(w, best)) best = w;
      }
      for (int w : record.offers[c]) {
        if (w != best) record.rejections[c].push_back(w);
      }
      if (held != kNone && held != best) record.rejections[c].push_back(held);
      if (best != kNone && best != held) lambda.match(c, best);
      if (best == kNone && held != kNone) lambda.unmatch_copy(c);
    }

    std::vector<int> rejected;
    for (int c = 0; c < copies; ++c) {
      for (int w : record.rejections[c]) {
        if (lambda.copy_of(w) == c) lambda.unmatch_worker(w);
        ++next[w];
        rejected.push_back(w);
      }
    }

    sort_lists(record.offers);
    sort_lists(record.valid_offers);
    sort_lists(record.rejections);
    record.matching = lambda;
    if (options.on_stage) options.on_stage(record);
    result.trace.stages.push_back(std::move(record));

    if (rejected.empty()) break;
    std::sort(rejected.begin(), rejected.end());
    pool = visitor.order(std::move(rejected));
  }

  finish(market, lambda, "worker");
  return result;
}

}  // namespace pimatch

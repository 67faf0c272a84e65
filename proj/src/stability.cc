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

#include "pimatch/stability.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

namespace pimatch {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

void require_within_cap(std::uint64_t candidates, const Limits& limits, const char* what) {
  if (candidates > limits.enumeration_cap) {
    throw SizeError(std::string(what) + " candidate space exceeds the enumeration cap of " +
                    std::to_string(limits.enumeration_cap));
  }
}

void require_fits(const ManyToOneMarket& market, const MatchingM1& mu) {
  if (mu.worker_count() != market.worker_count() ||
      mu.firm_count() != market.firm_count()) {
    throw ValidationError("matching does not fit the market");
  }
}

void require_fits(const OneToOneMarket& market, const Matching11& lambda) {
  if (lambda.worker_count() != market.worker_count() ||
      lambda.copy_count() != market.copy_count()) {
    throw ValidationError("matching references copies or workers outside the market");
  }
}

StabilityReport blocked(BlockCase c) {
  StabilityReport r;
  r.stable = false;
  r.block = c;
  return r;
}

// w ranked by P_c above the partner of every sibling copy not holding w.
bool beats_every_sibling(const OneToOneMarket& market, const Matching11& lambda, int c,
                         int w) {
  const LinearOrder& order = market.order(c);
  for (int sibling : market.copies_of(market.firm_of(c))) {
    const int held = lambda.worker_of(sibling);
    if (held == w) continue;
    if (!order.prefers(w, held)) return false;
  }
  return true;
}

StabilityReport individual_blocks(const OneToOneMarket& market, const Matching11& lambda) {
  for (int w = 0; w < market.worker_count(); ++w) {
    const int c = lambda.copy_of(w);
    if (c != kNone && market.preference(w).prefers(kNone, c)) {
      StabilityReport r = blocked(BlockCase::kWorker);
      r.worker = w;
      r.copy = c;
      return r;
    }
  }
  for (int c = 0; c < market.copy_count(); ++c) {
    const int w = lambda.worker_of(c);
    if (w != kNone && market.order(c).prefers(kNone, w)) {
      StabilityReport r = blocked(BlockCase::kFirm);
      r.copy = c;
      r.worker = w;
      r.firm = market.firm_of(c);
      return r;
    }
  }
  return StabilityReport{};
}

// Calls `visit` for every injective assignment of workers to the options
// listed per worker (kNone always allowed and listed by the caller).
void for_each_injective(const std::vector<std::vector<int>>& options, int copy_count,
                        const std::function<void(const std::vector<int>&)>& visit) {
  const int workers = static_cast<int>(options.size());
  std::vector<int> assignment(static_cast<std::size_t>(workers), kNone);
  std::vector<bool> used(static_cast<std::size_t>(copy_count), false);
  std::function<void(int)> place = [&](int w) {
    if (w == workers) {
      visit(assignment);
      return;
    }
    for (int c : options[w]) {
      if (c != kNone) {
        if (used[c]) continue;
        used[c] = true;
      }
      assignment[w] = c;
      place(w + 1);
      if (c != kNone) used[c] = false;
    }
    assignment[w] = kNone;
  };
  place(0);
}

Matching11 from_worker_side(const OneToOneMarket& market, const std::vector<int>& copy_of) {
  Matching11 m(market.worker_count(), market.copy_count());
  for (int w = 0; w < market.worker_count(); ++w) {
    if (copy_of[w] != kNone) m.match(copy_of[w], w);
  }
  return m;
}

std::uint64_t option_space(const std::vector<std::vector<int>>& options) {
  std::uint64_t total = 1;
  for (const auto& o : options) total = saturating_mul(total, o.size());
  return total;
}

}  // namespace

std::string_view block_case_name(BlockCase c) {
  switch (c) {
    case BlockCase::kNone:
      return "none";
    case BlockCase::kWorker:
      return "worker-block";
    case BlockCase::kFirm:
      return "firm-block";
    case BlockCase::kCopyEnvy:
      return "copy-envy";
    case BlockCase::kPair:
      return "pair-block";
  }
  return "unknown";
}

StabilityReport check_stable_m1(const ManyToOneMarket& market, const MatchingM1& mu) {
  require_fits(market, mu);
  for (int w = 0; w < market.worker_count(); ++w) {
    const int firm = mu.firm_of(w);
    if (firm != kNone && market.preference(w).prefers(kNone, firm)) {
      StabilityReport r = blocked(BlockCase::kWorker);
      r.worker = w;
      r.firm = firm;
      return r;
    }
  }
  std::vector<WorkerSet> held;
  for (int firm = 0; firm < market.firm_count(); ++firm) {
    held.push_back(mu.workers_of(firm));
    if (market.choice(firm).choose(held.back()) != held.back()) {
      StabilityReport r = blocked(BlockCase::kFirm);
      r.firm = firm;
      return r;
    }
  }
  for (int w = 0; w < market.worker_count(); ++w) {
    for (int firm = 0; firm < market.firm_count(); ++firm) {
      if (held[firm].contains(w)) continue;
      if (!market.preference(w).prefers(firm, mu.firm_of(w))) continue;
      if (market.choice(firm).choose(held[firm].with(w)).contains(w)) {
        StabilityReport r = blocked(BlockCase::kPair);
        r.worker = w;
        r.firm = firm;
        return r;
      }
    }
  }
  return StabilityReport{};
}

StabilityReport check_stable_star(const OneToOneMarket& market, const Matching11& lambda) {
  require_fits(market, lambda);
  if (StabilityReport r = individual_blocks(market, lambda); !r.stable) return r;
  for (int c = 0; c < market.copy_count(); ++c) {
    const int own = lambda.worker_of(c);
    if (own == kNone) continue;
    for (int sibling : market.copies_of(market.firm_of(c))) {
      if (sibling == c) continue;
      const int other = lambda.worker_of(sibling);
      if (other != kNone && market.order(c).prefers(other, own)) {
        StabilityReport r = blocked(BlockCase::kCopyEnvy);
        r.copy = c;
        r.sibling = sibling;
        r.worker = own;
        r.firm = market.firm_of(c);
        return r;
      }
    }
  }
  for (int c = 0; c < market.copy_count(); ++c) {
    for (int w = 0; w < market.worker_count(); ++w) {
      if (!market.preference(w).prefers(c, lambda.copy_of(w))) continue;
      if (beats_every_sibling(market, lambda, c, w)) {
        StabilityReport r = blocked(BlockCase::kPair);
        r.copy = c;
        r.worker = w;
        r.firm = market.firm_of(c);
        return r;
      }
    }
  }
  return StabilityReport{};
}

StabilityReport check_stable_classical_11(const OneToOneMarket& market,
                                          const Matching11& lambda) {
  require_fits(market, lambda);
  if (StabilityReport r = individual_blocks(market, lambda); !r.stable) return r;
  for (int c = 0; c < market.copy_count(); ++c) {
    for (int w = 0; w < market.worker_count(); ++w) {
      if (lambda.worker_of(c) == w) continue;
      if (market.order(c).prefers(w, lambda.worker_of(c)) &&
          market.preference(w).prefers(c, lambda.copy_of(w))) {
        StabilityReport r = blocked(BlockCase::kPair);
        r.copy = c;
        r.worker = w;
        r.firm = market.firm_of(c);
        return r;
      }
    }
  }
  return StabilityReport{};
}

bool witness_replays(const ManyToOneMarket& market, const MatchingM1& mu,
                     const StabilityReport& report) {
  if (report.stable) return false;
  switch (report.block) {
    case BlockCase::kWorker:
      return mu.firm_of(report.worker) != kNone &&
             !market.preference(report.worker).acceptable(mu.firm_of(report.worker));
    case BlockCase::kFirm: {
      const WorkerSet held = mu.workers_of(report.firm);
      return market.choice(report.firm).choose(held) != held;
    }
    case BlockCase::kPair: {
      const WorkerSet held = mu.workers_of(report.firm);
      const WorkerPreference& pref = market.preference(report.worker);
      const int current = mu.firm_of(report.worker);
      const bool improves =
          pref.acceptable(report.firm) &&
          (current == kNone || !pref.acceptable(current) ||
           pref.rank(report.firm) < pref.rank(current));
      return !held.contains(report.worker) && improves &&
             market.choice(report.firm).choose(held.with(report.worker)).contains(report.worker);
    }
    default:
      return false;
  }
}

namespace {

// Preference read off positions, independent of StrictOrder::prefers.
template <class Order>
bool ranks_above(const Order& order, int a, int b) {
  if (!order.acceptable(a)) return false;
  if (b == kNone || !order.acceptable(b)) return true;
  return order.rank(a) < order.rank(b);
}

bool replay_individual(const OneToOneMarket& market, const Matching11& lambda,
                       const StabilityReport& report) {
  if (report.block == BlockCase::kWorker) {
    const int c = lambda.copy_of(report.worker);
    return c != kNone && !market.preference(report.worker).acceptable(c);
  }
  if (report.block == BlockCase::kFirm) {
    const int w = lambda.worker_of(report.copy);
    return w != kNone && !market.order(report.copy).acceptable(w);
  }
  return false;
}

}  // namespace

bool witness_replays_star(const OneToOneMarket& market, const Matching11& lambda,
                          const StabilityReport& report) {
  if (report.stable) return false;
  switch (report.block) {
    case BlockCase::kWorker:
    case BlockCase::kFirm:
      return replay_individual(market, lambda, report);
    case BlockCase::kCopyEnvy: {
      if (market.firm_of(report.copy) != market.firm_of(report.sibling)) return false;
      const LinearOrder& order = market.order(report.copy);
      const int own = lambda.worker_of(report.copy);
      const int other = lambda.worker_of(report.sibling);
      return own != kNone && other != kNone && order.acceptable(own) &&
             ranks_above(order, other, own);
    }
    case BlockCase::kPair: {
      const int c = report.copy;
      const int w = report.worker;
      if (!ranks_above(market.preference(w), c, lambda.copy_of(w))) return false;
      for (int sibling : market.copies_of(market.firm_of(c))) {
        const int held = lambda.worker_of(sibling);
        if (held != w && !ranks_above(market.order(c), w, held)) return false;
      }
      return true;
    }
    default:
      return false;
  }
}

bool witness_replays_classical(const OneToOneMarket& market, const Matching11& lambda,
                               const StabilityReport& report) {
  if (report.stable) return false;
  switch (report.block) {
    case BlockCase::kWorker:
    case BlockCase::kFirm:
      return replay_individual(market, lambda, report);
    case BlockCase::kPair:
      return lambda.worker_of(report.copy) != report.worker &&
             ranks_above(market.order(report.copy), report.worker,
                         lambda.worker_of(report.copy)) &&
             ranks_above(market.preference(report.worker), report.copy,
                         lambda.copy_of(report.worker));
    default:
      return false;
  }
}

std::vector<MatchingM1> enumerate_stable_m1(const ManyToOneMarket& market,
                                            const Limits& limits, Pruning pruning) {
  std::vector<std::vector<int>> options(static_cast<std::size_t>(market.worker_count()));
  for (int w = 0; w < market.worker_count(); ++w) {
    options[w].push_back(kNone);
    for (int firm = 0; firm < market.firm_count(); ++firm) {
      if (pruning == Pruning::kOff || market.preference(w).acceptable(firm)) {
        options[w].push_back(firm);
      }
    }
  }
  require_within_cap(option_space(options), limits, "many-to-one");

  std::vector<MatchingM1> stable;
  std::vector<int> assignment(options.size(), kNone);
  std::function<void(std::size_t)> place = [&](std::size_t w) {
    if (w == options.size()) {
      MatchingM1 mu(market.firm_count(), assignment);
      if (check_stable_m1(market, mu).stable) stable.push_back(std::move(mu));
      return;
    }
    for (int firm : options[w]) {
      assignment[w] = firm;
      place(w + 1);
    }
  };
  place(0);
  std::sort(stable.begin(), stable.end());
  return stable;
}

std::vector<Matching11> enumerate_stable_star(const OneToOneMarket& market,
                                              const Limits& limits, Pruning pruning) {
  std::vector<Matching11> stable;
  const int workers = market.worker_count();

  if (pruning == Pruning::kOff) {
    std::vector<std::vector<int>> options(static_cast<std::size_t>(workers));
    for (auto& o : options) {
      o.push_back(kNone);
      for (int c = 0; c < market.copy_count(); ++c) o.push_back(c);
    }
    require_within_cap(option_space(options), limits, "stable*");
    for_each_injective(options, market.copy_count(), [&](const std::vector<int>& a) {
      Matching11 lambda = from_worker_side(market, a);
      if (check_stable_star(market, lambda).stable) stable.push_back(std::move(lambda));
    });
    std::sort(stable.begin(), stable.end());
    return stable;
  }

  // Outer level: which firm holds each worker.
  std::vector<std::vector<int>> firm_options(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    firm_options[w].push_back(kNone);
    for (int firm = 0; firm < market.firm_count(); ++firm) {
      const auto copies = market.copies_of(firm);
      if (!copies.empty() && market.preference(w).acceptable(copies.front())) {
        firm_options[w].push_back(firm);
      }
    }
  }
  require_within_cap(option_space(firm_options), limits, "stable*");

  std::uint64_t examined = 0;
  std::vector<int> firm_of(static_cast<std::size_t>(workers), kNone);
  std::function<void(int)> place_firm = [&](int w) {
    if (w < workers) {
      for (int firm : firm_options[w]) {
        firm_of[w] = firm;
        place_firm(w + 1);
      }
      return;
    }
    // Inner level: each held worker may only sit on a copy whose best
    // worker among the firm's held set is that worker.
    std::vector<WorkerSet> held(static_cast<std::size_t>(market.firm_count()));
    for (int v = 0; v < workers; ++v) {
      if (firm_of[v] != kNone) held[firm_of[v]] = held[firm_of[v]].with(v);
    }
    std::vector<std::vector<int>> copy_options(static_cast<std::size_t>(workers));
    for (int v = 0; v < workers; ++v) {
      if (firm_of[v] == kNone) {
        copy_options[v].push_back(kNone);
        continue;
      }
      for (int c : market.copies_of(firm_of[v])) {
        if (market.order(c).best_in(held[firm_of[v]]) == v) copy_options[v].push_back(c);
      }
      if (copy_options[v].empty()) return;
    }
    examined += option_space(copy_options);
    require_within_cap(examined, limits, "stable*");
    for_each_injective(copy_options, market.copy_count(), [&](const std::vector<int>& a) {
      Matching11 lambda = from_worker_side(market, a);
      if (check_stable_star(market, lambda).stable) stable.push_back(std::move(lambda));
    });
  };
  place_firm(0);
  std::sort(stable.begin(), stable.end());
  return stable;
}

std::vector<Matching11> enumerate_stable_classical_11(const OneToOneMarket& market,
                                                      const Limits& limits,
                                                      Pruning pruning) {
  std::vector<std::vector<int>> options(static_cast<std::size_t>(market.worker_count()));
  for (int w = 0; w < market.worker_count(); ++w) {
    options[w].push_back(kNone);
    for (int c = 0; c < market.copy_count(); ++c) {
      if (pruning == Pruning::kOff ||
          (market.preference(w).acceptable(c) && market.order(c).acceptable(w))) {
        options[w].push_back(c);
      }
    }
  }
  require_within_cap(option_space(options), limits, "classical");
  std::vector<Matching11> stable;
  for_each_injective(options, market.copy_count(), [&](const std::vector<int>& a) {
    Matching11 lambda = from_worker_side(market, a);
    if (check_stable_classical_11(market, lambda).stable) stable.push_back(std::move(lambda));
  });
  std::sort(stable.begin(), stable.end());
  return stable;
}

}  // namespace pimatch

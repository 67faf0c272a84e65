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

#include "pimatch/choice.h"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace pimatch {
namespace {

void require_table_size(int worker_count, const Limits& limits) {
  if (worker_count > limits.subset_cap || worker_count >= kMaxWorkersForTables) {
    throw SizeError("worker universe of " + std::to_string(worker_count) +
                    " exceeds the subset-enumeration cap of " +
                    std::to_string(limits.subset_cap));
  }
}

void require_worker_count(int worker_count) {
  if (worker_count < 0 || worker_count > kMaxWorkers) {
    throw ValidationError("worker count must be in [0, 64], got " +
                          std::to_string(worker_count));
  }
}

std::uint64_t subset_count(int worker_count) { return std::uint64_t{1} << worker_count; }

}  // namespace

WorkerSet WorkerSet::Of(std::initializer_list<int> workers) {
  WorkerSet s;
  for (int w : workers) s = s.with(w);
  return s;
}

WorkerSet WorkerSet::Of(const std::vector<int>& workers) {
  WorkerSet s;
  for (int w : workers) s = s.with(w);
  return s;
}

std::vector<int> WorkerSet::members() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest));
  }
  return out;
}

ChoiceFunction::ChoiceFunction(Kind kind, int worker_count)
    : kind_(kind), worker_count_(worker_count), cache_(std::make_shared<Cache>()) {
  require_worker_count(worker_count);
}

ChoiceFunction ChoiceFunction::FromTable(
    int worker_count, const std::vector<std::pair<WorkerSet, WorkerSet>>& entries,
    const Limits& limits) {
  require_worker_count(worker_count);
  require_table_size(worker_count, limits);
  ChoiceFunction cf(Kind::kTable, worker_count);
  const WorkerSet universe = cf.universe();
  std::vector<WorkerSet> table(subset_count(worker_count));
  std::vector<bool> seen(table.size(), false);
  for (const auto& [subset, chosen] : entries) {
    if (!subset.is_subset_of(universe)) {
      throw ValidationError("table entry references a worker outside the universe");
    }
    if (!chosen.is_subset_of(subset)) {
      throw ValidationError("table entry chooses workers outside its subset");
    }
    if (seen[subset.bits()]) {
      throw ValidationError("table lists the same subset twice");
    }
    seen[subset.bits()] = true;
    table[subset.bits()] = chosen;
  }
  std::call_once(cf.cache_->built, [&] { cf.cache_->table = std::move(table); });
  return cf;
}

ChoiceFunction ChoiceFunction::FromRanking(int worker_count, SubsetRanking ranking) {
  ChoiceFunction cf(Kind::kRanking, worker_count);
  const WorkerSet universe = cf.universe();
  std::vector<WorkerSet> sorted = ranking.entries;
  for (WorkerSet entry : sorted) {
    if (entry.empty()) {
      throw ValidationError("subset ranking lists the empty set; it is implicit");
    }
    if (!entry.is_subset_of(universe)) {
      throw ValidationError("subset ranking references a worker outside the universe");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("subset ranking lists the same subset twice");
  }
  cf.ranking_ = std::move(ranking);
  return cf;
}

ChoiceFunction ChoiceFunction::FromOrders(int worker_count, std::vector<LinearOrder> orders) {
  ChoiceFunction cf(Kind::kOrders, worker_count);
  for (const LinearOrder& order : orders) {
    if (order.universe_size() != worker_count) {
      throw ValidationError("linear order built over a different worker universe");
    }
  }
  cf.orders_ = std::move(orders);
  return cf;
}

WorkerSet ChoiceFunction::choose(WorkerSet s) const {
  if (!s.is_subset_of(universe())) {
    throw ValidationError("choice queried on workers outside the universe");
  }
  return choose_unchecked(s);
}

WorkerSet ChoiceFunction::choose_unchecked(WorkerSet s) const {
  switch (kind_) {
    case Kind::kTable:
      return cache_->table[s.bits()];
    case Kind::kRanking:
      for (WorkerSet entry : ranking_.entries) {
        if (entry.is_subset_of(s)) return entry;
      }
      return WorkerSet();
    case Kind::kOrders: {
      WorkerSet chosen;
      for (const LinearOrder& order : orders_) {
        const int best = order.best_in(s);
        if (best != kNone) chosen = chosen.with(best);
      }
      return chosen;
    }
  }
  return WorkerSet();
}

const std::vector<WorkerSet>& ChoiceFunction::table(const Limits& limits) const {
  if (kind_ != Kind::kTable) require_table_size(worker_count_, limits);
  std::call_once(cache_->built, [&] {
    std::vector<WorkerSet> table(subset_count(worker_count_));
    for (std::uint64_t bits = 0; bits < table.size(); ++bits) {
      table[bits] = choose_unchecked(WorkerSet(bits));
    }
    cache_->table = std::move(table);
  });
  return cache_->table;
}

bool operator==(const ChoiceFunction& a, const ChoiceFunction& b) {
  if (a.kind_ != b.kind_ || a.worker_count_ != b.worker_count_) return false;
  switch (a.kind_) {
    case ChoiceFunction::Kind::kTable:
      return a.cache_->table == b.cache_->table;
    case ChoiceFunction::Kind::kRanking:
      return a.ranking_ == b.ranking_;
    case ChoiceFunction::Kind::kOrders:
      return a.orders_ == b.orders_;
  }
  return false;
}

ChoiceFunction canonicalize(const ChoiceFunction& cf, const Limits& limits) {
  const std::vector<WorkerSet>& table = cf.table(limits);
  std::vector<std::pair<WorkerSet, WorkerSet>> entries;
  for (std::uint64_t bits = 0; bits < table.size(); ++bits) {
    if (!table[bits].empty()) entries.emplace_back(WorkerSet(bits), table[bits]);
  }
  return ChoiceFunction::FromTable(cf.worker_count(), entries, limits);
}

bool same_choices(const ChoiceFunction& a, const ChoiceFunction& b, const Limits& limits) {
  return a.worker_count() == b.worker_count() && a.table(limits) == b.table(limits);
}

std::string_view axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::kSubstitutability:
      return "substitutability";
    case Axiom::kConsistency:
      return "consistency";
    case Axiom::kPathIndependence:
      return "path_independence";
    case Axiom::kAggregateDemand:
      return "law_of_aggregate_demand";
    case Axiom::kDecomposition:
      return "decomposition";
  }
  return "unknown";
}

AxiomReport check_substitutability(const ChoiceFunction& cf, const Limits& limits) {
  const std::vector<WorkerSet>& c = cf.table(limits);
  AxiomReport report;
  report.axiom = Axiom::kSubstitutability;
  for (std::uint64_t bits = 0; bits < c.size(); ++bits) {
    const WorkerSet menu(bits);
    for (int w : c[bits].members()) {
      for (int removed : menu.without(w).members()) {
        if (!c[menu.without(removed).bits()].contains(w)) {
          report.passed = false;
          report.sets = {menu};
          report.workers = {w, removed};
          return report;
        }
      }
    }
  }
  return report;
}

AxiomReport check_consistency(const ChoiceFunction& cf, const Limits& limits) {
  const std::vector<WorkerSet>& c = cf.table(limits);
  AxiomReport report;
  report.axiom = Axiom::kConsistency;
  for (std::uint64_t bits = 0; bits < c.size(); ++bits) {
    const WorkerSet chosen = c[bits];
    const std::uint64_t free = bits & ~chosen.bits();
    // Submasks of `free` in increasing order.
    std::uint64_t extra = 0;
    do {
      const WorkerSet middle(chosen.bits() | extra);
      if (c[middle.bits()] != chosen) {
        report.passed = false;
        report.sets = {WorkerSet(bits), middle};
        return report;
      }
      extra = (extra - free) & free;
    } while (extra != 0);
  }
  return report;
}

AxiomReport check_path_independence(const ChoiceFunction& cf, const Limits& limits) {
  const std::vector<WorkerSet>& c = cf.table(limits);
  AxiomReport report;
  report.axiom = Axiom::kPathIndependence;
  const std::uint64_t n = c.size();
  for (std::uint64_t first = 0; first < n; ++first) {
    const std::uint64_t chosen = c[first].bits();
    for (std::uint64_t second = 0; second < n; ++second) {
      if (c[first | second] != c[chosen | second]) {
        report.passed = false;
        report.sets = {WorkerSet(first), WorkerSet(second)};
        return report;
      }
    }
  }
  return report;
}

AxiomReport check_lad(const ChoiceFunction& cf, const Limits& limits) {
  // Monotonicity along single-worker removals implies it for every nested pair.
  const std::vector<WorkerSet>& c = cf.table(limits);
  AxiomReport report;
  report.axiom = Axiom::kAggregateDemand;
  for (std::uint64_t bits = 0; bits < c.size(); ++bits) {
    const WorkerSet menu(bits);
    for (int removed : menu.members()) {
      const WorkerSet smaller = menu.without(removed);
      if (c[smaller.bits()].size() > c[bits].size()) {
        report.passed = false;
        report.sets = {menu, smaller};
        return report;
      }
    }
  }
  return report;
}

bool witness_violates(const ChoiceFunction& cf, const AxiomReport& report) {
  if (report.passed) return false;
  const auto& s = report.sets;
  switch (report.axiom) {
    case Axiom::kSubstitutability: {
      if (s.size() != 1 || report.workers.size() != 2) return false;
      const int w = report.workers[0];
      const int removed = report.workers[1];
      return w != removed && s[0].contains(removed) && cf.choose(s[0]).contains(w) &&
             !cf.choose(s[0].without(removed)).contains(w);
    }
    case Axiom::kConsistency: {
      if (s.size() != 2) return false;
      const WorkerSet chosen = cf.choose(s[0]);
      return chosen.is_subset_of(s[1]) && s[1].is_subset_of(s[0]) &&
             cf.choose(s[1]) != chosen;
    }
    case Axiom::kPathIndependence:
      if (s.size() != 2) return false;
      return cf.choose(s[0] | s[1]) != cf.choose(cf.choose(s[0]) | s[1]);
    case Axiom::kAggregateDemand:
      if (s.size() != 2) return false;
      return s[1].is_subset_of(s[0]) && cf.choose(s[1]).size() > cf.choose(s[0]).size();
    case Axiom::kDecomposition:
      return false;
  }
  return false;
}

ManyToOneMarket::ManyToOneMarket(std::vector<std::string> workers,
                                 std::vector<std::string> firms,
                                 std::vector<ChoiceFunction> choices,
                                 std::vector<WorkerPreference> preferences)
    : workers_(std::move(workers)),
      firms_(std::move(firms)),
      choices_(std::move(choices)),
      preferences_(std::move(preferences)) {
  auto require_unique = [](const std::vector<std::string>& labels, const char* kind) {
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
      throw ValidationError(std::string("duplicate ") + kind + " label '" + *dup + "'");
    }
  };
  require_unique(workers_, "worker");
  require_unique(firms_, "firm");
  if (worker_count() > kMaxWorkers) {
    throw ValidationError("at most 64 workers are supported");
  }
  if (choices_.size() != firms_.size()) {
    throw ValidationError("one choice function per firm is required");
  }
  if (preferences_.size() != workers_.size()) {
    throw ValidationError("one preference list per worker is required");
  }
  for (const ChoiceFunction& cf : choices_) {
    if (cf.worker_count() != worker_count()) {
      throw ValidationError("choice function built over a different worker universe");
    }
  }
  for (const WorkerPreference& pref : preferences_) {
    if (pref.universe_size() != firm_count()) {
      throw ValidationError("worker preference built over a different firm set");
    }
  }
}

int ManyToOneMarket::worker_index(std::string_view label) const {
  const auto it = std::find(workers_.begin(), workers_.end(), label);
  if (it == workers_.end()) {
    throw ValidationError("unknown worker '" + std::string(label) + "'");
  }
  return static_cast<int>(it - workers_.begin());
}

int ManyToOneMarket::firm_index(std::string_view label) const {
  const auto it = std::find(firms_.begin(), firms_.end(), label);
  if (it == firms_.end()) {
    throw ValidationError("unknown firm '" + std::string(label) + "'");
  }
  return static_cast<int>(it - firms_.begin());
}

}  // namespace pimatch

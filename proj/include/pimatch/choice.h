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

#ifndef PIMATCH_CHOICE_H_
#define PIMATCH_CHOICE_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pimatch/error.h"

namespace pimatch {

// Sentinel for "no partner" / "no choice" wherever an agent index is expected.
inline constexpr int kNone = -1;

// Hard limit of the bit-set representation; the enumeration caps in Limits
// are far below it.
inline constexpr int kMaxWorkers = 64;

// A subset of workers, as a fixed-width bit set over dense worker indices.
class WorkerSet {
 public:
  constexpr WorkerSet() = default;
  constexpr explicit WorkerSet(std::uint64_t bits) : bits_(bits) {}

  static WorkerSet Of(std::initializer_list<int> workers);
  static WorkerSet Of(const std::vector<int>& workers);
  static constexpr WorkerSet Universe(int worker_count) {
    return WorkerSet(worker_count >= 64 ? ~std::uint64_t{0}
                                        : (std::uint64_t{1} << worker_count) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int w) const { return (bits_ >> w) & 1u; }
  constexpr bool is_subset_of(WorkerSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr WorkerSet with(int w) const {
    return WorkerSet(bits_ | (std::uint64_t{1} << w));
  }
  constexpr WorkerSet without(int w) const {
    return WorkerSet(bits_ & ~(std::uint64_t{1} << w));
  }
  // Members in increasing index order.
  std::vector<int> members() const;

  constexpr WorkerSet operator|(WorkerSet o) const { return WorkerSet(bits_ | o.bits_); }
  constexpr WorkerSet operator&(WorkerSet o) const { return WorkerSet(bits_ & o.bits_); }
  // Set difference.
  constexpr WorkerSet operator-(WorkerSet o) const { return WorkerSet(bits_ & ~o.bits_); }
  constexpr auto operator<=>(const WorkerSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

struct WorkerTag {};
struct FirmTag {};
struct CopyTag {};

// A strict ranking of the acceptable items of one kind, best first. Items
// absent from the ranking are unacceptable, i.e. strictly below kNone.
template <class Tag>
class StrictOrder {
 public:
  StrictOrder() = default;
  // Throws ValidationError on duplicates or out-of-range items.
  StrictOrder(int universe_size, std::vector<int> sequence)
      : universe_size_(universe_size),
        sequence_(std::move(sequence)),
        rank_(static_cast<std::size_t>(universe_size), kNone) {
    for (std::size_t pos = 0; pos < sequence_.size(); ++pos) {
      const int item = sequence_[pos];
      if (item < 0 || item >= universe_size_) {
        throw ValidationError("ranking references unknown index " +
                              std::to_string(item));
      }
      if (rank_[item] != kNone) {
        throw ValidationError("ranking lists index " + std::to_string(item) +
                              " twice");
      }
      rank_[item] = static_cast<int>(pos);
    }
  }

  int universe_size() const { return universe_size_; }
  const std::vector<int>& sequence() const { return sequence_; }
  std::size_t size() const { return sequence_.size(); }
  bool empty() const { return sequence_.empty(); }
  int at(std::size_t pos) const { return sequence_[pos]; }

  bool acceptable(int item) const {
    return item >= 0 && item < universe_size_ && rank_[item] != kNone;
  }
  // Position in the ranking, kNone when unacceptable.
  int rank(int item) const { return acceptable(item) ? rank_[item] : kNone; }

  // Strict preference; either side may be kNone (the outside option).
  bool prefers(int a, int b) const { return key(a) < key(b); }

  // Best acceptable member of `s`, kNone when there is none. Only meaningful
  // for rankings over workers.
  int best_in(WorkerSet s) const {
    for (int item : sequence_) {
      if (s.contains(item)) return item;
    }
    return kNone;
  }

  friend bool operator==(const StrictOrder& a, const StrictOrder& b) {
    return a.universe_size_ == b.universe_size_ && a.sequence_ == b.sequence_;
  }
  friend auto operator<=>(const StrictOrder& a, const StrictOrder& b) {
    return a.sequence_ <=> b.sequence_;
  }

 private:
  std::size_t key(int item) const {
    if (item == kNone) return sequence_.size();
    const int r = rank(item);
    return r == kNone ? sequence_.size() + 1 : static_cast<std::size_t>(r);
  }

  int universe_size_ = 0;
  std::vector<int> sequence_;
  std::vector<int> rank_;
};

// One firm-copy's ranking over workers.
using LinearOrder = StrictOrder<WorkerTag>;
// A worker's ranking over firms.
using WorkerPreference = StrictOrder<FirmTag>;
// A worker's lifted ranking over firm-copies.
using CopyPreference = StrictOrder<CopyTag>;

// Acceptable subsets, most preferred first. The empty set is implicitly last
// and may not be listed.
struct SubsetRanking {
  std::vector<WorkerSet> entries;
  friend bool operator==(const SubsetRanking&, const SubsetRanking&) = default;
};

// A firm's choice function over subsets of a fixed worker universe, in one of
// three representations. Values are immutable; the explicit table is built on
// first use and shared between copies.
class ChoiceFunction {
 public:
  enum class Kind { kTable, kRanking, kOrders };

  // Sparse table: subsets not listed choose the empty set. Throws
  // ValidationError when an entry chooses outside its subset, a subset is
  // listed twice, or the empty set chooses something; SizeError when the
  // universe exceeds limits.subset_cap.
  static ChoiceFunction FromTable(
      int worker_count, const std::vector<std::pair<WorkerSet, WorkerSet>>& entries,
      const Limits& limits = {});
  static ChoiceFunction FromRanking(int worker_count, SubsetRanking ranking);
  static ChoiceFunction FromOrders(int worker_count, std::vector<LinearOrder> orders);

  Kind kind() const { return kind_; }
  int worker_count() const { return worker_count_; }
  WorkerSet universe() const { return WorkerSet::Universe(worker_count_); }

  // Throws ValidationError when `s` is not inside the universe.
  WorkerSet choose(WorkerSet s) const;

  // Explicit table indexed by subset bits. Throws SizeError above the cap.
  const std::vector<WorkerSet>& table(const Limits& limits = {}) const;

  // Representation payloads; empty for the other kinds.
  const SubsetRanking& ranking() const { return ranking_; }
  const std::vector<LinearOrder>& orders() const { return orders_; }

  // Representation equality: same kind and payload. Use same_choices() to
  // compare behaviour across representations.
  friend bool operator==(const ChoiceFunction& a, const ChoiceFunction& b);

 private:
  struct Cache {
    std::once_flag built;
    std::vector<WorkerSet> table;
  };

  ChoiceFunction(Kind kind, int worker_count);
  WorkerSet choose_unchecked(WorkerSet s) const;

  Kind kind_ = Kind::kTable;
  int worker_count_ = 0;
  SubsetRanking ranking_;
  std::vector<LinearOrder> orders_;
  std::shared_ptr<Cache> cache_;
};

// Table representation agreeing with `cf` on every subset.
ChoiceFunction canonicalize(const ChoiceFunction& cf, const Limits& limits = {});

// True when the two functions agree on every subset.
bool same_choices(const ChoiceFunction& a, const ChoiceFunction& b,
                  const Limits& limits = {});

enum class Axiom {
  kSubstitutability,
  kConsistency,
  kPathIndependence,
  kAggregateDemand,
  kDecomposition,
};

std::string_view axiom_name(Axiom axiom);

// Result of an exhaustive axiom check. On failure the witness fields hold:
//   substitutability:   sets = {W},              workers = {w, w'}
//   consistency:        sets = {W, W'}           (C(W) ⊆ W' ⊆ W)
//   path independence:  sets = {W, W'}
//   aggregate demand:   sets = {W, W''}          (W'' ⊂ W, |C(W'')| > |C(W)|)
//   decomposition:      sets = {S, C(S), union of order maxima over S}
struct AxiomReport {
  Axiom axiom = Axiom::kPathIndependence;
  bool passed = true;
  std::vector<WorkerSet> sets;
  std::vector<int> workers;
};

// Scan order for all checks: subsets W by increasing bit value, then the
// secondary subset / worker pair by increasing value.
AxiomReport check_substitutability(const ChoiceFunction& cf, const Limits& limits = {});
AxiomReport check_consistency(const ChoiceFunction& cf, const Limits& limits = {});
AxiomReport check_path_independence(const ChoiceFunction& cf, const Limits& limits = {});
AxiomReport check_lad(const ChoiceFunction& cf, const Limits& limits = {});

// Re-evaluates a failure witness of one of the four choice axioms through
// `cf.choose`; true when it really violates the axiom.
bool witness_violates(const ChoiceFunction& cf, const AxiomReport& report);

// 𝓜 = (firms, workers, choice functions, worker preferences).
class ManyToOneMarket {
 public:
  ManyToOneMarket() = default;
  // Throws ValidationError on duplicate labels or inconsistent sizes.
  ManyToOneMarket(std::vector<std::string> workers, std::vector<std::string> firms,
                  std::vector<ChoiceFunction> choices,
                  std::vector<WorkerPreference> preferences);

  int worker_count() const { return static_cast<int>(workers_.size()); }
  int firm_count() const { return static_cast<int>(firms_.size()); }
  const std::vector<std::string>& worker_labels() const { return workers_; }
  const std::vector<std::string>& firm_labels() const { return firms_; }
  const std::string& worker_label(int w) const { return workers_.at(w); }
  const std::string& firm_label(int f) const { return firms_.at(f); }
  const ChoiceFunction& choice(int firm) const { return choices_.at(firm); }
  const WorkerPreference& preference(int worker) const { return preferences_.at(worker); }

  // Throw ValidationError for unknown labels.
  int worker_index(std::string_view label) const;
  int firm_index(std::string_view label) const;

  friend bool operator==(const ManyToOneMarket&, const ManyToOneMarket&) = default;

 private:
  std::vector<std::string> workers_;
  std::vector<std::string> firms_;
  std::vector<ChoiceFunction> choices_;
  std::vector<WorkerPreference> preferences_;
};

}  // namespace pimatch

#endif  // PIMATCH_CHOICE_H_

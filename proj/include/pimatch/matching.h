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

#ifndef PIMATCH_MATCHING_H_
#define PIMATCH_MATCHING_H_

#include <compare>
#include <vector>

#include "pimatch/choice.h"

namespace pimatch {

// Many-to-one matching μ, stored worker-side; the firm-side view is derived.
// Ordering compares the worker-side assignment (kNone sorts first).
class MatchingM1 {
 public:
  MatchingM1() = default;
  // Everyone unmatched.
  MatchingM1(int worker_count, int firm_count);
  // Throws ValidationError when a firm index is out of range.
  MatchingM1(int firm_count, std::vector<int> firm_of_worker);
  // Throws ValidationError when the sets overlap or leave the universe.
  static MatchingM1 FromFirmSets(int worker_count, const std::vector<WorkerSet>& held);

  int worker_count() const { return static_cast<int>(firm_of_worker_.size()); }
  int firm_count() const { return firm_count_; }
  int firm_of(int w) const { return firm_of_worker_.at(w); }
  WorkerSet workers_of(int firm) const;
  const std::vector<int>& assignment() const { return firm_of_worker_; }

  friend bool operator==(const MatchingM1&, const MatchingM1&) = default;
  friend auto operator<=>(const MatchingM1& a, const MatchingM1& b) {
    return a.firm_of_worker_ <=> b.firm_of_worker_;
  }

 private:
  int firm_count_ = 0;
  std::vector<int> firm_of_worker_;
};

// One-to-one matching λ between workers and firm-copies, stored on both
// sides so the involution λ(f) = w ⇔ λ(w) = f is checked on every update.
class Matching11 {
 public:
  Matching11() = default;
  // Everyone unmatched.
  Matching11(int worker_count, int copy_count);
  // Throws ValidationError when two copies hold the same worker.
  static Matching11 FromCopyAssignment(int worker_count, std::vector<int> worker_of_copy);

  int worker_count() const { return static_cast<int>(copy_of_worker_.size()); }
  int copy_count() const { return static_cast<int>(worker_of_copy_.size()); }
  int copy_of(int w) const { return copy_of_worker_.at(w); }
  int worker_of(int c) const { return worker_of_copy_.at(c); }
  const std::vector<int>& worker_side() const { return copy_of_worker_; }
  const std::vector<int>& copy_side() const { return worker_of_copy_; }
  int matched_pairs() const;

  // Breaks any existing partnerships of `c` and `w` first.
  void match(int c, int w);
  void unmatch_copy(int c);
  void unmatch_worker(int w);

  friend bool operator==(const Matching11&, const Matching11&) = default;
  friend auto operator<=>(const Matching11& a, const Matching11& b) {
    return a.copy_of_worker_ <=> b.copy_of_worker_;
  }

 private:
  std::vector<int> copy_of_worker_;
  std::vector<int> worker_of_copy_;
};

}  // namespace pimatch

#endif  // PIMATCH_MATCHING_H_

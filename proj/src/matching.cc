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

#include "pimatch/matching.h"

#include <string>

namespace pimatch {

MatchingM1::MatchingM1(int worker_count, int firm_count)
    : firm_count_(firm_count),
      firm_of_worker_(static_cast<std::size_t>(worker_count), kNone) {}

MatchingM1::MatchingM1(int firm_count, std::vector<int> firm_of_worker)
    : firm_count_(firm_count), firm_of_worker_(std::move(firm_of_worker)) {
  for (int firm : firm_of_worker_) {
    if (firm != kNone && (firm < 0 || firm >= firm_count_)) {
      throw ValidationError("matching references unknown firm " + std::to_string(firm));
    }
  }
}

MatchingM1 MatchingM1::FromFirmSets(int worker_count, const std::vector<WorkerSet>& held) {
  const WorkerSet universe = WorkerSet::Universe(worker_count);
  std::vector<int> firm_of(static_cast<std::size_t>(worker_count), kNone);
  for (std::size_t firm = 0; firm < held.size(); ++firm) {
    if (!held[firm].is_subset_of(universe)) {
      throw ValidationError("matching references a worker outside the universe");
    }
    for (int w : held[firm].members()) {
      if (firm_of[w] != kNone) {
        throw ValidationError("worker " + std::to_string(w) + " matched to two firms");
      }
      firm_of[w] = static_cast<int>(firm);
    }
  }
  return MatchingM1(static_cast<int>(held.size()), std::move(firm_of));
}

WorkerSet MatchingM1::workers_of(int firm) const {
  WorkerSet held;
  for (int w = 0; w < worker_count(); ++w) {
    if (firm_of_worker_[w] == firm) held = held.with(w);
  }
  return held;
}

Matching11::Matching11(int worker_count, int copy_count)
    : copy_of_worker_(static_cast<std::size_t>(worker_count), kNone),
      worker_of_copy_(static_cast<std::size_t>(copy_count), kNone) {}

Matching11 Matching11::FromCopyAssignment(int worker_count, std::vector<int> worker_of_copy) {
  Matching11 m(worker_count, static_cast<int>(worker_of_copy.size()));
  for (std::size_t c = 0; c < worker_of_copy.size(); ++c) {
    const int w = worker_of_copy[c];
    if (w == kNone) continue;
    if (w < 0 || w >= worker_count) {
      throw ValidationError("matching references unknown worker " + std::to_string(w));
    }
    if (m.copy_of_worker_[w] != kNone) {
      throw ValidationError("worker " + std::to_string(w) + " held by two copies");
    }
    m.copy_of_worker_[w] = static_cast<int>(c);
  }
  m.worker_of_copy_ = std::move(worker_of_copy);
  return m;
}

int Matching11::matched_pairs() const {
  int pairs = 0;
  for (int c : copy_of_worker_) pairs += c != kNone;
  return pairs;
}

void Matching11::match(int c, int w) {
  unmatch_copy(c);
  unmatch_worker(w);
  worker_of_copy_.at(c) = w;
  copy_of_worker_.at(w) = c;
}

void Matching11::unmatch_copy(int c) {
  const int w = worker_of_copy_.at(c);
  if (w != kNone) copy_of_worker_[w] = kNone;
  worker_of_copy_[c] = kNone;
}

void Matching11::unmatch_worker(int w) {
  const int c = copy_of_worker_.at(w);
  if (c != kNone) worker_of_copy_[c] = kNone;
  copy_of_worker_[w] = kNone;
}

}  // namespace pimatch

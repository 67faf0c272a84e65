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

#ifndef PIMATCH_DEFERRED_ACCEPTANCE_H_
#define PIMATCH_DEFERRED_ACCEPTANCE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pimatch/associated_market.h"
#include "pimatch/matching.h"

namespace pimatch {

enum class Proposer { kCopies, kWorkers };

// A firm-copy's permission to make its next offer at a stage.
struct Authorization {
  int copy = kNone;
  int worker = kNone;  // the worker it would offer to
  bool authorized = true;
};

// One stage of a run. Receiver-indexed vectors are indexed by worker when
// copies propose and by copy when workers propose; each list is sorted.
struct DaStage {
  int stage = 0;
  std::vector<std::vector<int>> offers;        // O^k
  std::vector<std::vector<int>> valid_offers;  // Õ^k, workers proposing only
  std::vector<Authorization> authorizations;   // copies proposing only
  std::vector<std::vector<int>> rejections;    // R^k
  Matching11 matching;                         // λ^k
};

struct DaTrace {
  Proposer proposer = Proposer::kCopies;
  std::vector<DaStage> stages;
};

struct DaResult {
  Matching11 matching;
  DaTrace trace;
};

struct DaOptions {
  // Copies denied authorization rejoin the proposal pool at later stages
  // while unmatched and not exhausted. Off: they drop out for good.
  bool reauthorize = false;
  // Visit agents within a stage in a seeded random order instead of by
  // index. Outcomes must not depend on it.
  std::optional<std::uint64_t> shuffle_seed;
  // Called after each stage completes.
  std::function<void(const DaStage&)> on_stage;
};

// Deferred acceptance with firm-copies proposing. At stage 1 every copy
// offers to its best acceptable worker. Afterwards each rejected copy targets
// its best worker that has not yet rejected it, but may only offer when no
// sibling copy holds a different worker it ranks higher. Each worker keeps
// its favourite among new offers and its held copy. Stops once a stage
// rejects nobody. Throws InternalError if the result is not stable*.
DaResult da_firm_proposing(const OneToOneMarket& market, const DaOptions& options = {});

// Deferred acceptance with workers proposing. A copy discards as invalid any
// offer from a worker ranked below a worker held by some copy of the same
// firm, then keeps its favourite among the valid offers and its held worker.
// Invalid offers count as rejections. Throws InternalError if the result is
// not stable*.
DaResult da_worker_proposing(const OneToOneMarket& market, const DaOptions& options = {});

}  // namespace pimatch

#endif  // PIMATCH_DEFERRED_ACCEPTANCE_H_

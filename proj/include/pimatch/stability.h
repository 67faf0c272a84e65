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

#ifndef PIMATCH_STABILITY_H_
#define PIMATCH_STABILITY_H_

#include <string_view>
#include <vector>

#include "pimatch/associated_market.h"
#include "pimatch/choice.h"
#include "pimatch/matching.h"

namespace pimatch {

enum class BlockCase {
  kNone,
  kWorker,    // a worker prefers being unmatched
  kFirm,      // a firm (many-to-one) or a copy (one-to-one) rejects its partner(s)
  kCopyEnvy,  // a copy prefers the partner of a sibling copy
  kPair,      // a blocking pair
};

std::string_view block_case_name(BlockCase c);

// Verdict plus the first witness found. Fields not used by the case stay
// kNone. For kCopyEnvy, `copy` envies `sibling`.
struct StabilityReport {
  bool stable = true;
  BlockCase block = BlockCase::kNone;
  int worker = kNone;
  int firm = kNone;
  int copy = kNone;
  int sibling = kNone;
};

// Scan order: workers by index, then firms by index, then pairs (w, φ)
// lexicographically by worker then firm. Throws ValidationError when μ does
// not fit the market.
StabilityReport check_stable_m1(const ManyToOneMarket& market, const MatchingM1& mu);

// Stability* of the associated market. A matching fails when
//   (i)   a worker holds a copy it finds unacceptable;
//   (ii)  a copy holds a worker it finds unacceptable;
//   (iii) a matched copy ranks a sibling's partner above its own;
//   (iv)  some (f_ij, w) has f_ij preferred by w to λ(w), and w ranked by
//         P_ij above the partner of every copy of φ_i that is not holding w.
// Case (iv) skips the copy already holding w: a worker held by a sibling
// blocks with a lower-index copy on whose order it beats everyone else the
// firm holds. Scan order: (i) workers, (ii) copies, (iii) copy then sibling,
// (iv) copy then worker, all by index.
StabilityReport check_stable_star(const OneToOneMarket& market, const Matching11& lambda);

// Textbook one-to-one stability: individual rationality plus no pair
// (f, w) with w ≠ λ(f), w P_f λ(f) and f P̄_w λ(w). Same scan order.
StabilityReport check_stable_classical_11(const OneToOneMarket& market,
                                          const Matching11& lambda);

// Re-evaluates a failure witness directly against the definitions.
bool witness_replays(const ManyToOneMarket& market, const MatchingM1& mu,
                     const StabilityReport& report);
bool witness_replays_star(const OneToOneMarket& market, const Matching11& lambda,
                          const StabilityReport& report);
bool witness_replays_classical(const OneToOneMarket& market, const Matching11& lambda,
                               const StabilityReport& report);

enum class Pruning { kOn, kOff };

// Brute-force solution sets, sorted canonically. Every enumerator throws
// SizeError when its candidate space exceeds limits.enumeration_cap.
//
// Many-to-one: every worker → firm-or-∅ assignment; pruning restricts each
// worker to firms it finds acceptable.
std::vector<MatchingM1> enumerate_stable_m1(const ManyToOneMarket& market,
                                            const Limits& limits = {},
                                            Pruning pruning = Pruning::kOn);

// Stable*: unpruned scans every injective worker → copy-or-∅ assignment.
// Pruned first fixes which firm holds each worker (acceptable firms only),
// then places each held worker w of firm φ only on copies whose best worker
// among everything φ holds is w; cases (ii) and (iii) reject any other
// placement.
std::vector<Matching11> enumerate_stable_star(const OneToOneMarket& market,
                                              const Limits& limits = {},
                                              Pruning pruning = Pruning::kOn);

// Classical: pruning keeps only mutually acceptable worker-copy pairs.
std::vector<Matching11> enumerate_stable_classical_11(const OneToOneMarket& market,
                                                      const Limits& limits = {},
                                                      Pruning pruning = Pruning::kOn);

}  // namespace pimatch

#endif  // PIMATCH_STABILITY_H_

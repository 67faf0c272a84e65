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

#ifndef PIMATCH_ASSOCIATED_MARKET_H_
#define PIMATCH_ASSOCIATED_MARKET_H_

#include <span>
#include <string>
#include <vector>

#include "pimatch/choice.h"
#include "pimatch/decomposition.h"

namespace pimatch {

// Copy j (1-based) of firm `firm`.
struct CopyId {
  int firm = kNone;
  int j = 0;
  auto operator<=>(const CopyId&) const = default;
};

// The one-to-one market M of firm-copies and workers. Copies are indexed
// densely, firm-major: all copies of firm 0 in increasing j, then firm 1, ...
class OneToOneMarket {
 public:
  OneToOneMarket() = default;

  // `lifted[w]` ranks copy indices. Every firm must appear as one contiguous
  // block holding all of its copies in increasing j, or not at all.
  // Throws ValidationError otherwise.
  OneToOneMarket(std::vector<std::string> worker_labels,
                 std::vector<std::string> firm_labels, Decomposition decomposition,
                 std::vector<CopyPreference> lifted);

  int worker_count() const { return static_cast<int>(worker_labels_.size()); }
  int firm_count() const { return static_cast<int>(firm_labels_.size()); }
  int copy_count() const { return static_cast<int>(copies_.size()); }

  const CopyId& copy(int c) const { return copies_.at(c); }
  int firm_of(int c) const { return copies_.at(c).firm; }
  int copy_index(int firm, int j) const { return first_copy_.at(firm) + j - 1; }
  // Indices of the copies of `firm`, in increasing j.
  std::span<const int> copies_of(int firm) const { return copies_by_firm_.at(firm); }
  const LinearOrder& order(int c) const {
    const CopyId& id = copies_.at(c);
    return decomposition_.orders[id.firm][id.j - 1];
  }
  const CopyPreference& preference(int w) const { return lifted_.at(w); }

  const Decomposition& decomposition() const { return decomposition_; }
  const std::string& worker_label(int w) const { return worker_labels_.at(w); }
  const std::string& firm_label(int f) const { return firm_labels_.at(f); }
  // "<firm>#<j>".
  std::string copy_label(int c) const;

 private:
  std::vector<std::string> worker_labels_;
  std::vector<std::string> firm_labels_;
  Decomposition decomposition_;
  std::vector<CopyPreference> lifted_;
  std::vector<CopyId> copies_;
  std::vector<int> first_copy_;
  std::vector<std::vector<int>> copies_by_firm_;
};

// Lifts each worker's ranking over firms to the copies: firms in preference
// order, each expanded into its copies in increasing j; copies of
// unacceptable firms are omitted. Throws ConsistencyError when `d` does not
// reproduce a firm's choice function.
OneToOneMarket build_associated_market(const ManyToOneMarket& market,
                                       const Decomposition& d,
                                       const Limits& limits = {});

// Checks both lifting conditions against the source market: firm order is
// respected and copies of one firm appear in increasing j.
bool satisfies_lifting_conditions(const ManyToOneMarket& market,
                                  const OneToOneMarket& associated);

}  // namespace pimatch

#endif  // PIMATCH_ASSOCIATED_MARKET_H_

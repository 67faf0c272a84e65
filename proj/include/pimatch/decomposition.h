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

#ifndef PIMATCH_DECOMPOSITION_H_
#define PIMATCH_DECOMPOSITION_H_

#include <optional>
#include <string>
#include <vector>

#include "pimatch/choice.h"

namespace pimatch {

// Aizerman-Malishevski decomposition of every firm of a market. Entry
// orders[i][j - 1] is the ranking of copy j of firm i.
struct Decomposition {
  std::vector<std::vector<LinearOrder>> orders;

  int firm_count() const { return static_cast<int>(orders.size()); }
  int copy_count() const;
};

// Decomposes a path-independent choice function into linear orders by
// enumerating every maximal selection sequence from the full worker set:
// each step picks some w in C(remaining) and removes it; a sequence stops
// when C(remaining) is empty, leaving the rest unacceptable. Distinct orders
// come back sorted lexicographically by worker index.
//
// Throws AxiomError when `cf` is not path independent, SizeError when the
// universe exceeds limits.subset_cap or more than limits.order_cap orders
// arise, and InternalError if the result fails to recompose to `cf`.
std::vector<LinearOrder> decompose(const ChoiceFunction& cf, const Limits& limits = {});

// As above, but copies are indexed as in `indexing`, which must hold exactly
// the decomposition's orders (ValidationError otherwise).
std::vector<LinearOrder> decompose(const ChoiceFunction& cf,
                                   const std::vector<LinearOrder>& indexing,
                                   const Limits& limits = {});

// C(S) = union over orders of the best acceptable worker in S. Duplicate
// orders are accepted; each one adds a message to `warnings` when given.
ChoiceFunction recompose(int worker_count, std::vector<LinearOrder> orders,
                         std::vector<std::string>* warnings = nullptr);

// Passes iff recompose(orders) agrees with `cf` on every subset. The witness
// is the first disagreeing subset by increasing bit value.
AxiomReport verify_decomposition(const ChoiceFunction& cf,
                                 const std::vector<LinearOrder>& orders,
                                 const Limits& limits = {});

// Decomposes every firm of `market`. `indexing`, when non-empty, carries an
// optional explicit copy order per firm.
Decomposition decompose_market(
    const ManyToOneMarket& market,
    const std::vector<std::optional<std::vector<LinearOrder>>>& indexing = {},
    const Limits& limits = {});

}  // namespace pimatch

#endif  // PIMATCH_DECOMPOSITION_H_

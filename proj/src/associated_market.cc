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

#include "pimatch/associated_market.h"

#include <string>
#include <utility>

namespace pimatch {

OneToOneMarket::OneToOneMarket(std::vector<std::string> worker_labels,
                               std::vector<std::string> firm_labels,
                               Decomposition decomposition,
                               std::vector<CopyPreference> lifted)
    : worker_labels_(std::move(worker_labels)),
      firm_labels_(std::move(firm_labels)),
      decomposition_(std::move(decomposition)),
      lifted_(std::move(lifted)) {
  if (decomposition_.firm_count() != firm_count()) {
    throw ValidationError("decomposition must have one entry per firm");
  }
  if (static_cast<int>(lifted_.size()) != worker_count()) {
    throw ValidationError("one lifted preference per worker is required");
  }
  copies_by_firm_.resize(static_cast<std::size_t>(firm_count()));
  for (int firm = 0; firm < firm_count(); ++firm) {
    first_copy_.push_back(copy_count());
    const auto& orders = decomposition_.orders[firm];
    for (std::size_t j = 0; j < orders.size(); ++j) {
      if (orders[j].universe_size() != worker_count()) {
        throw ValidationError("copy order built over a different worker universe");
      }
      copies_by_firm_[firm].push_back(copy_count());
      copies_.push_back(CopyId{firm, static_cast<int>(j) + 1});
    }
  }
  for (int w = 0; w < worker_count(); ++w) {
    const CopyPreference& pref = lifted_[w];
    if (pref.universe_size() != copy_count()) {
      throw ValidationError("lifted preference built over a different copy set");
    }
    // Each firm: one contiguous block, complete, in increasing j.
    std::vector<bool> firm_seen(static_cast<std::size_t>(firm_count()), false);
    std::size_t pos = 0;
    while (pos < pref.size()) {
      const CopyId first = copies_[pref.at(pos)];
      if (firm_seen[first.firm]) {
        throw ValidationError("lifted preference of worker '" + worker_labels_[w] +
                              "' splits the copies of firm '" +
                              firm_labels_[first.firm] + "'");
      }
      firm_seen[first.firm] = true;
      const auto& block = copies_by_firm_[first.firm];
      for (int expected : block) {
        if (pos >= pref.size() || pref.at(pos) != expected) {
          throw ValidationError("lifted preference of worker '" + worker_labels_[w] +
                                "' must list all copies of firm '" +
                                firm_labels_[first.firm] + "' in increasing index");
        }
        ++pos;
      }
    }
  }
}

std::string OneToOneMarket::copy_label(int c) const {
  const CopyId& id = copies_.at(c);
  return firm_labels_.at(id.firm) + "#" + std::to_string(id.j);
}

OneToOneMarket build_associated_market(const ManyToOneMarket& market,
                                       const Decomposition& d, const Limits& limits) {
  if (d.firm_count() != market.firm_count()) {
    throw ConsistencyError("decomposition does not cover every firm");
  }
  for (int firm = 0; firm < market.firm_count(); ++firm) {
    if (!verify_decomposition(market.choice(firm), d.orders[firm], limits).passed) {
      throw ConsistencyError("decomposition of firm '" + market.firm_label(firm) +
                             "' does not reproduce its choice function");
    }
  }
  std::vector<int> first_copy;
  int total = 0;
  for (const auto& orders : d.orders) {
    first_copy.push_back(total);
    total += static_cast<int>(orders.size());
  }
  std::vector<CopyPreference> lifted;
  lifted.reserve(static_cast<std::size_t>(market.worker_count()));
  for (int w = 0; w < market.worker_count(); ++w) {
    std::vector<int> sequence;
    for (int firm : market.preference(w).sequence()) {
      for (std::size_t j = 0; j < d.orders[firm].size(); ++j) {
        sequence.push_back(first_copy[firm] + static_cast<int>(j));
      }
    }
    lifted.emplace_back(total, std::move(sequence));
  }
  OneToOneMarket associated(market.worker_labels(), market.firm_labels(), d,
                            std::move(lifted));
  if (!satisfies_lifting_conditions(market, associated)) {
    throw InternalError("lifted preferences violate the association conditions");
  }
  return associated;
}

bool satisfies_lifting_conditions(const ManyToOneMarket& market,
                                  const OneToOneMarket& associated) {
  if (market.worker_count() != associated.worker_count() ||
      market.firm_count() != associated.firm_count()) {
    return false;
  }
  for (int w = 0; w < market.worker_count(); ++w) {
    const WorkerPreference& firms = market.preference(w);
    const CopyPreference& copies = associated.preference(w);
    for (int a : copies.sequence()) {
      if (!firms.acceptable(associated.firm_of(a))) return false;
    }
    for (int a = 0; a < associated.copy_count(); ++a) {
      for (int b = 0; b < associated.copy_count(); ++b) {
        const CopyId& ca = associated.copy(a);
        const CopyId& cb = associated.copy(b);
        // Acceptable firms contribute every copy.
        if (firms.acceptable(ca.firm) && !copies.acceptable(a)) return false;
        if (ca.firm != cb.firm && firms.prefers(ca.firm, cb.firm) &&
            !copies.prefers(a, b)) {
          return false;
        }
        if (ca.firm == cb.firm && copies.acceptable(a) &&
            copies.prefers(a, b) != (ca.j < cb.j)) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace pimatch

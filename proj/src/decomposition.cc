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

#include "pimatch/decomposition.h"

#include <algorithm>
#include <string>

namespace pimatch {
namespace {

class SequenceEnumerator {
 public:
  SequenceEnumerator(const std::vector<WorkerSet>& table, int worker_count,
                     std::size_t cap)
      : table_(table), worker_count_(worker_count), cap_(cap) {}

  std::vector<std::vector<int>> run() {
    extend(WorkerSet::Universe(worker_count_));
    return std::move(found_);
  }

 private:
  void extend(WorkerSet remaining) {
    const WorkerSet chosen = table_[remaining.bits()];
    if (chosen.empty()) {
      if (found_.size() == cap_) {
        throw SizeError("decomposition produces more than " + std::to_string(cap_) +
                        " orders");
      }
      found_.push_back(prefix_);
      return;
    }
    for (int w : chosen.members()) {
      prefix_.push_back(w);
      extend(remaining.without(w));
      prefix_.pop_back();
    }
  }

  const std::vector<WorkerSet>& table_;
  int worker_count_;
  std::size_t cap_;
  std::vector<int> prefix_;
  std::vector<std::vector<int>> found_;
};

}  // namespace

int Decomposition::copy_count() const {
  int total = 0;
  for (const auto& firm : orders) total += static_cast<int>(firm.size());
  return total;
}

std::vector<LinearOrder> decompose(const ChoiceFunction& cf, const Limits& limits) {
  const AxiomReport pi = check_path_independence(cf, limits);
  if (!pi.passed) {
    throw AxiomError("choice function is not path independent");
  }
  std::vector<std::vector<int>> sequences =
      SequenceEnumerator(cf.table(limits), cf.worker_count(), limits.order_cap).run();
  std::sort(sequences.begin(), sequences.end());
  sequences.erase(std::unique(sequences.begin(), sequences.end()), sequences.end());

  std::vector<LinearOrder> orders;
  orders.reserve(sequences.size());
  for (std::vector<int>& seq : sequences) {
    orders.emplace_back(cf.worker_count(), std::move(seq));
  }
  if (!verify_decomposition(cf, orders, limits).passed) {
    throw InternalError("decomposition does not recompose to its choice function");
  }
  return orders;
}

std::vector<LinearOrder> decompose(const ChoiceFunction& cf,
                                   const std::vector<LinearOrder>& indexing,
                                   const Limits& limits) {
  std::vector<LinearOrder> canonical = decompose(cf, limits);
  std::vector<LinearOrder> supplied = indexing;
  std::sort(supplied.begin(), supplied.end());
  if (supplied != canonical) {
    throw ValidationError(
        "explicit copy indexing must list exactly the decomposition's orders");
  }
  return indexing;
}

ChoiceFunction recompose(int worker_count, std::vector<LinearOrder> orders,
                         std::vector<std::string>* warnings) {
  if (worker_count < 1) {
    throw ValidationError("recomposition needs a non-empty worker universe");
  }
  if (warnings != nullptr) {
    for (std::size_t i = 0; i < orders.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (orders[i] == orders[j]) {
          warnings->push_back("order " + std::to_string(i + 1) + " duplicates order " +
                              std::to_string(j + 1));
          break;
        }
      }
    }
  }
  return ChoiceFunction::FromOrders(worker_count, std::move(orders));
}

AxiomReport verify_decomposition(const ChoiceFunction& cf,
                                 const std::vector<LinearOrder>& orders,
                                 const Limits& limits) {
  AxiomReport report;
  report.axiom = Axiom::kDecomposition;
  const std::vector<WorkerSet>& expected = cf.table(limits);
  const ChoiceFunction union_of_orders = ChoiceFunction::FromOrders(cf.worker_count(), orders);
  for (std::uint64_t bits = 0; bits < expected.size(); ++bits) {
    const WorkerSet got = union_of_orders.choose(WorkerSet(bits));
    if (got != expected[bits]) {
      report.passed = false;
      report.sets = {WorkerSet(bits), expected[bits], got};
      return report;
    }
  }
  return report;
}

Decomposition decompose_market(
    const ManyToOneMarket& market,
    const std::vector<std::optional<std::vector<LinearOrder>>>& indexing,
    const Limits& limits) {
  if (!indexing.empty() && static_cast<int>(indexing.size()) != market.firm_count()) {
    throw ValidationError("copy indexing must have one slot per firm");
  }
  Decomposition d;
  d.orders.reserve(static_cast<std::size_t>(market.firm_count()));
  for (int firm = 0; firm < market.firm_count(); ++firm) {
    const bool explicit_order =
        !indexing.empty() && indexing[static_cast<std::size_t>(firm)].has_value();
    d.orders.push_back(explicit_order
                           ? decompose(market.choice(firm), *indexing[firm], limits)
                           : decompose(market.choice(firm), limits));
  }
  return d;
}

}  // namespace pimatch

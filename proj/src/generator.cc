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

#include "pimatch/generator.h"

#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace pimatch {
namespace {

class PortableStream {
 public:
  explicit PortableStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x <= limit) return x % n;
    }
  }

  bool coin(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

  void shuffle(std::vector<int>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

void validate(const GenParams& params) {
  if (params.workers < 1 || params.workers > kMaxWorkers) {
    throw ValidationError("worker count must be in [1, 64]");
  }
  if (params.firms < 1) throw ValidationError("firm count must be at least 1");
  if (params.max_orders < 1) throw ValidationError("orders per firm must be at least 1");
  if (!(params.density > 0.0 && params.density <= 1.0)) {
    throw ValidationError("density must lie in (0, 1]");
  }
}

ManyToOneMarket gen_random_market(const GenParams& params) {
  validate(params);
  PortableStream stream(params.seed);
  const int k = params.workers;

  std::vector<ChoiceFunction> choices;
  for (int firm = 0; firm < params.firms; ++firm) {
    const auto count = 1 + stream.below(static_cast<std::uint64_t>(params.max_orders));
    std::vector<LinearOrder> orders;
    for (std::uint64_t j = 0; j < count; ++j) {
      std::vector<int> kept;
      for (int w = 0; w < k; ++w) {
        if (stream.coin(params.density)) kept.push_back(w);
      }
      if (kept.empty()) kept.push_back(static_cast<int>(stream.below(k)));
      stream.shuffle(kept);
      orders.emplace_back(k, std::move(kept));
    }
    choices.push_back(ChoiceFunction::FromOrders(k, std::move(orders)));
  }

  std::vector<WorkerPreference> preferences;
  for (int w = 0; w < k; ++w) {
    std::vector<int> kept;
    for (int firm = 0; firm < params.firms; ++firm) {
      if (stream.coin(params.density)) kept.push_back(firm);
    }
    stream.shuffle(kept);
    preferences.emplace_back(params.firms, std::move(kept));
  }

  std::vector<std::string> worker_labels;
  for (int w = 0; w < k; ++w) worker_labels.push_back("w" + std::to_string(w + 1));
  std::vector<std::string> firm_labels;
  for (int f = 0; f < params.firms; ++f) firm_labels.push_back("phi" + std::to_string(f + 1));
  return ManyToOneMarket(std::move(worker_labels), std::move(firm_labels), std::move(choices),
                         std::move(preferences));
}

}  // namespace pimatch

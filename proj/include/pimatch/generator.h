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

#ifndef PIMATCH_GENERATOR_H_
#define PIMATCH_GENERATOR_H_

#include <cstdint>

#include "pimatch/choice.h"

namespace pimatch {

struct GenParams {
  int workers = 4;
  int firms = 2;
  int max_orders = 4;    // each firm draws 1..max_orders linear orders
  double density = 1.0;  // acceptance probability, in (0, 1]
  std::uint64_t seed = 0;
};

// Throws ValidationError for out-of-range parameters.
void validate(const GenParams& params);

// Seeded random market whose firms carry union-of-orders choice functions,
// hence path independent. Labels are w1..wk and phi1..phin.
//
// The stream is portable: std::mt19937_64 seeded with `seed`, consumed as
//   * below(n): draw x until x < 2^64 - (2^64 mod n), return x mod n;
//   * coin(p):  (x >> 11) * 2^-53 < p;
//   * shuffle:  Fisher-Yates from the back, swapping i with below(i + 1).
// Firms come first, in index order: J = 1 + below(max_orders), then per
// order one coin(density) per worker in index order (an empty draw is
// replaced by the single worker below(k)), then a shuffle of the kept
// workers. Workers follow, in index order: one coin(density) per firm, then
// a shuffle of the kept firms.
ManyToOneMarket gen_random_market(const GenParams& params);

}  // namespace pimatch

#endif  // PIMATCH_GENERATOR_H_

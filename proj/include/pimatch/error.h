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

#ifndef PIMATCH_ERROR_H_
#define PIMATCH_ERROR_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pimatch {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: unknown ids, duplicate entries, non-involutive matchings.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A configured resource cap (subset enumeration, order count, matching
// enumeration) would be exceeded.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A choice function lacks an axiom an operation requires (path independence).
class AxiomError : public Error {
 public:
  using Error::Error;
};

// A decomposition does not reproduce the market's choice functions.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// A post-condition the library guarantees was violated. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Subset tables are dense vectors of 2^k entries; this bounds k.
inline constexpr int kMaxWorkersForTables = 31;

// Resource caps shared by the exhaustive operations.
struct Limits {
  // Largest worker universe for which 2^k subsets may be enumerated.
  int subset_cap = 16;
  // Largest number of linear orders a single decomposition may produce.
  std::size_t order_cap = 5040;
  // Largest candidate space a matching enumerator may scan.
  std::uint64_t enumeration_cap = 10'000'000;

  // Defaults overridden by PIMATCH_SUBSET_CAP, PIMATCH_ORDER_CAP and
  // PIMATCH_ENUMERATION_CAP when set. Throws ValidationError on garbage.
  static Limits FromEnvironment();
};

}  // namespace pimatch

#endif  // PIMATCH_ERROR_H_

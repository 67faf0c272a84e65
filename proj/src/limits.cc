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

#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>

#include "pimatch/error.h"

namespace pimatch {
namespace {

template <class T>
void override_from(const char* name, T& value) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  const std::string_view text(raw);
  T parsed{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), parsed);
  if (ec != std::errc() || end != text.data() + text.size() || parsed <= 0) {
    throw ValidationError(std::string(name) + " must be a positive integer, got '" +
                          std::string(text) + "'");
  }
  value = parsed;
}

}  // namespace

Limits Limits::FromEnvironment() {
  Limits limits;
  override_from("PIMATCH_SUBSET_CAP", limits.subset_cap);
  override_from("PIMATCH_ORDER_CAP", limits.order_cap);
  override_from("PIMATCH_ENUMERATION_CAP", limits.enumeration_cap);
  if (limits.subset_cap >= kMaxWorkersForTables) {
    throw ValidationError("PIMATCH_SUBSET_CAP must be below " +
                          std::to_string(kMaxWorkersForTables));
  }
  return limits;
}

}  // namespace pimatch

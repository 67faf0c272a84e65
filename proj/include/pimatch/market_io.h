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

#ifndef PIMATCH_MARKET_IO_H_
#define PIMATCH_MARKET_IO_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pimatch/associated_market.h"
#include "pimatch/choice.h"
#include "pimatch/deferred_acceptance.h"
#include "pimatch/isomorphism.h"
#include "pimatch/matching.h"
#include "pimatch/stability.h"

namespace pimatch {

using Json = nlohmann::json;

// A market as read from disk, with the optional explicit copy indexing
// (one slot per firm; empty when the file has none).
struct MarketFile {
  ManyToOneMarket market;
  std::vector<std::optional<std::vector<LinearOrder>>> copy_indexing;

  friend bool operator==(const MarketFile&, const MarketFile&) = default;
};

// Market file layout (see schema/market.schema.json):
//   {
//     "workers": ["w1", ...],
//     "firms": [{"id": "phi1",
//                "choice": {"kind": "subset_ranking" | "orders" | "table",
//                           "payload": ...}}, ...],
//     "worker_prefs": {"w1": ["phi2", "phi1"], ...},
//     "copy_indexing": {"phi2": [["w3", "w4", "w2", "w1"], ...]}   // optional
//   }
// Payloads: subset_ranking and orders are lists of worker-label lists;
// table is a list of {"set": [...], "choice": [...]} with unlisted subsets
// choosing nothing. Every worker needs a worker_prefs entry.
//
// All parse functions throw ValidationError on malformed input.
MarketFile parse_market(const Json& doc, const Limits& limits = {});
MarketFile parse_market_text(std::string_view text, const Limits& limits = {});
MarketFile load_market_file(const std::string& path, const Limits& limits = {});

Json serialize_market(const MarketFile& file);

// Output documents. Matchings are written as association lists in index
// order, one per side.
Json to_json(const ManyToOneMarket& market, const MatchingM1& mu);
Json to_json(const OneToOneMarket& market, const Matching11& lambda);
Json to_json(const std::vector<std::string>& worker_labels, const AxiomReport& report);
Json to_json(const ManyToOneMarket& market, const StabilityReport& report);
Json to_json(const OneToOneMarket& market, const StabilityReport& report);
Json to_json(const ManyToOneMarket& market, const Decomposition& d);
// One trace line; serialized with dump() it is the stage's JSON-lines record.
Json to_json(const OneToOneMarket& market, Proposer proposer, const DaStage& stage);
Json to_json(const ManyToOneMarket& market, const OneToOneMarket& associated,
             const IsomorphismReport& report);
Json to_json(const ManyToOneMarket& market, const OneToOneMarket& associated,
             const RhtReport& report);

}  // namespace pimatch

#endif  // PIMATCH_MARKET_IO_H_

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

#include "pimatch/market_io.h"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace pimatch {
namespace {

class LabelIndex {
 public:
  LabelIndex(const std::vector<std::string>& labels, const char* kind) : kind_(kind) {
    for (std::size_t i = 0; i < labels.size(); ++i) index_[labels[i]] = static_cast<int>(i);
  }

  int at(const Json& label) const {
    if (!label.is_string()) {
      throw ValidationError(std::string(kind_) + " labels must be strings");
    }
    const auto it = index_.find(label.get<std::string>());
    if (it == index_.end()) {
      throw ValidationError("unknown " + std::string(kind_) + " '" +
                            label.get<std::string>() + "'");
    }
    return it->second;
  }

 private:
  const char* kind_;
  std::map<std::string, int> index_;
};

const Json& field(const Json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw ValidationError(where + " must be an object");
  const auto it = obj.find(name);
  if (it == obj.end()) {
    throw ValidationError(where + " is missing '" + name + "'");
  }
  return *it;
}

const Json& array_field(const Json& obj, const char* name, const std::string& where) {
  const Json& value = field(obj, name, where);
  if (!value.is_array()) throw ValidationError(where + "." + name + " must be an array");
  return value;
}

std::vector<std::string> parse_labels(const Json& list, const std::string& where) {
  if (!list.is_array()) throw ValidationError(where + " must be an array");
  std::vector<std::string> labels;
  for (const Json& item : list) {
    if (!item.is_string() || item.get<std::string>().empty()) {
      throw ValidationError(where + " entries must be non-empty strings");
    }
    labels.push_back(item.get<std::string>());
  }
  return labels;
}

std::vector<int> parse_indices(const Json& list, const LabelIndex& index,
                               const std::string& where) {
  if (!list.is_array()) throw ValidationError(where + " must be an array of labels");
  std::vector<int> out;
  for (const Json& item : list) out.push_back(index.at(item));
  return out;
}

WorkerSet parse_set(const Json& list, const LabelIndex& workers, const std::string& where) {
  const std::vector<int> members = parse_indices(list, workers, where);
  const WorkerSet set = WorkerSet::Of(members);
  if (set.size() != static_cast<int>(members.size())) {
    throw ValidationError(where + " lists a worker twice");
  }
  return set;
}

std::vector<LinearOrder> parse_orders(const Json& list, int worker_count,
                                      const LabelIndex& workers, const std::string& where) {
  if (!list.is_array()) throw ValidationError(where + " must be an array of orders");
  std::vector<LinearOrder> orders;
  for (const Json& order : list) {
    orders.emplace_back(worker_count, parse_indices(order, workers, where));
  }
  return orders;
}

ChoiceFunction parse_choice(const Json& choice, int worker_count, const LabelIndex& workers,
                            const std::string& where, const Limits& limits) {
  const Json& kind = field(choice, "kind", where);
  const Json& payload = field(choice, "payload", where);
  if (!kind.is_string()) throw ValidationError(where + ".kind must be a string");
  if (!payload.is_array()) throw ValidationError(where + ".payload must be an array");
  const std::string k = kind.get<std::string>();
  if (k == "subset_ranking") {
    SubsetRanking ranking;
    for (const Json& entry : payload) {
      ranking.entries.push_back(parse_set(entry, workers, where + ".payload"));
    }
    return ChoiceFunction::FromRanking(worker_count, std::move(ranking));
  }
  if (k == "orders") {
    return ChoiceFunction::FromOrders(worker_count,
                                      parse_orders(payload, worker_count, workers, where));
  }
  if (k == "table") {
    std::vector<std::pair<WorkerSet, WorkerSet>> entries;
    for (const Json& entry : payload) {
      entries.emplace_back(parse_set(field(entry, "set", where), workers, where + ".set"),
                           parse_set(field(entry, "choice", where), workers, where + ".choice"));
    }
    return ChoiceFunction::FromTable(worker_count, entries, limits);
  }
  throw ValidationError(where + ".kind must be subset_ranking, orders or table, got '" + k +
                        "'");
}

Json labels_of(const std::vector<int>& indices, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (int i : indices) out.push_back(labels.at(i));
  return out;
}

Json labels_of(WorkerSet set, const std::vector<std::string>& labels) {
  return labels_of(set.members(), labels);
}

Json label_or_null(int index, const std::function<std::string(int)>& label) {
  return index == kNone ? Json(nullptr) : Json(label(index));
}

std::vector<std::string> copy_labels(const OneToOneMarket& market) {
  std::vector<std::string> out;
  for (int c = 0; c < market.copy_count(); ++c) out.push_back(market.copy_label(c));
  return out;
}

std::vector<std::string> worker_labels(const OneToOneMarket& market) {
  std::vector<std::string> out;
  for (int w = 0; w < market.worker_count(); ++w) out.push_back(market.worker_label(w));
  return out;
}

Json receiver_lists(const std::vector<std::vector<int>>& lists,
                    const std::vector<std::string>& receiver_labels,
                    const std::vector<std::string>& sender_labels) {
  Json out = Json::array();
  for (std::size_t r = 0; r < lists.size(); ++r) {
    if (lists[r].empty()) continue;
    out.push_back(Json::array({receiver_labels[r], labels_of(lists[r], sender_labels)}));
  }
  return out;
}

}  // namespace

MarketFile parse_market(const Json& doc, const Limits& limits) {
  if (!doc.is_object()) throw ValidationError("market file must be a JSON object");
  std::vector<std::string> workers = parse_labels(field(doc, "workers", "market"), "workers");
  const Json& firms_json = array_field(doc, "firms", "market");
  const int k = static_cast<int>(workers.size());
  if (k > kMaxWorkers) throw ValidationError("at most 64 workers are supported");
  const LabelIndex worker_index(workers, "worker");

  std::vector<std::string> firms;
  for (const Json& firm : firms_json) {
    const Json& id = field(firm, "id", "firm");
    if (!id.is_string() || id.get<std::string>().empty()) {
      throw ValidationError("firm ids must be non-empty strings");
    }
    firms.push_back(id.get<std::string>());
  }
  const LabelIndex firm_index(firms, "firm");

  std::vector<ChoiceFunction> choices;
  for (std::size_t i = 0; i < firms.size(); ++i) {
    const std::string where = "firm '" + firms[i] + "'.choice";
    choices.push_back(parse_choice(field(firms_json[i], "choice", where), k, worker_index,
                                   where, limits));
  }

  const Json& prefs_json = field(doc, "worker_prefs", "market");
  if (!prefs_json.is_object()) throw ValidationError("worker_prefs must be an object");
  for (const auto& [label, _] : prefs_json.items()) worker_index.at(Json(label));
  std::vector<WorkerPreference> prefs;
  for (const std::string& w : workers) {
    const auto it = prefs_json.find(w);
    if (it == prefs_json.end()) {
      throw ValidationError("worker_prefs has no entry for worker '" + w + "'");
    }
    prefs.emplace_back(static_cast<int>(firms.size()),
                       parse_indices(*it, firm_index, "worker_prefs." + w));
  }

  MarketFile file{ManyToOneMarket(std::move(workers), firms, std::move(choices),
                                  std::move(prefs)),
                  {}};
  if (const auto it = doc.find("copy_indexing"); it != doc.end()) {
    if (!it->is_object()) throw ValidationError("copy_indexing must be an object");
    file.copy_indexing.resize(firms.size());
    for (const auto& [label, orders] : it->items()) {
      const int firm = firm_index.at(Json(label));
      file.copy_indexing[firm] =
          parse_orders(orders, k, worker_index, "copy_indexing." + label);
    }
  }
  return file;
}

MarketFile parse_market_text(std::string_view text, const Limits& limits) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return parse_market(doc, limits);
}

MarketFile load_market_file(const std::string& path, const Limits& limits) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_market_text(buffer.str(), limits);
}

Json serialize_market(const MarketFile& file) {
  const ManyToOneMarket& m = file.market;
  const auto& workers = m.worker_labels();
  Json doc;
  doc["workers"] = workers;
  doc["firms"] = Json::array();
  for (int f = 0; f < m.firm_count(); ++f) {
    const ChoiceFunction& cf = m.choice(f);
    Json choice;
    Json payload = Json::array();
    switch (cf.kind()) {
      case ChoiceFunction::Kind::kRanking:
        choice["kind"] = "subset_ranking";
        for (WorkerSet entry : cf.ranking().entries) payload.push_back(labels_of(entry, workers));
        break;
      case ChoiceFunction::Kind::kOrders:
        choice["kind"] = "orders";
        for (const LinearOrder& o : cf.orders()) payload.push_back(labels_of(o.sequence(), workers));
        break;
      case ChoiceFunction::Kind::kTable: {
        choice["kind"] = "table";
        const std::vector<WorkerSet>& table = cf.table();
        for (std::uint64_t bits = 1; bits < table.size(); ++bits) {
          if (table[bits].empty()) continue;
          payload.push_back({{"set", labels_of(WorkerSet(bits), workers)},
                             {"choice", labels_of(table[bits], workers)}});
        }
        break;
      }
    }
    choice["payload"] = std::move(payload);
    doc["firms"].push_back({{"id", m.firm_label(f)}, {"choice", std::move(choice)}});
  }
  doc["worker_prefs"] = Json::object();
  for (int w = 0; w < m.worker_count(); ++w) {
    doc["worker_prefs"][workers[w]] = labels_of(m.preference(w).sequence(), m.firm_labels());
  }
  if (!file.copy_indexing.empty()) {
    Json indexing = Json::object();
    for (int f = 0; f < m.firm_count(); ++f) {
      if (!file.copy_indexing[f].has_value()) continue;
      Json orders = Json::array();
      for (const LinearOrder& o : *file.copy_indexing[f]) {
        orders.push_back(labels_of(o.sequence(), workers));
      }
      indexing[m.firm_label(f)] = std::move(orders);
    }
    doc["copy_indexing"] = std::move(indexing);
  }
  return doc;
}

Json to_json(const ManyToOneMarket& market, const MatchingM1& mu) {
  Json firms = Json::array();
  for (int f = 0; f < market.firm_count(); ++f) {
    firms.push_back(Json::array(
        {market.firm_label(f), labels_of(mu.workers_of(f), market.worker_labels())}));
  }
  Json workers = Json::array();
  for (int w = 0; w < market.worker_count(); ++w) {
    workers.push_back(Json::array(
        {market.worker_label(w),
         label_or_null(mu.firm_of(w), [&](int f) { return market.firm_label(f); })}));
  }
  return {{"firms", std::move(firms)}, {"workers", std::move(workers)}};
}

Json to_json(const OneToOneMarket& market, const Matching11& lambda) {
  Json workers = Json::array();
  for (int w = 0; w < market.worker_count(); ++w) {
    workers.push_back(Json::array(
        {market.worker_label(w),
         label_or_null(lambda.copy_of(w), [&](int c) { return market.copy_label(c); })}));
  }
  Json copies = Json::array();
  for (int c = 0; c < market.copy_count(); ++c) {
    copies.push_back(Json::array(
        {market.copy_label(c),
         label_or_null(lambda.worker_of(c), [&](int w) { return market.worker_label(w); })}));
  }
  return {{"copies", std::move(copies)}, {"workers", std::move(workers)}};
}

Json to_json(const std::vector<std::string>& worker_labels, const AxiomReport& report) {
  Json out = {{"axiom", std::string(axiom_name(report.axiom))}, {"passed", report.passed}};
  if (!report.passed) {
    Json sets = Json::array();
    for (WorkerSet s : report.sets) sets.push_back(labels_of(s, worker_labels));
    out["witness"] = {{"sets", std::move(sets)},
                      {"workers", labels_of(report.workers, worker_labels)}};
  }
  return out;
}

Json to_json(const ManyToOneMarket& market, const StabilityReport& report) {
  Json out = {{"stable", report.stable}};
  if (!report.stable) {
    out["case"] = std::string(block_case_name(report.block));
    if (report.worker != kNone) out["worker"] = market.worker_label(report.worker);
    if (report.firm != kNone) out["firm"] = market.firm_label(report.firm);
  }
  return out;
}

Json to_json(const OneToOneMarket& market, const StabilityReport& report) {
  Json out = {{"stable", report.stable}};
  if (!report.stable) {
    out["case"] = std::string(block_case_name(report.block));
    if (report.worker != kNone) out["worker"] = market.worker_label(report.worker);
    if (report.copy != kNone) out["copy"] = market.copy_label(report.copy);
    if (report.sibling != kNone) out["sibling"] = market.copy_label(report.sibling);
  }
  return out;
}

Json to_json(const ManyToOneMarket& market, const Decomposition& d) {
  Json firms = Json::array();
  for (int f = 0; f < d.firm_count(); ++f) {
    Json copies = Json::array();
    for (std::size_t j = 0; j < d.orders[f].size(); ++j) {
      copies.push_back({{"copy", market.firm_label(f) + "#" + std::to_string(j + 1)},
                        {"order", labels_of(d.orders[f][j].sequence(), market.worker_labels())}});
    }
    firms.push_back({{"firm", market.firm_label(f)}, {"copies", std::move(copies)}});
  }
  return {{"copy_count", d.copy_count()}, {"firms", std::move(firms)}};
}

Json to_json(const OneToOneMarket& market, Proposer proposer, const DaStage& stage) {
  const std::vector<std::string> copies = copy_labels(market);
  const std::vector<std::string> workers = worker_labels(market);
  const bool copies_propose = proposer == Proposer::kCopies;
  const auto& receivers = copies_propose ? workers : copies;
  const auto& senders = copies_propose ? copies : workers;
  Json out = {{"stage", stage.stage},
              {"proposing", copies_propose ? "firms" : "workers"},
              {"offers", receiver_lists(stage.offers, receivers, senders)},
              {"rejections", receiver_lists(stage.rejections, receivers, senders)},
              {"matching", to_json(market, stage.matching)}};
  if (copies_propose) {
    Json auth = Json::array();
    for (const Authorization& a : stage.authorizations) {
      auth.push_back({{"copy", copies[a.copy]},
                      {"worker", workers[a.worker]},
                      {"authorized", a.authorized}});
    }
    out["authorizations"] = std::move(auth);
  } else {
    out["valid_offers"] = receiver_lists(stage.valid_offers, receivers, senders);
  }
  return out;
}

Json to_json(const ManyToOneMarket& market, const OneToOneMarket& associated,
             const IsomorphismReport& report) {
  Json pairs = Json::array();
  for (const auto& [lambda, mu] : report.forward) {
    pairs.push_back({{"stable_star", to_json(associated, lambda)}, {"T", to_json(market, mu)}});
  }
  Json inverse = Json::array();
  for (const auto& [mu, lambda] : report.backward) {
    inverse.push_back({{"stable", to_json(market, mu)}, {"T_inv", to_json(associated, lambda)}});
  }
  return {{"passed", report.passed},
          {"stable_count", report.stable.size()},
          {"stable_star_count", report.stable_star.size()},
          {"forward", std::move(pairs)},
          {"backward", std::move(inverse)},
          {"failures", report.failures}};
}

Json to_json(const ManyToOneMarket& market, const OneToOneMarket& associated,
             const RhtReport& report) {
  (void)associated;
  Json lad = Json::array();
  for (int f = 0; f < market.firm_count(); ++f) {
    lad.push_back(Json::array({market.firm_label(f), static_cast<bool>(report.firm_lad[f])}));
  }
  Json worker_matched = Json::array();
  for (const auto& row : report.worker_matched) {
    Json r = Json::array();
    for (bool b : row) r.push_back(b);
    worker_matched.push_back(std::move(r));
  }
  return {{"passed", report.passed},
          {"lad_holds", report.lad_holds},
          {"firm_lad", std::move(lad)},
          {"counts_constant", report.counts_constant},
          {"copies_matched", report.copies_matched},
          {"firm_sizes", report.firm_sizes},
          {"worker_matched", std::move(worker_matched)},
          {"failures", report.failures}};
}

}  // namespace pimatch

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

#include "pimatch/isomorphism.h"

#include <algorithm>
#include <functional>
#include <string>

#include "pimatch/stability.h"

namespace pimatch {
namespace {

template <class T>
bool contains_sorted(const std::vector<T>& sorted, const T& value) {
  return std::binary_search(sorted.begin(), sorted.end(), value);
}

template <class Row>
bool all_rows_equal(const std::vector<Row>& rows) {
  return std::adjacent_find(rows.begin(), rows.end(), std::not_equal_to<>()) == rows.end();
}

}  // namespace

MatchingM1 map_T(const Matching11& lambda, const OneToOneMarket& associated) {
  if (lambda.worker_count() != associated.worker_count() ||
      lambda.copy_count() != associated.copy_count()) {
    throw ValidationError("matching does not fit the associated market");
  }
  std::vector<WorkerSet> held(static_cast<std::size_t>(associated.firm_count()));
  for (int c = 0; c < associated.copy_count(); ++c) {
    const int w = lambda.worker_of(c);
    if (w != kNone) held[associated.firm_of(c)] = held[associated.firm_of(c)].with(w);
  }
  // Disjointness is guaranteed by Matching11 holding each worker once.
  return MatchingM1::FromFirmSets(associated.worker_count(), held);
}

Matching11 map_T_inv(const MatchingM1& mu, const OneToOneMarket& associated) {
  if (mu.worker_count() != associated.worker_count() ||
      mu.firm_count() != associated.firm_count()) {
    throw ValidationError("matching does not fit the associated market");
  }
  Matching11 lambda(associated.worker_count(), associated.copy_count());
  for (int firm = 0; firm < associated.firm_count(); ++firm) {
    const WorkerSet held = mu.workers_of(firm);
    for (int c : associated.copies_of(firm)) {
      const int best = associated.order(c).best_in(held);
      if (best != kNone && lambda.copy_of(best) == kNone) lambda.match(c, best);
    }
    for (int w : held.members()) {
      if (lambda.copy_of(w) == kNone) {
        throw AxiomError("worker '" + associated.worker_label(w) +
                         "' is not the best held worker of any copy of firm '" +
                         associated.firm_label(firm) + "'");
      }
    }
  }
  return lambda;
}

IsomorphismReport verify_isomorphism(const ManyToOneMarket& market,
                                     const OneToOneMarket& associated,
                                     const Limits& limits) {
  IsomorphismReport report;
  report.stable = enumerate_stable_m1(market, limits);
  report.stable_star = enumerate_stable_star(associated, limits);
  auto fail = [&](std::string why) {
    report.passed = false;
    report.failures.push_back(std::move(why));
  };

  for (std::size_t m = 0; m < report.stable_star.size(); ++m) {
    const Matching11& lambda = report.stable_star[m];
    MatchingM1 mu = map_T(lambda, associated);
    if (!check_stable_m1(market, mu).stable || !contains_sorted(report.stable, mu)) {
      fail("T maps stable* matching #" + std::to_string(m) + " outside S");
    } else {
      try {
        if (map_T_inv(mu, associated) != lambda) {
          fail("T⁻¹(T(λ)) differs from λ for stable* matching #" + std::to_string(m));
        }
      } catch (const AxiomError& e) {
        fail(e.what());
      }
    }
    report.forward.emplace_back(lambda, std::move(mu));
  }

  for (std::size_t m = 0; m < report.stable.size(); ++m) {
    const MatchingM1& mu = report.stable[m];
    Matching11 lambda;
    try {
      lambda = map_T_inv(mu, associated);
    } catch (const AxiomError& e) {
      fail(e.what());
      continue;
    }
    if (!check_stable_star(associated, lambda).stable ||
        !contains_sorted(report.stable_star, lambda)) {
      fail("T⁻¹ maps stable matching #" + std::to_string(m) + " outside S*");
    } else if (map_T(lambda, associated) != mu) {
      fail("T(T⁻¹(μ)) differs from μ for stable matching #" + std::to_string(m));
    }
    report.backward.emplace_back(mu, std::move(lambda));
  }

  if (report.stable.size() != report.stable_star.size()) {
    fail("|S| = " + std::to_string(report.stable.size()) + " but |S*| = " +
         std::to_string(report.stable_star.size()));
  }
  return report;
}

RhtReport rural_hospital_check(const ManyToOneMarket& market,
                               const OneToOneMarket& associated, const Limits& limits) {
  RhtReport report;
  for (int firm = 0; firm < market.firm_count(); ++firm) {
    report.firm_lad.push_back(check_lad(market.choice(firm), limits).passed);
    report.lad_holds = report.lad_holds && report.firm_lad.back();
  }

  for (const Matching11& lambda : enumerate_stable_star(associated, limits)) {
    std::vector<int> counts(static_cast<std::size_t>(associated.firm_count()), 0);
    for (int c = 0; c < associated.copy_count(); ++c) {
      if (lambda.worker_of(c) != kNone) ++counts[associated.firm_of(c)];
    }
    report.copies_matched.push_back(std::move(counts));
  }
  for (const MatchingM1& mu : enumerate_stable_m1(market, limits)) {
    std::vector<int> sizes;
    for (int firm = 0; firm < market.firm_count(); ++firm) {
      sizes.push_back(mu.workers_of(firm).size());
    }
    std::vector<bool> matched;
    for (int w = 0; w < market.worker_count(); ++w) matched.push_back(mu.firm_of(w) != kNone);
    report.firm_sizes.push_back(std::move(sizes));
    report.worker_matched.push_back(std::move(matched));
  }

  const bool copies_constant = all_rows_equal(report.copies_matched);
  const bool sizes_constant = all_rows_equal(report.firm_sizes);
  const bool workers_constant = all_rows_equal(report.worker_matched);
  report.counts_constant = copies_constant && sizes_constant && workers_constant;
  if (report.lad_holds) {
    if (!copies_constant) report.failures.push_back("matched-copy counts vary across S*");
    if (!sizes_constant) report.failures.push_back("firm sizes vary across S");
    if (!workers_constant) report.failures.push_back("worker matched status varies across S");
    report.passed = report.failures.empty();
  }
  return report;
}

}  // namespace pimatch

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

#ifndef PIMATCH_ISOMORPHISM_H_
#define PIMATCH_ISOMORPHISM_H_

#include <string>
#include <utility>
#include <vector>

#include "pimatch/associated_market.h"
#include "pimatch/choice.h"
#include "pimatch/matching.h"

namespace pimatch {

// T: each firm holds the union of the workers held by its copies.
// Throws ValidationError when λ does not fit the associated market.
MatchingM1 map_T(const Matching11& lambda, const OneToOneMarket& associated);

// T⁻¹: each worker w held by firm φ_i goes to the lowest-index copy f_ij
// whose best worker among μ(φ_i) is w; other copies stay unmatched.
// Throws AxiomError when some held worker is no copy's best (μ is not
// individually rational for its firm).
Matching11 map_T_inv(const MatchingM1& mu, const OneToOneMarket& associated);

struct IsomorphismReport {
  bool passed = true;
  std::vector<MatchingM1> stable;            // S(𝓜)
  std::vector<Matching11> stable_star;       // S*(M)
  std::vector<std::pair<Matching11, MatchingM1>> forward;   // (λ, T(λ))
  std::vector<std::pair<MatchingM1, Matching11>> backward;  // (μ, T⁻¹(μ))
  std::vector<std::string> failures;
};

// Passes iff T maps S*(M) into S(𝓜), T⁻¹ maps S(𝓜) into S*(M), both
// compositions are identities and the two sets have equal size.
IsomorphismReport verify_isomorphism(const ManyToOneMarket& market,
                                     const OneToOneMarket& associated,
                                     const Limits& limits = {});

struct RhtReport {
  bool lad_holds = true;         // every firm satisfies the law of aggregate demand
  std::vector<bool> firm_lad;    // per firm
  // copies_matched[m][i]: matched copies of firm i in the m-th stable* matching.
  std::vector<std::vector<int>> copies_matched;
  // firm_sizes[m][i]: |μ(φ_i)| in the m-th stable matching.
  std::vector<std::vector<int>> firm_sizes;
  // worker_matched[m][w]: whether w is matched in the m-th stable matching.
  std::vector<std::vector<bool>> worker_matched;
  bool counts_constant = true;   // all three tables constant across matchings
  bool passed = true;            // false only when LAD holds and counts vary
  std::vector<std::string> failures;
};

// Matched-copy counts per firm across S*(M), plus the many-to-one counts
// across S(𝓜). The invariance is asserted only when every firm obeys the
// law of aggregate demand; otherwise the report is informational.
RhtReport rural_hospital_check(const ManyToOneMarket& market,
                               const OneToOneMarket& associated,
                               const Limits& limits = {});

}  // namespace pimatch

#endif  // PIMATCH_ISOMORPHISM_H_

/*
Copyright 2026 The collperf Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "collperf/contention.hpp"
#include "collperf/params.hpp"
#include "collperf/strategy.hpp"

namespace collperf {

/// Any strategy, including the contended all-to-all (which needs `contention`).
Prediction predict(const ParamTable& table, Strategy strategy, int P, Bytes m,
                   const std::optional<SegmentSpec>& seg = std::nullopt,
                   const std::optional<ContentionModel>& contention = std::nullopt);

/// Short flags for a prediction: "upper_bound", "extrapolated".
std::vector<std::string> prediction_flags(const Prediction& prediction);

struct SelectionReport {
  Family family = Family::broadcast;
  int processes = 0;
  Bytes message = 0;
  std::vector<Prediction> ranked;  // fastest first
  Strategy winner;
  std::optional<SegmentSpec> winner_segment;
  std::vector<std::string> caveats;
};

/// Ranks candidate strategies by predicted time. Segmented candidates get
/// their segment size from optimize_segment. Times within 1e-12 relative of
/// each other count as ties and keep the declared strategy order.
///
/// Without `candidates` the family defaults apply; the contended all-to-all is
/// then dropped (with a caveat) when no contention model is given. Throws
/// ModelError for an empty or foreign candidate list, or an explicit contended
/// candidate without a contention model.
SelectionReport select(const ParamTable& table, Family family, int P, Bytes m, Bytes unit = 1,
                       const std::optional<std::vector<Strategy>>& candidates = std::nullopt,
                       const std::optional<ContentionModel>& contention = std::nullopt);

}  // namespace collperf

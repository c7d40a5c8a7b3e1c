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

#include <functional>
#include <vector>

#include "collperf/params.hpp"
#include "collperf/strategy.hpp"

namespace collperf {

using SegmentedModel =
    std::function<Prediction(const ParamTable&, int P, Bytes m, const SegmentSpec& seg)>;

/// The cost function of a segmented broadcast variant. Throws ModelError for
/// variants that take no segment.
SegmentedModel segmented_model(Variant variant);

enum class SearchStage { sweep, climb, refine };
std::string_view to_string(SearchStage stage);

struct TracePoint {
  SearchStage stage = SearchStage::sweep;
  Bytes segment = 0;
  Seconds time = 0;
};

struct SegmentSearchResult {
  SegmentSpec best;
  Seconds time = 0;
  int evaluated = 0;
  std::vector<TracePoint> trace;
  bool budget_exhausted = false;
};

/// Evaluates s = m / 2^i for i = 0 .. floor(log2(m / unit)), each rounded down
/// to a multiple of unit. Ties go to the larger segment.
SegmentSearchResult sweep_powers_of_two(const SegmentedModel& model, const ParamTable& table,
                                        int P, Bytes m, Bytes unit);

/// Steepest descent over s +/- unit from `start` until no neighbour is
/// strictly better, or 10 * max(1, ceil(log2(m / unit))) moves have been made
/// (then `budget_exhausted` is set). The start point is traced but is not
/// counted in `evaluated`.
SegmentSearchResult hill_climb(const SegmentedModel& model, const ParamTable& table, int P,
                               Bytes m, Bytes unit, const SegmentSpec& start);

/// Exact minimum over every multiple of unit in [unit, m] for models of the
/// form A(k) * g(s) + B(k) with A(k) > 0, which covers all segmented broadcast
/// models. Within one segment count k the cost follows g, which is linear
/// between table rows, so only the ends of each k-block and the lattice points
/// around row sizes need evaluating: O(sqrt(m / unit) * rows) evaluations.
SegmentSearchResult refine_segment_counts(const SegmentedModel& model, const ParamTable& table,
                                          int P, Bytes m, Bytes unit);

/// Power-of-two sweep, hill climb from the sweep winner, then the exact
/// segment-count refinement. Never worse than the sweep.
SegmentSearchResult optimize_segment(const SegmentedModel& model, const ParamTable& table, int P,
                                     Bytes m, Bytes unit);

}  // namespace collperf

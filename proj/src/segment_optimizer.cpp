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

#include "collperf/segment_optimizer.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "collperf/cost_models.hpp"
#include "collperf/error.hpp"

namespace collperf {

namespace {

void require_search_inputs(Bytes m, Bytes unit) {
  if (unit < 1) throw ModelError("datatype unit must be at least 1");
  if (m < unit) {
    throw ModelError("message of " + std::to_string(m) + " bytes is smaller than the unit of " +
                     std::to_string(unit));
  }
}

// Memoised evaluation that records every fresh evaluation in the trace.
class Search {
 public:
  Search(const SegmentedModel& model, const ParamTable& table, int P, Bytes m, Bytes unit,
         SearchStage stage)
      : model_(model), table_(table), P_(P), m_(m), unit_(unit), stage_(stage) {}

  Seconds cost(Bytes s, bool counted = true) {
    if (auto it = seen_.find(s); it != seen_.end()) return it->second;
    const Seconds t = model_(table_, P_, m_, make_segment(m_, s, unit_)).time;
    seen_.emplace(s, t);
    result_.trace.push_back({stage_, s, t});
    if (counted) ++result_.evaluated;
    if (!have_best_ || t < best_time_ || (t == best_time_ && s > best_s_)) {
      have_best_ = true;
      best_time_ = t;
      best_s_ = s;
    }
    return t;
  }

  SegmentSearchResult finish() {
    result_.best = make_segment(m_, best_s_, unit_);
    result_.time = best_time_;
    return std::move(result_);
  }

  SegmentSearchResult& result() { return result_; }

 private:
  const SegmentedModel& model_;
  const ParamTable& table_;
  int P_;
  Bytes m_;
  Bytes unit_;
  SearchStage stage_;
  std::map<Bytes, Seconds> seen_;
  SegmentSearchResult result_;
  bool have_best_ = false;
  Seconds best_time_ = 0;
  Bytes best_s_ = 0;
};

}  // namespace

SegmentedModel segmented_model(Variant variant) {
  switch (variant) {
    case Variant::flat_segmented: return bcast_flat_segmented;
    case Variant::pipeline: return bcast_pipeline;
    case Variant::binomial_segmented: return bcast_binomial_segmented;
    default: break;
  }
  throw ModelError(std::string(to_string(variant)) + " is not a segmented strategy");
}

std::string_view to_string(SearchStage stage) {
  switch (stage) {
    case SearchStage::sweep: return "sweep";
    case SearchStage::climb: return "climb";
    case SearchStage::refine: return "refine";
  }
  return "?";
}

SegmentSearchResult sweep_powers_of_two(const SegmentedModel& model, const ParamTable& table,
                                        int P, Bytes m, Bytes unit) {
  require_search_inputs(m, unit);
  Search search(model, table, P, m, unit, SearchStage::sweep);
  const int steps = floor_log2(static_cast<std::uint64_t>(m / unit));
  for (int i = 0; i <= steps; ++i) {
    const Bytes s = ((m >> i) / unit) * unit;
    if (s >= unit) search.cost(s);
  }
  return search.finish();
}

SegmentSearchResult hill_climb(const SegmentedModel& model, const ParamTable& table, int P,
                               Bytes m, Bytes unit, const SegmentSpec& start) {
  require_search_inputs(m, unit);
  if (start.unit != unit || make_segment(m, start.size, unit) != start) {
    throw ModelError("hill-climb start is not a valid segment for this message");
  }
  Search search(model, table, P, m, unit, SearchStage::climb);
  const int budget = 10 * std::max(1, ceil_log2(static_cast<std::uint64_t>(m / unit)));

  Bytes here = start.size;
  Seconds here_time = search.cost(here, /*counted=*/false);
  int moves = 0;
  for (;;) {
    Bytes next = here;
    Seconds next_time = here_time;
    for (Bytes s : {here + unit, here - unit}) {
      if (s < unit || s > m) continue;
      const Seconds t = search.cost(s);
      if (t < next_time) {
        next = s;
        next_time = t;
      }
    }
    if (next == here) break;
    here = next;
    here_time = next_time;
    if (++moves >= budget) {
      search.result().budget_exhausted = true;
      break;
    }
  }
  return search.finish();
}

SegmentSearchResult refine_segment_counts(const SegmentedModel& model, const ParamTable& table,
                                          int P, Bytes m, Bytes unit) {
  require_search_inputs(m, unit);
  Search search(model, table, P, m, unit, SearchStage::refine);
  const auto rows = table.rows();

  // Segment sizes are unit * t for t in [1, top]; group t by segment count.
  const Bytes top = m / unit;
  for (Bytes lo = 1; lo <= top;) {
    const Bytes k = (m + unit * lo - 1) / (unit * lo);
    const Bytes hi = k == 1 ? top : std::min(top, (m - 1) / (unit * (k - 1)));
    search.cost(unit * lo);
    search.cost(unit * hi);
    auto row = std::upper_bound(rows.begin(), rows.end(), unit * lo,
                                [](Bytes s, const ParamRow& r) { return s < r.size; });
    for (; row != rows.end() && row->size < unit * hi; ++row) {
      const Bytes below = row->size / unit;
      for (Bytes t : {below, below + 1}) {
        if (t > lo && t < hi) search.cost(unit * t);
      }
    }
    lo = hi + 1;
  }
  return search.finish();
}

SegmentSearchResult optimize_segment(const SegmentedModel& model, const ParamTable& table, int P,
                                     Bytes m, Bytes unit) {
  SegmentSearchResult sweep = sweep_powers_of_two(model, table, P, m, unit);
  SegmentSearchResult climb = hill_climb(model, table, P, m, unit, sweep.best);
  SegmentSearchResult refine = refine_segment_counts(model, table, P, m, unit);

  SegmentSearchResult out = sweep;
  for (const SegmentSearchResult* stage : {&climb, &refine}) {
    if (stage->time < out.time || (stage->time == out.time && stage->best.size > out.best.size)) {
      out.best = stage->best;
      out.time = stage->time;
    }
    out.trace.insert(out.trace.end(), stage->trace.begin(), stage->trace.end());
    out.evaluated += stage->evaluated;
  }
  out.budget_exhausted = climb.budget_exhausted;
  return out;
}

}  // namespace collperf

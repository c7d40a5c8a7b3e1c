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

#include "collperf/selector.hpp"

#include <algorithm>
#include <cmath>

#include "collperf/cost_models.hpp"
#include "collperf/error.hpp"
#include "collperf/segment_optimizer.hpp"

namespace collperf {

namespace {

constexpr double kTieWindow = 1e-12;

bool tied(Seconds a, Seconds b) {
  return std::abs(a - b) <= kTieWindow * std::max(std::abs(a), std::abs(b));
}

bool runs_before(const Prediction& a, const Prediction& b) {
  return a.time < b.time && !tied(a.time, b.time);
}

}  // namespace

Prediction predict(const ParamTable& table, Strategy strategy, int P, Bytes m,
                   const std::optional<SegmentSpec>& seg,
                   const std::optional<ContentionModel>& contention) {
  if (strategy == Strategy{Family::alltoall, Variant::contended}) {
    if (!contention) throw ModelError("contended all-to-all needs a contention factor");
    return predict_alltoall(table, P, m, *contention);
  }
  return evaluate(table, strategy, P, m, seg);
}

std::vector<std::string> prediction_flags(const Prediction& prediction) {
  std::vector<std::string> flags;
  if (prediction.upper_bound) flags.emplace_back("upper_bound");
  if (prediction.extrapolated) flags.emplace_back("extrapolated");
  return flags;
}

SelectionReport select(const ParamTable& table, Family family, int P, Bytes m, Bytes unit,
                       const std::optional<std::vector<Strategy>>& candidates,
                       const std::optional<ContentionModel>& contention) {
  SelectionReport report;
  report.family = family;
  report.processes = P;
  report.message = m;

  std::vector<Strategy> pool = candidates ? *candidates : default_candidates(family);
  if (!candidates && !contention) {
    const Strategy contended{Family::alltoall, Variant::contended};
    if (std::erase(pool, contended) > 0) {
      report.caveats.push_back("contended: skipped, no contention factor given");
    }
  }
  if (pool.empty()) throw ModelError("no candidate strategies to compare");
  for (const Strategy& s : pool) {
    if (s.family != family || !is_valid(s)) {
      throw ModelError(to_string(s) + " is not a " + std::string(to_string(family)) + " strategy");
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  for (const Strategy& s : pool) {
    if (is_segmented(s.variant)) {
      const SegmentedModel model = segmented_model(s.variant);
      const SegmentSearchResult best = optimize_segment(model, table, P, m, unit);
      report.ranked.push_back(model(table, P, m, best.best));
    } else {
      report.ranked.push_back(predict(table, s, P, m, std::nullopt, contention));
    }
  }

  // Insertion sort: deterministic and well defined with the tie window.
  auto& ranked = report.ranked;
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    for (std::size_t j = i; j > 0 && runs_before(ranked[j], ranked[j - 1]); --j) {
      std::swap(ranked[j], ranked[j - 1]);
    }
  }

  for (const Prediction& p : ranked) {
    const std::string name(to_string(p.strategy.variant));
    if (p.upper_bound) report.caveats.push_back(name + ": value is an upper bound, not an exact model");
    if (p.extrapolated) {
      report.caveats.push_back(name + ": parameters extrapolated above " +
                               std::to_string(table.max_measured_size()) + " bytes");
    }
  }
  report.winner = ranked.front().strategy;
  report.winner_segment = ranked.front().segment;
  return report;
}

}  // namespace collperf

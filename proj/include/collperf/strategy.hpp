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

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "collperf/params.hpp"

namespace collperf {

enum class Family { broadcast, scatter, alltoall };

// Declaration order is the selector's tie-break order (simplest first).
enum class Variant {
  flat,
  chain,
  binomial,
  binary,
  flat_segmented,
  pipeline,
  binomial_segmented,
  flat_rendezvous,
  chain_rendezvous,
  binomial_rendezvous,
  lower,
  upper,
  contended,
};

struct Strategy {
  Family family = Family::broadcast;
  Variant variant = Variant::flat;

  auto operator<=>(const Strategy&) const = default;
};

std::string_view to_string(Family family);
std::string_view to_string(Variant variant);
std::string to_string(Strategy strategy);

/// Accept canonical names plus the aliases chain_segmented, lower_bound and
/// upper_bound. Return nullopt for unknown names.
std::optional<Family> parse_family(std::string_view name);
std::optional<Variant> parse_variant(std::string_view name);

bool is_valid(Strategy strategy);
bool is_segmented(Variant variant);

/// Every variant defined for `family`, in tie-break order.
std::vector<Strategy> strategies_of(Family family);
/// The variants compared by default: broadcast {flat, chain, binomial,
/// pipeline}, scatter {flat, chain, binomial}, alltoall {lower, upper, contended}.
std::vector<Strategy> default_candidates(Family family);

struct CostTerm {
  std::string label;
  Seconds value = 0;
};

/// A model evaluation. `time` is the in-order sum of `terms`.
struct Prediction {
  Strategy strategy;
  int processes = 0;
  Bytes message = 0;
  std::optional<SegmentSpec> segment;
  Seconds time = 0;
  std::vector<CostTerm> terms;
  bool upper_bound = false;   // value is a bound, not an exact model
  bool extrapolated = false;  // some parameter was queried above the measured range
};

}  // namespace collperf

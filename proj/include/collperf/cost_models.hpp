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

#include <cstdint>
#include <optional>

#include "collperf/params.hpp"
#include "collperf/strategy.hpp"

namespace collperf {

/// Exact integer logarithms; x >= 1.
int floor_log2(std::uint64_t x);
int ceil_log2(std::uint64_t x);

// Closed-form completion times for broadcast, scatter and all-to-all under
// pLogP. Every function requires P >= 2 and m >= 1 and throws ModelError
// otherwise; segmented forms additionally require `seg` to describe m.

Prediction bcast_flat(const ParamTable& table, int P, Bytes m);
Prediction bcast_flat_rendezvous(const ParamTable& table, int P, Bytes m);
Prediction bcast_flat_segmented(const ParamTable& table, int P, Bytes m, const SegmentSpec& seg);
Prediction bcast_chain(const ParamTable& table, int P, Bytes m);
Prediction bcast_chain_rendezvous(const ParamTable& table, int P, Bytes m);
/// Segmented chain: segments of consecutive hops overlap.
Prediction bcast_pipeline(const ParamTable& table, int P, Bytes m, const SegmentSpec& seg);
/// Only an upper bound is known for the binary tree; the result is flagged.
Prediction bcast_binary(const ParamTable& table, int P, Bytes m);
Prediction bcast_binomial(const ParamTable& table, int P, Bytes m);
Prediction bcast_binomial_rendezvous(const ParamTable& table, int P, Bytes m);
Prediction bcast_binomial_segmented(const ParamTable& table, int P, Bytes m,
                                    const SegmentSpec& seg);

Prediction scatter_flat(const ParamTable& table, int P, Bytes m);
/// Each hop forwards the blocks of every process further down the chain.
Prediction scatter_chain(const ParamTable& table, int P, Bytes m);
/// Bulk messages of 2^j blocks travel down a binomial tree.
Prediction scatter_binomial(const ParamTable& table, int P, Bytes m);

/// Sends overlap: each costs only the send overhead.
Prediction alltoall_lower(const ParamTable& table, int P, Bytes m);
/// Sends serialise on the link: each costs a full gap.
Prediction alltoall_upper(const ParamTable& table, int P, Bytes m);

/// True iff a tree of fan-out d and height h can hold P nodes,
/// i.e. sum_{i=0..h} d^i >= P.
bool tree_feasible(std::int64_t d, std::int64_t h, std::int64_t P);

/// Dispatch on `strategy`. Segmented variants need `seg`; the contended
/// all-to-all needs a contention factor and is rejected here (see
/// contention.hpp / selector.hpp).
Prediction evaluate(const ParamTable& table, Strategy strategy, int P, Bytes m,
                    const std::optional<SegmentSpec>& seg = std::nullopt);

}  // namespace collperf

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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "collperf/params.hpp"
#include "collperf/strategy.hpp"

namespace collperf {

enum class EventKind { send_start, send_end, arrival, recv_done };
std::string_view to_string(EventKind kind);

struct Event {
  EventKind kind = EventKind::send_start;
  int node = 0;  // where the event happens
  int peer = 0;  // the other end of the transfer
  Bytes payload = 0;
  Seconds time = 0;
  int segment = 0;
};

/// Outcome of one simulated collective. Events are sorted by time, then node,
/// stable with respect to issue order.
struct Timeline {
  std::vector<Event> events;
  Seconds completion = 0;                  // latest arrival (or receive completion)
  std::vector<Seconds> per_node_completion;  // by rank
  std::optional<int> root;                 // data source; nullopt when every rank owns data
  bool overlapped_sends = false;           // sends charged os(m) instead of g(m)
};

enum class AlltoallMode { serialized, overlapped };

/// Discrete-event run of a broadcast schedule. `variant` is flat, chain or
/// binomial; with `seg` the message travels as seg.count segments of seg.size
/// bytes (the last one padded). A transfer started at t occupies the sender's
/// link until t + g(payload) and arrives at t + g(payload) + L; a rank may
/// forward data from the moment it arrives.
///
/// The binomial tree is the usual rank-relative one: rank r forwards to
/// r + 2^i for i below its lowest set bit, farthest first.
Timeline simulate_broadcast(const ParamTable& table, int P, Bytes m, Variant variant,
                            const std::optional<SegmentSpec>& seg = std::nullopt);

/// Scatter with store-and-forward bundles. Chain hops carry the blocks of every
/// rank further down; binomial edges carry 2^j * m bytes, with ranks laid out
/// on the 2^ceil(log2 P)-slot binomial tree in depth-first order (largest
/// subtree first), so every subtree's blocks are contiguous.
Timeline simulate_scatter(const ParamTable& table, int P, Bytes m, Variant variant);

/// Direct exchange, each rank sending to rank+1, rank+2, ... in turn.
/// Serialized sends are spaced by g(m), overlapped sends by os(m); after its
/// last arrival a rank spends or(m) on each of its P-1 receives.
Timeline simulate_alltoall(const ParamTable& table, int P, Bytes m, AlltoallMode mode);

/// Structural checks: event order, send charge consistency, per-link spacing,
/// causality (no rank forwards data it has not received) and the completion
/// value. Returns one message per violation.
std::vector<std::string> check_timeline(const Timeline& timeline, const ParamTable& table);

/// One event per line: "time node kind peer payload segment_index", with
/// the time printed in seconds to 9 decimal places.
void write_timeline(std::ostream& out, const Timeline& timeline);

}  // namespace collperf

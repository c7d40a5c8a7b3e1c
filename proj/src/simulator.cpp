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

#include "collperf/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>

#include "collperf/cost_models.hpp"
#include "collperf/error.hpp"

namespace collperf {

namespace {

constexpr Seconds kNever = std::numeric_limits<Seconds>::infinity();

struct Transfer {
  int to = 0;
  Bytes payload = 0;
  int segment = 0;
};

// Per-rank ordered send lists for a rooted collective. Ranks are processed in
// index order, so every parent must have a lower rank than its children.
struct Schedule {
  int processes = 0;
  int segments = 1;
  std::vector<std::vector<Transfer>> sends;
};

void require_inputs(int P, Bytes m) {
  if (P < 2) throw ModelError("process count must be at least 2, got " + std::to_string(P));
  if (m < 1) throw ModelError("message size must be at least 1, got " + std::to_string(m));
}

void finish(Timeline& tl) {
  std::stable_sort(tl.events.begin(), tl.events.end(), [](const Event& a, const Event& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.node < b.node;
  });
  tl.completion = 0;
  for (const Event& e : tl.events) {
    if (e.kind == EventKind::arrival || e.kind == EventKind::recv_done) {
      tl.completion = std::max(tl.completion, e.time);
    }
  }
}

Timeline run_rooted(const ParamTable& table, const Schedule& plan) {
  const Seconds L = table.latency();
  std::vector<std::vector<Seconds>> ready(plan.processes,
                                          std::vector<Seconds>(plan.segments, kNever));
  std::fill(ready[0].begin(), ready[0].end(), 0.0);

  Timeline tl;
  tl.root = 0;
  tl.per_node_completion.assign(plan.processes, 0.0);
  std::map<Bytes, Seconds> gap_cache;
  auto gap = [&](Bytes payload) {
    auto [it, fresh] = gap_cache.try_emplace(payload, 0.0);
    if (fresh) it->second = table.gap(payload);
    return it->second;
  };

  for (int node = 0; node < plan.processes; ++node) {
    Seconds link_free = 0;
    for (const Transfer& t : plan.sends[node]) {
      const Seconds available = ready[node][t.segment];
      if (available == kNever) {
        throw ModelError("schedule forwards segment " + std::to_string(t.segment) + " from rank " +
                         std::to_string(node) + " before it can arrive");
      }
      const Seconds start = std::max(link_free, available);
      const Seconds end = start + gap(t.payload);
      const Seconds arrival = end + L;
      link_free = end;
      tl.events.push_back({EventKind::send_start, node, t.to, t.payload, start, t.segment});
      tl.events.push_back({EventKind::send_end, node, t.to, t.payload, end, t.segment});
      tl.events.push_back({EventKind::arrival, t.to, node, t.payload, arrival, t.segment});
      ready[t.to][t.segment] = std::min(ready[t.to][t.segment], arrival);
      tl.per_node_completion[t.to] = std::max(tl.per_node_completion[t.to], arrival);
      tl.per_node_completion[node] = std::max(tl.per_node_completion[node], end);
    }
  }
  finish(tl);
  return tl;
}

// Rank-relative binomial children, farthest first.
std::vector<int> binomial_children(int rank, int P) {
  const int top = rank == 0 ? ceil_log2(static_cast<std::uint64_t>(P))
                            : std::countr_zero(static_cast<unsigned>(rank));
  std::vector<int> out;
  for (int i = top - 1; i >= 0; --i) {
    const int child = rank + (1 << i);
    if (child < P) out.push_back(child);
  }
  return out;
}

}  // namespace

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::send_start: return "send_start";
    case EventKind::send_end: return "send_end";
    case EventKind::arrival: return "arrival";
    case EventKind::recv_done: return "recv_done";
  }
  return "?";
}

Timeline simulate_broadcast(const ParamTable& table, int P, Bytes m, Variant variant,
                            const std::optional<SegmentSpec>& seg) {
  require_inputs(P, m);
  if (seg && make_segment(m, seg->size, seg->unit) != *seg) {
    throw ModelError("segment layout does not describe a " + std::to_string(m) + "-byte message");
  }
  Schedule plan;
  plan.processes = P;
  plan.segments = seg ? static_cast<int>(seg->count) : 1;
  plan.sends.resize(P);
  const Bytes payload = seg ? seg->size : m;

  auto add_all_segments = [&](int from, const std::vector<int>& to) {
    for (int j = 0; j < plan.segments; ++j) {
      for (int dest : to) plan.sends[from].push_back({dest, payload, j});
    }
  };

  switch (variant) {
    case Variant::flat: {
      std::vector<int> everyone;
      for (int r = 1; r < P; ++r) everyone.push_back(r);
      add_all_segments(0, everyone);
      break;
    }
    case Variant::chain:
      for (int r = 0; r + 1 < P; ++r) add_all_segments(r, {r + 1});
      break;
    case Variant::binomial:
      for (int r = 0; r < P; ++r) add_all_segments(r, binomial_children(r, P));
      break;
    default:
      throw ModelError("broadcast simulation supports flat, chain and binomial, not " +
                       std::string(to_string(variant)));
  }
  return run_rooted(table, plan);
}

Timeline simulate_scatter(const ParamTable& table, int P, Bytes m, Variant variant) {
  require_inputs(P, m);
  Schedule plan;
  plan.processes = P;
  plan.sends.resize(P);

  switch (variant) {
    case Variant::flat:
      for (int r = 1; r < P; ++r) plan.sends[0].push_back({r, m, 0});
      break;
    case Variant::chain:
      for (int r = 0; r + 1 < P; ++r) plan.sends[r].push_back({r + 1, (P - 1 - r) * m, 0});
      break;
    case Variant::binomial: {
      // Occupy the first P slots of a depth-first walk (largest subtree first)
      // of the full binomial tree, then number the occupied slots in order.
      const int depth = ceil_log2(static_cast<std::uint64_t>(P));
      const int slots = 1 << depth;
      std::vector<int> preorder;
      std::vector<std::pair<int, int>> stack{{0, depth}};  // (slot, subtree order)
      while (!stack.empty() && static_cast<int>(preorder.size()) < P) {
        auto [slot, order] = stack.back();
        stack.pop_back();
        preorder.push_back(slot);
        for (int i = 0; i < order; ++i) stack.push_back({slot + (1 << i), i});
      }
      std::vector<int> rank_of(slots, -1);
      std::sort(preorder.begin(), preorder.end());
      for (int r = 0; r < P; ++r) rank_of[preorder[r]] = r;

      for (int r = 0; r < P; ++r) {
        const int slot = preorder[r];
        const int order = slot == 0 ? depth : std::countr_zero(static_cast<unsigned>(slot));
        for (int i = order - 1; i >= 0; --i) {
          const int child = rank_of[slot + (1 << i)];
          if (child >= 0) plan.sends[r].push_back({child, (Bytes{1} << i) * m, 0});
        }
      }
      break;
    }
    default:
      throw ModelError("scatter simulation supports flat, chain and binomial, not " +
                       std::string(to_string(variant)));
  }
  return run_rooted(table, plan);
}

Timeline simulate_alltoall(const ParamTable& table, int P, Bytes m, AlltoallMode mode) {
  require_inputs(P, m);
  const ParamSample p = table.sample(m);
  const Seconds charge = mode == AlltoallMode::serialized ? p.gap : p.send_overhead;
  const Seconds L = table.latency();

  Timeline tl;
  tl.overlapped_sends = mode == AlltoallMode::overlapped;
  tl.per_node_completion.assign(P, 0.0);
  std::vector<std::vector<std::pair<Seconds, int>>> inbox(P);

  for (int node = 0; node < P; ++node) {
    Seconds link_free = 0;
    for (int step = 1; step < P; ++step) {
      const int peer = (node + step) % P;
      const Seconds start = link_free;
      const Seconds end = start + charge;
      link_free = end;
      tl.events.push_back({EventKind::send_start, node, peer, m, start, 0});
      tl.events.push_back({EventKind::send_end, node, peer, m, end, 0});
      tl.events.push_back({EventKind::arrival, peer, node, m, end + L, 0});
      inbox[peer].push_back({end + L, node});
    }
  }
  for (int node = 0; node < P; ++node) {
    auto& in = inbox[node];
    std::stable_sort(in.begin(), in.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    Seconds done = in.back().first;
    for (const auto& [arrived, from] : in) {
      done += p.recv_overhead;
      tl.events.push_back({EventKind::recv_done, node, from, m, done, 0});
    }
    tl.per_node_completion[node] = done;
  }
  finish(tl);
  return tl;
}

std::vector<std::string> check_timeline(const Timeline& tl, const ParamTable& table) {
  std::vector<std::string> problems;
  auto complain = [&](const std::string& what, const Event& e) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " (t=%.9g, node %d)", e.time, e.node);
    problems.push_back(what + buf);
  };

  for (std::size_t i = 1; i < tl.events.size(); ++i) {
    const Event& a = tl.events[i - 1];
    const Event& b = tl.events[i];
    if (b.time < a.time || (b.time == a.time && b.node < a.node)) complain("events out of order", b);
  }

  Seconds last_terminal = 0;
  // (node, segment) -> earliest arrival
  std::map<std::pair<int, int>, Seconds> arrived;
  for (const Event& e : tl.events) {
    if (e.time < 0) complain("negative time", e);
    if (e.kind == EventKind::arrival || e.kind == EventKind::recv_done) {
      last_terminal = std::max(last_terminal, e.time);
    }
    if (e.kind == EventKind::arrival) arrived.try_emplace({e.node, e.segment}, e.time);
  }
  if (last_terminal != tl.completion) problems.push_back("completion is not the latest arrival");

  // Walk each sender's sends in issue order. Sorting is stable, so a send's
  // send_start precedes its send_end and the next send's send_start.
  std::map<int, std::vector<const Event*>> starts, ends;
  for (const Event& e : tl.events) {
    if (e.kind == EventKind::send_start) starts[e.node].push_back(&e);
    if (e.kind == EventKind::send_end) ends[e.node].push_back(&e);
  }
  for (const auto& [node, s] : starts) {
    const auto& en = ends[node];
    if (en.size() != s.size()) {
      complain("unmatched send_start/send_end", *s.front());
      continue;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      const ParamSample p = table.sample(s[i]->payload);
      const Seconds charge = tl.overlapped_sends ? p.send_overhead : p.gap;
      const Seconds span = en[i]->time - s[i]->time;
      if (std::abs(span - charge) > 1e-9 * std::max(charge, table.latency())) {
        complain("send occupies the link for the wrong time", *s[i]);
      }
      if (i > 0 && s[i]->time < en[i - 1]->time) complain("sends overlap on one link", *s[i]);
      if (tl.root && node != *tl.root) {
        auto it = arrived.find({node, s[i]->segment});
        if (it == arrived.end() || it->second > s[i]->time) {
          complain("rank forwards data before receiving it", *s[i]);
        }
      }
    }
  }
  return problems;
}

void write_timeline(std::ostream& out, const Timeline& tl) {
  char buf[64];
  for (const Event& e : tl.events) {
    std::snprintf(buf, sizeof buf, "%.9f", e.time);
    out << buf << ' ' << e.node << ' ' << to_string(e.kind) << ' ' << e.peer << ' ' << e.payload
        << ' ' << e.segment << '\n';
  }
}

}  // namespace collperf

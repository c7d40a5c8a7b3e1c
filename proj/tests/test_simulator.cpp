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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "collperf/cost_models.hpp"
#include "collperf/error.hpp"
#include "collperf/simulator.hpp"
#include "test_support.hpp"

namespace collperf {
namespace {

using testing::t0_table;

std::vector<Seconds> arrivals_of(const Timeline& tl) {
  std::vector<Seconds> out;
  for (const Event& e : tl.events) {
    if (e.kind == EventKind::arrival) out.push_back(e.time);
  }
  return out;
}

void expect_clean(const Timeline& tl, const ParamTable& table) {
  const auto problems = check_timeline(tl, table);
  EXPECT_TRUE(problems.empty()) << problems.front();
}

TEST(SimulateBroadcast, FlatEventByEvent) {
  const Timeline tl = simulate_broadcast(t0_table(), 4, 8, Variant::flat);
  EXPECT_EQ(arrivals_of(tl), (std::vector<Seconds>{18, 26, 34}));
  std::vector<Seconds> starts;
  for (const Event& e : tl.events) {
    if (e.kind == EventKind::send_start) starts.push_back(e.time);
  }
  EXPECT_EQ(starts, (std::vector<Seconds>{0, 8, 16}));
  EXPECT_EQ(tl.completion, 34);
  EXPECT_EQ(tl.completion, bcast_flat(t0_table(), 4, 8).time);
  expect_clean(tl, t0_table());
}

TEST(SimulateBroadcast, ChainHops) {
  const Timeline tl = simulate_broadcast(t0_table(), 4, 8, Variant::chain);
  EXPECT_EQ(arrivals_of(tl), (std::vector<Seconds>{18, 36, 54}));
  EXPECT_EQ(tl.completion, bcast_chain(t0_table(), 4, 8).time);
  expect_clean(tl, t0_table());
}

TEST(SimulateBroadcast, BinomialAtPowerOfTwo) {
  const Timeline tl = simulate_broadcast(t0_table(), 4, 8, Variant::binomial);
  EXPECT_EQ(arrivals_of(tl), (std::vector<Seconds>{18, 26, 36}));
  EXPECT_EQ(tl.completion, 36);
  EXPECT_EQ(tl.completion, bcast_binomial(t0_table(), 4, 8).time);
  expect_clean(tl, t0_table());
}

TEST(SimulateBroadcast, BinomialGreedyScheduleAtThreeRanks) {
  // Root sends at 0 and g: completion 2g + L, where the closed form says g + 2L.
  const Timeline tl = simulate_broadcast(t0_table(), 3, 8, Variant::binomial);
  EXPECT_EQ(tl.completion, 2 * 8 + 10);
  EXPECT_EQ(bcast_binomial(t0_table(), 3, 8).time, 8 + 2 * 10);
}

TEST(SimulateBroadcast, PipelineOverlapsSegments) {
  const Timeline tl = simulate_broadcast(t0_table(), 4, 8, Variant::chain, make_segment(8, 2));
  EXPECT_EQ(tl.completion, 42);
  EXPECT_EQ(tl.completion, bcast_pipeline(t0_table(), 4, 8, make_segment(8, 2)).time);
  expect_clean(tl, t0_table());
}

TEST(SimulateBroadcast, ShortLastSegmentIsPadded) {
  const Timeline tl = simulate_broadcast(t0_table(), 3, 9, Variant::chain, make_segment(9, 4));
  for (const Event& e : tl.events) EXPECT_EQ(e.payload, 4);
  EXPECT_EQ(tl.completion, bcast_pipeline(t0_table(), 3, 9, make_segment(9, 4)).time);
}

TEST(SimulateBroadcast, FlatSegmentedMatchesModel) {
  const Timeline tl = simulate_broadcast(t0_table(), 3, 9, Variant::flat, make_segment(9, 4));
  EXPECT_EQ(tl.completion, bcast_flat_segmented(t0_table(), 3, 9, make_segment(9, 4)).time);
  expect_clean(tl, t0_table());
}

TEST(SimulateBroadcast, RejectsUnsupportedInput) {
  EXPECT_THROW(simulate_broadcast(t0_table(), 4, 8, Variant::binary), ModelError);
  EXPECT_THROW(simulate_broadcast(t0_table(), 1, 8, Variant::flat), ModelError);
  EXPECT_THROW(simulate_broadcast(t0_table(), 4, 8, Variant::chain, make_segment(16, 2)),
               ModelError);
}

TEST(SimulateScatter, Examples) {
  EXPECT_EQ(simulate_scatter(t0_table(), 4, 8, Variant::flat).completion, 34);
  EXPECT_EQ(simulate_scatter(t0_table(), 2, 8, Variant::chain).completion, 18);

  const Timeline bin = simulate_scatter(t0_table(), 4, 8, Variant::binomial);
  // 16 bytes at t=0 (arrives 26), 8 bytes at t=16 (34), forwarded 8 bytes at 26 (44)
  EXPECT_EQ(arrivals_of(bin), (std::vector<Seconds>{26, 34, 44}));
  EXPECT_EQ(bin.completion, scatter_binomial(t0_table(), 4, 8).time);
  expect_clean(bin, t0_table());
}

TEST(SimulateScatter, BinomialBundlesAtFiveRanks) {
  const Timeline tl = simulate_scatter(t0_table(), 5, 8, Variant::binomial);
  EXPECT_EQ(tl.completion, 86);
  int sends = 0;
  for (const Event& e : tl.events) {
    if (e.kind == EventKind::send_start) {
      ++sends;
      EXPECT_LT(e.peer, 5);
    }
  }
  EXPECT_EQ(sends, 4);
  expect_clean(tl, t0_table());
}

TEST(SimulateAlltoall, MatchesBounds) {
  const Timeline serial = simulate_alltoall(t0_table(), 4, 8, AlltoallMode::serialized);
  EXPECT_EQ(serial.completion, 46);
  const Timeline overlap = simulate_alltoall(t0_table(), 4, 8, AlltoallMode::overlapped);
  EXPECT_EQ(overlap.completion, 34);
  expect_clean(serial, t0_table());
  expect_clean(overlap, t0_table());

  // single peer: charge + or + L
  EXPECT_EQ(simulate_alltoall(t0_table(), 2, 8, AlltoallMode::serialized).completion, 8 + 4 + 10);
  EXPECT_EQ(simulate_alltoall(t0_table(), 2, 8, AlltoallMode::overlapped).completion, 4 + 4 + 10);
}

TEST(Simulator, EquivalentToClosedFormsOnRandomTables) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 30; ++trial) {
    const ParamTable t = testing::random_table(rng);
    for (int P = 2; P <= 20; ++P) {
      for (Bytes m : {1, 8, 64, 1024, 65536}) {
        auto same = [&](const Timeline& tl, double model, const char* what) {
          EXPECT_TRUE(testing::close_rel(tl.completion, model, 1e-9))
              << what << " P=" << P << " m=" << m << " sim=" << tl.completion
              << " model=" << model;
          expect_clean(tl, t);
        };
        same(simulate_broadcast(t, P, m, Variant::flat), bcast_flat(t, P, m).time, "flat");
        same(simulate_broadcast(t, P, m, Variant::chain), bcast_chain(t, P, m).time, "chain");
        const SegmentSpec sg = make_segment(m, std::max<Bytes>(1, m / 5));
        same(simulate_broadcast(t, P, m, Variant::chain, sg), bcast_pipeline(t, P, m, sg).time,
             "pipeline");
        same(simulate_scatter(t, P, m, Variant::flat), scatter_flat(t, P, m).time, "sflat");
        same(simulate_scatter(t, P, m, Variant::chain), scatter_chain(t, P, m).time, "schain");
        same(simulate_scatter(t, P, m, Variant::binomial), scatter_binomial(t, P, m).time,
             "sbinomial");
        same(simulate_alltoall(t, P, m, AlltoallMode::serialized), alltoall_upper(t, P, m).time,
             "serialized");
        same(simulate_alltoall(t, P, m, AlltoallMode::overlapped), alltoall_lower(t, P, m).time,
             "overlapped");
        if ((P & (P - 1)) == 0) {
          same(simulate_broadcast(t, P, m, Variant::binomial), bcast_binomial(t, P, m).time,
               "binomial");
        }
      }
    }
  }
}

TEST(Simulator, BinomialBroadcastNeverBeatsItsOwnLowerLimit) {
  // Every rank needs at least one hop; the greedy tree is never slower than chain.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ParamTable t = testing::random_table(rng);
    for (int P = 2; P <= 40; ++P) {
      const Timeline tl = simulate_broadcast(t, P, 512, Variant::binomial);
      EXPECT_GE(tl.completion, t.gap(512) + t.latency());
      EXPECT_LE(tl.completion, bcast_chain(t, P, 512).time * (1 + 1e-12));
      expect_clean(tl, t);
    }
  }
}

TEST(CheckTimeline, FlagsTamperedTimelines) {
  Timeline tl = simulate_broadcast(t0_table(), 4, 8, Variant::chain);
  // make rank 1 forward before its data arrives
  for (Event& e : tl.events) {
    if (e.kind == EventKind::arrival && e.node == 1) e.time = 30;
  }
  auto problems = check_timeline(tl, t0_table());
  EXPECT_FALSE(problems.empty());

  Timeline wrong = simulate_broadcast(t0_table(), 4, 8, Variant::flat);
  wrong.completion = 1;
  EXPECT_FALSE(check_timeline(wrong, t0_table()).empty());
}

TEST(WriteTimeline, OneEventPerLine) {
  const Timeline tl = simulate_broadcast(t0_table(), 2, 8, Variant::flat);
  std::ostringstream out;
  write_timeline(out, tl);
  EXPECT_EQ(out.str(),
            "0.000000000 0 send_start 1 8 0\n"
            "8.000000000 0 send_end 1 8 0\n"
            "18.000000000 1 arrival 0 8 0\n");
}

}  // namespace
}  // namespace collperf

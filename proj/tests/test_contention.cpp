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

#include <cmath>
#include <random>

#include "collperf/contention.hpp"
#include "collperf/cost_models.hpp"
#include "collperf/error.hpp"
#include "test_support.hpp"

namespace collperf {
namespace {

using testing::t0_table;

MeasurementSet planted(const ParamTable& t, double gamma, double noise, std::mt19937_64* rng) {
  std::uniform_real_distribution<double> u(-noise, noise);
  MeasurementSet out;
  for (int P : {2, 4, 8, 16}) {
    for (Bytes m : {64, 1024}) {
      const double lo = alltoall_lower(t, P, m).time;
      const double span = alltoall_upper(t, P, m).time - lo;
      const double jitter = rng ? u(*rng) : 0.0;
      out.push_back({P, m, lo + gamma * span + jitter * span});
    }
  }
  return out;
}

TEST(PredictAlltoall, BlendExample) {
  const Prediction p = predict_alltoall(t0_table(), 4, 8, ContentionModel::fixed(0.4));
  EXPECT_NEAR(p.time, 38.8, 1e-12);
  ASSERT_EQ(p.terms.size(), 2u);
  EXPECT_EQ(p.terms[0].value, 34);
  EXPECT_EQ(p.strategy, (Strategy{Family::alltoall, Variant::contended}));
}

TEST(PredictAlltoall, EndpointsAreExact) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const ParamTable t = testing::random_table(rng);
    for (int P : {2, 3, 17, 64}) {
      for (Bytes m : {1, 1000, 300000}) {
        EXPECT_EQ(predict_alltoall(t, P, m, ContentionModel::fixed(0)).time,
                  alltoall_lower(t, P, m).time);
        EXPECT_EQ(predict_alltoall(t, P, m, ContentionModel::fixed(1)).time,
                  alltoall_upper(t, P, m).time);
      }
    }
  }
}

TEST(PredictAlltoall, InsideBoundsAndMonotoneInGamma) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    const ParamTable t = testing::random_table(rng);
    const int P = 2 + static_cast<int>(u(rng) * 60);
    const Bytes m = 1 + static_cast<Bytes>(u(rng) * 100000);
    const double lo = alltoall_lower(t, P, m).time;
    const double hi = alltoall_upper(t, P, m).time;
    double prev = lo;
    for (double gamma = 0; gamma <= 1.0; gamma += 0.05) {
      const double v = predict_alltoall(t, P, m, ContentionModel::fixed(gamma)).time;
      EXPECT_GE(v, lo);
      EXPECT_LE(v, hi);
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(PredictAlltoall, OutOfRangeGammaIsNotClamped) {
  const ContentionModel wide = ContentionModel::fixed(1.5);
  EXPECT_TRUE(wide.out_of_range());
  EXPECT_DOUBLE_EQ(predict_alltoall(t0_table(), 4, 8, wide).time, 34 + 12 * 1.5);
  EXPECT_FALSE(ContentionModel::fixed(0.4).out_of_range());
}

TEST(FitGamma, RecoversPlantedFactorExactly) {
  const ContentionModel fit = fit_gamma(t0_table(), planted(t0_table(), 0.4, 0, nullptr));
  EXPECT_NEAR(fit.gamma, 0.4, 1e-12);
  EXPECT_NEAR(fit.fit_residual, 0, 1e-9);
  EXPECT_EQ(fit.sample_count, 8);
  EXPECT_EQ(fit.skipped, 0);
  EXPECT_EQ(fit.source, ContentionModel::Source::fitted);
}

TEST(FitGamma, ObservedAtLowerGivesZero) {
  EXPECT_NEAR(fit_gamma(t0_table(), planted(t0_table(), 0, 0, nullptr)).gamma, 0, 1e-15);
}

TEST(FitGamma, NoisyRecoveryOverManySeeds) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const ParamTable t = testing::random_table(rng);
    const double gamma = std::uniform_real_distribution<double>(0, 1)(rng);
    const ContentionModel fit = fit_gamma(t, planted(t, gamma, 0.01, &rng));
    EXPECT_LE(std::abs(fit.gamma - gamma), 0.01) << "seed " << seed;
    EXPECT_GT(fit.fit_residual, 0);
  }
}

TEST(FitGamma, ScalingTimeUnitsLeavesGammaUnchanged) {
  std::mt19937_64 rng(77);
  const ParamTable t = testing::random_table(rng);
  const MeasurementSet base = planted(t, 0.3, 0.01, &rng);
  const double g = fit_gamma(t, base).gamma;
  for (double c : {1e-3, 1e3}) {
    MeasurementSet scaled = base;
    for (Measurement& x : scaled) x.observed *= c;
    EXPECT_NEAR(fit_gamma(t.scaled(c), scaled).gamma, g, 1e-12 * std::max(1.0, std::abs(g)));
  }
}

TEST(FitGamma, SkipsCoincidingBounds) {
  // g == os everywhere, so upper == lower
  const ParamTable flat(1.0, {{1, 2.0, 2.0, 1.0}, {100, 200.0, 200.0, 100.0}});
  EXPECT_THROW(fit_gamma(flat, {{4, 10, 50.0}}), ModelError);
  EXPECT_THROW(fit_gamma(t0_table(), {}), ModelError);

  MeasurementSet mixed = planted(t0_table(), 0.25, 0, nullptr);
  const ContentionModel fit = fit_gamma(t0_table(), mixed);
  EXPECT_EQ(fit.skipped, 0);
  EXPECT_NEAR(fit.gamma, 0.25, 1e-12);
}

TEST(LoadMeasurements, ParsesAndReportsLines) {
  const MeasurementSet s = load_measurements("# P m seconds\n4 1024 0.5\n\n16 64 1e-3\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[1].processes, 16);
  EXPECT_EQ(s[1].message, 64);
  EXPECT_DOUBLE_EQ(s[1].observed, 1e-3);

  try {
    load_measurements("4 1024 0.5\n1 8 0.1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(load_measurements("4 1024\n"), ParseError);
  EXPECT_THROW(load_measurements("4 1024 -1\n"), ParseError);
  EXPECT_THROW(load_measurements("4 x 1\n"), ParseError);
}

TEST(LinearContention, Examples) {
  EXPECT_NEAR(linear_contention_time(0.001, 1e6, 12.5e6, 8), 0.641, 1e-12);
  EXPECT_DOUBLE_EQ(linear_contention_time(0.001, 1e6, 12.5e6, 1), 0.001 + 0.08);
  EXPECT_THROW(linear_contention_time(0.001, 1e6, 0, 1), ModelError);
  EXPECT_THROW(linear_contention_time(-1, 1e6, 1, 1), ModelError);
}

}  // namespace
}  // namespace collperf

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

#include <string_view>
#include <vector>

#include "collperf/params.hpp"
#include "collperf/strategy.hpp"

namespace collperf {

/// All-to-all contention factor: predicted time = Lower + (Upper - Lower) * gamma.
struct ContentionModel {
  enum class Source { fixed, fitted };

  double gamma = 0;
  Source source = Source::fixed;
  Seconds fit_residual = 0;  // RMS error of the fitted blend, seconds
  int sample_count = 0;      // measurements that informed the fit
  int skipped = 0;           // measurements with Upper == Lower

  static ContentionModel fixed(double gamma);
  /// Values outside [0, 1] are legal but suggest the blend misfits the network.
  bool out_of_range() const noexcept { return gamma < 0 || gamma > 1; }
};

struct Measurement {
  int processes = 0;
  Bytes message = 0;
  Seconds observed = 0;
};

using MeasurementSet = std::vector<Measurement>;

/// Parses "<P> <m_bytes> <observed_seconds>" lines; '#' starts a comment line.
MeasurementSet load_measurements(std::string_view text);

/// Lower + (Upper - Lower) * gamma, with terms (lower, span*gamma).
Prediction predict_alltoall(const ParamTable& table, int P, Bytes m, const ContentionModel& model);

/// Closed-form least squares of observed - Lower against (Upper - Lower).
/// Entries whose bounds coincide carry no information and are skipped.
/// Throws ModelError for an empty set or one with only such entries.
ContentionModel fit_gamma(const ParamTable& table, const MeasurementSet& measurements);

/// Shared-medium linear model l + b * gamma / W, with W in bytes per second.
Seconds linear_contention_time(Seconds latency, double bytes, double bandwidth, double gamma);

}  // namespace collperf

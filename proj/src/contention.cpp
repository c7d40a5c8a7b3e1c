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

#include "collperf/contention.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "collperf/cost_models.hpp"
#include "collperf/error.hpp"

namespace collperf {

namespace {

template <typename T>
T parse_field(std::string_view field, int line_no, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(std::string("malformed ") + what + " '" + std::string(field) + "'", line_no);
  }
  return value;
}

}  // namespace

ContentionModel ContentionModel::fixed(double gamma) {
  if (!std::isfinite(gamma)) throw ModelError("contention factor must be finite");
  ContentionModel model;
  model.gamma = gamma;
  return model;
}

MeasurementSet load_measurements(std::string_view text) {
  MeasurementSet out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::vector<std::string_view> fields;
    for (std::size_t i = 0; i < line.size();) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
    if (fields.empty() || fields.front().front() == '#') continue;
    if (fields.size() != 3) {
      throw ParseError("expected '<P> <bytes> <seconds>'", line_no);
    }
    Measurement m{parse_field<int>(fields[0], line_no, "process count"),
                  parse_field<Bytes>(fields[1], line_no, "message size"),
                  parse_field<double>(fields[2], line_no, "time")};
    if (m.processes < 2) throw ParseError("process count must be at least 2", line_no);
    if (m.message < 1) throw ParseError("message size must be at least 1", line_no);
    if (!(m.observed > 0) || !std::isfinite(m.observed)) {
      throw ParseError("observed time must be positive", line_no);
    }
    out.push_back(m);
  }
  return out;
}

Prediction predict_alltoall(const ParamTable& table, int P, Bytes m, const ContentionModel& model) {
  const Prediction lower = alltoall_lower(table, P, m);
  const Prediction upper = alltoall_upper(table, P, m);
  Prediction out;
  out.strategy = {Family::alltoall, Variant::contended};
  out.processes = P;
  out.message = m;
  out.extrapolated = lower.extrapolated || upper.extrapolated;
  // Pin the endpoints and keep in-range blends inside the bounds despite rounding.
  Seconds t = model.gamma == 1 ? upper.time : lower.time + (upper.time - lower.time) * model.gamma;
  if (model.gamma >= 0 && model.gamma <= 1) t = std::clamp(t, lower.time, upper.time);
  out.terms = {{"lower", lower.time}, {"(upper-lower)*gamma", t - lower.time}};
  out.time = t;
  return out;
}

ContentionModel fit_gamma(const ParamTable& table, const MeasurementSet& measurements) {
  if (measurements.empty()) throw ModelError("no measurements to fit the contention factor");

  struct Cell {
    double offset;  // observed - lower
    double span;    // upper - lower
  };
  std::vector<Cell> cells;
  int skipped = 0;
  for (const Measurement& x : measurements) {
    const double lower = alltoall_lower(table, x.processes, x.message).time;
    const double upper = alltoall_upper(table, x.processes, x.message).time;
    if (!(upper > lower)) {
      ++skipped;
      continue;
    }
    cells.push_back({x.observed - lower, upper - lower});
  }
  if (cells.empty()) {
    throw ModelError("every measurement has coinciding bounds; the contention factor is undetermined");
  }

  double num = 0;
  double den = 0;
  for (const Cell& c : cells) {
    num += c.offset * c.span;
    den += c.span * c.span;
  }
  ContentionModel model;
  model.source = ContentionModel::Source::fitted;
  model.gamma = num / den;
  model.sample_count = static_cast<int>(cells.size());
  model.skipped = skipped;

  double sq = 0;
  for (const Cell& c : cells) {
    const double r = c.offset - model.gamma * c.span;
    sq += r * r;
  }
  model.fit_residual = std::sqrt(sq / static_cast<double>(cells.size()));
  return model;
}

Seconds linear_contention_time(Seconds latency, double bytes, double bandwidth, double gamma) {
  if (!(bandwidth > 0)) throw ModelError("bandwidth must be positive");
  if (latency < 0 || bytes < 0 || gamma < 0) {
    throw ModelError("latency, size and contention factor must be non-negative");
  }
  return latency + bytes * gamma / bandwidth;
}

}  // namespace collperf

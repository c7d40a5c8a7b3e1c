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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace collperf {

using Bytes = std::int64_t;
using Seconds = double;

/// One measured pLogP row: gap and overheads for messages of `size` bytes.
struct ParamRow {
  Bytes size = 0;
  Seconds gap = 0;
  Seconds send_overhead = 0;
  Seconds recv_overhead = 0;
};

/// Parameters interpolated at an arbitrary size. `extrapolated` is set when the
/// size lies above the largest measured row.
struct ParamSample {
  Seconds gap = 0;
  Seconds send_overhead = 0;
  Seconds recv_overhead = 0;
  bool extrapolated = false;
};

/// Returns an empty string when `row` satisfies the per-row invariants,
/// otherwise a short description of the first violation.
std::string check_row(const ParamRow& row);

/// Network signature of a homogeneous cluster: latency plus per-size rows.
///
/// Queries are piecewise-linear in the message size between measured rows and
/// continue the last interval's slope above the largest row. Immutable once
/// built, so one table can be shared freely between threads.
class ParamTable {
 public:
  /// Throws ModelError if the latency or any row violates the invariants:
  /// L > 0, at least two rows, strictly increasing sizes, a row at size 1,
  /// and g >= os, g >= or > 0 on every row.
  ParamTable(Seconds latency, std::vector<ParamRow> rows);

  Seconds latency() const noexcept { return latency_; }
  std::span<const ParamRow> rows() const noexcept { return rows_; }
  Bytes max_measured_size() const noexcept { return rows_.back().size; }
  bool extrapolates(Bytes size) const noexcept { return size > rows_.back().size; }

  /// All three parameters at `size`. Throws ModelError for size < 1 or when
  /// extrapolation produces a non-positive value.
  ParamSample sample(Bytes size) const;

  Seconds gap(Bytes size) const { return sample(size).gap; }
  Seconds send_overhead(Bytes size) const { return sample(size).send_overhead; }
  Seconds recv_overhead(Bytes size) const { return sample(size).recv_overhead; }

  /// Same table with every time value (L, g, os, or) multiplied by `factor` > 0.
  ParamTable scaled(double factor) const;

 private:
  Seconds latency_;
  std::vector<ParamRow> rows_;
};

/// Parses the plain-text parameter format:
///
///   # comment
///   L <seconds>
///   <bytes> <gap> <send overhead> <recv overhead>
///   ...
///
/// Throws ParseError carrying the offending line number.
ParamTable load_table(std::string_view text);
ParamTable load_table_file(const std::filesystem::path& path);

/// Reads a whole file; throws ParseError (line 0) when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// Segmentation of an m-byte message into `count` segments of `size` bytes,
/// `size` being a multiple of the basic datatype size `unit`.
struct SegmentSpec {
  Bytes size = 0;
  Bytes count = 0;
  Bytes unit = 1;

  bool operator==(const SegmentSpec&) const = default;
};

/// Validates and builds a SegmentSpec; count = ceil(message / segment).
/// Throws ModelError unless 1 <= unit, segment % unit == 0 and
/// unit <= segment <= message.
SegmentSpec make_segment(Bytes message, Bytes segment, Bytes unit = 1);

}  // namespace collperf

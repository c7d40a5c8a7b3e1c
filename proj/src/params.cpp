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

#include "collperf/params.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "collperf/error.hpp"

namespace collperf {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    std::size_t end = pos;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end]))) ++end;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

double parse_real(std::string_view field, int line_no) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw ParseError("malformed number '" + std::string(field) + "'", line_no);
  }
  return value;
}

Bytes parse_size(std::string_view field, int line_no) {
  Bytes value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("malformed message size '" + std::string(field) + "'", line_no);
  }
  return value;
}

// Linear through (x0, y0) and (x1, y1), evaluated at x.
double along(Bytes x0, double y0, Bytes x1, double y1, Bytes x) {
  const double slope = (y1 - y0) / static_cast<double>(x1 - x0);
  return y0 + static_cast<double>(x - x0) * slope;
}

}  // namespace

std::string check_row(const ParamRow& row) {
  if (row.size < 1) return "message size must be at least 1";
  if (!(row.gap > 0)) return "gap must be positive";
  if (!(row.send_overhead > 0)) return "send overhead must be positive";
  if (!(row.recv_overhead > 0)) return "receive overhead must be positive";
  if (row.gap < row.send_overhead) return "gap smaller than send overhead";
  if (row.gap < row.recv_overhead) return "gap smaller than receive overhead";
  return {};
}

ParamTable::ParamTable(Seconds latency, std::vector<ParamRow> rows)
    : latency_(latency), rows_(std::move(rows)) {
  if (!(latency_ > 0) || !std::isfinite(latency_)) throw ModelError("latency must be positive");
  if (rows_.size() < 2) throw ModelError("parameter table needs at least two rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (auto msg = check_row(rows_[i]); !msg.empty()) {
      throw ModelError("row " + std::to_string(i + 1) + ": " + msg);
    }
    if (i > 0 && rows_[i].size <= rows_[i - 1].size) {
      throw ModelError("row " + std::to_string(i + 1) + ": non-increasing message size");
    }
  }
  if (rows_.front().size != 1) throw ModelError("parameter table needs a row for message size 1");
}

ParamSample ParamTable::sample(Bytes size) const {
  if (size < 1) throw ModelError("message size must be at least 1, got " + std::to_string(size));

  auto upper = std::lower_bound(rows_.begin(), rows_.end(), size,
                                [](const ParamRow& r, Bytes s) { return r.size < s; });
  if (upper != rows_.end() && upper->size == size) {
    return {upper->gap, upper->send_overhead, upper->recv_overhead, false};
  }
  if (upper == rows_.begin()) {
    const auto& r = rows_.front();
    return {r.gap, r.send_overhead, r.recv_overhead, false};
  }

  const bool beyond = upper == rows_.end();
  const ParamRow& hi = beyond ? rows_.back() : *upper;
  const ParamRow& lo = beyond ? rows_[rows_.size() - 2] : *std::prev(upper);
  ParamSample out{along(lo.size, lo.gap, hi.size, hi.gap, size),
                  along(lo.size, lo.send_overhead, hi.size, hi.send_overhead, size),
                  along(lo.size, lo.recv_overhead, hi.size, hi.recv_overhead, size), beyond};
  if (beyond && !(out.gap > 0 && out.send_overhead > 0 && out.recv_overhead > 0)) {
    throw ModelError("extrapolated parameters at " + std::to_string(size) +
                     " bytes are not positive; extend the measured table");
  }
  return out;
}

ParamTable ParamTable::scaled(double factor) const {
  if (!(factor > 0)) throw ModelError("scale factor must be positive");
  std::vector<ParamRow> rows = rows_;
  for (auto& r : rows) {
    r.gap *= factor;
    r.send_overhead *= factor;
    r.recv_overhead *= factor;
  }
  return ParamTable(latency_ * factor, std::move(rows));
}

ParamTable load_table(std::string_view text) {
  std::optional<Seconds> latency;
  std::vector<ParamRow> rows;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;

    if (!latency) {
      if (fields.size() != 2 || fields[0] != "L") {
        throw ParseError("expected header 'L <seconds>'", line_no);
      }
      latency = parse_real(fields[1], line_no);
      if (!(*latency > 0)) throw ParseError("latency must be positive", line_no);
      continue;
    }

    if (fields.size() != 4) {
      throw ParseError("expected '<bytes> <gap> <os> <or>', got " + std::to_string(fields.size()) +
                           " fields",
                       line_no);
    }
    ParamRow row{parse_size(fields[0], line_no), parse_real(fields[1], line_no),
                 parse_real(fields[2], line_no), parse_real(fields[3], line_no)};
    if (auto msg = check_row(row); !msg.empty()) throw ParseError(msg, line_no);
    if (!rows.empty() && row.size <= rows.back().size) {
      throw ParseError("non-increasing message size", line_no);
    }
    rows.push_back(row);
  }

  if (!latency) throw ParseError("missing header 'L <seconds>'", 0);
  if (rows.size() < 2) throw ParseError("parameter table needs at least two rows", 0);
  if (rows.front().size != 1) throw ParseError("parameter table needs a row for message size 1", 0);
  return ParamTable(*latency, std::move(rows));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ParamTable load_table_file(const std::filesystem::path& path) {
  return load_table(read_text_file(path));
}

SegmentSpec make_segment(Bytes message, Bytes segment, Bytes unit) {
  if (unit < 1) throw ModelError("datatype unit must be at least 1");
  if (message < 1) throw ModelError("message size must be at least 1");
  if (segment < unit) throw ModelError("segment size smaller than datatype unit");
  if (segment % unit != 0) throw ModelError("segment size is not a multiple of the datatype unit");
  if (segment > message) throw ModelError("segment size larger than message");
  return {segment, (message + segment - 1) / segment, unit};
}

}  // namespace collperf

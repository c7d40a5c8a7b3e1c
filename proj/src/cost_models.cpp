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

#include "collperf/cost_models.hpp"

#include <bit>
#include <string>

#include "collperf/error.hpp"

namespace collperf {

namespace {

void require_inputs(int P, Bytes m) {
  if (P < 2) throw ModelError("process count must be at least 2, got " + std::to_string(P));
  if (m < 1) throw ModelError("message size must be at least 1, got " + std::to_string(m));
}

void require_segment(Bytes m, const SegmentSpec& seg) {
  if (make_segment(m, seg.size, seg.unit) != seg) {
    throw ModelError("segment layout does not describe a " + std::to_string(m) + "-byte message");
  }
}

// Accumulates labelled terms; the prediction time is their in-order sum.
class Builder {
 public:
  Builder(const ParamTable& table, Strategy strategy, int P, Bytes m)
      : table_(table) {
    require_inputs(P, m);
    out_.strategy = strategy;
    out_.processes = P;
    out_.message = m;
  }

  double g(Bytes size) { return query(size).gap; }
  double os(Bytes size) { return query(size).send_overhead; }
  double orecv(Bytes size) { return query(size).recv_overhead; }
  double L() const { return table_.latency(); }

  Builder& term(std::string label, Seconds value) {
    out_.terms.push_back({std::move(label), value});
    return *this;
  }
  Builder& segment(const SegmentSpec& seg) {
    require_segment(out_.message, seg);
    out_.segment = seg;
    return *this;
  }
  Builder& bound() {
    out_.upper_bound = true;
    return *this;
  }

  Prediction done() {
    Seconds total = 0;
    for (const auto& t : out_.terms) total += t.value;
    out_.time = total;
    return std::move(out_);
  }

 private:
  ParamSample query(Bytes size) {
    ParamSample s = table_.sample(size);
    out_.extrapolated = out_.extrapolated || s.extrapolated;
    return s;
  }

  const ParamTable& table_;
  Prediction out_;
};

constexpr Strategy bcast(Variant v) { return {Family::broadcast, v}; }
constexpr Strategy scat(Variant v) { return {Family::scatter, v}; }
constexpr Strategy a2a(Variant v) { return {Family::alltoall, v}; }

}  // namespace

int floor_log2(std::uint64_t x) { return static_cast<int>(std::bit_width(x)) - 1; }

int ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : static_cast<int>(std::bit_width(x - 1)); }

Prediction bcast_flat(const ParamTable& table, int P, Bytes m) {
  Builder b(table, bcast(Variant::flat), P, m);
  return b.term("(P-1)*g(m)", (P - 1) * b.g(m)).term("L", b.L()).done();
}

Prediction bcast_flat_rendezvous(const ParamTable& table, int P, Bytes m) {
  Builder b(table, bcast(Variant::flat_rendezvous), P, m);
  return b.term("(P-1)*g(m)", (P - 1) * b.g(m))
      .term("2*g(1)", 2 * b.g(1))
      .term("3*L", 3 * b.L())
      .done();
}

Prediction bcast_flat_segmented(const ParamTable& table, int P, Bytes m, const SegmentSpec& seg) {
  Builder b(table, bcast(Variant::flat_segmented), P, m);
  b.segment(seg);
  const double k = static_cast<double>(seg.count);
  return b.term("(P-1)*g(s)*k", (P - 1) * (b.g(seg.size) * k)).term("L", b.L()).done();
}

Prediction bcast_chain(const ParamTable& table, int P, Bytes m) {
  Builder b(table, bcast(Variant::chain), P, m);
  return b.term("(P-1)*(g(m)+L)", (P - 1) * (b.g(m) + b.L())).done();
}

Prediction bcast_chain_rendezvous(const ParamTable& table, int P, Bytes m) {
  Builder b(table, bcast(Variant::chain_rendezvous), P, m);
  const double hop = b.g(m) + 2 * b.g(1) + 3 * b.L();
  return b.term("(P-1)*(g(m)+2*g(1)+3*L)", (P - 1) * hop).done();
}

Prediction bcast_pipeline(const ParamTable& table, int P, Bytes m, const SegmentSpec& seg) {
  Builder b(table, bcast(Variant::pipeline), P, m);
  b.segment(seg);
  const double gs = b.g(seg.size);
  return b.term("(P-1)*(g(s)+L)", (P - 1) * (gs + b.L()))
      .term("g(s)*(k-1)", gs * static_cast<double>(seg.count - 1))
      .done();
}

Prediction bcast_binary(const ParamTable& table, int P, Bytes m) {
  Builder b(table, bcast(Variant::binary), P, m);
  const int depth = ceil_log2(static_cast<std::uint64_t>(P));
  return b.term("ceil(log2 P)*(2*g(m)+L) [upper bound]", depth * (2 * b.g(m) + b.L()))
      .bound()
      .done();
}

Prediction bcast_binomial(const ParamTable& table, int P, Bytes m) {
  Builder b(table, bcast(Variant::binomial), P, m);
  const auto p = static_cast<std::uint64_t>(P);
  return b.term("floor(log2 P)*g(m)", floor_log2(p) * b.g(m))
      .term("ceil(log2 P)*L", ceil_log2(p) * b.L())
      .done();
}

Prediction bcast_binomial_rendezvous(const ParamTable& table, int P, Bytes m) {
  Builder b(table, bcast(Variant::binomial_rendezvous), P, m);
  const auto p = static_cast<std::uint64_t>(P);
  return b.term("floor(log2 P)*g(m)", floor_log2(p) * b.g(m))
      .term("ceil(log2 P)*(2*g(1)+3*L)", ceil_log2(p) * (2 * b.g(1) + 3 * b.L()))
      .done();
}

Prediction bcast_binomial_segmented(const ParamTable& table, int P, Bytes m,
                                    const SegmentSpec& seg) {
  Builder b(table, bcast(Variant::binomial_segmented), P, m);
  b.segment(seg);
  const auto p = static_cast<std::uint64_t>(P);
  const double k = static_cast<double>(seg.count);
  return b.term("floor(log2 P)*g(s)*k", floor_log2(p) * (b.g(seg.size) * k))
      .term("ceil(log2 P)*L", ceil_log2(p) * b.L())
      .done();
}

Prediction scatter_flat(const ParamTable& table, int P, Bytes m) {
  Builder b(table, scat(Variant::flat), P, m);
  return b.term("(P-1)*g(m)", (P - 1) * b.g(m)).term("L", b.L()).done();
}

Prediction scatter_chain(const ParamTable& table, int P, Bytes m) {
  Builder b(table, scat(Variant::chain), P, m);
  double gaps = 0;
  for (int j = 1; j <= P - 1; ++j) gaps += b.g(j * m);
  return b.term("sum_{j=1}^{P-1} g(j*m)", gaps).term("(P-1)*L", (P - 1) * b.L()).done();
}

Prediction scatter_binomial(const ParamTable& table, int P, Bytes m) {
  Builder b(table, scat(Variant::binomial), P, m);
  const int rounds = ceil_log2(static_cast<std::uint64_t>(P));
  double gaps = 0;
  for (int j = 0; j < rounds; ++j) gaps += b.g((Bytes{1} << j) * m);
  return b.term("sum_{j<ceil(log2 P)} g(2^j*m)", gaps)
      .term("ceil(log2 P)*L", rounds * b.L())
      .done();
}

Prediction alltoall_lower(const ParamTable& table, int P, Bytes m) {
  Builder b(table, a2a(Variant::lower), P, m);
  return b.term("(P-1)*os(m)", (P - 1) * b.os(m))
      .term("(P-1)*or(m)", (P - 1) * b.orecv(m))
      .term("L", b.L())
      .done();
}

Prediction alltoall_upper(const ParamTable& table, int P, Bytes m) {
  Builder b(table, a2a(Variant::upper), P, m);
  return b.term("(P-1)*g(m)", (P - 1) * b.g(m))
      .term("(P-1)*or(m)", (P - 1) * b.orecv(m))
      .term("L", b.L())
      .done();
}

bool tree_feasible(std::int64_t d, std::int64_t h, std::int64_t P) {
  if (d < 1 || h < 0 || P < 1) return false;
  if (d == 1) return h >= P - 1;
  std::int64_t reach = 0;
  std::int64_t level = 1;
  for (std::int64_t i = 0; i <= h; ++i) {
    reach += level;
    if (reach >= P) return true;
    level = level > P / d ? P : level * d;  // saturate, P is enough
  }
  return false;
}

Prediction evaluate(const ParamTable& table, Strategy strategy, int P, Bytes m,
                    const std::optional<SegmentSpec>& seg) {
  if (!is_valid(strategy)) throw ModelError("unknown strategy " + to_string(strategy));
  if (is_segmented(strategy.variant) && !seg) {
    throw ModelError(to_string(strategy) + " needs a segment size");
  }
  if (strategy.family == Family::scatter) {
    switch (strategy.variant) {
      case Variant::flat: return scatter_flat(table, P, m);
      case Variant::chain: return scatter_chain(table, P, m);
      default: return scatter_binomial(table, P, m);
    }
  }
  if (strategy.family == Family::alltoall) {
    switch (strategy.variant) {
      case Variant::lower: return alltoall_lower(table, P, m);
      case Variant::upper: return alltoall_upper(table, P, m);
      default: throw ModelError("contended all-to-all needs a contention factor");
    }
  }
  switch (strategy.variant) {
    case Variant::flat: return bcast_flat(table, P, m);
    case Variant::chain: return bcast_chain(table, P, m);
    case Variant::binomial: return bcast_binomial(table, P, m);
    case Variant::binary: return bcast_binary(table, P, m);
    case Variant::flat_segmented: return bcast_flat_segmented(table, P, m, *seg);
    case Variant::pipeline: return bcast_pipeline(table, P, m, *seg);
    case Variant::binomial_segmented: return bcast_binomial_segmented(table, P, m, *seg);
    case Variant::flat_rendezvous: return bcast_flat_rendezvous(table, P, m);
    case Variant::chain_rendezvous: return bcast_chain_rendezvous(table, P, m);
    case Variant::binomial_rendezvous: return bcast_binomial_rendezvous(table, P, m);
    default: break;
  }
  throw ModelError("unknown strategy " + to_string(strategy));
}

}  // namespace collperf

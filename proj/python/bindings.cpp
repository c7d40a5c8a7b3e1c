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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "collperf/contention.hpp"
#include "collperf/cost_models.hpp"
#include "collperf/error.hpp"
#include "collperf/segment_optimizer.hpp"
#include "collperf/selector.hpp"
#include "collperf/simulator.hpp"

namespace py = pybind11;
using namespace collperf;

namespace {

Strategy strategy_from(const std::string& family, const std::string& variant) {
  const auto f = parse_family(family);
  if (!f) throw ModelError("unknown family '" + family + "'");
  const auto v = parse_variant(variant);
  if (!v || !is_valid({*f, *v})) throw ModelError("unknown " + family + " strategy '" + variant + "'");
  return {*f, *v};
}

Family family_from(const std::string& name) {
  const auto f = parse_family(name);
  if (!f) throw ModelError("unknown family '" + name + "'");
  return *f;
}

Variant variant_from(const std::string& name) {
  const auto v = parse_variant(name);
  if (!v) throw ModelError("unknown strategy '" + name + "'");
  return *v;
}

std::optional<ContentionModel> gamma_model(std::optional<double> gamma) {
  if (!gamma) return std::nullopt;
  return ContentionModel::fixed(*gamma);
}

std::optional<SegmentSpec> segment_of(Bytes m, std::optional<Bytes> segment, Bytes unit) {
  if (!segment) return std::nullopt;
  return make_segment(m, *segment, unit);
}

py::dict prediction_dict(const Prediction& p) {
  py::dict d;
  d["family"] = std::string(to_string(p.strategy.family));
  d["strategy"] = std::string(to_string(p.strategy.variant));
  d["P"] = p.processes;
  d["m"] = p.message;
  d["segment"] = p.segment ? py::object(py::int_(p.segment->size)) : py::object(py::none());
  d["time"] = p.time;
  py::list terms;
  for (const CostTerm& t : p.terms) terms.append(py::make_tuple(t.label, t.value));
  d["terms"] = terms;
  d["flags"] = prediction_flags(p);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Collective communication cost models, segment tuning and simulation";

  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<ModelError> model_error(m, "ModelError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const ModelError& e) {
      py::set_error(model_error, e.what());
    }
  });

  py::class_<ParamTable>(m, "ParamTable")
      .def(py::init([](Seconds latency, const std::vector<std::tuple<Bytes, double, double, double>>& rows) {
             std::vector<ParamRow> out;
             for (const auto& [size, g, os, orr] : rows) out.push_back({size, g, os, orr});
             return ParamTable(latency, std::move(out));
           }),
           py::arg("latency"), py::arg("rows"),
           "rows: (bytes, gap, send_overhead, recv_overhead) tuples with increasing sizes")
      .def_property_readonly("latency", &ParamTable::latency)
      .def_property_readonly("max_measured_size", &ParamTable::max_measured_size)
      .def("gap", &ParamTable::gap, py::arg("size"))
      .def("send_overhead", &ParamTable::send_overhead, py::arg("size"))
      .def("recv_overhead", &ParamTable::recv_overhead, py::arg("size"))
      .def("extrapolates", &ParamTable::extrapolates, py::arg("size"))
      .def("scaled", &ParamTable::scaled, py::arg("factor"));

  m.def("load_table", [](const std::string& text) { return load_table(text); }, py::arg("text"));
  m.def("load_table_file", [](const std::string& path) { return load_table_file(path); },
        py::arg("path"));

  m.def(
      "predict",
      [](const ParamTable& table, const std::string& family, const std::string& strategy, int P,
         Bytes message, std::optional<Bytes> segment, Bytes unit, std::optional<double> gamma) {
        const Strategy s = strategy_from(family, strategy);
        return prediction_dict(
            predict(table, s, P, message, segment_of(message, segment, unit), gamma_model(gamma)));
      },
      py::arg("table"), py::arg("family"), py::arg("strategy"), py::arg("P"), py::arg("m"),
      py::arg("segment") = py::none(), py::arg("unit") = 1, py::arg("gamma") = py::none());

  m.def(
      "optimize_segment",
      [](const ParamTable& table, const std::string& strategy, int P, Bytes message, Bytes unit) {
        const SegmentSearchResult r =
            optimize_segment(segmented_model(variant_from(strategy)), table, P, message, unit);
        py::dict d;
        d["segment"] = r.best.size;
        d["segments"] = r.best.count;
        d["time"] = r.time;
        d["evaluated"] = r.evaluated;
        d["budget_exhausted"] = r.budget_exhausted;
        return d;
      },
      py::arg("table"), py::arg("strategy"), py::arg("P"), py::arg("m"), py::arg("unit") = 1);

  m.def(
      "simulate",
      [](const ParamTable& table, const std::string& family, const std::string& variant, int P,
         Bytes message, std::optional<Bytes> segment) {
        Timeline tl;
        const Family f = family_from(family);
        if (f == Family::alltoall) {
          if (variant != "serialized" && variant != "overlapped") {
            throw ModelError("alltoall simulation variant must be serialized or overlapped");
          }
          tl = simulate_alltoall(table, P, message,
                                 variant == "serialized" ? AlltoallMode::serialized
                                                         : AlltoallMode::overlapped);
        } else if (f == Family::broadcast) {
          tl = simulate_broadcast(table, P, message, variant_from(variant),
                                  segment_of(message, segment, 1));
        } else {
          tl = simulate_scatter(table, P, message, variant_from(variant));
        }
        std::ostringstream text;
        write_timeline(text, tl);
        py::dict d;
        d["completion"] = tl.completion;
        d["per_node_completion"] = tl.per_node_completion;
        d["events"] = text.str();
        d["violations"] = check_timeline(tl, table);
        return d;
      },
      py::arg("table"), py::arg("family"), py::arg("variant"), py::arg("P"), py::arg("m"),
      py::arg("segment") = py::none());

  m.def(
      "fit_gamma",
      [](const ParamTable& table, const std::vector<std::tuple<int, Bytes, double>>& samples) {
        MeasurementSet set;
        for (const auto& [P, bytes, observed] : samples) set.push_back({P, bytes, observed});
        const ContentionModel c = fit_gamma(table, set);
        py::dict d;
        d["gamma"] = c.gamma;
        d["residual"] = c.fit_residual;
        d["samples"] = c.sample_count;
        d["skipped"] = c.skipped;
        d["out_of_range"] = c.out_of_range();
        return d;
      },
      py::arg("table"), py::arg("measurements"), "measurements: (P, bytes, seconds) tuples");

  m.def(
      "predict_alltoall",
      [](const ParamTable& table, int P, Bytes message, double gamma) {
        return prediction_dict(predict_alltoall(table, P, message, ContentionModel::fixed(gamma)));
      },
      py::arg("table"), py::arg("P"), py::arg("m"), py::arg("gamma"));

  m.def("linear_contention_time", &linear_contention_time, py::arg("latency"), py::arg("bytes"),
        py::arg("bandwidth"), py::arg("gamma"));

  m.def(
      "select",
      [](const ParamTable& table, const std::string& family, int P, Bytes message, Bytes unit,
         std::optional<std::vector<std::string>> strategies, std::optional<double> gamma) {
        const Family f = family_from(family);
        std::optional<std::vector<Strategy>> candidates;
        if (strategies) {
          candidates.emplace();
          for (const auto& name : *strategies) candidates->push_back(strategy_from(family, name));
        }
        const SelectionReport r = select(table, f, P, message, unit, candidates, gamma_model(gamma));
        py::dict d;
        d["winner"] = std::string(to_string(r.winner.variant));
        d["winner_segment"] =
            r.winner_segment ? py::object(py::int_(r.winner_segment->size)) : py::object(py::none());
        py::list ranked;
        for (const Prediction& p : r.ranked) ranked.append(prediction_dict(p));
        d["ranked"] = ranked;
        d["caveats"] = r.caveats;
        return d;
      },
      py::arg("table"), py::arg("family"), py::arg("P"), py::arg("m"), py::arg("unit") = 1,
      py::arg("strategies") = py::none(), py::arg("gamma") = py::none());
}

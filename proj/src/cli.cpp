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

#include "collperf/cli.hpp"

#include <charconv>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "collperf/contention.hpp"
#include "collperf/cost_models.hpp"
#include "collperf/error.hpp"
#include "collperf/params.hpp"
#include "collperf/segment_optimizer.hpp"
#include "collperf/selector.hpp"
#include "collperf/simulator.hpp"

namespace collperf::cli {

namespace {

// Bad command-line usage detected after CLI11 accepted the syntax.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T>
T to_number(std::string_view text, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

// "2,4,8" or "2:32" or "2:32:2".
std::vector<int> parse_process_axis(const std::string& text) {
  std::vector<int> out;
  if (text.find(':') != std::string::npos) {
    auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("bad process range '" + text + "'");
    const int first = to_number<int>(parts[0], "process count");
    const int last = to_number<int>(parts[1], "process count");
    const int step = parts.size() == 3 ? to_number<int>(parts[2], "process step") : 1;
    if (step < 1 || last < first) throw UsageError("bad process range '" + text + "'");
    for (int p = first; p <= last; p += step) out.push_back(p);
  } else {
    for (auto part : split(text, ',')) out.push_back(to_number<int>(part, "process count"));
  }
  return out;
}

std::vector<Bytes> parse_size_list(const std::string& text) {
  std::vector<Bytes> out;
  for (auto part : split(text, ',')) out.push_back(to_number<Bytes>(part, "message size"));
  return out;
}

// "start,factor,count": start, start*factor, ... (count values).
std::vector<Bytes> parse_size_ladder(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("message ladder must be 'start,factor,count'");
  const Bytes start = to_number<Bytes>(parts[0], "ladder start");
  const Bytes factor = to_number<Bytes>(parts[1], "ladder factor");
  const int count = to_number<int>(parts[2], "ladder count");
  if (start < 1 || factor < 2 || count < 1) throw UsageError("bad message ladder '" + text + "'");
  std::vector<Bytes> out;
  Bytes m = start;
  for (int i = 0; i < count; ++i) {
    out.push_back(m);
    if (i + 1 < count && m > std::numeric_limits<Bytes>::max() / factor) {
      throw UsageError("message ladder overflows");
    }
    m *= factor;
  }
  return out;
}

Family family_arg(const std::string& name) {
  auto f = parse_family(name);
  if (!f) throw UsageError("unknown family '" + name + "'");
  return *f;
}

Strategy strategy_arg(Family family, const std::string& name) {
  auto v = parse_variant(name);
  if (!v || !is_valid({family, *v})) {
    throw UsageError("unknown " + std::string(to_string(family)) + " strategy '" + name + "'");
  }
  return {family, *v};
}

std::vector<Strategy> strategy_list(Family family, const std::string& text) {
  std::vector<Strategy> out;
  for (auto part : split(text, ',')) out.push_back(strategy_arg(family, std::string(part)));
  return out;
}

struct GammaArgs {
  std::optional<double> literal;
  std::string file;
};

std::optional<ContentionModel> gamma_from(const GammaArgs& args, const ParamTable& table,
                                          std::ostream& err) {
  if (args.literal && !args.file.empty()) throw UsageError("give --gamma or --gamma-file, not both");
  if (args.literal) return ContentionModel::fixed(*args.literal);
  if (args.file.empty()) return std::nullopt;
  const ContentionModel fitted = fit_gamma(table, load_measurements(read_text_file(args.file)));
  err << "note: fitted gamma " << format_seconds(fitted.gamma) << " from " << fitted.sample_count
      << " measurements\n";
  if (fitted.out_of_range()) err << "warning: fitted gamma lies outside [0, 1]\n";
  return fitted;
}

void warn_extrapolated(const Prediction& p, const ParamTable& table, std::ostream& err) {
  if (p.extrapolated) {
    err << "warning: " << to_string(p.strategy) << " P=" << p.processes << " m=" << p.message
        << " uses parameters extrapolated above " << table.max_measured_size() << " bytes\n";
  }
}

void csv_row(std::ostream& out, const Prediction& p) {
  out << to_string(p.strategy.family) << ',' << to_string(p.strategy.variant) << ','
      << p.processes << ',' << p.message << ',';
  if (p.segment) out << p.segment->size;
  out << ',' << format_seconds(p.time) << '\n';
}

constexpr const char* kPredictionHeader = "family,strategy,P,m,segment,time_s\n";

Prediction predict_cell(const ParamTable& table, Strategy strategy, int P, Bytes m, Bytes unit,
                        std::optional<Bytes> segment,
                        const std::optional<ContentionModel>& contention) {
  if (!is_segmented(strategy.variant)) return predict(table, strategy, P, m, std::nullopt, contention);
  if (segment) return evaluate(table, strategy, P, m, make_segment(m, *segment, unit));
  const SegmentedModel model = segmented_model(strategy.variant);
  return model(table, P, m, optimize_segment(model, table, P, m, unit).best);
}

}  // namespace

std::string format_seconds(double seconds) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%#.9g", seconds);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Predict, tune and simulate collective communications from pLogP parameters",
               "collperf"};
  app.require_subcommand(1);

  std::string params_file;
  std::string family_name;
  std::string strategy_name;
  std::string strategies_text;
  std::string processes_text;
  std::string sizes_text;
  std::string ladder_text;
  std::string measurements_file;
  int processes = 0;
  Bytes message = 0;
  Bytes unit = 1;
  std::optional<Bytes> segment;
  bool auto_segment = false;
  GammaArgs gamma;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--params", params_file, "pLogP parameter file")->required();
  };
  auto add_gamma = [&](CLI::App* sub) {
    sub->add_option("--gamma", gamma.literal, "contention factor for the contended all-to-all");
    sub->add_option("--gamma-file", gamma.file, "measurement file to fit the contention factor");
  };

  CLI::App* predict_cmd = app.add_subcommand("predict", "Evaluate one model");
  add_params(predict_cmd);
  predict_cmd->add_option("--family", family_name)->required();
  predict_cmd->add_option("--strategy", strategy_name)->required();
  predict_cmd->add_option("-P", processes, "process count")->required();
  predict_cmd->add_option("-m", message, "message size in bytes")->required();
  predict_cmd->add_option("--segment", segment, "segment size in bytes");
  predict_cmd->add_flag("--auto-segment", auto_segment, "choose the segment size");
  predict_cmd->add_option("--unit", unit, "datatype size in bytes");
  add_gamma(predict_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Evaluate strategies over P and m axes");
  add_params(sweep_cmd);
  sweep_cmd->add_option("--family", family_name)->required();
  sweep_cmd->add_option("--strategies", strategies_text, "comma-separated strategies");
  sweep_cmd->add_option("-P", processes_text, "process counts: 2,4,8 or 2:32[:step]")->required();
  auto* sizes_opt = sweep_cmd->add_option("-m", sizes_text, "message sizes: 1,64,1024");
  auto* ladder_opt = sweep_cmd->add_option("--m-ladder", ladder_text, "start,factor,count");
  sizes_opt->excludes(ladder_opt);
  sweep_cmd->add_option("--unit", unit, "datatype size in bytes");
  add_gamma(sweep_cmd);

  CLI::App* segment_cmd = app.add_subcommand("segment", "Search the best segment size");
  add_params(segment_cmd);
  segment_cmd->add_option("--strategy", strategy_name, "flat_segmented, pipeline or binomial_segmented")
      ->required();
  segment_cmd->add_option("-P", processes)->required();
  segment_cmd->add_option("-m", message)->required();
  segment_cmd->add_option("--unit", unit);

  CLI::App* calibrate_cmd = app.add_subcommand("calibrate", "Fit the all-to-all contention factor");
  add_params(calibrate_cmd);
  calibrate_cmd->add_option("--measurements", measurements_file)->required();

  CLI::App* select_cmd = app.add_subcommand("select", "Rank strategies for one (P, m)");
  add_params(select_cmd);
  select_cmd->add_option("--family", family_name)->required();
  select_cmd->add_option("-P", processes)->required();
  select_cmd->add_option("-m", message)->required();
  select_cmd->add_option("--unit", unit);
  select_cmd->add_option("--strategies", strategies_text);
  add_gamma(select_cmd);

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Run the discrete-event schedule");
  add_params(simulate_cmd);
  simulate_cmd->add_option("--family", family_name)->required();
  simulate_cmd->add_option("--variant", strategy_name,
                           "flat, chain, binomial; serialized or overlapped for alltoall")
      ->required();
  simulate_cmd->add_option("-P", processes)->required();
  simulate_cmd->add_option("-m", message)->required();
  simulate_cmd->add_option("--segment", segment);
  simulate_cmd->add_option("--unit", unit);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    const ParamTable table = load_table_file(params_file);

    if (predict_cmd->parsed()) {
      const Strategy strategy = strategy_arg(family_arg(family_name), strategy_name);
      if (is_segmented(strategy.variant) && !segment && !auto_segment) {
        throw UsageError(to_string(strategy) + " needs --segment or --auto-segment");
      }
      if (!is_segmented(strategy.variant) && (segment || auto_segment)) {
        throw UsageError(to_string(strategy) + " takes no segment");
      }
      const auto contention = gamma_from(gamma, table, err);
      if (strategy.variant == Variant::contended && !contention) {
        throw UsageError("contended all-to-all needs --gamma or --gamma-file");
      }
      const Prediction p = predict_cell(table, strategy, processes, message, unit,
                                        auto_segment ? std::nullopt : segment, contention);
      warn_extrapolated(p, table, err);
      out << kPredictionHeader;
      csv_row(out, p);
      return kOk;
    }

    if (sweep_cmd->parsed()) {
      const Family family = family_arg(family_name);
      std::vector<Strategy> strategies =
          strategies_text.empty() ? default_candidates(family) : strategy_list(family, strategies_text);
      const std::vector<int> ps = parse_process_axis(processes_text);
      std::vector<Bytes> ms;
      if (!sizes_text.empty()) ms = parse_size_list(sizes_text);
      else if (!ladder_text.empty()) ms = parse_size_ladder(ladder_text);
      else throw UsageError("sweep needs -m or --m-ladder");
      const auto contention = gamma_from(gamma, table, err);
      if (!contention && strategies_text.empty()) {
        std::erase(strategies, Strategy{Family::alltoall, Variant::contended});
      }

      std::ostringstream rows;
      for (const Strategy& s : strategies) {
        for (int P : ps) {
          for (Bytes m : ms) {
            try {
              const Prediction p = predict_cell(table, s, P, m, unit, std::nullopt, contention);
              warn_extrapolated(p, table, err);
              csv_row(rows, p);
            } catch (const ModelError& e) {
              err << "skipped " << to_string(s) << " P=" << P << " m=" << m << ": " << e.what()
                  << '\n';
            }
          }
        }
      }
      out << kPredictionHeader << rows.str();
      return kOk;
    }

    if (segment_cmd->parsed()) {
      const Strategy strategy = strategy_arg(Family::broadcast, strategy_name);
      if (!is_segmented(strategy.variant)) {
        throw UsageError(strategy_name + " is not a segmented strategy");
      }
      const SegmentedModel model = segmented_model(strategy.variant);
      const SegmentSearchResult result = optimize_segment(model, table, processes, message, unit);
      out << "stage,segment,segments,time_s\n";
      for (const TracePoint& t : result.trace) {
        out << to_string(t.stage) << ',' << t.segment << ',' << (message + t.segment - 1) / t.segment
            << ',' << format_seconds(t.time) << '\n';
      }
      out << "best," << result.best.size << ',' << result.best.count << ','
          << format_seconds(result.time) << '\n';
      if (result.budget_exhausted) err << "warning: hill-climb step budget exhausted\n";
      return kOk;
    }

    if (calibrate_cmd->parsed()) {
      const MeasurementSet set = load_measurements(read_text_file(measurements_file));
      const ContentionModel model = fit_gamma(table, set);
      out << "gamma " << format_seconds(model.gamma) << '\n'
          << "residual_s " << format_seconds(model.fit_residual) << '\n'
          << "samples " << model.sample_count << '\n'
          << "skipped " << model.skipped << '\n'
          << "range " << (model.out_of_range() ? "outside [0,1]" : "ok") << '\n';
      if (model.out_of_range()) err << "warning: fitted gamma lies outside [0, 1]\n";
      if (model.skipped > 0) {
        err << "note: " << model.skipped << " measurements with equal bounds were skipped\n";
      }
      return kOk;
    }

    if (select_cmd->parsed()) {
      const Family family = family_arg(family_name);
      std::optional<std::vector<Strategy>> candidates;
      if (!strategies_text.empty()) candidates = strategy_list(family, strategies_text);
      const auto contention = gamma_from(gamma, table, err);
      const SelectionReport report =
          select(table, family, processes, message, unit, candidates, contention);
      out << "rank,strategy,segment,time_s,caveats\n";
      int rank = 1;
      for (const Prediction& p : report.ranked) {
        out << rank++ << ',' << to_string(p.strategy.variant) << ',';
        if (p.segment) out << p.segment->size;
        out << ',' << format_seconds(p.time) << ',';
        const auto flags = prediction_flags(p);
        for (std::size_t i = 0; i < flags.size(); ++i) out << (i ? ";" : "") << flags[i];
        out << '\n';
      }
      for (const std::string& c : report.caveats) err << "note: " << c << '\n';
      return kOk;
    }

    if (simulate_cmd->parsed()) {
      const Family family = family_arg(family_name);
      std::optional<SegmentSpec> seg;
      if (segment) {
        if (family != Family::broadcast) throw UsageError("only broadcast simulations take --segment");
        seg = make_segment(message, *segment, unit);
      }
      Timeline tl;
      Prediction closed;
      if (family == Family::alltoall) {
        if (strategy_name != "serialized" && strategy_name != "overlapped") {
          throw UsageError("alltoall variant must be serialized or overlapped");
        }
        const bool serialized = strategy_name == "serialized";
        tl = simulate_alltoall(table, processes, message,
                               serialized ? AlltoallMode::serialized : AlltoallMode::overlapped);
        closed = serialized ? alltoall_upper(table, processes, message)
                            : alltoall_lower(table, processes, message);
      } else {
        const Strategy base = strategy_arg(family, strategy_name);
        if (base.variant != Variant::flat && base.variant != Variant::chain &&
            base.variant != Variant::binomial) {
          throw UsageError("simulation variant must be flat, chain or binomial");
        }
        if (family == Family::broadcast) {
          tl = simulate_broadcast(table, processes, message, base.variant, seg);
          Strategy model = base;
          if (seg) {
            model.variant = base.variant == Variant::flat    ? Variant::flat_segmented
                            : base.variant == Variant::chain ? Variant::pipeline
                                                             : Variant::binomial_segmented;
          }
          closed = evaluate(table, model, processes, message, seg);
        } else {
          tl = simulate_scatter(table, processes, message, base.variant);
          closed = evaluate(table, base, processes, message);
        }
      }
      write_timeline(out, tl);
      out << "completion " << format_seconds(tl.completion) << " closed_form "
          << format_seconds(closed.time) << '\n';
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return kModelError;
  }
  return kBadArguments;
}

}  // namespace collperf::cli

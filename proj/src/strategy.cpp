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

#include "collperf/strategy.hpp"

#include <array>
#include <utility>

namespace collperf {

namespace {

constexpr std::array<std::pair<Variant, std::string_view>, 13> kVariantNames{{
    {Variant::flat, "flat"},
    {Variant::chain, "chain"},
    {Variant::binomial, "binomial"},
    {Variant::binary, "binary"},
    {Variant::flat_segmented, "flat_segmented"},
    {Variant::pipeline, "pipeline"},
    {Variant::binomial_segmented, "binomial_segmented"},
    {Variant::flat_rendezvous, "flat_rendezvous"},
    {Variant::chain_rendezvous, "chain_rendezvous"},
    {Variant::binomial_rendezvous, "binomial_rendezvous"},
    {Variant::lower, "lower"},
    {Variant::upper, "upper"},
    {Variant::contended, "contended"},
}};

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::broadcast: return "broadcast";
    case Family::scatter: return "scatter";
    case Family::alltoall: return "alltoall";
  }
  return "?";
}

std::string_view to_string(Variant variant) {
  for (const auto& [v, name] : kVariantNames) {
    if (v == variant) return name;
  }
  return "?";
}

std::string to_string(Strategy strategy) {
  return std::string(to_string(strategy.family)) + "/" + std::string(to_string(strategy.variant));
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::broadcast, Family::scatter, Family::alltoall}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "chain_segmented") return Variant::pipeline;
  if (name == "lower_bound") return Variant::lower;
  if (name == "upper_bound") return Variant::upper;
  for (const auto& [v, n] : kVariantNames) {
    if (n == name) return v;
  }
  return std::nullopt;
}

bool is_segmented(Variant variant) {
  return variant == Variant::flat_segmented || variant == Variant::pipeline ||
         variant == Variant::binomial_segmented;
}

std::vector<Strategy> strategies_of(Family family) {
  std::vector<Strategy> out;
  for (const auto& [v, name] : kVariantNames) {
    if (is_valid({family, v})) out.push_back({family, v});
  }
  return out;
}

bool is_valid(Strategy s) {
  switch (s.family) {
    case Family::broadcast:
      return s.variant <= Variant::binomial_rendezvous;
    case Family::scatter:
      return s.variant == Variant::flat || s.variant == Variant::chain ||
             s.variant == Variant::binomial;
    case Family::alltoall:
      return s.variant == Variant::lower || s.variant == Variant::upper ||
             s.variant == Variant::contended;
  }
  return false;
}

std::vector<Strategy> default_candidates(Family family) {
  switch (family) {
    case Family::broadcast:
      return {{family, Variant::flat}, {family, Variant::chain}, {family, Variant::binomial},
              {family, Variant::pipeline}};
    case Family::scatter:
      return strategies_of(family);
    case Family::alltoall:
      return strategies_of(family);
  }
  return {};
}

}  // namespace collperf

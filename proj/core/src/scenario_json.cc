// Copyright 2026 The lmimd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lmimd/scenario_json.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"
#include "lmimd/audit.h"
#include "lmimd/errors.h"

namespace lmimd {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void Fail(const std::string& where, const std::string& what) {
  throw ParseError(fmt::format("{}: {}", where, what));
}

void RejectUnknownKeys(const json& obj, const std::string& where,
                       std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) Fail(where + "." + key, "unknown field");
  }
}

const json& Field(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) Fail(where + "." + key, "missing required field");
  return *it;
}

double Number(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && (v == "inf" || v == "infinity")) return kInf;
  Fail(where, "expected a number");
}

Round Integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) Fail(where, "expected an integer");
  return v.get<Round>();
}

std::string String(const json& v, const std::string& where) {
  if (!v.is_string()) Fail(where, "expected a string");
  return v.get<std::string>();
}

CapacityTimeline ParseCapacity(const json& v, const std::string& where) {
  if (v.is_number() || v.is_string()) {
    return CapacityTimeline::Constant(Number(v, where));
  }
  if (!v.is_array()) Fail(where, "expected a number or a list of steps");
  std::vector<CapacityStep> steps;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string at = fmt::format("{}[{}]", where, i);
    if (!v[i].is_object()) Fail(at, "expected {from_round, value}");
    RejectUnknownKeys(v[i], at, {"from_round", "value"});
    steps.push_back({Integer(Field(v[i], at, "from_round"), at + ".from_round"),
                     Number(Field(v[i], at, "value"), at + ".value")});
  }
  return CapacityTimeline(std::move(steps));
}

ConnectionSpec ParseConnection(const json& v, const std::string& where,
                               double epsilon) {
  if (!v.is_object()) Fail(where, "expected an object");
  RejectUnknownKeys(v, where,
                    {"id", "route", "value", "start", "end", "total_delay",
                     "hop_delays", "start_rate", "alpha", "beta",
                     "beta_scale"});
  ConnectionSpec c;
  c.id = String(Field(v, where, "id"), where + ".id");
  const json& route = Field(v, where, "route");
  if (!route.is_array()) Fail(where + ".route", "expected a list");
  for (std::size_t i = 0; i < route.size(); ++i) {
    c.route.push_back(String(route[i], fmt::format("{}.route[{}]", where, i)));
  }
  if (v.contains("value")) c.value = Number(v["value"], where + ".value");
  c.start = Integer(Field(v, where, "start"), where + ".start");
  c.end = Integer(Field(v, where, "end"), where + ".end");
  c.total_delay = v.contains("total_delay")
                      ? Integer(v["total_delay"], where + ".total_delay")
                      : 0;
  if (v.contains("hop_delays")) {
    const json& hd = v["hop_delays"];
    if (!hd.is_array()) Fail(where + ".hop_delays", "expected a list");
    for (std::size_t i = 0; i < hd.size(); ++i) {
      c.hop_delays.push_back(
          Integer(hd[i], fmt::format("{}.hop_delays[{}]", where, i)));
    }
  } else if (c.total_delay == 0) {
    c.hop_delays.assign(c.route.size(), 0);
  } else {
    Fail(where + ".hop_delays", "required when total_delay > 0");
  }
  c.start_rate = Number(Field(v, where, "start_rate"), where + ".start_rate");

  const bool has_alpha = v.contains("alpha");
  const bool has_beta = v.contains("beta");
  if (has_alpha != has_beta) {
    Fail(where, "alpha and beta must be given together");
  }
  if (has_alpha) {
    if (v.contains("beta_scale")) {
      Fail(where + ".beta_scale", "not allowed with explicit alpha/beta");
    }
    c.alpha = Number(v["alpha"], where + ".alpha");
    c.beta = Number(v["beta"], where + ".beta");
  } else {
    // Preset: derive the pair from epsilon and the connection's value.
    const double scale =
        v.contains("beta_scale") ? Number(v["beta_scale"], where + ".beta_scale")
                                 : 1.0;
    try {
      const auto params = TheoremParameters(epsilon, c.value, scale);
      c.alpha = params.alpha;
      c.beta = params.beta;
    } catch (const std::invalid_argument& e) {
      Fail(where, e.what());
    }
  }
  return c;
}

LossPolicy ParsePolicy(const json& v) {
  const std::string where = "loss_policy";
  LossPolicy policy;
  if (v.is_string()) {
    if (v == "proportional") return policy;
    Fail(where, "expected \"proportional\" or an object");
  }
  if (!v.is_object()) Fail(where, "expected an object");
  RejectUnknownKeys(v, where, {"kind", "seed", "target"});
  const std::string kind = String(Field(v, where, "kind"), where + ".kind");
  if (kind == "proportional") {
    policy.kind = LossPolicyKind::kProportional;
  } else if (kind == "adversarial_fair") {
    policy.kind = LossPolicyKind::kAdversarialFair;
  } else {
    Fail(where + ".kind", fmt::format("unknown policy '{}'", kind));
  }
  if (v.contains("seed")) {
    if (!v["seed"].is_number_unsigned()) {
      Fail(where + ".seed", "expected a non-negative integer");
    }
    policy.seed = v["seed"].get<std::uint64_t>();
  }
  if (v.contains("target") && !v["target"].is_null()) {
    policy.target_path = String(v["target"], where + ".target");
  }
  return policy;
}

json EmitNumber(double x) {
  if (std::isinf(x) && x > 0) return "inf";
  return x;
}

}  // namespace

Scenario ParseScenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) Fail("document", "expected a JSON object");
  RejectUnknownKeys(doc, "document",
                    {"resources", "connections", "epsilon", "loss_policy"});

  Scenario s;
  s.epsilon = Number(Field(doc, "document", "epsilon"), "epsilon");
  if (doc.contains("loss_policy")) s.loss_policy = ParsePolicy(doc["loss_policy"]);

  const json& resources = Field(doc, "document", "resources");
  if (!resources.is_array()) Fail("resources", "expected a list");
  for (std::size_t i = 0; i < resources.size(); ++i) {
    const std::string at = fmt::format("resources[{}]", i);
    const json& r = resources[i];
    if (!r.is_object()) Fail(at, "expected an object");
    RejectUnknownKeys(r, at, {"id", "capacity"});
    s.resources.push_back({String(Field(r, at, "id"), at + ".id"),
                           ParseCapacity(Field(r, at, "capacity"),
                                         at + ".capacity")});
  }

  const json& connections = Field(doc, "document", "connections");
  if (!connections.is_array()) Fail("connections", "expected a list");
  for (std::size_t i = 0; i < connections.size(); ++i) {
    s.connections.push_back(ParseConnection(
        connections[i], fmt::format("connections[{}]", i), s.epsilon));
  }
  return s;
}

Scenario LoadScenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(fmt::format("cannot open '{}'", file.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseScenario(buf.str());
}

std::string EmitScenario(const Scenario& scenario) {
  json doc;
  doc["epsilon"] = scenario.epsilon;

  json policy;
  const auto& lp = scenario.loss_policy;
  policy["kind"] = lp.kind == LossPolicyKind::kProportional
                       ? "proportional"
                       : "adversarial_fair";
  policy["seed"] = lp.seed;
  if (lp.target_path) policy["target"] = *lp.target_path;
  doc["loss_policy"] = policy;

  doc["resources"] = json::array();
  for (const auto& r : scenario.resources) {
    json steps = json::array();
    for (const auto& step : r.capacity.steps()) {
      steps.push_back(
          {{"from_round", step.from_round}, {"value", EmitNumber(step.value)}});
    }
    doc["resources"].push_back({{"id", r.id}, {"capacity", steps}});
  }

  doc["connections"] = json::array();
  for (const auto& c : scenario.connections) {
    doc["connections"].push_back({{"id", c.id},
                                  {"route", c.route},
                                  {"value", c.value},
                                  {"start", c.start},
                                  {"end", c.end},
                                  {"total_delay", c.total_delay},
                                  {"hop_delays", c.hop_delays},
                                  {"start_rate", c.start_rate},
                                  {"alpha", c.alpha},
                                  {"beta", c.beta}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace lmimd

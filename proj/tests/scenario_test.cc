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


#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "lmimd/errors.h"
#include "lmimd/scenario.h"
#include "lmimd/scenario_json.h"
#include "random_scenario.h"

namespace lmimd {
namespace {

using testing::Connection;
using testing::SingleLink;

bool HasViolation(const Scenario& s, const std::string& needle) {
  for (const auto& v : Validate(s)) {
    if (v.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

Scenario ThreeHop() {
  Scenario s;
  for (const char* id : {"a", "b", "c"}) {
    s.resources.push_back({id, CapacityTimeline::Constant(10)});
  }
  ConnectionSpec c = Connection("p", {"a", "b", "c"}, 0, 9);
  c.total_delay = 4;
  c.hop_delays = {4, 2, 0};
  s.connections.push_back(c);
  return s;
}

TEST(ValidateTest, SingleLinkIsValid) {
  EXPECT_TRUE(Validate(SingleLink(10, 1, 0.01, 0.1, 5)).empty());
}

TEST(ValidateTest, AlphaEqualToBeta) {
  Scenario s = SingleLink(10, 1, 0.1, 0.1, 5);
  const auto v = Validate(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].message, "alpha must be < beta");
  EXPECT_NE(v[0].subject.find("flow"), std::string::npos);
}

TEST(ValidateTest, HopDelayAboveTotalDelay) {
  Scenario s = SingleLink(10, 1, 0.01, 0.1, 5, 2);
  s.connections[0].hop_delays = {3};
  EXPECT_TRUE(HasViolation(s, "delay bound"));
}

TEST(ValidateTest, DecreasingPreDelay) {
  Scenario s = ThreeHop();
  s.connections[0].hop_delays = {2, 4, 0};
  EXPECT_TRUE(HasViolation(s, "pre-delay decreases"));
}

TEST(ValidateTest, ReportsEveryViolation) {
  Scenario s = SingleLink(-1, 0, 0.2, 1.5, 5);
  s.epsilon = 1.0;
  s.connections[0].value = 2.0;
  s.connections[0].route.push_back("missing");
  s.connections[0].hop_delays.push_back(0);
  EXPECT_GE(Validate(s).size(), 6u);
  EXPECT_THROW(RequireValid(s), ValidationError);
}

TEST(ValidateTest, StructuralRules) {
  Scenario s = SingleLink(10, 1, 0.01, 0.1, 5);
  s.resources.push_back(s.resources[0]);
  EXPECT_FALSE(Validate(s).empty());

  s = SingleLink(10, 1, 0.01, 0.1, 5);
  s.connections[0].end = -1;
  EXPECT_FALSE(Validate(s).empty());

  s = SingleLink(10, 1, 0.01, 0.1, 5);
  s.resources[0].capacity = CapacityTimeline({{3, 10}});
  EXPECT_FALSE(Validate(s).empty());

  s = SingleLink(10, 1, 0.01, 0.1, 5);
  s.connections[0].route = {"link", "link"};
  s.connections[0].hop_delays = {0, 0};
  EXPECT_FALSE(Validate(s).empty());

  s = SingleLink(10, 1, 0.01, 0.1, 5);
  s.loss_policy = {LossPolicyKind::kAdversarialFair, 1, "nobody"};
  EXPECT_FALSE(Validate(s).empty());
}

TEST(ValidateTest, SameRoundCycleRejected) {
  Scenario s;
  s.resources = {{"x", CapacityTimeline::Constant(1)},
                 {"y", CapacityTimeline::Constant(1)}};
  s.connections = {Connection("p", {"x", "y"}, 0, 3),
                   Connection("q", {"y", "x"}, 0, 3)};
  EXPECT_TRUE(HasViolation(s, "cyclic"));
  s.connections[1].total_delay = 1;
  s.connections[1].hop_delays = {1, 0};
  EXPECT_TRUE(Validate(s).empty());
}

TEST(ValidateTest, IdempotentOnRandomScenarios) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Scenario s = testing::RandomScenario(rng, {});
    s.connections[0].alpha = s.connections[0].beta;
    const Scenario copy = s;
    EXPECT_EQ(Validate(s), Validate(s));
    EXPECT_EQ(s, copy);
  }
}

TEST(PreDelayTest, Examples) {
  Scenario s = ThreeHop();
  const auto& c = s.connections[0];
  EXPECT_EQ(PreDelay(c, "a"), 0);
  EXPECT_EQ(PreDelay(c, "b"), 2);
  EXPECT_EQ(PreDelay(c, "c"), 4);
  EXPECT_THROW(PreDelay(c, "z"), std::invalid_argument);
}

TEST(PreDelayTest, BoundedAndMonotoneOnRandomScenarios) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const Scenario s = testing::RandomScenario(rng, {});
    for (const auto& c : s.connections) {
      Round prev = 0;
      for (const auto& r : c.route) {
        const Round d = PreDelay(c, r);
        EXPECT_GE(d, prev);
        EXPECT_LE(d, c.total_delay);
        prev = d;
      }
    }
  }
}

TEST(TopologyTest, TransitOrderRespectsSameRoundHops) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const Scenario s = testing::RandomScenario(rng, {});
    const Topology topo(s);
    std::vector<std::size_t> pos(topo.num_resources());
    for (std::size_t k = 0; k < pos.size(); ++k) {
      pos[topo.transit_order()[k]] = k;
    }
    for (std::size_t p = 0; p < topo.num_paths(); ++p) {
      const auto& route = topo.route(p);
      for (std::size_t h = 1; h < route.size(); ++h) {
        if (route[h].pre_delay == route[h - 1].pre_delay) {
          EXPECT_LT(pos[route[h - 1].resource], pos[route[h].resource]);
        }
      }
    }
  }
}

TEST(ScenarioTest, HorizonAndWindows) {
  Scenario s = ThreeHop();
  EXPECT_EQ(s.horizon(), 13);
  const auto& c = s.connections[0];
  EXPECT_EQ(c.shifted_active().size(), c.active().size());
  EXPECT_EQ(c.shifted_active().first, 4);
  EXPECT_EQ(Scenario{}.horizon(), -1);
}

TEST(CapacityTimelineTest, LastStepWins) {
  const CapacityTimeline t({{0, 5}, {10, 7}, {20, 0}});
  EXPECT_EQ(t.at(0), 5);
  EXPECT_EQ(t.at(9), 5);
  EXPECT_EQ(t.at(10), 7);
  EXPECT_EQ(t.at(1000), 0);
  EXPECT_EQ(t.Scaled(2).at(15), 14);
}

TEST(ScenarioJsonTest, RoundTripOnRandomScenarios) {
  for (auto policy :
       {LossPolicyKind::kProportional, LossPolicyKind::kAdversarialFair}) {
    std::mt19937_64 rng(17);
    testing::RandomScenarioOptions options;
    options.policy = policy;
    for (int i = 0; i < 100; ++i) {
      const Scenario s = testing::RandomScenario(rng, options);
      const std::string text = EmitScenario(s);
      const Scenario back = ParseScenario(text);
      EXPECT_EQ(back, s);
      EXPECT_EQ(EmitScenario(back), text);
    }
  }
}

TEST(ScenarioJsonTest, InfiniteCapacityRoundTrips) {
  const Scenario s =
      SingleLink(std::numeric_limits<double>::infinity(), 1, 0.01, 0.1, 3);
  EXPECT_EQ(ParseScenario(EmitScenario(s)), s);
}

TEST(ScenarioJsonTest, ShorthandsAndDerivedParameters) {
  const Scenario s = ParseScenario(R"({
    "epsilon": 0.1,
    "resources": [{"id": "l", "capacity": 10}, {"id": "m", "capacity": "inf"}],
    "connections": [
      {"id": "p", "route": ["l"], "start": 0, "end": 4, "start_rate": 2},
      {"id": "q", "route": ["l", "m"], "value": 0.5, "start": 1, "end": 3,
       "start_rate": 1, "beta_scale": 0.5}
    ]
  })");
  ASSERT_EQ(s.connections.size(), 2u);
  EXPECT_DOUBLE_EQ(s.connections[0].alpha, 0.01);
  EXPECT_DOUBLE_EQ(s.connections[0].beta, 0.1);
  EXPECT_DOUBLE_EQ(s.connections[1].beta, 0.05);
  EXPECT_DOUBLE_EQ(s.connections[1].alpha, 0.0025);
  EXPECT_EQ(s.connections[1].hop_delays, (std::vector<Round>{0, 0}));
  EXPECT_EQ(s.loss_policy.kind, LossPolicyKind::kProportional);
  EXPECT_TRUE(Validate(s).empty());
}

std::string ParseErrorOf(std::string_view text) {
  try {
    ParseScenario(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

TEST(ScenarioJsonTest, SyntaxErrorNamesLine) {
  const std::string msg = ParseErrorOf("{\n  \"epsilon\": 0.1,\n  oops\n}");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(ScenarioJsonTest, SchemaErrorNamesField) {
  const std::string msg = ParseErrorOf(R"({
    "epsilon": 0.1, "resources": [{"id": "l", "capacity": 10}],
    "connections": [
      {"id": "p", "route": ["l"], "start": 0, "end": 4, "start_rate": 2},
      {"id": "q", "route": ["l"], "start": 0, "end": 4, "start_rate": 2,
       "alpha": "x", "beta": 0.1}]})");
  EXPECT_NE(msg.find("connections[1].alpha"), std::string::npos) << msg;
  EXPECT_NE(ParseErrorOf(R"({"epsilon": 0.1, "resources": [],
                             "connections": [], "extra": 1})")
                .find("extra"),
            std::string::npos);
  EXPECT_NE(ParseErrorOf(R"({"epsilon": 0.1, "resources": []})")
                .find("connections"),
            std::string::npos);
}

}  // namespace
}  // namespace lmimd

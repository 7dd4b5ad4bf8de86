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


#include <random>

#include <gtest/gtest.h>

#include "lmimd/errors.h"
#include "lmimd/protocol.h"
#include "random_scenario.h"

namespace lmimd {
namespace {

ConnectionSpec Spec(double f0, Round delay, double alpha, double beta,
                    Round start = 10, Round end = 40) {
  ConnectionSpec c = testing::Connection("p", {"l"}, start, end);
  c.start_rate = f0;
  c.total_delay = delay;
  c.alpha = alpha;
  c.beta = beta;
  return c;
}

TEST(InitialRateTest, WarmUpWindow) {
  const ConnectionSpec c = Spec(5, 2, 0.01, 0.1);
  const PathState state(c);
  EXPECT_EQ(state.InitialRate(10), 5);
  EXPECT_EQ(state.InitialRate(12), 5);
  EXPECT_THROW(state.InitialRate(13), ProtocolError);
  EXPECT_THROW(state.InitialRate(9), ProtocolError);
}

// Drives a zero-delay state to the point where round `t` is an update round
// whose base is `sent` and whose previous feedback is `lsr`.
double UpdateAfter(double sent, double lsr, double alpha, double beta) {
  const ConnectionSpec c = Spec(sent, 0, alpha, beta, 0, 5);
  PathState state(c);
  state.RecordSent(0, sent);
  state.RecordFeedback(0, sent * (1.0 - lsr));
  return state.UpdateRate(1);
}

TEST(UpdateRateTest, Examples) {
  EXPECT_DOUBLE_EQ(UpdateAfter(100, 0.0, 0.01, 0.1), 101);
  EXPECT_DOUBLE_EQ(UpdateAfter(100, 1.0, 0.01, 0.1), 91);
  EXPECT_EQ(UpdateAfter(64, 0.25, 0.125, 0.5), 64);
}

TEST(UpdateRateTest, UsesCohortOneRoundTripBack) {
  const ConnectionSpec c = Spec(4, 2, 0.5, 0.75, 0, 10);
  PathState state(c);
  for (Round t = 0; t <= 2; ++t) state.RecordSent(t, 4.0 + t);
  state.RecordFeedback(2, 4.0);  // cohort sent at 0, lossless
  EXPECT_DOUBLE_EQ(state.UpdateRate(3), 4.0 * 1.5);
  EXPECT_TRUE(state.InWarmUp(2));
  EXPECT_FALSE(state.InWarmUp(3));
}

TEST(UpdateRateTest, MissingHistoryIsAnError) {
  const ConnectionSpec c = Spec(4, 1, 0.01, 0.1, 0, 10);
  PathState state(c);
  state.RecordSent(0, 4);
  state.RecordSent(1, 4);
  EXPECT_THROW(state.UpdateRate(2), ProtocolError);   // no lsr(1)
  EXPECT_THROW(state.UpdateRate(1), ProtocolError);   // warm-up round
  EXPECT_THROW(state.UpdateRate(11), ProtocolError);  // past the end
}

TEST(RecordFeedbackTest, Examples) {
  const ConnectionSpec c = Spec(100, 0, 0.01, 0.1, 0, 5);
  PathState a(c);
  a.RecordSent(0, 100);
  EXPECT_EQ(a.RecordFeedback(0, 100), 0.0);

  PathState b(c);
  b.RecordSent(0, 100);
  EXPECT_DOUBLE_EQ(b.RecordFeedback(0, 70), 0.3);

  PathState d(c);
  d.RecordSent(0, 100);
  EXPECT_EQ(d.RecordFeedback(0, 100 + 1e-13), 0.0);
  EXPECT_EQ(d.lsr(0), 0.0);
}

TEST(RecordFeedbackTest, Errors) {
  const ConnectionSpec c = Spec(100, 0, 0.01, 0.1, 0, 5);
  PathState a(c);
  a.RecordSent(0, 100);
  EXPECT_THROW(a.RecordFeedback(0, 101), ProtocolError);
  EXPECT_THROW(a.RecordFeedback(0, -1), ProtocolError);
  EXPECT_THROW(a.RecordFeedback(1, 50), ProtocolError);  // no cohort yet
}

TEST(RecordSentTest, OutOfOrderIsAnError) {
  const ConnectionSpec c = Spec(1, 0, 0.01, 0.1, 3, 4);
  PathState state(c);
  EXPECT_THROW(state.RecordSent(4, 1), ProtocolError);
  state.RecordSent(3, 1);
  state.RecordSent(4, 1);
  EXPECT_THROW(state.RecordSent(5, 1), ProtocolError);
  EXPECT_FALSE(state.sent(2));
  EXPECT_FALSE(state.sent(5));
}

TEST(UpdateRateTest, MultiplierBoundAndDeterminism) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double beta = 0.02 + 0.9 * u(rng);
    const double alpha = beta * (0.01 + 0.9 * u(rng));
    const Round d = static_cast<Round>(rng() % 6);
    const ConnectionSpec c = Spec(1 + 50 * u(rng), d, alpha, beta, 0, 200);
    PathState a(c);
    PathState b(c);
    for (Round t = 0; t <= c.end; ++t) {
      const double rate = a.NextRate(t);
      EXPECT_EQ(rate, b.NextRate(t));
      EXPECT_GT(rate, 0.0);
      if (!a.InWarmUp(t)) {
        const double ratio = rate / *a.sent(t - 1 - d);
        EXPECT_GE(ratio, 1 + alpha - beta - 1e-15);
        EXPECT_LE(ratio, 1 + alpha + 1e-15);
      }
      a.RecordSent(t, rate);
      b.RecordSent(t, rate);
      if (t >= d) {
        const double got = *a.sent(t - d) * u(rng);
        a.RecordFeedback(t, got);
        b.RecordFeedback(t, got);
      }
    }
  }
}

}  // namespace
}  // namespace lmimd

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

// Post-run verification of a RunTrace.
//
// For every connection p with rate parameters (alpha, beta), start rate f0,
// delay d, active window T (shifted arrival window T'), U = max_t rcvd(p,t):
//
//   throughput bound    sum_T' rcvd >= (beta/alpha - 1) sum_T' lost
//                                      - (d + 1) f0 / alpha
//
//   loss-ratio bound    sum_T' lsr  >= alpha (1-beta) / (beta (1+alpha))
//                                        * (|T| - 1 - d)
//                                      - (1-beta)/beta * (1 + d)
//                                        * ln(beta U / ((beta-alpha) f0))
//
//   sent ceiling        sent(p,t) <= max(f0, U beta / (beta - alpha))
//
// They hold for any loss pattern, the loss-ratio bound only when
// f0 <= beta U / (beta - alpha). The report also measures how fair the
// loss was (epsilon_hat), the constants b and c of the throughput guarantee,
// and the ratio of achieved weighted throughput to the static optimum.

#ifndef LMIMD_AUDIT_H_
#define LMIMD_AUDIT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lmimd/optimum.h"
#include "lmimd/trace.h"

namespace lmimd {

// Slacks at or above -kSlackTolerance * scale count as satisfied.
inline constexpr double kSlackTolerance = 1e-6;

struct RateParameters {
  double alpha = 0.0;
  double beta = 0.0;
};

// beta = beta_scale * epsilon, alpha = epsilon * beta * value. Throws
// std::invalid_argument unless epsilon in (0,1), value in (0,1],
// beta_scale in (0,1].
RateParameters TheoremParameters(double epsilon, double value,
                                 double beta_scale = 1.0);

// LHS - RHS of the throughput bound. Satisfied when
// >= -kSlackTolerance * ThroughputBoundScale().
double CheckLemma1(const RunTrace& trace, std::size_t path);
double ThroughputBoundScale(const RunTrace& trace, std::size_t path);

// LHS - RHS of the loss-ratio bound, or nullopt when nothing was ever
// received on the path (U = 0). Satisfied when
// >= -kSlackTolerance * (|T| + 1).
std::optional<double> CheckLemma3(const RunTrace& trace, std::size_t path);

// The loss-ratio bound assumes f0 <= beta U / (beta - alpha); without it the
// log term turns negative and the bound can fail. True when it holds, nullopt
// when U = 0.
std::optional<bool> LossRatioPrecondition(const RunTrace& trace, std::size_t path);

// Loss-ratio bound with the log argument floored at 1, i.e. with the ceiling
// max(f0, U beta / (beta - alpha)) in place of U beta / (beta - alpha). Holds
// for any f0. Equals CheckLemma3 when the precondition holds.
std::optional<double> CheckLossRatioBoundCapped(const RunTrace& trace,
                                        std::size_t path);

// Both sides of the fairness condition over the path's arrival window:
// lost_fraction = sum lsr(p,t), ratio_sum = sum over hops of lost/into at the
// round the cohort transited.
struct PathFairness {
  double lost_fraction = 0.0;
  double ratio_sum = 0.0;
};
PathFairness MeasurePathFairness(const RunTrace& trace, std::size_t path);

// max_p (lost_fraction / ratio_sum - 1); 0 when both sides vanish, +inf when
// only the ratio side does. 0 for a scenario without connections.
double MeasureFairness(const RunTrace& trace);

struct PathAudit {
  std::string id;
  double weighted_received = 0.0;
  double lost = 0.0;
  double max_received = 0.0;  // U
  double max_sent = 0.0;
  double sent_ceiling = 0.0;  // max(f0, U beta / (beta - alpha))
  bool sent_ceiling_ok = true;
  double lemma1_slack = 0.0;
  bool lemma1_ok = true;
  std::optional<double> lemma3_slack;  // nullopt: degenerate (U = 0)
  bool lemma3_ok = true;
  std::optional<bool> lemma3_precondition;
  std::optional<double> lemma3_capped_slack;
  bool lemma3_capped_ok = true;
  PathFairness fairness;
  std::optional<double> b;  // (beta/alpha - 1) val; nullopt if val = 0
  std::optional<double> c;
  std::optional<double> duration_threshold;
};

struct AuditReport {
  double weighted_throughput = 0.0;
  double total_lost_paths = 0.0;
  double total_lost_resources = 0.0;
  double epsilon = 0.0;
  double epsilon_hat = 0.0;
  std::vector<PathAudit> paths;
  std::optional<double> b;  // min over valued paths
  std::optional<double> c;
  // max_p (1 + d) ln(U / f0) / (epsilon^2 beta val), constant 1.
  std::optional<double> duration_threshold;
  std::optional<double> opt_value;
  std::optional<double> competitive_ratio;
  // b c opt / (1 + max(epsilon_hat, 0)) - sum_p (1 + d) f0 val / alpha.
  std::optional<double> throughput_bound;
  std::string opt_error;  // why opt is missing, if it is
  double lemma1_min_slack = 0.0;
  std::optional<double> lemma3_min_slack;
  std::optional<double> lemma3_capped_min_slack;
  std::size_t lemma3_precondition_failures = 0;
  // Throughput bound, literal loss-ratio bound and sent ceiling on every path.
  bool lemmas_hold = true;
};

// Report without the optimum (e.g. when it is unbounded).
AuditReport AuditTrace(const RunTrace& trace);

// Full report. Throws Error if opt_value is 0 while the run delivered value.
AuditReport CompetitiveRatio(const RunTrace& trace, const OptimumSolution& opt);

std::string AuditJson(const AuditReport& report);

// `ratio=<x> eps_hat=<y> lemma1_min_slack=<z> lemma3_min_slack=<w>`
std::string SummaryLine(const AuditReport& report);

}  // namespace lmimd

#endif  // LMIMD_AUDIT_H_

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

#include "lmimd/audit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "json.hpp"
#include "lmimd/errors.h"

namespace lmimd {
namespace {

double Sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double Max(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

std::size_t ResourceIndex(const Scenario& s, const std::string& id) {
  for (std::size_t r = 0; r < s.resources.size(); ++r) {
    if (s.resources[r].id == id) return r;
  }
  throw std::invalid_argument(fmt::format("unknown resource '{}'", id));
}

void MinInto(std::optional<double>& acc, const std::optional<double>& x) {
  if (x) acc = acc ? std::min(*acc, *x) : *x;
}

void MaxInto(std::optional<double>& acc, const std::optional<double>& x) {
  if (x) acc = acc ? std::max(*acc, *x) : *x;
}

PathAudit AuditPath(const RunTrace& trace, std::size_t p) {
  const auto& c = trace.scenario->connections[p];
  const auto& pt = trace.paths[p];
  const double eps = trace.scenario->epsilon;
  const double d1 = 1.0 + static_cast<double>(c.total_delay);
  const double duration = static_cast<double>(c.duration());

  PathAudit a;
  a.id = c.id;
  a.weighted_received = c.value * Sum(pt.rcvd);
  a.lost = Sum(pt.lost);
  a.max_received = Max(pt.rcvd);
  a.max_sent = Max(pt.sent);
  a.sent_ceiling = std::max(c.start_rate,
                            a.max_received * c.beta / (c.beta - c.alpha));
  a.sent_ceiling_ok = a.max_sent <= a.sent_ceiling * (1.0 + 1e-9);

  a.lemma1_slack = CheckLemma1(trace, p);
  a.lemma1_ok = a.lemma1_slack >= -kSlackTolerance * ThroughputBoundScale(trace, p);
  a.lemma3_slack = CheckLemma3(trace, p);
  a.lemma3_ok =
      !a.lemma3_slack || *a.lemma3_slack >= -kSlackTolerance * (duration + 1);
  a.lemma3_precondition = LossRatioPrecondition(trace, p);
  a.lemma3_capped_slack = CheckLossRatioBoundCapped(trace, p);
  a.lemma3_capped_ok = !a.lemma3_capped_slack ||
                       *a.lemma3_capped_slack >= -kSlackTolerance * (duration + 1);
  a.fairness = MeasurePathFairness(trace, p);

  if (c.value > 0.0) {
    a.b = (c.beta / c.alpha - 1.0) * c.value;
    if (a.max_received > 0.0) {
      const double frac = d1 / duration;
      const double log_term = std::log(c.beta * a.max_received /
                                       ((c.beta - c.alpha) * c.start_rate));
      a.c = c.alpha * (1.0 - c.beta) /
                (c.beta * (1.0 + c.alpha) * c.value) * (1.0 - frac) -
            (1.0 - c.beta) / (c.beta * c.value) * frac * log_term;
      a.duration_threshold = d1 * std::log(a.max_received / c.start_rate) /
                             (eps * eps * c.beta * c.value);
    }
  }
  return a;
}

AuditReport Assemble(const RunTrace& trace) {
  const Scenario& s = *trace.scenario;
  AuditReport report;
  report.epsilon = s.epsilon;
  report.epsilon_hat = MeasureFairness(trace);
  for (const auto& rt : trace.resources) report.total_lost_resources += Sum(rt.lost);

  bool first = true;
  for (std::size_t p = 0; p < trace.paths.size(); ++p) {
    PathAudit a = AuditPath(trace, p);
    report.weighted_throughput += a.weighted_received;
    report.total_lost_paths += a.lost;
    MinInto(report.b, a.b);
    MinInto(report.c, a.c);
    MaxInto(report.duration_threshold, a.duration_threshold);
    report.lemma1_min_slack =
        first ? a.lemma1_slack : std::min(report.lemma1_min_slack, a.lemma1_slack);
    first = false;
    MinInto(report.lemma3_min_slack, a.lemma3_slack);
    MinInto(report.lemma3_capped_min_slack, a.lemma3_capped_slack);
    if (a.lemma3_precondition == false) ++report.lemma3_precondition_failures;
    report.lemmas_hold = report.lemmas_hold && a.lemma1_ok && a.lemma3_ok &&
                         a.sent_ceiling_ok;
    report.paths.push_back(std::move(a));
  }
  return report;
}

nlohmann::ordered_json Optional(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

nlohmann::ordered_json Number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return nullptr;
  return x > 0 ? "inf" : "-inf";
}

std::string OptionalText(const std::optional<double>& x) {
  return x ? FormatNumber(*x) : "n/a";
}

}  // namespace

RateParameters TheoremParameters(double epsilon, double value,
                                 double beta_scale) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must be in (0,1)");
  }
  if (!(value > 0.0 && value <= 1.0)) {
    throw std::invalid_argument("value must be in (0,1]");
  }
  if (!(beta_scale > 0.0 && beta_scale <= 1.0)) {
    throw std::invalid_argument("beta_scale must be in (0,1]");
  }
  const double beta = beta_scale * epsilon;
  return {epsilon * beta * value, beta};
}

double CheckLemma1(const RunTrace& trace, std::size_t path) {
  const auto& c = trace.scenario->connections[path];
  const auto& pt = trace.paths[path];
  const double received = Sum(pt.rcvd);
  const double lost = Sum(pt.lost);
  const double rhs = (c.beta / c.alpha - 1.0) * lost -
                     (static_cast<double>(c.total_delay) + 1.0) *
                         c.start_rate / c.alpha;
  return received - rhs;
}

double ThroughputBoundScale(const RunTrace& trace, std::size_t path) {
  return Sum(trace.paths[path].rcvd) + 1.0;
}

namespace {

std::optional<double> LossRatioSlack(const RunTrace& trace, std::size_t path,
                                     bool capped) {
  const auto& c = trace.scenario->connections[path];
  const auto& pt = trace.paths[path];
  const double u = Max(pt.rcvd);
  if (!(u > 0.0)) return std::nullopt;
  const double a = c.alpha;
  const double b = c.beta;
  const double d = static_cast<double>(c.total_delay);
  const double growth = a * (1.0 - b) / (b * (1.0 + a)) *
                        (static_cast<double>(c.duration()) - 1.0 - d);
  double log_term = std::log(b * u / ((b - a) * c.start_rate));
  if (capped) log_term = std::max(0.0, log_term);
  const double ceiling = (1.0 - b) / b * (1.0 + d) * log_term;
  return Sum(pt.lsr) - (growth - ceiling);
}

}  // namespace

std::optional<double> CheckLemma3(const RunTrace& trace, std::size_t path) {
  return LossRatioSlack(trace, path, false);
}

std::optional<double> CheckLossRatioBoundCapped(const RunTrace& trace,
                                        std::size_t path) {
  return LossRatioSlack(trace, path, true);
}

std::optional<bool> LossRatioPrecondition(const RunTrace& trace,
                                       std::size_t path) {
  const auto& c = trace.scenario->connections[path];
  const double u = Max(trace.paths[path].rcvd);
  if (!(u > 0.0)) return std::nullopt;
  return c.start_rate <= u * c.beta / (c.beta - c.alpha);
}

PathFairness MeasurePathFairness(const RunTrace& trace, std::size_t path) {
  const Scenario& s = *trace.scenario;
  const auto& c = s.connections[path];
  const auto& pt = trace.paths[path];
  std::vector<std::size_t> hops;
  for (const auto& id : c.route) hops.push_back(ResourceIndex(s, id));

  PathFairness f;
  for (std::size_t i = 0; i < pt.lsr.size(); ++i) {
    const Round t = pt.arrivals.first + static_cast<Round>(i);
    f.lost_fraction += pt.lsr[i];
    for (std::size_t h = 0; h < hops.size(); ++h) {
      f.ratio_sum += trace.resources[hops[h]].ratio_at(t - c.hop_delays[h]);
    }
  }
  return f;
}

double MeasureFairness(const RunTrace& trace) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < trace.paths.size(); ++p) {
    const auto f = MeasurePathFairness(trace, p);
    double e;
    if (f.ratio_sum > 0.0) {
      e = f.lost_fraction / f.ratio_sum - 1.0;
    } else {
      e = f.lost_fraction > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    worst = std::max(worst, e);
  }
  return trace.paths.empty() ? 0.0 : worst;
}

AuditReport AuditTrace(const RunTrace& trace) { return Assemble(trace); }

AuditReport CompetitiveRatio(const RunTrace& trace,
                             const OptimumSolution& opt) {
  AuditReport report = Assemble(trace);
  report.opt_value = opt.opt_value;
  if (opt.opt_value > 0.0) {
    report.competitive_ratio = report.weighted_throughput / opt.opt_value;
  } else if (report.weighted_throughput > 0.0) {
    throw Error(
        "optimum is 0 but the run delivered value; trace and optimum do not "
        "belong to the same scenario");
  } else {
    report.competitive_ratio = 1.0;
  }

  if (report.b && report.c && std::isfinite(report.epsilon_hat)) {
    const Scenario& s = *trace.scenario;
    double overhead = 0.0;
    for (const auto& c : s.connections) {
      overhead += (1.0 + static_cast<double>(c.total_delay)) * c.start_rate *
                  c.value / c.alpha;
    }
    report.throughput_bound = *report.b * *report.c * opt.opt_value /
                                  (1.0 + std::max(report.epsilon_hat, 0.0)) -
                              overhead;
  }
  return report;
}

std::string AuditJson(const AuditReport& r) {
  nlohmann::ordered_json doc;
  doc["weighted_throughput"] = r.weighted_throughput;
  doc["total_lost_paths"] = r.total_lost_paths;
  doc["total_lost_resources"] = r.total_lost_resources;
  doc["epsilon"] = r.epsilon;
  doc["measured_epsilon_hat"] = Number(r.epsilon_hat);
  doc["opt_value"] = Optional(r.opt_value);
  doc["competitive_ratio"] = Optional(r.competitive_ratio);
  if (!r.opt_error.empty()) doc["opt_error"] = r.opt_error;
  doc["b"] = Optional(r.b);
  doc["c"] = Optional(r.c);
  doc["duration_threshold"] = Optional(r.duration_threshold);
  doc["throughput_bound"] = Optional(r.throughput_bound);
  doc["lemma1_min_slack"] = r.lemma1_min_slack;
  doc["lemma3_min_slack"] = Optional(r.lemma3_min_slack);
  doc["lemma3_capped_min_slack"] = Optional(r.lemma3_capped_min_slack);
  doc["lemma3_precondition_failures"] = r.lemma3_precondition_failures;
  doc["lemmas_hold"] = r.lemmas_hold;
  doc["paths"] = nlohmann::ordered_json::array();
  for (const auto& a : r.paths) {
    nlohmann::ordered_json pj;
    pj["id"] = a.id;
    pj["weighted_received"] = a.weighted_received;
    pj["lost"] = a.lost;
    pj["U"] = a.max_received;
    pj["max_sent"] = a.max_sent;
    pj["sent_ceiling"] = a.sent_ceiling;
    pj["sent_ceiling_ok"] = a.sent_ceiling_ok;
    pj["lemma1_slack"] = a.lemma1_slack;
    pj["lemma1_ok"] = a.lemma1_ok;
    pj["lemma3_slack"] = Optional(a.lemma3_slack);
    pj["lemma3_ok"] = a.lemma3_ok;
    if (a.lemma3_precondition) {
      pj["lemma3_precondition"] = *a.lemma3_precondition;
    } else {
      pj["lemma3_precondition"] = nullptr;
    }
    pj["lemma3_capped_slack"] = Optional(a.lemma3_capped_slack);
    pj["lemma3_capped_ok"] = a.lemma3_capped_ok;
    pj["lsr_sum"] = a.fairness.lost_fraction;
    pj["resource_ratio_sum"] = a.fairness.ratio_sum;
    pj["b"] = Optional(a.b);
    pj["c"] = Optional(a.c);
    pj["duration_threshold"] = Optional(a.duration_threshold);
    doc["paths"].push_back(std::move(pj));
  }
  return doc.dump(2) + "\n";
}

std::string SummaryLine(const AuditReport& r) {
  return fmt::format("ratio={} eps_hat={} lemma1_min_slack={} lemma3_min_slack={}",
                     OptionalText(r.competitive_ratio),
                     FormatNumber(r.epsilon_hat),
                     FormatNumber(r.lemma1_min_slack),
                     OptionalText(r.lemma3_min_slack));
}

}  // namespace lmimd

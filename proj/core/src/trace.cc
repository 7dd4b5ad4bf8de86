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

#include "lmimd/trace.h"

#include <fstream>

#include <fmt/format.h>

#include "lmimd/errors.h"

namespace lmimd {
namespace {

double At(const std::vector<double>& v, const RoundWindow& w, Round t) {
  if (!w.contains(t)) return 0.0;
  const auto i = static_cast<std::size_t>(t - w.first);
  return i < v.size() ? v[i] : 0.0;
}

void WriteFile(const std::filesystem::path& file, const std::string& body) {
  std::ofstream out(file, std::ios::binary);
  out << body;
  if (!out) throw Error(fmt::format("cannot write '{}'", file.string()));
}

}  // namespace

double PathTrace::sent_at(Round t) const { return At(sent, active, t); }
double PathTrace::rcvd_at(Round t) const { return At(rcvd, arrivals, t); }
double PathTrace::lost_at(Round t) const { return At(lost, arrivals, t); }

double ResourceTrace::ratio_at(Round t) const {
  if (t < 0 || t >= static_cast<Round>(into.size())) return 0.0;
  const auto i = static_cast<std::size_t>(t);
  return into[i] > 0.0 ? lost[i] / into[i] : 0.0;
}

std::string FormatNumber(double x) { return fmt::format("{}", x); }

std::string PathCsv(const PathTrace& path) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "round,sent,rcvd,lost,lsr\n");
  const Round last = std::max(path.active.last, path.arrivals.last);
  for (Round t = path.active.first; t <= last; ++t) {
    fmt::format_to(std::back_inserter(buf), "{},", t);
    if (path.active.contains(t)) {
      fmt::format_to(std::back_inserter(buf), "{}", path.sent_at(t));
    }
    if (path.arrivals.contains(t)) {
      const auto i = static_cast<std::size_t>(t - path.arrivals.first);
      fmt::format_to(std::back_inserter(buf), ",{},{},{}\n", path.rcvd[i],
                     path.lost[i], path.lsr[i]);
    } else {
      fmt::format_to(std::back_inserter(buf), ",,,\n");
    }
  }
  return fmt::to_string(buf);
}

std::string ResourceCsv(const ResourceTrace& resource) {
  fmt::memory_buffer buf;
  fmt::format_to(std::back_inserter(buf), "round,into,lost,cap\n");
  for (std::size_t t = 0; t < resource.into.size(); ++t) {
    fmt::format_to(std::back_inserter(buf), "{},{},{},{}\n", t,
                   resource.into[t], resource.lost[t], resource.cap[t]);
  }
  return fmt::to_string(buf);
}

void WriteTraceCsv(const RunTrace& trace, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const Scenario& s = *trace.scenario;
  for (std::size_t p = 0; p < trace.paths.size(); ++p) {
    WriteFile(dir / fmt::format("path_{}.csv", s.connections[p].id),
              PathCsv(trace.paths[p]));
  }
  for (std::size_t r = 0; r < trace.resources.size(); ++r) {
    WriteFile(dir / fmt::format("resource_{}.csv", s.resources[r].id),
              ResourceCsv(trace.resources[r]));
  }
}

}  // namespace lmimd

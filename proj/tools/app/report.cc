// Copyright 2026 The bwbounds Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "app/report.h"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace bwbounds::app {

using nlohmann::json;

int RunReport::best_lower() const {
  int lb = 0;
  for (const auto& e : bounds) {
    if (!e.skipped) lb = std::max(lb, e.bound.bandwidth_lb);
  }
  return lb;
}

std::optional<int> RunReport::upper() const {
  if (heuristic) return heuristic->best.bandwidth;
  return std::nullopt;
}

bool RunReport::tight() const {
  const auto ub = upper();
  return ub && !bounds.empty() && best_lower() == *ub;
}

json BoundToJson(const std::string& graph, int n, const BoundEntry& entry) {
  const McBound& b = entry.bound;
  json j;
  j["graph"] = graph;
  j["n"] = n;
  j["method"] = std::string(ToString(b.method));
  j["m"] = {b.m.m1, b.m.m2, b.m.m3};
  j["alpha"] = b.alpha;
  j["bandwidth_lb"] = b.bandwidth_lb;
  json sub = json::array();
  for (const auto& s : b.sub) {
    sub.push_back({{"h", s.h},
                   {"rep", {s.rep.first + 1, s.rep.second + 1}},
                   {"classes", s.classes},
                   {"vars", s.vars},
                   {"mu", s.mu},
                   {"gap", s.gap},
                   {"max_residual", s.max_residual},
                   {"iters", s.iterations}});
  }
  j["sub"] = std::move(sub);
  j["solver"] = {{"gap", b.gap},
                 {"iters", b.iterations},
                 {"max_residual", b.max_residual},
                 {"vars", b.vars}};
  j["wall_time_s"] = entry.wall_time_s;
  if (entry.skipped) j["skipped"] = *entry.skipped;
  return j;
}

BoundEntry BoundFromJson(const json& j) {
  BoundEntry e;
  McBound& b = e.bound;
  b.method = ParseMethod(j.at("method").get<std::string>());
  const auto& m = j.at("m");
  b.m = {m.at(0).get<int>(), m.at(1).get<int>(), m.at(2).get<int>()};
  b.alpha = j.at("alpha").get<double>();
  b.bandwidth_lb = j.at("bandwidth_lb").get<int>();
  for (const auto& s : j.at("sub")) {
    SubproblemValue v;
    v.h = s.at("h").get<int>();
    v.rep = {s.at("rep").at(0).get<int>() - 1, s.at("rep").at(1).get<int>() - 1};
    v.classes = s.at("classes").get<int>();
    v.vars = s.at("vars").get<int>();
    v.mu = s.at("mu").get<double>();
    v.gap = s.at("gap").get<double>();
    v.max_residual = s.at("max_residual").get<double>();
    v.iterations = s.at("iters").get<int>();
    b.sub.push_back(v);
  }
  const auto& sol = j.at("solver");
  b.gap = sol.at("gap").get<double>();
  b.iterations = sol.at("iters").get<int>();
  b.max_residual = sol.at("max_residual").get<double>();
  b.vars = sol.at("vars").get<int>();
  e.wall_time_s = j.at("wall_time_s").get<double>();
  if (j.contains("skipped")) e.skipped = j["skipped"].get<std::string>();
  return e;
}

json HeuristicToJson(const HeuristicEntry& entry) {
  return {{"runs", entry.runs},
          {"seed", entry.seed},
          {"bandwidth_ub", entry.best.bandwidth},
          {"labels", entry.best.labels},
          {"wall_time_s", entry.wall_time_s}};
}

HeuristicEntry HeuristicFromJson(const json& j) {
  HeuristicEntry e;
  e.runs = j.at("runs").get<int>();
  e.seed = j.at("seed").get<uint64_t>();
  e.best.bandwidth = j.at("bandwidth_ub").get<int>();
  e.best.labels = j.at("labels").get<std::vector<int>>();
  e.wall_time_s = j.at("wall_time_s").get<double>();
  return e;
}

json ToJson(const RunReport& report) {
  json j;
  j["graph"] = report.graph;
  j["n"] = report.n;
  j["known_bandwidth"] = report.known_bandwidth ? json(*report.known_bandwidth) : json(nullptr);
  json bounds = json::array();
  for (const auto& e : report.bounds) bounds.push_back(BoundToJson(report.graph, report.n, e));
  j["bounds"] = std::move(bounds);
  j["heuristic"] = report.heuristic ? HeuristicToJson(*report.heuristic) : json(nullptr);
  j["bandwidth_lb"] = report.best_lower();
  j["bandwidth_ub"] = report.upper() ? json(*report.upper()) : json(nullptr);
  j["tight"] = report.tight();
  return j;
}

std::string CsvField(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

std::string ToCsv(const RunReport& report) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "graph,n,method,m1,m2,m3,alpha,bandwidth,wall_time_s,note\n";
  for (const auto& e : report.bounds) {
    const McBound& b = e.bound;
    out << CsvField(report.graph) << ',' << report.n << ',' << ToString(b.method) << ',' << b.m.m1 << ','
        << b.m.m2 << ',' << b.m.m3 << ',';
    if (e.skipped) {
      out << ",," << e.wall_time_s << ',' << CsvField(*e.skipped) << "\n";
    } else {
      out << b.alpha << ',' << b.bandwidth_lb << ',' << e.wall_time_s << ",\n";
    }
  }
  if (report.heuristic) {
    out << CsvField(report.graph) << ',' << report.n << ",heuristic,,,,," << report.heuristic->best.bandwidth
        << ',' << report.heuristic->wall_time_s << ",\n";
  }
  return out.str();
}

std::string ToTable(const RunReport& report) {
  std::ostringstream out;
  out << report.graph << "  n=" << report.n;
  if (report.known_bandwidth) out << "  known bandwidth " << *report.known_bandwidth;
  out << "\n";
  out << std::left << std::setw(10) << "method" << std::setw(14) << "m" << std::setw(14) << "alpha"
      << std::setw(10) << "bound" << "time (s)\n";
  for (const auto& e : report.bounds) {
    const McBound& b = e.bound;
    out << std::setw(10) << ToString(b.method);
    if (e.skipped) {
      out << std::setw(14) << "-" << std::setw(14) << "-" << std::setw(10) << "-" << *e.skipped
          << "\n";
      continue;
    }
    std::ostringstream alpha;
    alpha << std::fixed << std::setprecision(6) << b.alpha;
    out << std::setw(14) << b.m.ToString() << std::setw(14) << alpha.str() << std::setw(10)
        << (">= " + std::to_string(b.bandwidth_lb)) << std::fixed << std::setprecision(2)
        << e.wall_time_s << "\n";
    out.unsetf(std::ios::fixed);
  }
  if (report.heuristic) {
    out << std::setw(10) << "heuristic" << std::setw(14) << "-" << std::setw(14) << "-"
        << std::setw(10) << ("<= " + std::to_string(report.heuristic->best.bandwidth))
        << std::fixed << std::setprecision(2) << report.heuristic->wall_time_s << "\n";
    out.unsetf(std::ios::fixed);
  }
  if (report.tight()) out << "tight: bandwidth = " << report.best_lower() << "\n";
  return out.str();
}

}  // namespace bwbounds::app

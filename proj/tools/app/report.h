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

#ifndef BWBOUNDS_TOOLS_APP_REPORT_H_
#define BWBOUNDS_TOOLS_APP_REPORT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bwbounds/bounds.h"
#include "bwbounds/heuristic.h"
#include "json.hpp"

namespace bwbounds::app {

struct BoundEntry {
  McBound bound;
  double wall_time_s = 0.0;
  // Set when the method was not run, e.g. because a weaker bound is tight.
  std::optional<std::string> skipped;
};

struct HeuristicEntry {
  int runs = 0;
  uint64_t seed = 0;
  Labeling best;
  double wall_time_s = 0.0;
};

struct RunReport {
  std::string graph;
  int n = 0;
  std::optional<int> known_bandwidth;
  std::vector<BoundEntry> bounds;
  std::optional<HeuristicEntry> heuristic;

  int best_lower() const;
  std::optional<int> upper() const;
  bool tight() const;
};

// Bound entries use 1-based vertex numbers in "rep".
nlohmann::json BoundToJson(const std::string& graph, int n, const BoundEntry& entry);
BoundEntry BoundFromJson(const nlohmann::json& j);
nlohmann::json HeuristicToJson(const HeuristicEntry& entry);
HeuristicEntry HeuristicFromJson(const nlohmann::json& j);

nlohmann::json ToJson(const RunReport& report);
// One row per bound entry plus one for the heuristic.
// RFC 4180 quoting: fields holding commas, quotes or newlines are quoted.
std::string CsvField(std::string_view text);

std::string ToCsv(const RunReport& report);
std::string ToTable(const RunReport& report);

}  // namespace bwbounds::app

#endif  // BWBOUNDS_TOOLS_APP_REPORT_H_

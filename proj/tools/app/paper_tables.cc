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

#include "app/paper_tables.h"

#include <algorithm>
#include <ostream>

#include "app/report.h"
#include "bwbounds/errors.h"

namespace bwbounds::app {

const std::vector<TableDef>& Tables() {
  static const std::vector<TableDef> tables = {
      {"hypercube",
       "Bounds on the bandwidth of hypercubes Q_d",
       {{"hamming:2,2", 4}, {"hamming:3,2", 8}, {"hamming:4,2", 16}, {"hamming:5,2", 32, true}}},
      {"hamming",
       "Bounds on the bandwidth of H(3,q) and H(4,q)",
       {{"hamming:3,3", 27},
        {"hamming:3,4", 64, true},
        {"hamming:3,5", 125, true},
        {"hamming:3,6", 216, true},
        {"hamming:4,3", 81, true}}},
      {"genhamming",
       "Bounds on the bandwidth of H_{q1,q2,q3}",
       {{"genhamming:2,3,3", 18},
        {"genhamming:2,3,4", 24, true},
        {"genhamming:2,3,5", 30, true},
        {"genhamming:2,4,4", 32, true},
        {"genhamming:3,3,4", 36, true},
        {"genhamming:3,3,5", 45, true},
        {"genhamming:3,4,4", 48, true},
        {"genhamming:3,4,5", 60, true}}},
      {"johnson",
       "Bounds on the bandwidth of J(v,3) and J(v,4)",
       {{"johnson:6,3", 20},
        {"johnson:7,3", 35},
        {"johnson:8,3", 56, true},
        {"johnson:9,3", 84, true},
        {"johnson:10,3", 120, true},
        {"johnson:11,3", 165, true},
        {"johnson:8,4", 70, true}}},
      {"kneser",
       "Bounds on the bandwidth of K(v,2) and K(v,3)",
       {{"kneser:5,2", 10},
        {"kneser:6,2", 15},
        {"kneser:7,2", 21},
        {"kneser:8,2", 28},
        {"kneser:7,3", 35, true},
        {"kneser:8,3", 56, true},
        {"kneser:9,3", 84, true},
        {"kneser:10,3", 120, true}}},
  };
  return tables;
}

const TableDef& FindTable(std::string_view id) {
  for (const auto& t : Tables()) {
    if (t.id == id) return t;
  }
  std::string known;
  for (const auto& t : Tables()) known += (known.empty() ? "" : ", ") + t.id;
  throw InputError("unknown table '" + std::string(id) + "' (known: " + known + ")");
}

void WritePaperTable(const TableDef& table, const TableOptions& options, const ResultCache& cache,
                     std::ostream& out) {
  out << "graph,n,bw_eig,bw_QAP,bw_fix,ub,status\n" << std::flush;
  for (const auto& row : table.rows) {
    if (options.max_n >= 0 && row.n > options.max_n) continue;
    if (row.long_running && !options.include_long) {
      out << CsvField(row.spec) << ',' << row.n << ",,,,,skipped (long-running)\n" << std::flush;
      continue;
    }
    RunRequest req = options.base;
    req.spec = GraphSpec::Parse(row.spec);
    req.eig = req.qap = req.fix = req.heuristic = true;
    req.m.clear();
    const RunReport report = Compute(req, cache);

    int eig = 0, qap = 0;
    std::string fix = "-";
    for (const auto& e : report.bounds) {
      switch (e.bound.method) {
        case Method::kEig:
          eig = e.bound.bandwidth_lb;
          break;
        case Method::kQap:
          qap = e.bound.bandwidth_lb;
          break;
        case Method::kFix:
          if (!e.skipped) {
            fix = std::to_string(e.bound.bandwidth_lb);
          } else if (e.skipped->rfind("no partition", 0) == 0) {
            // fix dominates qap at every m.
            fix = std::to_string(qap);
          }
          break;
      }
    }
    const int ub = report.known_bandwidth ? *report.known_bandwidth : *report.upper();
    out << CsvField(row.spec) << ',' << row.n << ',' << eig << ',' << qap << ',' << fix << ',' << ub
        << ",ok\n"
        << std::flush;
  }
}

}  // namespace bwbounds::app

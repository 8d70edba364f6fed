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

// Registry of the published bound tables and their regeneration as CSV.

#ifndef BWBOUNDS_TOOLS_APP_PAPER_TABLES_H_
#define BWBOUNDS_TOOLS_APP_PAPER_TABLES_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "app/cache.h"
#include "app/compute.h"

namespace bwbounds::app {

struct TableRow {
  std::string spec;  // GraphSpec text
  int n = 0;
  // Rows whose relaxations took the original authors minutes to hours.
  bool long_running = false;
};

struct TableDef {
  std::string id;
  std::string title;
  std::vector<TableRow> rows;
};

const std::vector<TableDef>& Tables();
// Throws InputError for an unknown id.
const TableDef& FindTable(std::string_view id);

struct TableOptions {
  // Rows with n above this are left out; negative means no limit.
  int max_n = -1;
  bool include_long = false;
  // Settings applied to every row (spec and methods are overwritten).
  RunRequest base;
};

// Writes "graph,n,bw_eig,bw_QAP,bw_fix,ub,status" and one line per row with
// n <= max_n, flushing after each. bw_fix is "-" when bw_QAP already equals
// the upper bound. ub is the known bandwidth where one exists, otherwise the
// heuristic value.
void WritePaperTable(const TableDef& table, const TableOptions& options, const ResultCache& cache,
                     std::ostream& out);

}  // namespace bwbounds::app

#endif  // BWBOUNDS_TOOLS_APP_PAPER_TABLES_H_

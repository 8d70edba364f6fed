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

#include "app/cli.h"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "app/cache.h"
#include "app/compute.h"
#include "app/paper_tables.h"
#include "app/report.h"
#include "bwbounds/errors.h"
#include "bwbounds/heuristic.h"
#include "json.hpp"

namespace bwbounds::app {
namespace {

int EmitError(std::ostream& out, std::string_view kind, const std::string& message, int code) {
  out << nlohmann::json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump()
      << "\n";
  return code;
}

PartitionM ParsePartition(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw InputError("--m expects three integers a,b,c, got '" + text + "'");
    }
  }
  if (v.size() != 3) throw InputError("--m expects three integers a,b,c, got '" + text + "'");
  return {v[0], v[1], v[2]};
}

void ApplyMethods(const std::vector<std::string>& methods, RunRequest& req) {
  for (const auto& m : methods) {
    if (m == "eig") {
      req.eig = true;
    } else if (m == "qap") {
      req.qap = true;
    } else if (m == "fix") {
      req.fix = true;
    } else if (m == "heuristic") {
      req.heuristic = true;
    } else {
      throw InputError("unknown method '" + m + "' (expected eig, qap, fix, heuristic)");
    }
  }
}

// Writes to --out when given, else to `out`.
void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower and upper bounds on graph bandwidth", "bwbounds"};
  app.set_version_flag("--version", std::string(kCacheVersion));

  RunRequest req;
  std::string graph_text, format = "table", out_path, cache_dir, labeling_path;
  std::vector<std::string> methods = {"eig", "qap", "fix", "heuristic"};
  std::vector<std::string> m_texts;
  bool scan = false;

  auto add_common = [&](CLI::App* a) {
    a->add_option("--runs", req.runs, "Heuristic restarts")->capture_default_str();
    a->add_option("--seed", req.seed, "Heuristic seed")->capture_default_str();
    a->add_option("--tol", req.tol, "Solver tolerance")->capture_default_str();
    a->add_option("--workers", req.workers, "Worker threads, 0 for all cores")
        ->capture_default_str();
    a->add_option("--max-vars", req.max_vars, "Refuse relaxations with more variables")
        ->capture_default_str();
    a->add_option("--out", out_path, "Write the report here instead of stdout");
    a->add_option("--cache-dir", cache_dir, "Directory for cached results");
  };

  app.add_option("--graph", graph_text,
                 "family:params (hamming:d,q genhamming:q1,q2,q3 johnson:v,d kneser:v,d) or "
                 "file:path");
  app.add_option("--methods", methods, "Comma-separated subset of eig,qap,fix,heuristic")
      ->delimiter(',');
  app.add_option("--m", m_texts, "Explicit partition a,b,c (repeatable)");
  app.add_flag("--scan", scan, "Scan partitions with m1 <= m2 (the default without --m)");
  app.add_option("--m3-min", req.m3_min, "Smallest m3 in scans; default from the eig scan");
  app.add_option("--budget", req.budget, "Maximum relaxations solved per scan, 0 unlimited");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--labeling-out", labeling_path, "Write the best labeling (line v = label of v)");
  add_common(&app);

  auto* table_cmd = app.add_subcommand("paper-table", "Regenerate one of the published tables");
  std::string table_id;
  TableOptions table_opts;
  table_cmd->add_option("id", table_id, "hypercube, hamming, genhamming, johnson or kneser")
      ->required();
  table_cmd->add_option("--max-n", table_opts.max_n, "Leave out rows with more vertices");
  table_cmd->add_flag("--include-long", table_opts.include_long,
                      "Also compute rows tagged long-running");
  add_common(table_cmd);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kCacheVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return EmitError(out, "usage", e.what(), kExitUsage);
  }

  try {
    const ResultCache cache(cache_dir);
    if (table_cmd->parsed()) {
      table_opts.base = req;
      const TableDef& table = FindTable(table_id);
      if (out_path.empty()) {
        WritePaperTable(table, table_opts, cache, out);
      } else {
        std::ofstream file(out_path);
        if (!file) throw InputError("cannot write " + out_path);
        WritePaperTable(table, table_opts, cache, file);
      }
      return kExitOk;
    }

    if (graph_text.empty()) throw InputError("--graph is required");
    if (scan && !m_texts.empty()) throw InputError("--m and --scan are mutually exclusive");
    req.spec = GraphSpec::Parse(graph_text);
    ApplyMethods(methods, req);
    for (const auto& t : m_texts) req.m.push_back(ParsePartition(t));

    const RunReport report = Compute(req, cache);
    if (!labeling_path.empty()) {
      if (!report.heuristic) throw InputError("--labeling-out needs the heuristic method");
      std::ofstream file(labeling_path);
      if (!file) throw InputError("cannot write " + labeling_path);
      WritePermutation(report.heuristic->best, file);
    }

    std::string text;
    if (format == "json") {
      text = ToJson(report).dump(2) + "\n";
    } else if (format == "csv") {
      text = ToCsv(report);
    } else {
      text = ToTable(report);
    }
    Emit(out_path, text, out);
    if (format != "table" || !out_path.empty()) {
      err << report.graph << ": lower bound " << report.best_lower();
      if (report.upper()) err << ", upper bound " << *report.upper();
      if (report.tight()) err << " (tight)";
      err << "\n";
    }
    return kExitOk;
  } catch (const InputError& e) {
    return EmitError(out, "input", e.what(), kExitUsage);
  } catch (const BoundError& e) {
    return EmitError(out, "bound", e.what(), kExitBound);
  } catch (const std::exception& e) {
    return EmitError(out, "internal", e.what(), kExitBound);
  }
}

}  // namespace bwbounds::app

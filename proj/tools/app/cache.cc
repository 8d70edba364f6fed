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

#include "app/cache.h"

#include <cstdio>
#include <fstream>
#include <system_error>

namespace bwbounds::app {

uint64_t Fnv1a64(std::string_view data, uint64_t hash) {
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string AdjacencyHash(const Graph& g) {
  const auto& adj = g.adjacency();
  uint64_t h = Fnv1a64(std::to_string(g.n()) + ":");
  h = Fnv1a64(std::string_view(reinterpret_cast<const char*>(adj.data()), adj.size()), h);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::PathFor(const std::string& key) const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(Fnv1a64(key)));
  return dir_ / (std::string(buf) + ".json");
}

std::optional<nlohmann::json> ResultCache::Get(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::lock_guard lock(mu_);
  std::ifstream in(PathFor(key));
  if (!in) return std::nullopt;
  nlohmann::json j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object() || j.value("key", "") != key || !j.contains("value")) {
    return std::nullopt;
  }
  return j["value"];
}

void ResultCache::Put(const std::string& key, const nlohmann::json& value) const {
  if (!enabled()) return;
  std::lock_guard lock(mu_);
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const auto path = PathFor(key);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << nlohmann::json{{"key", key}, {"value", value}}.dump();
  }
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace bwbounds::app

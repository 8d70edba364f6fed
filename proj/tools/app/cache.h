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

// On-disk result cache: one JSON file per key, named by the key's FNV-1a
// hash. The full key is stored inside the file and compared on lookup.

#ifndef BWBOUNDS_TOOLS_APP_CACHE_H_
#define BWBOUNDS_TOOLS_APP_CACHE_H_

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "bwbounds/graph.h"
#include "json.hpp"

namespace bwbounds::app {

inline constexpr std::string_view kCacheVersion = "bwbounds-0.1.0";

uint64_t Fnv1a64(std::string_view data, uint64_t hash = 0xcbf29ce484222325ULL);
std::string AdjacencyHash(const Graph& g);

class ResultCache {
 public:
  // An empty directory disables the cache.
  explicit ResultCache(std::filesystem::path dir = {});

  bool enabled() const { return !dir_.empty(); }
  std::optional<nlohmann::json> Get(const std::string& key) const;
  // Write failures are ignored; the cache is an optimization.
  void Put(const std::string& key, const nlohmann::json& value) const;

 private:
  std::filesystem::path PathFor(const std::string& key) const;

  std::filesystem::path dir_;
  mutable std::mutex mu_;
};

}  // namespace bwbounds::app

#endif  // BWBOUNDS_TOOLS_APP_CACHE_H_

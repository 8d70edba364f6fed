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

#ifndef BWBOUNDS_ERRORS_H_
#define BWBOUNDS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace bwbounds {

// Bad parameters, unreadable or malformed input files. Maps to CLI exit 2.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A bound could not be certified: solver breakdown, size caps, etc.
// Maps to CLI exit 1.
class BoundError : public std::runtime_error {
 public:
  explicit BoundError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bwbounds

#endif  // BWBOUNDS_ERRORS_H_

// Copyright 2026 The pblottery Authors
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

#include "pblottery/limits.hpp"

#include <string>

#include "pblottery/errors.hpp"

namespace pblottery {

namespace {
constexpr std::size_t kMaskWidth = 62;
}

void Limits::require_projects(std::size_t m, std::string_view what) const {
  if (m > max_projects || m > kMaskWidth) {
    throw ScaleError(std::string(what) + ": " + std::to_string(m) +
                     " projects exceed the enumeration limit of " + std::to_string(max_projects));
  }
}

void Limits::require_voters(std::size_t n, std::string_view what) const {
  if (n > max_voters || n > kMaskWidth) {
    throw ScaleError(std::string(what) + ": " + std::to_string(n) +
                     " voters exceed the enumeration limit of " + std::to_string(max_voters));
  }
}

}  // namespace pblottery

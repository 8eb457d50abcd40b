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

#pragma once

#include <cstddef>
#include <string_view>

namespace pblottery {

// Caps on the exhaustive checks. Subset enumeration over projects is
// exponential in m and group enumeration for GFS is exponential in n.
struct Limits {
  std::size_t max_projects = 20;
  std::size_t max_voters = 16;

  // Throws ScaleError when m exceeds max_projects (or 62, the mask width).
  void require_projects(std::size_t m, std::string_view what) const;
  // Throws ScaleError when n exceeds max_voters (or 62).
  void require_voters(std::size_t n, std::string_view what) const;
};

}  // namespace pblottery

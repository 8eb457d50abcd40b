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
#include <cstdint>
#include <numeric>
#include <vector>

namespace pblottery::detail {

// Visits every non-empty subset of {0, ..., m-1} ordered by size, then
// lexicographically by sorted members. `visit(members, mask)` returns true to
// stop early; the function then returns true as well.
template <typename Visit>
bool for_each_subset_by_size(std::size_t m, Visit&& visit) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k <= m; ++k) {
    idx.resize(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (;;) {
      std::uint64_t mask = 0;
      for (std::size_t c : idx) mask |= std::uint64_t{1} << c;
      if (visit(static_cast<const std::vector<std::size_t>&>(idx), mask)) return true;
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t t = pos; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  return false;
}

inline std::vector<std::size_t> mask_members(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; mask != 0; ++c, mask >>= 1) {
    if (mask & 1U) out.push_back(c);
  }
  return out;
}

}  // namespace pblottery::detail

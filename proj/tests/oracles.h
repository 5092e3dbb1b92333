// Copyright 2026 The subtok Authors
//
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

// Test-only reference implementations, independent of the library code
// they check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace subtok::oracles {

inline uint64_t levenshtein_ref(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<std::vector<uint64_t>> d(a.size() + 1, std::vector<uint64_t>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

// Minimum of (#shifts + edit distance) over all shift sequences, where a
// shift moves a contiguous block that matches some reference span.
inline uint64_t brute_force_ter_edits(const std::vector<int>& hyp, const std::vector<int>& ref) {
  uint64_t best = levenshtein_ref(hyp, ref);
  std::map<std::vector<int>, uint64_t> visited;  // state -> fewest shifts used
  visited[hyp] = 0;

  struct Frame {
    std::vector<int> state;
    uint64_t shifts;
  };
  std::vector<Frame> stack{{hyp, 0}};
  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    const std::vector<int>& cur = frame.state;
    if (frame.shifts + 1 >= best) continue;  // one more shift cannot win

    for (size_t len = 1; len <= cur.size(); ++len) {
      for (size_t src = 0; src + len <= cur.size(); ++src) {
        bool matches = false;
        for (size_t j = 0; !matches && j + len <= ref.size(); ++j) {
          matches = std::equal(cur.begin() + static_cast<ptrdiff_t>(src),
                               cur.begin() + static_cast<ptrdiff_t>(src + len),
                               ref.begin() + static_cast<ptrdiff_t>(j));
        }
        if (!matches) continue;
        for (size_t dest = 0; dest + len <= cur.size(); ++dest) {
          if (dest == src) continue;
          std::vector<int> next;
          next.reserve(cur.size());
          for (size_t i = 0; i < cur.size(); ++i) {
            if (i < src || i >= src + len) next.push_back(cur[i]);
          }
          next.insert(next.begin() + static_cast<ptrdiff_t>(dest),
                      cur.begin() + static_cast<ptrdiff_t>(src),
                      cur.begin() + static_cast<ptrdiff_t>(src + len));
          const uint64_t shifts = frame.shifts + 1;
          const auto it = visited.find(next);
          if (it != visited.end() && it->second <= shifts) continue;
          visited[next] = shifts;
          best = std::min(best, shifts + levenshtein_ref(next, ref));
          stack.push_back({std::move(next), shifts});
        }
      }
    }
  }
  return best;
}

// Kendall's tau by definition: pair enumeration over distinct ranks.
inline double kendall_tau_ref(const std::vector<int>& positions) {
  const size_t n = positions.size();
  if (n < 2) return 0.0;
  int64_t concordant = 0, discordant = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      (positions[i] < positions[j] ? concordant : discordant) += 1;
    }
  }
  return static_cast<double>(concordant - discordant) /
         (static_cast<double>(n * (n - 1)) / 2.0);
}

}  // namespace subtok::oracles

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

#pragma once

#include <cstdint>
#include <numeric>

namespace subtok {

// Non-negative exact rational, always stored reduced. Comparisons use
// 128-bit cross multiplication so corpus-scale counts cannot overflow.
struct Rational {
  uint64_t num = 0;
  uint64_t den = 1;

  static Rational reduced(uint64_t n, uint64_t d) {
    const uint64_t g = std::gcd(n, d);
    return Rational{g == 0 ? n : n / g, g == 0 ? d : d / g};
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    using u128 = unsigned __int128;
    return static_cast<u128>(a.num) * b.den < static_cast<u128>(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
};

}  // namespace subtok

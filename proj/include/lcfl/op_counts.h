// Copyright 2026 The LCFL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LCFL_OP_COUNTS_H_
#define LCFL_OP_COUNTS_H_

#include <cstdint>

namespace lcfl {

// Arithmetic tallies filled in by instrumented kernels. Kernels take an
// optional pointer and skip counting when it is null.
struct OpCounts {
  int64_t mults = 0;
  int64_t adds = 0;  // additions and subtractions
  int64_t divs = 0;
  int64_t shifts = 0;  // halvings by a power of two

  OpCounts& operator+=(const OpCounts& other) {
    mults += other.mults;
    adds += other.adds;
    divs += other.divs;
    shifts += other.shifts;
    return *this;
  }
  bool operator==(const OpCounts&) const = default;
};

}  // namespace lcfl

#endif  // LCFL_OP_COUNTS_H_

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

#ifndef LCFL_BLOCK_H_
#define LCFL_BLOCK_H_

#include <cstddef>
#include <span>
#include <vector>

namespace lcfl {

constexpr bool IsSupportedBlockSize(int n) { return n == 4 || n == 8 || n == 16; }

// Throws a size error unless `n` is 4, 8 or 16.
void CheckBlockSize(int n);

// Row-major n x n array of doubles.
class SquareArray {
 public:
  SquareArray() = default;
  explicit SquareArray(int n) : n_(n), values_(static_cast<size_t>(n) * n) {}

  int size() const { return n_; }
  double& at(int row, int col) { return values_[row * n_ + col]; }
  double at(int row, int col) const { return values_[row * n_ + col]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  bool operator==(const SquareArray&) const = default;

 private:
  int n_ = 0;
  std::vector<double> values_;
};

// n x n tile of spatial samples.
class SpatialTile : public SquareArray {
 public:
  using SquareArray::SquareArray;
};

struct BlockOrigin {
  int row = 0;  // block row index within the plane
  int col = 0;  // block column index within the plane

  bool operator==(const BlockOrigin&) const = default;
};

// Frequency-domain coefficients of one block; at(0, 0) is DC, everything
// else is AC. at(u, v) is vertical frequency u, horizontal frequency v.
class CoefficientBlock : public SquareArray {
 public:
  CoefficientBlock() = default;
  explicit CoefficientBlock(int n, BlockOrigin origin = {})
      : SquareArray(n), origin(origin) {}

  double dc() const { return at(0, 0); }
  void set_dc(double value) { at(0, 0) = value; }

  BlockOrigin origin;
};

}  // namespace lcfl

#endif  // LCFL_BLOCK_H_

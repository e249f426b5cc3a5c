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

#ifndef LCFL_TF_H_
#define LCFL_TF_H_

#include <array>

#include "lcfl/block.h"
#include "lcfl/op_counts.h"

namespace lcfl {

// Time-frequency resolution switching. Four 4x4 frequency-domain blocks in a
// 2x2 spatial arrangement are combined coefficient-wise by an orthonormal 2x2
// Hadamard butterfly into one 8x8 block: the LL outputs land in the top-left
// 4x4 quadrant, LH in the top-right, HL in the bottom-left and HH in the
// bottom-right.
struct TfMergedBlock {
  CoefficientBlock coeffs;  // 8x8
  // When set, only the top-left 4x4 quadrant holds valid data.
  bool lf_only = false;
};

TfMergedBlock TfMerge2x2(const CoefficientBlock& tl, const CoefficientBlock& tr,
                         const CoefficientBlock& bl, const CoefficientBlock& br,
                         OpCounts* counts = nullptr);

// LL quadrant only, (tl + tr + bl + br) / 2 per coefficient.
CoefficientBlock TfMergeLf(const CoefficientBlock& tl,
                           const CoefficientBlock& tr,
                           const CoefficientBlock& bl,
                           const CoefficientBlock& br,
                           OpCounts* counts = nullptr);

// Low-frequency half of a 2n x 2n block assembled from four n x n blocks,
// n in {4, 8, 16}, with the butterfly outputs interleaved: output (2u+a, 2v+b)
// comes from input frequency (u, v), u, v < n/2, vertical parity a and
// horizontal parity b. Odd-frequency inputs of the right/bottom blocks are
// negated first, which makes the even outputs exact for a plain DCT. Unlike
// the quadrant layout above, the result lines up with the frequencies of an
// n x n block over a half-resolution plane, so this is the 4:2:0 chroma
// predictor.
CoefficientBlock TfMergeLfInterleaved(const CoefficientBlock& tl,
                                      const CoefficientBlock& tr,
                                      const CoefficientBlock& bl,
                                      const CoefficientBlock& br,
                                      OpCounts* counts = nullptr);

// Exact inverse of TfMerge2x2. Returns {tl, tr, bl, br}. Throws a contract
// error for an lf_only block.
std::array<CoefficientBlock, 4> TfSplit2x2(const TfMergedBlock& merged);

}  // namespace lcfl

#endif  // LCFL_TF_H_

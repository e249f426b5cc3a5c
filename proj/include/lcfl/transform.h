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

#ifndef LCFL_TRANSFORM_H_
#define LCFL_TRANSFORM_H_

#include <vector>

#include "lcfl/block.h"
#include "lcfl/image.h"

namespace lcfl {

// Orthonormal 2-D type-II DCT.
CoefficientBlock ForwardDct(const SpatialTile& tile);
SpatialTile InverseDct(const CoefficientBlock& block);

// Row-major n x n orthonormal DCT-II basis: basis[k * n + i] is the weight of
// sample i in coefficient k.
const std::vector<double>& DctBasis(int n);

// Lapped pre/post filter applied across block edges.
//
// The filter acts on `support` samples straddling an edge, support / 2 on
// each side. Samples are paired by distance from the edge and split into
// sum and difference halves by an orthonormal butterfly; the difference half
// goes through lifting steps followed by per-pair scale factors, and a second
// butterfly recombines the halves. The sum half is untouched, so constant
// signals pass through unchanged.
class LappedFilterParams {
 public:
  // Shipped filters: the 4-point filter for 4x4 blocks, the 8-point filter
  // for 8x8 and 16x16 blocks.
  static LappedFilterParams ForBlockSize(int block_size);

  // `scales` has support / 2 entries, `lifting` one fewer. Throws on
  // inconsistent lengths, odd support or zero scale.
  LappedFilterParams(int block_size, std::vector<double> scales,
                     std::vector<double> lifting);

  int block_size() const { return block_size_; }
  int support() const { return support_; }

  // Dense support x support matrices, row-major. Post is the exact inverse
  // of pre.
  const std::vector<double>& pre_matrix() const { return pre_; }
  const std::vector<double>& post_matrix() const { return post_; }

 private:
  int block_size_;
  int support_;
  std::vector<double> pre_;
  std::vector<double> post_;
};

// Filters every interior block edge, first across vertical edges (along
// rows), then across horizontal edges (along columns). Plane borders are
// left alone.
PixelPlane PrefilterPlane(const PixelPlane& plane,
                          const LappedFilterParams& params);
// Inverse of PrefilterPlane: horizontal edges first, then vertical.
PixelPlane PostfilterPlane(const PixelPlane& plane,
                           const LappedFilterParams& params);

// Block-wise forward DCT of a plane whose dimensions are multiples of n.
// Blocks are returned in raster order with their origins set.
std::vector<CoefficientBlock> ForwardDctPlane(const PixelPlane& plane, int n);
PixelPlane InverseDctPlane(const std::vector<CoefficientBlock>& blocks,
                           int width, int height, int n);

}  // namespace lcfl

#endif  // LCFL_TRANSFORM_H_

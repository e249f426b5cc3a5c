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

#ifndef LCFL_PVQ_CFL_H_
#define LCFL_PVQ_CFL_H_

#include <span>
#include <vector>

#include "lcfl/block.h"
#include "lcfl/pvq.h"

namespace lcfl {

// Partition of the AC coefficients of an n x n block into frequency bands.
// Positions are raster indices (row * n + col).
//
//   n = 4:  band 0 = the 15 AC positions.
//   n = 8:  band 0, then the top-right, bottom-left and bottom-right 4x4
//           quadrants of the 8x8 block.
//   n = 16: the 8x8 layout, then the top-right, bottom-left and
//           bottom-right 8x8 quadrants.
struct BandLayout {
  int n = 0;
  std::vector<std::vector<int>> bands;

  int band_count() const { return static_cast<int>(bands.size()); }
};

BandLayout MakeBandLayout(int n);

Vector GatherBand(const CoefficientBlock& block, const std::vector<int>& band);
void ScatterBand(std::span<const double> values, const std::vector<int>& band,
                 CoefficientBlock& block);

// +1 or -1: sign of luma . chroma, +1 when the product is zero.
int ComputeFlip(std::span<const double> luma, std::span<const double> chroma);

struct PvqCflBlockCode {
  std::vector<GainShapeCode> bands;
  int flip = 1;
  // The flip bit is only transmitted when the luma predictor has energy in
  // band 0; otherwise both sides use +1.
  bool flip_coded = false;
};

// Whether the flip bit must be transmitted for this luma predictor.
bool FlipIsCoded(const CoefficientBlock& luma, const BandLayout& layout);

// Codes the AC part of a chroma block. The flip is decided once on band 0
// and applied to every band's luma sub-vector, which serves as the shape
// predictor; gains are coded without prediction. A band whose luma
// sub-vector is zero is coded noref. The encoder-side reconstruction (AC
// only, DC zero) is written to `recon` when non-null.
PvqCflBlockCode CodeChromaBlockPvqCfl(const CoefficientBlock& chroma,
                                      const CoefficientBlock& luma_recon,
                                      const QuantParams& qp,
                                      const BandLayout& layout,
                                      CoefficientBlock* recon = nullptr);

// Mirror of CodeChromaBlockPvqCfl. Throws a decode error when the codes do
// not fit the layout.
CoefficientBlock DecodeChromaBlockPvqCfl(const PvqCflBlockCode& code,
                                         const CoefficientBlock& luma_recon,
                                         const QuantParams& qp,
                                         const BandLayout& layout);

}  // namespace lcfl

#endif  // LCFL_PVQ_CFL_H_

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

#include "lcfl/pvq_cfl.h"

#include "lcfl/error.h"

namespace lcfl {
namespace {

void AddQuadrant(int n, int row0, int col0, int size, BandLayout& layout) {
  std::vector<int> band;
  for (int r = row0; r < row0 + size; ++r) {
    for (int c = col0; c < col0 + size; ++c) band.push_back(r * n + c);
  }
  layout.bands.push_back(std::move(band));
}

void CheckLayout(const CoefficientBlock& block, const BandLayout& layout) {
  if (block.size() != layout.n) {
    throw Error(ErrorCode::kArgument, "band layout does not match block size");
  }
}

}  // namespace

BandLayout MakeBandLayout(int n) {
  CheckBlockSize(n);
  BandLayout layout;
  layout.n = n;
  std::vector<int> low;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (r != 0 || c != 0) low.push_back(r * n + c);
    }
  }
  layout.bands.push_back(std::move(low));
  for (int size = 4; size < n; size *= 2) {
    AddQuadrant(n, 0, size, size, layout);
    AddQuadrant(n, size, 0, size, layout);
    AddQuadrant(n, size, size, size, layout);
  }
  return layout;
}

Vector GatherBand(const CoefficientBlock& block, const std::vector<int>& band) {
  Vector out;
  out.reserve(band.size());
  const auto values = block.values();
  for (int pos : band) out.push_back(values[pos]);
  return out;
}

void ScatterBand(std::span<const double> values, const std::vector<int>& band,
                 CoefficientBlock& block) {
  auto dst = block.values();
  for (size_t i = 0; i < band.size(); ++i) dst[band[i]] = values[i];
}

int ComputeFlip(std::span<const double> luma, std::span<const double> chroma) {
  if (luma.size() != chroma.size()) {
    throw Error(ErrorCode::kArgument, "flip vectors differ in length");
  }
  return Dot(luma, chroma) < 0.0 ? -1 : 1;
}

bool FlipIsCoded(const CoefficientBlock& luma, const BandLayout& layout) {
  return !IsZero(GatherBand(luma, layout.bands[0]));
}

PvqCflBlockCode CodeChromaBlockPvqCfl(const CoefficientBlock& chroma,
                                      const CoefficientBlock& luma_recon,
                                      const QuantParams& qp,
                                      const BandLayout& layout,
                                      CoefficientBlock* recon) {
  CheckLayout(chroma, layout);
  CheckLayout(luma_recon, layout);
  PvqCflBlockCode code;
  code.flip_coded = FlipIsCoded(luma_recon, layout);
  if (code.flip_coded) {
    code.flip = ComputeFlip(GatherBand(luma_recon, layout.bands[0]),
                            GatherBand(chroma, layout.bands[0]));
  }
  if (recon) *recon = CoefficientBlock(layout.n, chroma.origin);
  for (const std::vector<int>& band : layout.bands) {
    const Vector x = GatherBand(chroma, band);
    Vector r = GatherBand(luma_recon, band);
    for (double& v : r) v *= code.flip;
    GainShapeCode band_code =
        IsZero(r) ? QuantizeUnpredicted(x, qp)
                  : PredictedQuantize(x, r, qp, GainMode::kUnpredicted);
    if (recon) {
      const Vector xhat =
          IsZero(r) ? DequantizeUnpredicted(band_code, static_cast<int>(band.size()), qp)
                    : PredictedDequantize(band_code, r, qp, GainMode::kUnpredicted);
      ScatterBand(xhat, band, *recon);
    }
    code.bands.push_back(std::move(band_code));
  }
  return code;
}

CoefficientBlock DecodeChromaBlockPvqCfl(const PvqCflBlockCode& code,
                                         const CoefficientBlock& luma_recon,
                                         const QuantParams& qp,
                                         const BandLayout& layout) {
  CheckLayout(luma_recon, layout);
  if (code.bands.size() != layout.bands.size() ||
      (code.flip != 1 && code.flip != -1)) {
    throw DecodeError("PVQ-CfL code does not match the band layout");
  }
  CoefficientBlock out(layout.n, luma_recon.origin);
  try {
    for (size_t b = 0; b < layout.bands.size(); ++b) {
      const std::vector<int>& band = layout.bands[b];
      Vector r = GatherBand(luma_recon, band);
      for (double& v : r) v *= code.flip;
      const Vector xhat =
          IsZero(r) ? DequantizeUnpredicted(code.bands[b], static_cast<int>(band.size()), qp)
                    : PredictedDequantize(code.bands[b], r, qp, GainMode::kUnpredicted);
      ScatterBand(xhat, band, out);
    }
  } catch (const DecodeError&) {
    throw;
  } catch (const Error& e) {
    throw DecodeError(std::string("malformed PVQ-CfL band: ") + e.what());
  }
  return out;
}

}  // namespace lcfl

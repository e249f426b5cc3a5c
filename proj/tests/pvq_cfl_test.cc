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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "lcfl/error.h"
#include "test_util.h"

namespace lcfl {
namespace {

using testing::RandomBlock;
using testing::RandomVector;

double RelativeError(const CoefficientBlock& got, const CoefficientBlock& want) {
  double err = 0.0, ref = 0.0;
  for (int i = 1; i < got.size() * got.size(); ++i) {
    const double d = got.values()[i] - want.values()[i];
    err += d * d;
    ref += want.values()[i] * want.values()[i];
  }
  return std::sqrt(err / ref);
}

TEST(BandLayoutTest, Sizes) {
  EXPECT_EQ(MakeBandLayout(4).band_count(), 1);
  EXPECT_EQ(MakeBandLayout(4).bands[0].size(), 15u);
  const BandLayout b8 = MakeBandLayout(8);
  ASSERT_EQ(b8.band_count(), 4);
  EXPECT_EQ(b8.bands[0].size(), 15u);
  for (int i = 1; i < 4; ++i) EXPECT_EQ(b8.bands[i].size(), 16u);
  const BandLayout b16 = MakeBandLayout(16);
  ASSERT_EQ(b16.band_count(), 7);
  const size_t want[] = {15, 16, 16, 16, 64, 64, 64};
  for (int i = 0; i < 7; ++i) EXPECT_EQ(b16.bands[i].size(), want[i]);
  EXPECT_THROW(MakeBandLayout(12), Error);
}

TEST(BandLayoutTest, CoversEveryAcPositionOnce) {
  for (int n : {4, 8, 16}) {
    const BandLayout layout = MakeBandLayout(n);
    std::set<int> seen;
    size_t total = 0;
    for (const auto& band : layout.bands) {
      total += band.size();
      seen.insert(band.begin(), band.end());
    }
    EXPECT_EQ(total, static_cast<size_t>(n * n - 1));
    EXPECT_EQ(seen.size(), total);
    EXPECT_EQ(seen.count(0), 0u);
    EXPECT_EQ(*seen.rbegin(), n * n - 1);
  }
}

TEST(BandLayoutTest, GatherScatterRoundTrip) {
  std::mt19937_64 rng(1);
  const CoefficientBlock block = RandomBlock(rng, 16);
  const BandLayout layout = MakeBandLayout(16);
  CoefficientBlock out(16);
  out.set_dc(block.dc());
  for (const auto& band : layout.bands) {
    ScatterBand(GatherBand(block, band), band, out);
  }
  EXPECT_EQ(out, block);
}

TEST(ComputeFlipTest, Examples) {
  const std::vector<double> l = {1, -2, 3};
  const std::vector<double> neg = {-1, 2, -3};
  EXPECT_EQ(ComputeFlip(l, neg), -1);
  EXPECT_EQ(ComputeFlip(l, l), 1);
  const std::vector<double> a = {1, 0}, b = {-0.01, 5};
  EXPECT_EQ(ComputeFlip(a, b), -1);
  const std::vector<double> ortho = {0, 1};
  EXPECT_EQ(ComputeFlip(a, ortho), 1);
  const std::vector<double> shorter = {1};
  EXPECT_THROW(ComputeFlip(a, shorter), Error);
}

TEST(ComputeFlipTest, FlippedAngleNeverExceedsRightAngle) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> dim(2, 64);
  int checked = 0;
  while (checked < 100000) {
    const int n = dim(rng);
    const auto l = RandomVector(rng, n, -100, 100);
    const auto c = RandomVector(rng, n, -100, 100);
    if (Dot(l, c) == 0.0) continue;
    const int f = ComputeFlip(l, c);
    std::vector<double> fl(l);
    for (double& v : fl) v *= f;
    const double cosine = Dot(fl, c) / (Norm(fl) * Norm(c));
    ASSERT_GT(cosine, 0.0);
    ++checked;
  }
}

TEST(PvqCflTest, ScaledLumaIsCodedAlongThePredictor) {
  std::mt19937_64 rng(3);
  const QuantParams qp = QuantParams::Uniform(1e-3);
  for (int n : {4, 8, 16}) {
    const BandLayout layout = MakeBandLayout(n);
    for (double scale : {0.7, -0.7}) {
      const CoefficientBlock luma = RandomBlock(rng, n);
      CoefficientBlock chroma(n);
      for (int i = 0; i < n * n; ++i) chroma.values()[i] = scale * luma.values()[i];
      CoefficientBlock recon;
      const PvqCflBlockCode code =
          CodeChromaBlockPvqCfl(chroma, luma, qp, layout, &recon);
      EXPECT_TRUE(code.flip_coded);
      EXPECT_EQ(code.flip, scale > 0 ? 1 : -1);
      for (const GainShapeCode& band : code.bands) {
        EXPECT_FALSE(band.noref);
        EXPECT_EQ(band.theta_index, 0);
      }
      EXPECT_LT(RelativeError(recon, chroma), 0.05);
      EXPECT_EQ(DecodeChromaBlockPvqCfl(code, luma, qp, layout), recon);
    }
  }
}

TEST(PvqCflTest, ZeroLumaBandIsNoref) {
  std::mt19937_64 rng(4);
  const BandLayout layout = MakeBandLayout(8);
  CoefficientBlock luma = RandomBlock(rng, 8);
  for (int pos : layout.bands[2]) luma.values()[pos] = 0.0;
  const CoefficientBlock chroma = RandomBlock(rng, 8);
  const QuantParams qp = QuantParams::Uniform(2.0);
  CoefficientBlock recon;
  const PvqCflBlockCode code =
      CodeChromaBlockPvqCfl(chroma, luma, qp, layout, &recon);
  EXPECT_TRUE(code.bands[2].noref);
  EXPECT_EQ(DecodeChromaBlockPvqCfl(code, luma, qp, layout), recon);
}

TEST(PvqCflTest, FlipIsOnlySentWithLowBandEnergy) {
  std::mt19937_64 rng(5);
  const BandLayout layout = MakeBandLayout(8);
  CoefficientBlock luma = RandomBlock(rng, 8);
  EXPECT_TRUE(FlipIsCoded(luma, layout));
  for (int pos : layout.bands[0]) luma.values()[pos] = 0.0;
  EXPECT_FALSE(FlipIsCoded(luma, layout));
  const CoefficientBlock chroma = RandomBlock(rng, 8);
  const PvqCflBlockCode code = CodeChromaBlockPvqCfl(
      chroma, luma, QuantParams::Uniform(1.0), layout);
  EXPECT_FALSE(code.flip_coded);
  EXPECT_EQ(code.flip, 1);
}

TEST(PvqCflTest, DecoderMatchesEncoderOnRandomBlocks) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> q(0.5, 20);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 << (trial % 3);
    const BandLayout layout = MakeBandLayout(n);
    const CoefficientBlock luma = RandomBlock(rng, n);
    CoefficientBlock chroma = RandomBlock(rng, n, 30.0);
    for (int i = 0; i < n * n; ++i) chroma.values()[i] += 0.5 * luma.values()[i];
    const QuantParams qp = QuantParams::Uniform(q(rng));
    CoefficientBlock recon;
    const PvqCflBlockCode code =
        CodeChromaBlockPvqCfl(chroma, luma, qp, layout, &recon);
    ASSERT_EQ(DecodeChromaBlockPvqCfl(code, luma, qp, layout), recon);
  }
}

TEST(PvqCflTest, ZeroGainsDecodeToZero) {
  const BandLayout layout = MakeBandLayout(8);
  std::mt19937_64 rng(7);
  const CoefficientBlock luma = RandomBlock(rng, 8);
  PvqCflBlockCode code;
  code.bands.assign(4, GainShapeCode{});
  const CoefficientBlock out =
      DecodeChromaBlockPvqCfl(code, luma, QuantParams::Uniform(1.0), layout);
  for (double v : out.values()) EXPECT_EQ(v, 0.0);
}

TEST(PvqCflTest, SingleBandMatchesPlainPvq) {
  std::mt19937_64 rng(8);
  const BandLayout layout = MakeBandLayout(4);
  const CoefficientBlock luma = RandomBlock(rng, 4);
  const CoefficientBlock chroma = RandomBlock(rng, 4);
  const QuantParams qp = QuantParams::Uniform(3.0);
  CoefficientBlock recon;
  const PvqCflBlockCode code =
      CodeChromaBlockPvqCfl(chroma, luma, qp, layout, &recon);
  Vector r = GatherBand(luma, layout.bands[0]);
  for (double& v : r) v *= code.flip;
  const Vector x = GatherBand(chroma, layout.bands[0]);
  const GainShapeCode direct = PredictedQuantize(x, r, qp, GainMode::kUnpredicted);
  EXPECT_EQ(direct.gain_index, code.bands[0].gain_index);
  EXPECT_EQ(direct.theta_index, code.bands[0].theta_index);
  EXPECT_EQ(direct.pulses, code.bands[0].pulses);
  EXPECT_EQ(PredictedDequantize(direct, r, qp, GainMode::kUnpredicted),
            GatherBand(recon, layout.bands[0]));
}

TEST(PvqCflTest, MalformedCodesAreDecodeErrors) {
  const BandLayout layout = MakeBandLayout(8);
  std::mt19937_64 rng(9);
  const CoefficientBlock luma = RandomBlock(rng, 8);
  const QuantParams qp = QuantParams::Uniform(1.0);
  PvqCflBlockCode code;
  code.bands.assign(3, GainShapeCode{});
  EXPECT_THROW(DecodeChromaBlockPvqCfl(code, luma, qp, layout), DecodeError);
  code.bands.assign(4, GainShapeCode{});
  code.bands[1].noref = false;
  code.bands[1].gain_index = 5;
  code.bands[1].theta_index = 1000000;
  EXPECT_THROW(DecodeChromaBlockPvqCfl(code, luma, qp, layout), DecodeError);
  EXPECT_THROW(CodeChromaBlockPvqCfl(CoefficientBlock(4), luma, qp, layout),
               Error);
}

}  // namespace
}  // namespace lcfl

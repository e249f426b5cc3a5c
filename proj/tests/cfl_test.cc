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

#include "lcfl/cfl.h"

#include <random>

#include <gtest/gtest.h>

#include "lcfl/error.h"
#include "lcfl/transform.h"
#include "test_util.h"

namespace lcfl {
namespace {

using testing::RandomBlock;

double Sse(std::span<const RegressionPair> pairs, double alpha, double beta) {
  double sse = 0.0;
  for (const auto& p : pairs) {
    const double r = p.chroma - (alpha * p.luma + beta);
    sse += r * r;
  }
  return sse;
}

TEST(FitLinearModelTest, RecoversExactLine) {
  const RegressionPairs pairs = {{0, 1}, {1, 3}, {2, 5}};
  const CflModel m = FitLinearModel(pairs);
  EXPECT_NEAR(m.alpha, 2.0, 1e-12);
  EXPECT_NEAR(m.beta, 1.0, 1e-12);
}

TEST(FitLinearModelTest, FlatLumaFallsBackToMean) {
  const RegressionPairs pairs = {{4, 1}, {4, 2}, {4, 6}};
  const CflModel m = FitLinearModel(pairs);
  EXPECT_EQ(m.alpha, 0.0);
  EXPECT_NEAR(m.beta, 3.0, 1e-12);
  const RegressionPairs one = {{7, -2}};
  EXPECT_EQ(FitLinearModel(one).alpha, 0.0);
  EXPECT_EQ(FitLinearModel(one).beta, -2.0);
}

TEST(FitLinearModelTest, EmptyIsAnError) {
  try {
    FitLinearModel({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kArgument);
  }
}

TEST(FitLinearModelTest, MatchesNormalEquations) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-50, 50);
  for (int trial = 0; trial < 200; ++trial) {
    RegressionPairs pairs(12);
    for (auto& p : pairs) p = {dist(rng), dist(rng)};
    // [sum LL  sum L] [a]   [sum LC]
    // [sum L   N    ] [b] = [sum C ]
    double sll = 0, sl = 0, slc = 0, sc = 0;
    for (const auto& p : pairs) {
      sll += p.luma * p.luma;
      sl += p.luma;
      slc += p.luma * p.chroma;
      sc += p.chroma;
    }
    const double det = sll * 12 - sl * sl;
    const double a = (12 * slc - sl * sc) / det;
    const double b = (sll * sc - sl * slc) / det;
    const CflModel m = FitLinearModel(pairs);
    EXPECT_NEAR(m.alpha, a, 1e-9);
    EXPECT_NEAR(m.beta, b, 1e-9);
  }
}

TEST(FitLinearModelTest, IsALeastSquaresMinimum) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(-20, 20);
  for (int trial = 0; trial < 100; ++trial) {
    RegressionPairs pairs(9);
    for (auto& p : pairs) p = {dist(rng), 0.4 * dist(rng) + dist(rng)};
    const CflModel m = FitLinearModel(pairs);
    const double best = Sse(pairs, m.alpha, m.beta);
    for (double da : {-1e-3, 0.0, 1e-3}) {
      for (double db : {-1e-3, 0.0, 1e-3}) {
        EXPECT_GE(Sse(pairs, m.alpha + da, m.beta + db), best - 1e-9);
      }
    }
  }
}

TEST(FitCostTest, FrequencyDomainCountsMatchTable) {
  for (int n : {4, 8, 16}) {
    const FitCost cost = FitCostCounters(n);
    EXPECT_EQ(cost.frequency_mults, 29) << n;
    EXPECT_EQ(cost.frequency_adds, 53) << n;
  }
}

TEST(FitCostTest, SpatialFormulas) {
  EXPECT_EQ(FitCostCounters(4).spatial_mults, 18);
  EXPECT_EQ(FitCostCounters(4).spatial_adds, 35);
  EXPECT_EQ(FitCostCounters(8).spatial_mults, 34);
  EXPECT_EQ(FitCostCounters(8).spatial_adds, 67);
  EXPECT_EQ(FitCostCounters(16).spatial_mults, 66);
  EXPECT_EQ(FitCostCounters(16).spatial_adds, 131);
}

TEST(FitCostTest, CountDoesNotDependOnData) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-5, 5);
  OpCounts first;
  RegressionPairs flat(12, {1.0, 2.0});
  FitLinearModel(flat, &first);  // degenerate branch
  for (int trial = 0; trial < 20; ++trial) {
    RegressionPairs pairs(12);
    for (auto& p : pairs) p = {dist(rng), dist(rng)};
    OpCounts counts;
    FitLinearModel(pairs, &counts);
    EXPECT_EQ(counts, first);
  }
}

struct Neighborhood {
  CoefficientBlock luma[3];
  CoefficientBlock chroma[3];
  NeighborContext ctx(bool up, bool left, bool upleft) const {
    NeighborContext c;
    if (up) c.up = NeighborBlocks{&luma[0], &chroma[0]};
    if (left) c.left = NeighborBlocks{&luma[1], &chroma[1]};
    if (upleft) c.upleft = NeighborBlocks{&luma[2], &chroma[2]};
    return c;
  }
};

Neighborhood RandomNeighborhood(std::mt19937_64& rng, int n) {
  Neighborhood nb;
  for (int i = 0; i < 3; ++i) {
    nb.luma[i] = RandomBlock(rng, n);
    nb.chroma[i] = RandomBlock(rng, n);
  }
  return nb;
}

TEST(CollectPairsTest, CountsFollowAvailability) {
  std::mt19937_64 rng(4);
  const Neighborhood nb = RandomNeighborhood(rng, 8);
  EXPECT_EQ(CollectDcPairs(nb.ctx(true, true, true)).size(), 3u);
  EXPECT_EQ(CollectDcPairs(nb.ctx(false, true, false)).size(), 1u);
  EXPECT_EQ(CollectAcPairs(nb.ctx(true, true, true)).size(), 9u);
  EXPECT_EQ(CollectAcPairs(nb.ctx(true, false, false)).size(), 3u);
  try {
    CollectDcPairs(nb.ctx(false, false, false));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnavailable);
  }
  EXPECT_THROW(CollectAcPairs(NeighborContext{}), Error);
}

TEST(CollectPairsTest, PicksLowestAcPositions) {
  std::mt19937_64 rng(5);
  const Neighborhood nb = RandomNeighborhood(rng, 4);
  const RegressionPairs pairs = CollectAcPairs(nb.ctx(false, true, false));
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(pairs[0].luma, nb.luma[1].at(0, 1));
  EXPECT_EQ(pairs[1].chroma, nb.chroma[1].at(1, 0));
  EXPECT_EQ(pairs[2].luma, nb.luma[1].at(1, 1));
}

TEST(PredictFdCflTest, ExactRelationIsReproduced) {
  std::mt19937_64 rng(6);
  Neighborhood nb = RandomNeighborhood(rng, 8);
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 64; ++k) {
      nb.chroma[i].values()[k] = -0.5 * nb.luma[i].values()[k];
    }
  }
  const CoefficientBlock luma = RandomBlock(rng, 8);
  const CoefficientBlock pred = PredictFdCfl(luma, nb.ctx(true, true, true));
  for (int k = 0; k < 64; ++k) {
    EXPECT_NEAR(pred.values()[k], -0.5 * luma.values()[k], 1e-9);
  }
}

TEST(PredictFdCflTest, ZeroLumaAcGivesZeroAc) {
  std::mt19937_64 rng(7);
  const Neighborhood nb = RandomNeighborhood(rng, 4);
  CoefficientBlock luma(4);
  luma.set_dc(30.0);
  const CoefficientBlock pred = PredictFdCfl(luma, nb.ctx(true, true, false));
  for (int k = 1; k < 16; ++k) EXPECT_EQ(pred.values()[k], 0.0);
}

TEST(PredictFdCflTest, NoNeighborsFallsBack) {
  std::mt19937_64 rng(8);
  const CoefficientBlock luma = RandomBlock(rng, 8);
  const CoefficientBlock pred = PredictFdCfl(luma, NeighborContext{});
  for (double v : pred.values()) EXPECT_EQ(v, 0.0);
}

TEST(PredictFdCflTest, FlatNeighborsFallBackToOffset) {
  Neighborhood nb;
  for (int i = 0; i < 3; ++i) {
    nb.luma[i] = CoefficientBlock(4);
    nb.chroma[i] = CoefficientBlock(4);
    nb.luma[i].set_dc(10.0);
    nb.chroma[i].set_dc(3.0 * i);
  }
  std::mt19937_64 rng(9);
  const CoefficientBlock pred =
      PredictFdCfl(RandomBlock(rng, 4), nb.ctx(true, true, true));
  EXPECT_NEAR(pred.dc(), 3.0, 1e-12);
  for (int k = 1; k < 16; ++k) EXPECT_EQ(pred.values()[k], 0.0);
}

TEST(PredictFdCflTest, SizeMismatchThrows) {
  std::mt19937_64 rng(10);
  const Neighborhood nb = RandomNeighborhood(rng, 8);
  try {
    PredictFdCfl(RandomBlock(rng, 4), nb.ctx(true, false, false));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSize);
  }
}

// Chroma = 0.7 luma + 10 everywhere, run through the lapped transform with
// no quantization: every block that has neighbors is predicted exactly.
TEST(PredictFdCflTest, AffinePlanesArePredictedExactly) {
  std::mt19937_64 rng(11);
  const int n = 8, w = 64, h = 48;
  const PixelPlane luma = testing::TexturedPlane(rng, w, h);
  PixelPlane chroma(w, h);
  for (size_t i = 0; i < chroma.samples().size(); ++i) {
    chroma.samples()[i] = 0.7 * luma.samples()[i] + 10.0;
  }
  const auto params = LappedFilterParams::ForBlockSize(n);
  const auto lb = ForwardDctPlane(PrefilterPlane(luma, params), n);
  const auto cb = ForwardDctPlane(PrefilterPlane(chroma, params), n);
  const int cols = w / n, rows = h / n;
  double worst = 0.0;
  for (int by = 0; by < rows; ++by) {
    for (int bx = 0; bx < cols; ++bx) {
      if (by == 0 && bx == 0) continue;
      NeighborContext ctx;
      auto at = [&](int y, int x) { return static_cast<size_t>(y * cols + x); };
      if (by > 0) ctx.up = NeighborBlocks{&lb[at(by - 1, bx)], &cb[at(by - 1, bx)]};
      if (bx > 0) ctx.left = NeighborBlocks{&lb[at(by, bx - 1)], &cb[at(by, bx - 1)]};
      if (by > 0 && bx > 0) {
        ctx.upleft = NeighborBlocks{&lb[at(by - 1, bx - 1)], &cb[at(by - 1, bx - 1)]};
      }
      // DC needs two distinct luma DCs to pin the offset.
      if (ctx.count() < 2) continue;
      const CoefficientBlock pred = PredictFdCfl(lb[at(by, bx)], ctx);
      for (int k = 0; k < n * n; ++k) {
        worst = std::max(worst, std::abs(pred.values()[k] -
                                         cb[at(by, bx)].values()[k]));
      }
    }
  }
  EXPECT_LT(worst, 1e-6);
}

}  // namespace
}  // namespace lcfl

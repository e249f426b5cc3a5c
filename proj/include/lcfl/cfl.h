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

#ifndef LCFL_CFL_H_
#define LCFL_CFL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lcfl/block.h"
#include "lcfl/op_counts.h"

namespace lcfl {

struct RegressionPair {
  double luma = 0.0;
  double chroma = 0.0;
};

using RegressionPairs = std::vector<RegressionPair>;

// chroma ~= alpha * luma + beta
struct CflModel {
  double alpha = 0.0;
  double beta = 0.0;
};

// Below this the least-squares denominator is treated as zero.
inline constexpr double kDegenerateDenominator = 1e-12;

// Least-squares line through the pairs:
//   alpha = (N*sum(LC) - sum(L)*sum(C)) / (N*sum(LL) - sum(L)^2)
//   beta  = (sum(C) - alpha*sum(L)) / N
// A degenerate denominator gives alpha = 0, beta = mean(C). Throws an
// argument error for an empty pair set.
CflModel FitLinearModel(std::span<const RegressionPair> pairs,
                        OpCounts* counts = nullptr);

// Reconstructed luma predictor and chroma block of one neighbor.
struct NeighborBlocks {
  const CoefficientBlock* luma = nullptr;
  const CoefficientBlock* chroma = nullptr;
};

struct NeighborContext {
  std::optional<NeighborBlocks> up;
  std::optional<NeighborBlocks> left;
  std::optional<NeighborBlocks> upleft;

  bool any() const { return up || left || upleft; }
  int count() const { return (up ? 1 : 0) + (left ? 1 : 0) + (upleft ? 1 : 0); }
};

// One (luma DC, chroma DC) pair per available neighbor, in up, left, up-left
// order. Throws an unavailable error when no neighbor exists.
RegressionPairs CollectDcPairs(const NeighborContext& ctx);

// Pairs at the lowest horizontal (0,1), vertical (1,0) and diagonal (1,1)
// AC positions of each available neighbor.
RegressionPairs CollectAcPairs(const NeighborContext& ctx);

// Mean of the available neighbor chroma DCs, 0 when there are none.
double NeighborAverageDc(const NeighborContext& ctx);

// Frequency-domain CfL prediction of a chroma block from the coincident
// luma block:
//   DC = alpha_dc * L_dc + beta_dc, AC(u,v) = alpha_ac * L_ac(u,v).
// alpha_ac is the slope of one fit over all AC pairs; its offset is
// dropped since AC coefficients are zero mean. With no neighbors
// the DC falls back to the neighbor average (0) and the AC to zero.
CoefficientBlock PredictFdCfl(const CoefficientBlock& luma,
                              const NeighborContext& ctx);

// The AC slope PredictFdCfl applies, 0 without neighbors.
double FitAcAlpha(const NeighborContext& ctx, OpCounts* counts = nullptr);

// Cost of fitting the CfL model. The frequency-domain figures are measured
// by running the instrumented fit on the 12 pairs formed by the DC and the
// three lowest AC coefficients of three neighbors of an n x n block; the
// spatial figures are the closed forms for 2n boundary pairs.
struct FitCost {
  int64_t frequency_mults = 0;
  int64_t frequency_adds = 0;
  int64_t spatial_mults = 0;
  int64_t spatial_adds = 0;
  OpCounts raw;  // the unprojected instrumented counts
};

FitCost FitCostCounters(int n);

// Spatial-domain fit cost for an n x n block: 4n+2 mults, 8n+3 adds.
int64_t SpatialFitMults(int n);
int64_t SpatialFitAdds(int n);

}  // namespace lcfl

#endif  // LCFL_CFL_H_

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

#include <array>
#include <cmath>
#include <utility>

#include "lcfl/error.h"

namespace lcfl {
namespace {

constexpr std::array<std::pair<int, int>, 3> kLowAcPositions = {
    {{0, 1}, {1, 0}, {1, 1}}};

template <typename Fn>
void ForEachNeighbor(const NeighborContext& ctx, Fn&& fn) {
  for (const auto* n : {&ctx.up, &ctx.left, &ctx.upleft}) {
    if (*n) fn(**n);
  }
}

void CheckNeighbor(const NeighborBlocks& nb) {
  if (nb.luma == nullptr || nb.chroma == nullptr) {
    throw Error(ErrorCode::kArgument, "neighbor without luma or chroma block");
  }
  if (nb.luma->size() != nb.chroma->size()) {
    throw Error(ErrorCode::kSize, "neighbor luma/chroma size mismatch");
  }
}

}  // namespace

CflModel FitLinearModel(std::span<const RegressionPair> pairs,
                        OpCounts* counts) {
  if (pairs.empty()) {
    throw Error(ErrorCode::kArgument, "cannot fit a model to zero pairs");
  }
  // Costing follows a fixed-point implementation: each divide carries a
  // rounding offset, which is tallied as one add, and no divide is counted
  // as a multiply.
  OpCounts local;
  double sum_l = 0.0, sum_c = 0.0, sum_lc = 0.0, sum_ll = 0.0;
  for (const RegressionPair& p : pairs) {
    sum_l += p.luma;
    sum_c += p.chroma;
    sum_lc += p.luma * p.chroma;
    sum_ll += p.luma * p.luma;
  }
  local.mults += 2 * static_cast<int64_t>(pairs.size());
  local.adds += 4 * static_cast<int64_t>(pairs.size());

  const double n = static_cast<double>(pairs.size());
  const double numerator = n * sum_lc - sum_l * sum_c;
  const double denominator = n * sum_ll - sum_l * sum_l;
  local.mults += 4;
  local.adds += 2;

  CflModel model;
  if (std::abs(denominator) < kDegenerateDenominator) {
    model.alpha = 0.0;
    model.beta = sum_c / n;
  } else {
    model.alpha = numerator / denominator;
    model.beta = (sum_c - model.alpha * sum_l) / n;
  }
  // Costed for the general path so the tally does not depend on the data.
  local.mults += 1;
  local.adds += 1;
  local.divs += 2;
  if (counts) *counts += local;
  return model;
}

RegressionPairs CollectDcPairs(const NeighborContext& ctx) {
  if (!ctx.any()) {
    throw Error(ErrorCode::kUnavailable, "no neighbors for DC regression");
  }
  RegressionPairs pairs;
  ForEachNeighbor(ctx, [&](const NeighborBlocks& nb) {
    CheckNeighbor(nb);
    pairs.push_back({nb.luma->dc(), nb.chroma->dc()});
  });
  return pairs;
}

RegressionPairs CollectAcPairs(const NeighborContext& ctx) {
  if (!ctx.any()) {
    throw Error(ErrorCode::kUnavailable, "no neighbors for AC regression");
  }
  RegressionPairs pairs;
  ForEachNeighbor(ctx, [&](const NeighborBlocks& nb) {
    CheckNeighbor(nb);
    for (const auto& [u, v] : kLowAcPositions) {
      pairs.push_back({nb.luma->at(u, v), nb.chroma->at(u, v)});
    }
  });
  return pairs;
}

double NeighborAverageDc(const NeighborContext& ctx) {
  double sum = 0.0;
  int count = 0;
  ForEachNeighbor(ctx, [&](const NeighborBlocks& nb) {
    sum += nb.chroma->dc();
    ++count;
  });
  return count == 0 ? 0.0 : sum / count;
}

double FitAcAlpha(const NeighborContext& ctx, OpCounts* counts) {
  if (!ctx.any()) return 0.0;
  const RegressionPairs pairs = CollectAcPairs(ctx);
  return FitLinearModel(pairs, counts).alpha;
}

CoefficientBlock PredictFdCfl(const CoefficientBlock& luma,
                              const NeighborContext& ctx) {
  const int n = luma.size();
  CheckBlockSize(n);
  ForEachNeighbor(ctx, [&](const NeighborBlocks& nb) {
    CheckNeighbor(nb);
    if (nb.chroma->size() != n) {
      throw Error(ErrorCode::kSize, "luma block and chroma target differ in size");
    }
  });
  CoefficientBlock pred(n, luma.origin);
  if (!ctx.any()) {
    pred.set_dc(NeighborAverageDc(ctx));
    return pred;
  }
  const CflModel dc_model = FitLinearModel(CollectDcPairs(ctx));
  const double alpha_ac = FitAcAlpha(ctx);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) pred.at(u, v) = alpha_ac * luma.at(u, v);
  }
  pred.set_dc(dc_model.alpha * luma.dc() + dc_model.beta);
  return pred;
}

int64_t SpatialFitMults(int n) { return 4 * static_cast<int64_t>(n) + 2; }
int64_t SpatialFitAdds(int n) { return 8 * static_cast<int64_t>(n) + 3; }

FitCost FitCostCounters(int n) {
  CheckBlockSize(n);
  // Three neighbors of an n x n block, each contributing its DC and three
  // lowest AC coefficients. Values are irrelevant to the tally.
  RegressionPairs pairs;
  for (int neighbor = 0; neighbor < 3; ++neighbor) {
    for (int k = 0; k < 4; ++k) {
      pairs.push_back({1.0 + neighbor + 0.25 * k, 2.0 - 0.5 * k * neighbor});
    }
  }
  FitCost cost;
  FitLinearModel(pairs, &cost.raw);
  cost.frequency_mults = cost.raw.mults;
  cost.frequency_adds = cost.raw.adds + cost.raw.divs;
  cost.spatial_mults = SpatialFitMults(n);
  cost.spatial_adds = SpatialFitAdds(n);
  return cost;
}

}  // namespace lcfl

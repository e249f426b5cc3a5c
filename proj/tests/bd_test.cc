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

#include "lcfl/bd.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "lcfl/error.h"

namespace lcfl {
namespace {

// Quality as a cubic in log10(rate), increasing over the sampled range.
double Cubic(double l) { return 20 + 6 * (l - 3) - 0.4 * std::pow(l - 3, 2) + 0.05 * std::pow(l - 3, 3); }

std::vector<RdSample> Curve(double rate_scale, double quality_shift) {
  std::vector<RdSample> out;
  for (double l = 3.0; l <= 4.41; l += 0.2) {
    out.push_back({rate_scale * std::pow(10.0, l), Cubic(l) + quality_shift});
  }
  return out;
}

TEST(BdTest, IdenticalCurves) {
  const auto a = Curve(1, 0);
  const BdResult r = BdMetrics(a, a);
  EXPECT_NEAR(r.delta_rate_percent, 0.0, 1e-9);
  EXPECT_NEAR(r.delta_snr_db, 0.0, 1e-9);
}

TEST(BdTest, RateScaling) {
  const BdResult r = BdMetrics(Curve(1, 0), Curve(0.9, 0));
  EXPECT_NEAR(r.delta_rate_percent, -10.0, 0.1);
  EXPECT_GT(r.delta_snr_db, 0.0);
}

TEST(BdTest, QualityShift) {
  const BdResult r = BdMetrics(Curve(1, 0), Curve(1, 0.5));
  EXPECT_NEAR(r.delta_snr_db, 0.5, 0.01);
  EXPECT_LT(r.delta_rate_percent, 0.0);
}

// A tilted shift is still a cubic, so the fit is exact and the average
// difference over the overlap has a closed form.
TEST(BdTest, MatchesAnalyticAverage) {
  std::vector<RdSample> a, b;
  for (double l = 3.0; l <= 4.41; l += 0.2) {
    a.push_back({std::pow(10.0, l), Cubic(l)});
  }
  for (double l = 3.1; l <= 4.61; l += 0.25) {
    b.push_back({std::pow(10.0, l), Cubic(l) + 0.3 + 0.1 * l});
  }
  const double lo = 3.1, hi = a.back().rate > b.back().rate
                                  ? std::log10(b.back().rate)
                                  : std::log10(a.back().rate);
  const double want = 0.3 + 0.1 * (lo + hi) / 2;
  EXPECT_NEAR(BdMetrics(a, b).delta_snr_db, want, 1e-6);
}

TEST(BdTest, Antisymmetry) {
  const auto a = Curve(1, 0);
  std::vector<RdSample> b;
  for (double l = 3.05; l <= 4.5; l += 0.21) {
    b.push_back({std::pow(10.0, l) * 0.93, Cubic(l) + 0.2 + 0.05 * std::sin(3 * l)});
  }
  const BdResult ab = BdMetrics(a, b);
  const BdResult ba = BdMetrics(b, a);
  EXPECT_NEAR(ab.delta_snr_db, -ba.delta_snr_db, 1e-6);
  EXPECT_NEAR((1 + ab.delta_rate_percent / 100) * (1 + ba.delta_rate_percent / 100),
              1.0, 1e-4);
}

TEST(BdTest, InputOrderDoesNotMatter) {
  auto a = Curve(1, 0);
  auto b = Curve(0.8, 0.1);
  const BdResult r1 = BdMetrics(a, b);
  std::reverse(a.begin(), a.end());
  std::swap(b[1], b[4]);
  const BdResult r2 = BdMetrics(a, b);
  EXPECT_DOUBLE_EQ(r1.delta_rate_percent, r2.delta_rate_percent);
  EXPECT_DOUBLE_EQ(r1.delta_snr_db, r2.delta_snr_db);
}

TEST(BdTest, RejectsBadCurves) {
  const auto a = Curve(1, 0);
  std::vector<RdSample> three(a.begin(), a.begin() + 3);
  EXPECT_THROW(BdMetrics(a, three), Error);
  auto flat = a;
  flat[2].quality = flat[1].quality;
  EXPECT_THROW(BdMetrics(a, flat), Error);
  auto zero = a;
  zero[0].rate = 0;
  EXPECT_THROW(BdMetrics(zero, a), Error);
  // Disjoint quality ranges.
  EXPECT_THROW(BdMetrics(a, Curve(1, 100)), Error);
}

}  // namespace
}  // namespace lcfl

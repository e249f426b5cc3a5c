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

#include "lcfl/pvq.h"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lcfl/error.h"
#include "test_util.h"

namespace lcfl {
namespace {

using testing::RandomVector;

// Every integer vector with sum |y_i| = k, in lexicographic order.
void Enumerate(int n, int64_t k, std::vector<int64_t>& cur,
               std::vector<std::vector<int64_t>>& out) {
  const int i = static_cast<int>(cur.size());
  if (i == n - 1) {
    cur.push_back(k);
    out.push_back(cur);
    if (k != 0) {
      cur.back() = -k;
      out.push_back(cur);
    }
    cur.pop_back();
    return;
  }
  for (int64_t a = -k; a <= k; ++a) {
    cur.push_back(a);
    Enumerate(n, k - std::abs(a), cur, out);
    cur.pop_back();
  }
}

double Cosine(std::span<const double> x, const std::vector<int64_t>& y) {
  double xy = 0.0, yy = 0.0, xx = 0.0;
  for (size_t i = 0; i < y.size(); ++i) {
    xy += x[i] * y[i];
    yy += static_cast<double>(y[i] * y[i]);
    xx += x[i] * x[i];
  }
  return xy / std::sqrt(xx * yy);
}

TEST(ScalarQuantizeTest, Examples) {
  EXPECT_EQ(ScalarQuantize(0.0, 3.0).index, 0);
  EXPECT_EQ(ScalarQuantize(0.0, 3.0).recon, 0.0);
  EXPECT_EQ(ScalarQuantize(10.0, 4.0).index, 3);
  EXPECT_EQ(ScalarQuantize(10.0, 4.0).recon, 12.0);
  EXPECT_EQ(ScalarQuantize(2.0, 4.0).index, 1);
  EXPECT_EQ(ScalarQuantize(-2.0, 4.0).index, -1);
}

TEST(ScalarQuantizeTest, ErrorIsAtMostHalfStep) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(-1000, 1000), q(0.01, 50);
  for (int i = 0; i < 1000; ++i) {
    const double cv = c(rng), qv = q(rng);
    const ScalarQuantized s = ScalarQuantize(cv, qv);
    EXPECT_LE(std::abs(cv - s.recon), qv / 2 + 1e-9);
    EXPECT_EQ(s.recon, static_cast<double>(s.index) * qv);
  }
}

TEST(ScalarQuantizeTest, RejectsBadStep) {
  EXPECT_THROW(ScalarQuantize(1.0, 0.0), Error);
  EXPECT_THROW(ScalarQuantize(1.0, -2.0), Error);
}

TEST(PvqSearchTest, SinglePulse) {
  const std::vector<double> a = {0.9, 0.1, 0.0};
  EXPECT_EQ(PvqSearch(a, 1).pulses, (std::vector<int64_t>{1, 0, 0}));
  const std::vector<double> b = {-0.9, 0.1, 0.0};
  EXPECT_EQ(PvqSearch(b, 1).pulses, (std::vector<int64_t>{-1, 0, 0}));
}

TEST(PvqSearchTest, TiesGoToLowestIndex) {
  const std::vector<double> x = {0.5, 0.5, -0.5};
  EXPECT_EQ(PvqSearch(x, 1).pulses, (std::vector<int64_t>{1, 0, 0}));
}

TEST(PvqSearchTest, RejectsDegenerateInput) {
  const std::vector<double> zero(4, 0.0);
  EXPECT_THROW(PvqSearch(zero, 3), Error);
  const std::vector<double> x = {1.0, 2.0};
  EXPECT_THROW(PvqSearch(x, 0), Error);
}

TEST(PvqSearchTest, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 6; ++n) {
    for (int64_t k = 1; k <= 4; ++k) {
      std::vector<std::vector<int64_t>> book;
      std::vector<int64_t> cur;
      Enumerate(n, k, cur, book);
      for (int trial = 0; trial < 100; ++trial) {
        const auto x = RandomVector(rng, n);
        double best = -2.0;
        for (const auto& y : book) best = std::max(best, Cosine(x, y));
        const PulseVector got = PvqSearch(x, k);
        ASSERT_EQ(got.k(), k);
        ASSERT_NEAR(Cosine(x, got.pulses), best, 1e-12)
            << "n=" << n << " k=" << k;
      }
    }
  }
}

// One pulse at a time cannot get from (1, 0, 1, 1, 1) to (0, 0, 2, 0, 2).
TEST(PvqSearchTest, EscapesSinglePulseLocalOptimum) {
  const std::vector<double> x = {-0.28854519206166185, 0.13154818580627059,
                                 0.69151033779359139, -0.27840405899641907,
                                 -0.70123372705893239};
  EXPECT_EQ(PvqSearch(x, 4).pulses, (std::vector<int64_t>{0, 0, 2, 0, -2}));
}

TEST(PvqSearchTest, LargeBudgetsKeepExactPulseCount) {
  std::mt19937_64 rng(3);
  for (int64_t k : {17, 100, 1000, 4096}) {
    const auto x = RandomVector(rng, 15);
    EXPECT_EQ(PvqSearch(x, k).k(), k);
  }
}

TEST(PvqNormalizeTest, UnitLength) {
  PulseVector y{{1, 0, 0}};
  EXPECT_EQ(PvqNormalize(y), (Vector{1, 0, 0}));
  y.pulses = {1, 1, 0};
  const Vector u = PvqNormalize(y);
  EXPECT_NEAR(u[0], std::numbers::sqrt2 / 2, 1e-15);
  EXPECT_NEAR(u[1], std::numbers::sqrt2 / 2, 1e-15);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int i = 0; i < 100; ++i) {
    PulseVector p;
    p.pulses = {d(rng), d(rng), d(rng), 1};
    EXPECT_NEAR(Norm(PvqNormalize(p)), 1.0, 1e-9);
  }
}

TEST(HouseholderTest, Examples) {
  const std::vector<double> r1 = {3, 4};
  const HouseholderNormal h1 = ComputeHouseholder(r1);
  EXPECT_EQ(h1.axis, 1);
  EXPECT_EQ(h1.sign, 1);
  EXPECT_NEAR(h1.v[0], 0.6, 1e-15);
  EXPECT_NEAR(h1.v[1], 1.8, 1e-15);

  const std::vector<double> e0 = {1, 0, 0};
  EXPECT_EQ(ComputeHouseholder(e0).v, (Vector{2, 0, 0}));

  const std::vector<double> r3 = {-5, 0};
  const HouseholderNormal h3 = ComputeHouseholder(r3);
  EXPECT_EQ(h3.axis, 0);
  EXPECT_EQ(h3.sign, -1);
  EXPECT_EQ(h3.v, (Vector{-2, 0}));

  const std::vector<double> zero = {0, 0};
  EXPECT_THROW(ComputeHouseholder(zero), Error);
}

TEST(ReflectTest, Examples) {
  const std::vector<double> v = {1, 1, 0};
  const std::vector<double> on_plane = {1, -1, 5};
  EXPECT_EQ(Reflect(on_plane, v), (Vector{1, -1, 5}));
  const Vector neg = Reflect(v, v);
  EXPECT_NEAR(neg[0], -1, 1e-15);
  EXPECT_NEAR(neg[1], -1, 1e-15);
  const std::vector<double> zero(3, 0.0);
  EXPECT_THROW(Reflect(v, zero), Error);
}

TEST(ReflectTest, IsometryInvolutionAlignment) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dim(1, 32);
  for (int trial = 0; trial < 100000; ++trial) {
    const int n = dim(rng);
    const auto x = RandomVector(rng, n, -10, 10);
    const auto r = RandomVector(rng, n, -10, 10);
    const HouseholderNormal h = ComputeHouseholder(r);
    const Vector z = Reflect(x, h.v);
    ASSERT_NEAR(Norm(z), Norm(x), 1e-9);
    const Vector back = Reflect(z, h.v);
    for (int i = 0; i < n; ++i) ASSERT_NEAR(back[i], x[i], 1e-9);
    const Vector rr = Reflect(r, h.v);
    for (int i = 0; i < n; ++i) {
      ASSERT_NEAR(rr[i], i == h.axis ? -h.sign * Norm(r) : 0.0, 1e-9);
    }
    // The angle to r survives as the angle to the axis.
    const double lhs = Dot(x, r) / (Norm(x) * Norm(r));
    const double rhs = -h.sign * z[h.axis] / Norm(z);
    ASSERT_NEAR(lhs, rhs, 1e-9);
  }
}

TEST(PredictedQuantizeTest, ExactPredictorGivesZeroTheta) {
  std::mt19937_64 rng(6);
  const auto r = RandomVector(rng, 10);
  Vector x(r);
  for (double& v : x) v *= 3.0;
  const QuantParams qp = QuantParams::Uniform(1e-3);
  const GainShapeCode code = PredictedQuantize(x, r, qp);
  EXPECT_FALSE(code.noref);
  EXPECT_EQ(code.theta_index, 0);
  EXPECT_TRUE(code.pulses.empty());
  const Vector xh = PredictedDequantize(code, r, qp);
  EXPECT_NEAR(Dot(xh, r) / (Norm(xh) * Norm(r)), 1.0, 1e-12);
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(xh[i], x[i], 1e-3);
}

TEST(PredictedQuantizeTest, OppositePredictorIsNoref) {
  const std::vector<double> r = {1, -2, 3, 0.5};
  const std::vector<double> x = {-1, 2, -3, -0.5};
  const QuantParams qp = QuantParams::Uniform(0.1);
  const GainShapeCode code = PredictedQuantize(x, r, qp);
  EXPECT_TRUE(code.noref);
  EXPECT_FALSE(code.theta_index.has_value());
  // Noref reconstructs without the reflection.
  const Vector plain = DequantizeUnpredicted(code, 4, qp);
  EXPECT_EQ(PredictedDequantize(code, r, qp), plain);
  EXPECT_NEAR(plain[2], -3.0, 0.1);
}

TEST(PredictedQuantizeTest, FineQuantizationIsAccurate) {
  std::mt19937_64 rng(7);
  const QuantParams qp = QuantParams::Fixed(1e-3, 256, 64);
  int coded = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = RandomVector(rng, 8);
    const auto r = RandomVector(rng, 8);
    const GainShapeCode code = PredictedQuantize(x, r, qp);
    if (code.noref) continue;
    ++coded;
    const Vector xh = PredictedDequantize(code, r, qp);
    double err = 0.0;
    for (int i = 0; i < 8; ++i) err += (xh[i] - x[i]) * (xh[i] - x[i]);
    EXPECT_LT(std::sqrt(err) / Norm(x), 0.05);
  }
  EXPECT_GT(coded, 100);
}

// Rebuilds the reconstruction from the code by hand and checks the library
// agrees.
TEST(PredictedQuantizeTest, DequantizeMatchesClosedForm) {
  std::mt19937_64 rng(8);
  const QuantParams qp = QuantParams::Uniform(0.05);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto r = RandomVector(rng, 6);
    auto x = RandomVector(rng, 6);
    for (int i = 0; i < 6; ++i) x[i] += 0.8 * r[i];
    for (GainMode mode : {GainMode::kPredicted, GainMode::kUnpredicted}) {
      const GainShapeCode code = PredictedQuantize(x, r, qp, mode);
      const Vector got = PredictedDequantize(code, r, qp, mode);
      if (code.noref) continue;
      const HouseholderNormal h = ComputeHouseholder(r);
      const double g = DequantizeGain(code.gain_index, qp.q_gain, mode, Norm(r));
      const double steps = static_cast<double>(qp.theta_steps(g));
      const double theta = *code.theta_index * std::numbers::pi / 2 / steps;
      Vector z(6, 0.0);
      z[h.axis] = -h.sign * g * std::cos(theta);
      if (!code.pulses.empty()) {
        const Vector u = PvqNormalize(code.pulses);
        for (int i = 0, j = 0; i < 6; ++i) {
          if (i != h.axis) z[i] = g * std::sin(theta) * u[j++];
        }
      }
      const Vector want = Reflect(z, h.v);
      for (int i = 0; i < 6; ++i) ASSERT_NEAR(got[i], want[i], 1e-12);
      // And twice gives the same bits.
      ASSERT_EQ(PredictedDequantize(code, r, qp, mode), got);
    }
  }
}

TEST(PredictedQuantizeTest, ErrorShrinksWithFinerSteps) {
  std::mt19937_64 rng(9);
  std::vector<std::pair<Vector, Vector>> cases;
  for (int i = 0; i < 200; ++i) {
    auto r = RandomVector(rng, 8);
    auto x = RandomVector(rng, 8);
    for (int j = 0; j < 8; ++j) x[j] += r[j];
    cases.emplace_back(x, r);
  }
  double previous = 1e300;
  for (double q : {0.5, 0.2, 0.05, 0.01, 0.002}) {
    const QuantParams qp = QuantParams::Uniform(q);
    double total = 0.0;
    for (const auto& [x, r] : cases) {
      const Vector xh = PredictedDequantize(PredictedQuantize(x, r, qp), r, qp);
      for (int j = 0; j < 8; ++j) total += (xh[j] - x[j]) * (xh[j] - x[j]);
    }
    EXPECT_LE(total, previous);
    previous = total;
  }
}

TEST(PredictedQuantizeTest, ZeroPredictorIsRejected) {
  const std::vector<double> x = {1, 2}, r = {0, 0};
  EXPECT_THROW(PredictedQuantize(x, r, QuantParams::Uniform(1)), Error);
}

TEST(PredictedQuantizeTest, GainIndexCanBeNegative) {
  const std::vector<double> r = {10, 0, 0}, x = {2, 0.5, 0};
  const GainShapeCode code = PredictedQuantize(x, r, QuantParams::Uniform(1.0));
  EXPECT_FALSE(code.noref);
  EXPECT_LT(code.gain_index, 0);
}

TEST(UnpredictedTest, RoundTrip) {
  std::mt19937_64 rng(10);
  const QuantParams qp = QuantParams::Uniform(0.01);
  const auto x = RandomVector(rng, 15, -5, 5);
  const GainShapeCode code = QuantizeUnpredicted(x, qp);
  const Vector xh = DequantizeUnpredicted(code, 15, qp);
  for (int i = 0; i < 15; ++i) EXPECT_NEAR(xh[i], x[i], 0.05);
  const std::vector<double> small = {0.001, 0.0};
  EXPECT_EQ(QuantizeUnpredicted(small, qp).gain_index, 0);
}

}  // namespace
}  // namespace lcfl

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

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "lcfl/error.h"

namespace lcfl {
namespace {

constexpr int kMinPoints = 4;

using Cubic = std::array<double, 4>;  // c0 + c1 t + c2 t^2 + c3 t^3

Cubic FitCubic(const std::vector<double>& t, const std::vector<double>& y) {
  // Centering keeps the Vandermonde system well conditioned at dB scales.
  Eigen::MatrixXd a(t.size(), 4);
  Eigen::VectorXd b(t.size());
  for (size_t i = 0; i < t.size(); ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = t[i];
    a(i, 2) = t[i] * t[i];
    a(i, 3) = t[i] * t[i] * t[i];
    b(i) = y[i];
  }
  const Eigen::Vector4d c = a.colPivHouseholderQr().solve(b);
  return {c(0), c(1), c(2), c(3)};
}

double Eval(const Cubic& c, double t) {
  return ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
}

double TrapezoidMean(const Cubic& c, double lo, double hi, double center) {
  const int n = kBdIntegrationSamples;
  const double step = (hi - lo) / (n - 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    sum += weight * Eval(c, lo + i * step - center);
  }
  return sum * step / (hi - lo);
}

struct Curve {
  std::vector<double> log_rate;
  std::vector<double> quality;
};

Curve Prepare(std::span<const RdSample> samples, const char* name) {
  if (samples.size() < kMinPoints) {
    throw Error(ErrorCode::kArgument,
                std::string(name) + " curve needs at least 4 points");
  }
  std::vector<RdSample> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const RdSample& a, const RdSample& b) { return a.rate < b.rate; });
  Curve c;
  for (size_t i = 0; i < sorted.size(); ++i) {
    const RdSample& s = sorted[i];
    if (!(s.rate > 0.0) || !std::isfinite(s.rate) || !std::isfinite(s.quality)) {
      throw Error(ErrorCode::kArgument,
                  std::string(name) + " curve has a non-positive or non-finite point");
    }
    if (i > 0 && !(s.quality > sorted[i - 1].quality && s.rate > sorted[i - 1].rate)) {
      throw Error(ErrorCode::kArgument,
                  std::string(name) + " curve is not monotone");
    }
    c.log_rate.push_back(std::log10(s.rate));
    c.quality.push_back(s.quality);
  }
  return c;
}

// Mean of (fit_b - fit_a) over the overlap of the two abscissa ranges.
double MeanDifference(const std::vector<double>& xa, const std::vector<double>& ya,
                      const std::vector<double>& xb, const std::vector<double>& yb,
                      const char* what) {
  const double lo = std::max(xa.front(), xb.front());
  const double hi = std::min(xa.back(), xb.back());
  if (!(hi > lo)) {
    throw Error(ErrorCode::kArgument, std::string("curves do not overlap in ") + what);
  }
  const double center = 0.5 * (lo + hi);
  auto centered = [center](std::vector<double> v) {
    for (double& x : v) x -= center;
    return v;
  };
  const Cubic fa = FitCubic(centered(xa), ya);
  const Cubic fb = FitCubic(centered(xb), yb);
  return TrapezoidMean(fb, lo, hi, center) - TrapezoidMean(fa, lo, hi, center);
}

}  // namespace

BdResult BdMetrics(std::span<const RdSample> anchor,
                   std::span<const RdSample> test) {
  const Curve a = Prepare(anchor, "anchor");
  const Curve b = Prepare(test, "test");
  BdResult out;
  const double log_rate_diff =
      MeanDifference(a.quality, a.log_rate, b.quality, b.log_rate, "quality");
  out.delta_rate_percent = (std::pow(10.0, log_rate_diff) - 1.0) * 100.0;
  out.delta_snr_db =
      MeanDifference(a.log_rate, a.quality, b.log_rate, b.quality, "rate");
  return out;
}

}  // namespace lcfl

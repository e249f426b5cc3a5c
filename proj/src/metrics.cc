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

#include "lcfl/metrics.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lcfl/error.h"

namespace lcfl {
namespace {

void CheckSameSize(const PixelPlane& a, const PixelPlane& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::kSize, "planes differ in size");
  }
}

// Summed-area table with a zero first row and column.
class Integral {
 public:
  template <class F>
  Integral(int width, int height, F value)
      : stride_(width + 1), sums_(static_cast<size_t>(width + 1) * (height + 1), 0.0) {
    for (int y = 0; y < height; ++y) {
      double row = 0.0;
      for (int x = 0; x < width; ++x) {
        row += value(x, y);
        sums_[Index(x + 1, y + 1)] = sums_[Index(x + 1, y)] + row;
      }
    }
  }

  double Box(int x, int y, int size) const {
    return sums_[Index(x + size, y + size)] - sums_[Index(x, y + size)] -
           sums_[Index(x + size, y)] + sums_[Index(x, y)];
  }

 private:
  size_t Index(int x, int y) const { return static_cast<size_t>(y) * stride_ + x; }

  int stride_;
  std::vector<double> sums_;
};

}  // namespace

double Psnr(const PixelPlane& ref, const PixelPlane& test) {
  CheckSameSize(ref, test);
  if (ref.empty()) throw Error(ErrorCode::kSize, "empty planes");
  double sse = 0.0;
  const auto& a = ref.samples();
  const auto& b = test.samples();
  for (size_t i = 0; i < a.size(); ++i) sse += (a[i] - b[i]) * (a[i] - b[i]);
  if (sse == 0.0) return kPsnrCap;
  const double mse = sse / static_cast<double>(a.size());
  return std::min(kPsnrCap, 10.0 * std::log10(255.0 * 255.0 / mse));
}

double Ssim(const PixelPlane& ref, const PixelPlane& test) {
  CheckSameSize(ref, test);
  const int w = ref.width();
  const int h = ref.height();
  if (w < kSsimWindow || h < kSsimWindow) {
    throw Error(ErrorCode::kSize, "SSIM needs planes of at least 8x8");
  }
  constexpr double kC1 = (0.01 * 255) * (0.01 * 255);
  constexpr double kC2 = (0.03 * 255) * (0.03 * 255);
  // Shifting by mid-gray keeps the second-moment sums well conditioned.
  auto a = [&](int x, int y) { return ref.at(x, y) - 128.0; };
  auto b = [&](int x, int y) { return test.at(x, y) - 128.0; };
  const Integral sa(w, h, a);
  const Integral sb(w, h, b);
  const Integral saa(w, h, [&](int x, int y) { return a(x, y) * a(x, y); });
  const Integral sbb(w, h, [&](int x, int y) { return b(x, y) * b(x, y); });
  const Integral sab(w, h, [&](int x, int y) { return a(x, y) * b(x, y); });

  constexpr double kInvN = 1.0 / (kSsimWindow * kSsimWindow);
  double total = 0.0;
  long count = 0;
  for (int y = 0; y + kSsimWindow <= h; ++y) {
    for (int x = 0; x + kSsimWindow <= w; ++x) {
      const double mu_a = sa.Box(x, y, kSsimWindow) * kInvN;
      const double mu_b = sb.Box(x, y, kSsimWindow) * kInvN;
      const double var_a = std::max(0.0, saa.Box(x, y, kSsimWindow) * kInvN - mu_a * mu_a);
      const double var_b = std::max(0.0, sbb.Box(x, y, kSsimWindow) * kInvN - mu_b * mu_b);
      const double cov = sab.Box(x, y, kSsimWindow) * kInvN - mu_a * mu_b;
      // Means are offset by 128; add it back for the luminance term.
      const double ma = mu_a + 128.0;
      const double mb = mu_b + 128.0;
      total += ((2 * ma * mb + kC1) * (2 * cov + kC2)) /
               ((ma * ma + mb * mb + kC1) * (var_a + var_b + kC2));
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

double SsimToDb(double ssim) {
  if (ssim >= 1.0) return kPsnrCap;
  return std::min(kPsnrCap, -10.0 * std::log10(1.0 - ssim));
}

}  // namespace lcfl

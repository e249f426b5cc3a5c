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

#ifndef LCFL_METRICS_H_
#define LCFL_METRICS_H_

#include "lcfl/image.h"

namespace lcfl {

// Reported for identical planes and clamped onto every other result.
inline constexpr double kPsnrCap = 99.0;
inline constexpr int kSsimWindow = 8;

// Peak 255. Throws on dimension mismatch.
double Psnr(const PixelPlane& ref, const PixelPlane& test);

// Mean SSIM over all 8x8 windows at stride 1, uniform weights, population
// statistics, C1 = (0.01 * 255)^2 and C2 = (0.03 * 255)^2. Both planes must
// be at least 8x8.
double Ssim(const PixelPlane& ref, const PixelPlane& test);

// -10 log10(1 - ssim), capped like PSNR.
double SsimToDb(double ssim);

}  // namespace lcfl

#endif  // LCFL_METRICS_H_

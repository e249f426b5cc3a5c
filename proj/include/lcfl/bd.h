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

#ifndef LCFL_BD_H_
#define LCFL_BD_H_

#include <span>

namespace lcfl {

struct RdSample {
  double rate = 0.0;     // bits, > 0
  double quality = 0.0;  // dB
};

struct BdResult {
  double delta_rate_percent = 0.0;
  double delta_snr_db = 0.0;
};

inline constexpr int kBdIntegrationSamples = 1000;

// Bjontegaard deltas of `test` against `anchor`: cubic least-squares fits of
// log10(rate) against quality (and back), each averaged over the overlapping
// interval with the trapezoid rule on 1000 samples. Each curve needs at
// least four points whose quality increases strictly with rate.
BdResult BdMetrics(std::span<const RdSample> anchor,
                   std::span<const RdSample> test);

}  // namespace lcfl

#endif  // LCFL_BD_H_

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

#ifndef LCFL_COLOR_H_
#define LCFL_COLOR_H_

#include "lcfl/image.h"

namespace lcfl {

// BT.601 full-range conversion with round-to-nearest and clamping to 8 bits.
Frame RgbToYcbcr(const RgbImage& image);
// 4:2:0 frames are upsampled by pixel duplication first.
RgbImage YcbcrToRgb(const Frame& frame);

}  // namespace lcfl

#endif  // LCFL_COLOR_H_

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

#include "lcfl/color.h"

#include <algorithm>
#include <cmath>

namespace lcfl {
namespace {

double ToByte(double v) { return std::clamp(std::round(v), 0.0, 255.0); }

}  // namespace

Frame RgbToYcbcr(const RgbImage& image) {
  Frame frame;
  frame.y = PixelPlane(image.width, image.height);
  frame.cb = PixelPlane(image.width, image.height);
  frame.cr = PixelPlane(image.width, image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const size_t i = 3 * (static_cast<size_t>(y) * image.width + x);
      const double r = image.rgb[i];
      const double g = image.rgb[i + 1];
      const double b = image.rgb[i + 2];
      frame.y.at(x, y) = ToByte(0.299 * r + 0.587 * g + 0.114 * b);
      frame.cb.at(x, y) =
          ToByte(128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b);
      frame.cr.at(x, y) =
          ToByte(128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b);
    }
  }
  return frame;
}

RgbImage YcbcrToRgb(const Frame& frame) {
  const Frame full = ConvertSubsampling(frame, Subsampling::k444);
  RgbImage image;
  image.width = full.y.width();
  image.height = full.y.height();
  image.rgb.resize(3 * static_cast<size_t>(image.width) * image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const double luma = full.y.at(x, y);
      const double cb = full.cb.at(x, y) - 128.0;
      const double cr = full.cr.at(x, y) - 128.0;
      const size_t i = 3 * (static_cast<size_t>(y) * image.width + x);
      image.rgb[i] = static_cast<uint8_t>(ToByte(luma + 1.402 * cr));
      image.rgb[i + 1] = static_cast<uint8_t>(
          ToByte(luma - 0.344136 * cb - 0.714136 * cr));
      image.rgb[i + 2] = static_cast<uint8_t>(ToByte(luma + 1.772 * cb));
    }
  }
  return image;
}

}  // namespace lcfl

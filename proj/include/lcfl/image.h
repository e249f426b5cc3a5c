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

#ifndef LCFL_IMAGE_H_
#define LCFL_IMAGE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lcfl {

// One image plane. Samples are stored as doubles so the same type carries
// 8-bit input, filtered intermediates and reconstructions.
class PixelPlane {
 public:
  PixelPlane() = default;
  PixelPlane(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  int bit_depth() const { return 8; }
  bool empty() const { return samples_.empty(); }

  double& at(int x, int y) { return samples_[static_cast<size_t>(y) * width_ + x]; }
  double at(int x, int y) const {
    return samples_[static_cast<size_t>(y) * width_ + x];
  }

  std::vector<double>& samples() { return samples_; }
  const std::vector<double>& samples() const { return samples_; }

  bool operator==(const PixelPlane&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> samples_;
};

// Right/bottom edge replication up to the given size.
PixelPlane PadPlane(const PixelPlane& plane, int width, int height);
PixelPlane CropPlane(const PixelPlane& plane, int width, int height);

// Rounds to nearest and clamps to [0, 255].
PixelPlane RoundToByte(const PixelPlane& plane);

enum class Subsampling { k444, k420 };

const char* SubsamplingName(Subsampling s);
Subsampling ParseSubsampling(const std::string& text);

struct Frame {
  PixelPlane y;
  PixelPlane cb;
  PixelPlane cr;
  Subsampling subsampling = Subsampling::k444;

  const PixelPlane& plane(int index) const;
  PixelPlane& plane(int index);
};

// Throws unless chroma dimensions agree with the subsampling tag.
void ValidateFrame(const Frame& frame);

// 2x2 box average with round-to-nearest. Requires even dimensions.
PixelPlane Downsample2x2(const PixelPlane& plane);
// Nearest-neighbor duplication.
PixelPlane Upsample2x2(const PixelPlane& plane);

// Converts between 4:4:4 and 4:2:0 layouts. Luma is untouched.
Frame ConvertSubsampling(const Frame& frame, Subsampling target);

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> rgb;  // interleaved, row-major
};

// Binary PPM (P6) and PGM (P5), 8-bit. PGM loads as gray RGB.
RgbImage ReadPnm(const std::filesystem::path& path);
RgbImage ParsePnm(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> SerializePpm(const RgbImage& image);
std::vector<uint8_t> SerializePgm(const PixelPlane& plane);

// Single-frame YUV4MPEG2 with C420 (any siting variant) or C444.
Frame ParseY4m(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> SerializeY4m(const Frame& frame);

std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path,
                     const std::vector<uint8_t>& bytes);

// Loads .ppm/.pgm (via BT.601 conversion) or .y4m into a frame with the
// requested subsampling.
Frame LoadFrame(const std::filesystem::path& path, Subsampling target);

}  // namespace lcfl

#endif  // LCFL_IMAGE_H_

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

#ifndef LCFL_CODEC_H_
#define LCFL_CODEC_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lcfl/container.h"
#include "lcfl/entropy.h"
#include "lcfl/image.h"

namespace lcfl {

struct EncodeConfig {
  ChromaMode chroma_mode = ChromaMode::kPvqCfl;
  int block_size = 8;
  double q_gain = 8.0;
  Subsampling subsampling = Subsampling::k420;
};

void ValidateConfig(const EncodeConfig& cfg);

// DC coefficients are quantized with this multiple of q_gain.
inline constexpr double kDcStepScale = 4.0;

struct EncodeResult {
  std::vector<uint8_t> container;
  Bitstream payload;
  // Coded bits attributed to Y, Cb and Cr, in that order.
  std::array<uint64_t, 3> plane_bits{};
  // What the decoder will output, rounded to 8 bits.
  Frame reconstruction;
};

// The frame's subsampling must match cfg.subsampling.
EncodeResult EncodeFrame(const Frame& frame, const EncodeConfig& cfg);

struct DecodeResult {
  ContainerHeader header;
  Frame frame;
};

// Throws DecodeError, with a byte position when known, on corrupt input.
DecodeResult DecodeFrame(std::span<const uint8_t> container);

}  // namespace lcfl

#endif  // LCFL_CODEC_H_

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

#ifndef LCFL_CONTAINER_H_
#define LCFL_CONTAINER_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lcfl/image.h"

namespace lcfl {

enum class ChromaMode : uint8_t { kNone = 0, kFdCfl = 1, kPvqCfl = 2 };

// CLI spellings: none, fd-cfl, pvq-cfl.
const char* ChromaModeName(ChromaMode mode);
ChromaMode ParseChromaMode(const std::string& text);

struct ContainerHeader {
  uint32_t width = 0;
  uint32_t height = 0;
  Subsampling subsampling = Subsampling::k444;
  int block_size = 8;
  double q_gain = 1.0;
  ChromaMode chroma_mode = ChromaMode::kNone;

  bool operator==(const ContainerHeader&) const = default;
};

inline constexpr uint8_t kContainerVersion = 1;
inline constexpr size_t kContainerHeaderBytes = 4 + 1 + 4 + 4 + 1 + 1 + 8 + 1 + 4;

// Layout, all integers big-endian:
//   "LCFL" | version u8 | width u32 | height u32 | subsampling u8 (0=444,
//   1=420) | block size u8 | q_gain f64 | chroma mode u8 | payload length
//   u32 | payload
std::vector<uint8_t> WriteContainer(const ContainerHeader& header,
                                    std::span<const uint8_t> payload);

struct ParsedContainer {
  ContainerHeader header;
  std::span<const uint8_t> payload;
};

// Throws DecodeError on any malformed or truncated input.
ParsedContainer ParseContainer(std::span<const uint8_t> bytes);

}  // namespace lcfl

#endif  // LCFL_CONTAINER_H_

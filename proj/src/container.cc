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

#include "lcfl/container.h"

#include <bit>
#include <cmath>

#include "lcfl/block.h"
#include "lcfl/error.h"

namespace lcfl {
namespace {

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<uint8_t>(v >> shift));
}

void PutU64(std::vector<uint8_t>& out, uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<uint8_t>(v >> shift));
}

class Reader {
 public:
  explicit Reader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  uint64_t pos() const { return pos_; }

  uint64_t Get(int nbytes) {
    if (bytes_.size() - pos_ < static_cast<size_t>(nbytes)) {
      throw DecodeError("truncated container header", bytes_.size());
    }
    uint64_t v = 0;
    for (int i = 0; i < nbytes; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }

 private:
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

}  // namespace

const char* ChromaModeName(ChromaMode mode) {
  switch (mode) {
    case ChromaMode::kNone: return "none";
    case ChromaMode::kFdCfl: return "fd-cfl";
    case ChromaMode::kPvqCfl: return "pvq-cfl";
  }
  return "?";
}

ChromaMode ParseChromaMode(const std::string& text) {
  if (text == "none") return ChromaMode::kNone;
  if (text == "fd-cfl" || text == "fd_cfl") return ChromaMode::kFdCfl;
  if (text == "pvq-cfl" || text == "pvq_cfl") return ChromaMode::kPvqCfl;
  throw Error(ErrorCode::kArgument, "unknown chroma mode '" + text + "'");
}

std::vector<uint8_t> WriteContainer(const ContainerHeader& header,
                                    std::span<const uint8_t> payload) {
  CheckBlockSize(header.block_size);
  const bool odd = header.width % 2 != 0 || header.height % 2 != 0;
  if (header.width == 0 || header.height == 0 || header.width > (1u << 16) ||
      header.height > (1u << 16) ||
      (header.subsampling == Subsampling::k420 && odd) ||
      !IsSupportedBlockSize(header.block_size) || !(header.q_gain > 0.0) ||
      !std::isfinite(header.q_gain) || payload.size() > 0xFFFFFFFFu) {
    throw Error(ErrorCode::kArgument, "invalid container header");
  }
  std::vector<uint8_t> out = {'L', 'C', 'F', 'L', kContainerVersion};
  out.reserve(kContainerHeaderBytes + payload.size());
  PutU32(out, header.width);
  PutU32(out, header.height);
  out.push_back(header.subsampling == Subsampling::k420 ? 1 : 0);
  out.push_back(static_cast<uint8_t>(header.block_size));
  PutU64(out, std::bit_cast<uint64_t>(header.q_gain));
  out.push_back(static_cast<uint8_t>(header.chroma_mode));
  PutU32(out, static_cast<uint32_t>(payload.size()));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

ParsedContainer ParseContainer(std::span<const uint8_t> bytes) {
  Reader in(bytes);
  if (in.Get(4) != 0x4C43464Cu) throw DecodeError("bad magic", 0);
  if (in.Get(1) != kContainerVersion) throw DecodeError("unsupported version", 4);
  ParsedContainer parsed;
  ContainerHeader& h = parsed.header;
  h.width = static_cast<uint32_t>(in.Get(4));
  h.height = static_cast<uint32_t>(in.Get(4));
  if (h.width == 0 || h.height == 0 || h.width > (1u << 16) ||
      h.height > (1u << 16)) {
    throw DecodeError("invalid image dimensions", 5);
  }
  const uint64_t sub = in.Get(1);
  if (sub > 1) throw DecodeError("invalid subsampling", in.pos() - 1);
  h.subsampling = sub == 1 ? Subsampling::k420 : Subsampling::k444;
  if (h.subsampling == Subsampling::k420 && (h.width % 2 || h.height % 2)) {
    throw DecodeError("4:2:0 stream with odd dimensions", in.pos() - 1);
  }
  h.block_size = static_cast<int>(in.Get(1));
  if (!IsSupportedBlockSize(h.block_size)) {
    throw DecodeError("invalid block size", in.pos() - 1);
  }
  h.q_gain = std::bit_cast<double>(in.Get(8));
  if (!(h.q_gain > 0.0) || !std::isfinite(h.q_gain)) {
    throw DecodeError("invalid q_gain", in.pos() - 8);
  }
  const uint64_t mode = in.Get(1);
  if (mode > 2) throw DecodeError("invalid chroma mode", in.pos() - 1);
  h.chroma_mode = static_cast<ChromaMode>(mode);
  const uint64_t length = in.Get(4);
  if (bytes.size() - in.pos() < length) {
    throw DecodeError("truncated payload", bytes.size());
  }
  if (bytes.size() - in.pos() > length) {
    throw DecodeError("trailing bytes after payload", in.pos() + length);
  }
  parsed.payload = bytes.subspan(in.pos(), length);
  return parsed;
}

}  // namespace lcfl

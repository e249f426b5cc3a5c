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

#include "lcfl/entropy.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <string>

#include "lcfl/error.h"

namespace lcfl {
namespace {

constexpr uint32_t kTop = 1u << 24;
constexpr uint64_t kWindow = 1ull << 32;
constexpr uint32_t kMaxTotal = 1u << 16;
constexpr int kMaxGolombPrefix = 40;
// The decoder keeps a 4-byte window, so a well-formed stream never needs
// more than 4 bytes of zero padding past its end.
constexpr uint32_t kMaxPadding = 4;

}  // namespace

void RangeEncoder::Carry() {
  for (size_t i = bytes_.size(); i-- > 0;) {
    if (++bytes_[i] != 0) return;
  }
}

void RangeEncoder::Encode(uint32_t cum, uint32_t freq, uint32_t total) {
  if (total == 0 || total > kMaxTotal || freq == 0 || cum + freq > total) {
    throw Error(ErrorCode::kArgument, "invalid symbol frequencies");
  }
  const uint32_t r = range_ / total;
  low_ += static_cast<uint64_t>(r) * cum;
  range_ = r * freq;
  if (low_ >= kWindow) {
    Carry();
    low_ -= kWindow;
  }
  while (range_ < kTop) {
    bytes_.push_back(static_cast<uint8_t>(low_ >> 24));
    low_ = (low_ << 8) & (kWindow - 1);
    range_ <<= 8;
  }
}

void RangeEncoder::EncodeBits(uint32_t value, int nbits) {
  if (nbits < 1 || nbits > 16 || value >= (1u << nbits)) {
    throw Error(ErrorCode::kArgument, "invalid raw bit field");
  }
  Encode(value, 1, 1u << nbits);
}

uint64_t RangeEncoder::TellBits() const {
  return 8 * static_cast<uint64_t>(bytes_.size()) + 1 +
         static_cast<uint64_t>(std::countl_zero(range_));
}

Bitstream RangeEncoder::Finish() {
  Bitstream out;
  out.bit_length = TellBits();
  for (int nb = 0; nb <= 4; ++nb) {
    const uint64_t unit = 1ull << (32 - 8 * nb);
    uint64_t v = (low_ + unit - 1) / unit * unit;
    if (v - low_ >= range_) continue;
    if (v >= kWindow) {
      Carry();
      v -= kWindow;
    }
    for (int i = 0; i < nb; ++i) {
      bytes_.push_back(static_cast<uint8_t>(v >> (24 - 8 * i)));
    }
    break;
  }
  out.bytes = std::move(bytes_);
  *this = RangeEncoder();
  return out;
}

RangeDecoder::RangeDecoder(std::span<const uint8_t> bytes,
                           uint64_t base_offset)
    : bytes_(bytes), base_(base_offset) {
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | NextByte();
}

uint8_t RangeDecoder::NextByte() {
  if (pos_ < bytes_.size()) return bytes_[pos_++];
  ++pos_;
  ++padding_;
  return 0;
}

uint32_t RangeDecoder::DecodeFreq(uint32_t total) {
  if (bytes_.empty()) throw DecodeError("empty range-coded stream", base_);
  if (padding_ > kMaxPadding) {
    throw DecodeError("range-coded stream exhausted", base_ + bytes_.size());
  }
  if (total == 0 || total > kMaxTotal) {
    throw Error(ErrorCode::kArgument, "invalid frequency total");
  }
  step_ = range_ / total;
  const uint32_t slot = code_ / step_;
  if (slot >= total) {
    throw DecodeError("corrupt range-coded data",
                      base_ + std::min<uint64_t>(pos_, bytes_.size()));
  }
  return slot;
}

void RangeDecoder::Consume(uint32_t cum, uint32_t freq) {
  code_ -= step_ * cum;
  range_ = step_ * freq;
  while (range_ < kTop) {
    code_ = (code_ << 8) | NextByte();
    range_ <<= 8;
  }
}

uint32_t RangeDecoder::DecodeBits(int nbits) {
  if (nbits < 1 || nbits > 16) {
    throw Error(ErrorCode::kArgument, "invalid raw bit field");
  }
  const uint32_t value = DecodeFreq(1u << nbits);
  Consume(value, 1);
  return value;
}

AdaptiveModel::AdaptiveModel(int alphabet_size) {
  if (alphabet_size < 2 ||
      static_cast<uint32_t>(alphabet_size) > kHalvingTotal / 2) {
    throw Error(ErrorCode::kArgument, "unsupported alphabet size");
  }
  counts_.assign(alphabet_size, 1);
  total_ = static_cast<uint32_t>(alphabet_size);
}

double AdaptiveModel::Probability(int symbol) const {
  return static_cast<double>(counts_.at(symbol)) / total_;
}

double AdaptiveModel::Cost(int symbol) const {
  return -std::log2(Probability(symbol));
}

void AdaptiveModel::Update(int symbol) {
  counts_[symbol] += kIncrement;
  total_ += kIncrement;
  if (total_ > kHalvingTotal) {
    total_ = 0;
    for (uint32_t& c : counts_) {
      c = (c + 1) / 2;
      total_ += c;
    }
  }
}

void AdaptiveModel::Encode(RangeEncoder& enc, int symbol) {
  if (symbol < 0 || symbol >= alphabet_size()) {
    throw Error(ErrorCode::kArgument,
                "symbol " + std::to_string(symbol) + " outside alphabet");
  }
  uint32_t cum = 0;
  for (int i = 0; i < symbol; ++i) cum += counts_[i];
  enc.Encode(cum, counts_[symbol], total_);
  Update(symbol);
}

int AdaptiveModel::Decode(RangeDecoder& dec) {
  const uint32_t slot = dec.DecodeFreq(total_);
  uint32_t cum = 0;
  int symbol = 0;
  while (cum + counts_[symbol] <= slot) cum += counts_[symbol++];
  dec.Consume(cum, counts_[symbol]);
  Update(symbol);
  return symbol;
}

void EncodeExpGolomb(RangeEncoder& enc, uint64_t value) {
  if (value >= (1ull << kMaxGolombPrefix) - 1) {
    throw Error(ErrorCode::kArgument, "value too large for Exp-Golomb");
  }
  const uint64_t v = value + 1;
  const int len = 63 - std::countl_zero(v);
  for (int i = 0; i < len; ++i) enc.EncodeBits(0, 1);
  enc.EncodeBits(1, 1);
  for (int i = len - 1; i >= 0; --i) {
    enc.EncodeBits(static_cast<uint32_t>((v >> i) & 1), 1);
  }
}

uint64_t DecodeExpGolomb(RangeDecoder& dec) {
  int len = 0;
  while (dec.DecodeBits(1) == 0) {
    if (++len > kMaxGolombPrefix) {
      throw DecodeError("Exp-Golomb prefix too long", dec.position());
    }
  }
  uint64_t v = 1;
  for (int i = 0; i < len; ++i) v = (v << 1) | dec.DecodeBits(1);
  return v - 1;
}

void EncodeGolombSigned(RangeEncoder& enc, int64_t value) {
  EncodeExpGolomb(enc, static_cast<uint64_t>(std::llabs(value)));
  if (value != 0) enc.EncodeBits(value < 0 ? 1 : 0, 1);
}

int64_t DecodeGolombSigned(RangeDecoder& dec) {
  const auto magnitude = static_cast<int64_t>(DecodeExpGolomb(dec));
  if (magnitude == 0) return 0;
  return dec.DecodeBits(1) ? -magnitude : magnitude;
}

AdaptiveIntCoder::AdaptiveIntCoder(bool is_signed)
    : is_signed_(is_signed), magnitude_(kDirectSymbols + kClasses), sign_(2) {}

void AdaptiveIntCoder::Encode(RangeEncoder& enc, int64_t value) {
  if (!is_signed_ && value < 0) {
    throw Error(ErrorCode::kArgument, "negative value for unsigned coder");
  }
  const auto magnitude = static_cast<uint64_t>(std::llabs(value));
  if (magnitude < kDirectSymbols) {
    magnitude_.Encode(enc, static_cast<int>(magnitude));
  } else {
    const int cls = std::bit_width(magnitude / kDirectSymbols) - 1;
    if (cls >= kClasses) {
      throw Error(ErrorCode::kArgument, "value too large for integer coder");
    }
    magnitude_.Encode(enc, kDirectSymbols + cls);
    const uint64_t offset = magnitude - (uint64_t{kDirectSymbols} << cls);
    for (int bit = 3 + cls - 1; bit >= 0; bit -= 16) {
      const int width = std::min(bit + 1, 16);
      enc.EncodeBits(static_cast<uint32_t>((offset >> (bit + 1 - width)) & ((1u << width) - 1)), width);
    }
  }
  if (is_signed_ && magnitude != 0) sign_.Encode(enc, value < 0 ? 1 : 0);
}

double AdaptiveIntCoder::Cost(int64_t value) const {
  const auto magnitude = static_cast<uint64_t>(std::llabs(value));
  double bits = 0.0;
  if (magnitude < kDirectSymbols) {
    bits = magnitude_.Cost(static_cast<int>(magnitude));
  } else {
    const int cls =
        std::min(static_cast<int>(std::bit_width(magnitude / kDirectSymbols)) - 1, kClasses - 1);
    bits = magnitude_.Cost(kDirectSymbols + cls) + 3 + cls;
  }
  if (is_signed_ && magnitude != 0) bits += sign_.Cost(value < 0 ? 1 : 0);
  return bits;
}

int64_t AdaptiveIntCoder::Decode(RangeDecoder& dec) {
  const int symbol = magnitude_.Decode(dec);
  uint64_t magnitude = static_cast<uint64_t>(symbol);
  if (symbol >= kDirectSymbols) {
    const int cls = symbol - kDirectSymbols;
    uint64_t offset = 0;
    for (int bit = 3 + cls - 1; bit >= 0; bit -= 16) {
      const int width = std::min(bit + 1, 16);
      offset = (offset << width) | dec.DecodeBits(width);
    }
    magnitude = (uint64_t{kDirectSymbols} << cls) + offset;
  }
  const auto value = static_cast<int64_t>(magnitude);
  if (is_signed_ && magnitude != 0 && sign_.Decode(dec) == 1) return -value;
  return value;
}

}  // namespace lcfl

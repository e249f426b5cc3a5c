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

#ifndef LCFL_ENTROPY_H_
#define LCFL_ENTROPY_H_

#include <cstdint>
#include <span>
#include <vector>

namespace lcfl {

// Range-coded payload. `bit_length` is the information actually consumed by
// the coded symbols, without flush padding; it never exceeds 8 * bytes.size().
struct Bitstream {
  std::vector<uint8_t> bytes;
  uint64_t bit_length = 0;
};

// Multi-symbol range coder over a 32-bit window with byte-wise output and
// carry propagation into already emitted bytes. Frequency totals must not
// exceed 2^16.
class RangeEncoder {
 public:
  void Encode(uint32_t cum, uint32_t freq, uint32_t total);
  // nbits in [1, 16], each bit costing exactly one bit of rate.
  void EncodeBits(uint32_t value, int nbits);

  // Whole bits consumed so far (rounded up). Monotone non-decreasing.
  uint64_t TellBits() const;

  // Flushes the shortest byte suffix that identifies the final interval.
  Bitstream Finish();

 private:
  void Carry();

  uint64_t low_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  std::vector<uint8_t> bytes_;
};

class RangeDecoder {
 public:
  // `base_offset` is added to reported error positions, so errors can point
  // into an enclosing container.
  explicit RangeDecoder(std::span<const uint8_t> bytes,
                        uint64_t base_offset = 0);

  // Returns the cumulative frequency slot of the next symbol; must be
  // followed by Consume() with the symbol's (cum, freq).
  uint32_t DecodeFreq(uint32_t total);
  void Consume(uint32_t cum, uint32_t freq);
  uint32_t DecodeBits(int nbits);

  // Bytes read so far, including look-ahead.
  uint64_t position() const { return base_ + pos_; }

 private:
  uint8_t NextByte();

  std::span<const uint8_t> bytes_;
  uint64_t base_ = 0;
  uint64_t pos_ = 0;
  uint32_t padding_ = 0;
  uint32_t code_ = 0;
  uint32_t range_ = 0xFFFFFFFFu;
  uint32_t step_ = 0;
};

// Adaptive frequency table: counts start at 1, grow by kIncrement per coded
// symbol and are halved (keeping a floor of 1) once the total passes
// kHalvingTotal. Encoder and decoder adapt identically.
class AdaptiveModel {
 public:
  static constexpr uint32_t kIncrement = 32;
  static constexpr uint32_t kHalvingTotal = 1u << 15;

  explicit AdaptiveModel(int alphabet_size);

  int alphabet_size() const { return static_cast<int>(counts_.size()); }
  double Probability(int symbol) const;
  // Ideal code length in bits under the current state.
  double Cost(int symbol) const;

  void Encode(RangeEncoder& enc, int symbol);
  int Decode(RangeDecoder& dec);

 private:
  void Update(int symbol);

  std::vector<uint32_t> counts_;
  uint32_t total_ = 0;
};

// Order-0 Exp-Golomb with equiprobable bits: 0 codes as a single bit.
void EncodeExpGolomb(RangeEncoder& enc, uint64_t value);
uint64_t DecodeExpGolomb(RangeDecoder& dec);

// Exp-Golomb magnitude followed by a sign bit for non-zero values, so +v and
// -v have equal length.
void EncodeGolombSigned(RangeEncoder& enc, int64_t value);
int64_t DecodeGolombSigned(RangeDecoder& dec);

// Integer coder for quantization indices. Magnitudes below kDirectSymbols
// get their own adaptive symbol; larger ones an adaptive class symbol for
// [8 * 2^j, 8 * 2^(j+1)) followed by 3 + j raw bits. Signed coders add an
// adaptive sign after each non-zero magnitude.
class AdaptiveIntCoder {
 public:
  static constexpr int kDirectSymbols = 8;
  static constexpr int kClasses = 40;

  explicit AdaptiveIntCoder(bool is_signed = true);

  void Encode(RangeEncoder& enc, int64_t value);
  int64_t Decode(RangeDecoder& dec);
  // Estimated bits for `value` under the current state, without updating.
  double Cost(int64_t value) const;

 private:
  bool is_signed_;
  AdaptiveModel magnitude_;
  AdaptiveModel sign_;
};

}  // namespace lcfl

#endif  // LCFL_ENTROPY_H_

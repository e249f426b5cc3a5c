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

#include "lcfl/tf.h"

#include "lcfl/error.h"

namespace lcfl {
namespace {

constexpr int kQuad = 4;

// Orthonormal 2x2 Walsh-Hadamard: on return a = (a+b+c+d)/2,
// b = (a-b+c-d)/2, c = (a+b-c-d)/2, d = (a-b-c+d)/2. Its own inverse.
// The LL output is computed as ((a+b)+(c+d))/2, the same expression
// TfMergeLf uses, so the LF fast path matches it bit for bit.
void Hadamard2x2(double& a, double& b, double& c, double& d) {
  const double s0 = a + b;
  const double d0 = a - b;
  const double s1 = c + d;
  const double d1 = c - d;
  a = (s0 + s1) * 0.5;
  b = (d0 + d1) * 0.5;
  c = (s0 - s1) * 0.5;
  d = (d0 - d1) * 0.5;
}

void CheckQuadInputs(const CoefficientBlock& tl, const CoefficientBlock& tr,
                     const CoefficientBlock& bl, const CoefficientBlock& br,
                     int n) {
  if (tl.size() != n || tr.size() != n || bl.size() != n || br.size() != n) {
    throw Error(ErrorCode::kSize, "TF merge inputs must share the block size");
  }
}

}  // namespace

TfMergedBlock TfMerge2x2(const CoefficientBlock& tl, const CoefficientBlock& tr,
                         const CoefficientBlock& bl, const CoefficientBlock& br,
                         OpCounts* counts) {
  CheckQuadInputs(tl, tr, bl, br, kQuad);
  TfMergedBlock out{CoefficientBlock(2 * kQuad, tl.origin), false};
  for (int u = 0; u < kQuad; ++u) {
    for (int v = 0; v < kQuad; ++v) {
      double a = tl.at(u, v), b = tr.at(u, v), c = bl.at(u, v), d = br.at(u, v);
      Hadamard2x2(a, b, c, d);
      out.coeffs.at(u, v) = a;
      out.coeffs.at(u, v + kQuad) = b;
      out.coeffs.at(u + kQuad, v) = c;
      out.coeffs.at(u + kQuad, v + kQuad) = d;
    }
  }
  if (counts) {
    counts->adds += 8 * kQuad * kQuad;
    counts->shifts += 4 * kQuad * kQuad;
  }
  return out;
}

CoefficientBlock TfMergeLf(const CoefficientBlock& tl,
                           const CoefficientBlock& tr,
                           const CoefficientBlock& bl,
                           const CoefficientBlock& br, OpCounts* counts) {
  CheckQuadInputs(tl, tr, bl, br, kQuad);
  CoefficientBlock out(kQuad, tl.origin);
  for (int u = 0; u < kQuad; ++u) {
    for (int v = 0; v < kQuad; ++v) {
      out.at(u, v) =
          (tl.at(u, v) + tr.at(u, v) + (bl.at(u, v) + br.at(u, v))) * 0.5;
    }
  }
  if (counts) {
    counts->adds += 3 * kQuad * kQuad;
    counts->shifts += kQuad * kQuad;
  }
  return out;
}

CoefficientBlock TfMergeLfInterleaved(const CoefficientBlock& tl,
                                      const CoefficientBlock& tr,
                                      const CoefficientBlock& bl,
                                      const CoefficientBlock& br,
                                      OpCounts* counts) {
  const int n = tl.size();
  CheckBlockSize(n);
  CheckQuadInputs(tl, tr, bl, br, n);
  const int half = n / 2;
  CoefficientBlock out(n, tl.origin);
  for (int u = 0; u < half; ++u) {
    for (int v = 0; v < half; ++v) {
      // (-1)^v on the right column, (-1)^u on the bottom row.
      double a = tl.at(u, v);
      double b = (v & 1) ? -tr.at(u, v) : tr.at(u, v);
      double c = (u & 1) ? -bl.at(u, v) : bl.at(u, v);
      double d = ((u + v) & 1) ? -br.at(u, v) : br.at(u, v);
      Hadamard2x2(a, b, c, d);
      out.at(2 * u, 2 * v) = a;
      out.at(2 * u, 2 * v + 1) = b;
      out.at(2 * u + 1, 2 * v) = c;
      out.at(2 * u + 1, 2 * v + 1) = d;
    }
  }
  if (counts) {
    counts->adds += 8 * half * half;
    counts->shifts += 4 * half * half;
  }
  return out;
}

std::array<CoefficientBlock, 4> TfSplit2x2(const TfMergedBlock& merged) {
  if (merged.lf_only) {
    throw Error(ErrorCode::kContract, "cannot split an LF-only TF block");
  }
  if (merged.coeffs.size() != 2 * kQuad) {
    throw Error(ErrorCode::kSize, "TF split expects an 8x8 block");
  }
  const BlockOrigin origin = merged.coeffs.origin;
  std::array<CoefficientBlock, 4> out = {
      CoefficientBlock(kQuad, origin), CoefficientBlock(kQuad, origin),
      CoefficientBlock(kQuad, origin), CoefficientBlock(kQuad, origin)};
  for (int u = 0; u < kQuad; ++u) {
    for (int v = 0; v < kQuad; ++v) {
      double a = merged.coeffs.at(u, v);
      double b = merged.coeffs.at(u, v + kQuad);
      double c = merged.coeffs.at(u + kQuad, v);
      double d = merged.coeffs.at(u + kQuad, v + kQuad);
      Hadamard2x2(a, b, c, d);
      out[0].at(u, v) = a;
      out[1].at(u, v) = b;
      out[2].at(u, v) = c;
      out[3].at(u, v) = d;
    }
  }
  return out;
}

}  // namespace lcfl

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

#include "lcfl/transform.h"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "lcfl/error.h"

namespace lcfl {
namespace {

std::vector<double> MakeDctBasis(int n) {
  std::vector<double> basis(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
    for (int i = 0; i < n; ++i) {
      basis[k * n + i] =
          scale * std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * n));
    }
  }
  return basis;
}

// out = basis * in * basis^T (forward) or basis^T * in * basis (inverse).
void Separable(const std::vector<double>& basis, int n, bool inverse,
               std::span<const double> in, std::span<double> out) {
  std::vector<double> tmp(static_cast<size_t>(n) * n, 0.0);
  auto b = [&](int row, int col) {
    return inverse ? basis[col * n + row] : basis[row * n + col];
  };
  // Columns.
  for (int k = 0; k < n; ++k) {
    for (int x = 0; x < n; ++x) {
      double sum = 0.0;
      for (int y = 0; y < n; ++y) sum += b(k, y) * in[y * n + x];
      tmp[k * n + x] = sum;
    }
  }
  // Rows.
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      double sum = 0.0;
      for (int x = 0; x < n; ++x) sum += b(l, x) * tmp[k * n + x];
      out[k * n + l] = sum;
    }
  }
}

std::vector<double> ButterflyMatrix(int support) {
  const int half = support / 2;
  const double r = std::numbers::sqrt2 / 2;
  std::vector<double> m(static_cast<size_t>(support) * support, 0.0);
  // Row i holds the sum of pair i, row half + i its difference. Pair i is
  // (x[half - 1 - i], x[half + i]), i.e. the samples at distance i from the
  // edge.
  for (int i = 0; i < half; ++i) {
    m[i * support + (half - 1 - i)] = r;
    m[i * support + (half + i)] = r;
    m[(half + i) * support + (half - 1 - i)] = r;
    m[(half + i) * support + (half + i)] = -r;
  }
  return m;
}

std::vector<double> MatMul(const std::vector<double>& a,
                           const std::vector<double>& b, int n) {
  std::vector<double> c(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a[i * n + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  }
  return c;
}

// Builds butterfly^T * diag(I, V) * butterfly where V (or its inverse) acts
// on the difference half.
std::vector<double> BuildFilter(int support, const std::vector<double>& scales,
                                const std::vector<double>& lifting,
                                bool inverse) {
  const int half = support / 2;
  std::vector<double> middle(static_cast<size_t>(support) * support, 0.0);
  for (int i = 0; i < half; ++i) middle[i * support + i] = 1.0;
  // Columns of V are the images of the unit vectors.
  for (int col = 0; col < half; ++col) {
    std::vector<double> q(half, 0.0);
    q[col] = 1.0;
    if (!inverse) {
      for (int i = half - 2; i >= 0; --i) q[i] += lifting[i] * q[i + 1];
      for (int i = 0; i < half; ++i) q[i] *= scales[i];
    } else {
      for (int i = 0; i < half; ++i) q[i] /= scales[i];
      for (int i = 0; i <= half - 2; ++i) q[i] -= lifting[i] * q[i + 1];
    }
    for (int row = 0; row < half; ++row) {
      middle[(half + row) * support + (half + col)] = q[row];
    }
  }
  const std::vector<double> butterfly = ButterflyMatrix(support);
  std::vector<double> transposed(butterfly.size());
  for (int i = 0; i < support; ++i) {
    for (int j = 0; j < support; ++j) {
      transposed[j * support + i] = butterfly[i * support + j];
    }
  }
  return MatMul(transposed, MatMul(middle, butterfly, support), support);
}

enum class Direction { kAlongRows, kAlongColumns };

void FilterEdges(PixelPlane& plane, const LappedFilterParams& params,
                 const std::vector<double>& matrix, Direction direction) {
  const int n = params.block_size();
  const int support = params.support();
  const int half = support / 2;
  const bool rows = direction == Direction::kAlongRows;
  const int length = rows ? plane.width() : plane.height();
  const int lines = rows ? plane.height() : plane.width();
  std::vector<double> in(support);
  std::vector<double> out(support);
  for (int edge = n; edge < length; edge += n) {
    for (int line = 0; line < lines; ++line) {
      auto sample = [&](int pos) -> double& {
        return rows ? plane.at(pos, line) : plane.at(line, pos);
      };
      for (int j = 0; j < support; ++j) in[j] = sample(edge - half + j);
      for (int r = 0; r < support; ++r) {
        double sum = 0.0;
        for (int c = 0; c < support; ++c) sum += matrix[r * support + c] * in[c];
        out[r] = sum;
      }
      for (int j = 0; j < support; ++j) sample(edge - half + j) = out[j];
    }
  }
}

void CheckPlaneForBlocks(const PixelPlane& plane, int n) {
  if (plane.width() <= 0 || plane.height() <= 0 || plane.width() % n != 0 ||
      plane.height() % n != 0) {
    throw Error(ErrorCode::kSize,
                "plane " + std::to_string(plane.width()) + "x" +
                    std::to_string(plane.height()) +
                    " is not a multiple of block size " + std::to_string(n));
  }
}

}  // namespace

const std::vector<double>& DctBasis(int n) {
  CheckBlockSize(n);
  static const std::array<std::vector<double>, 3> kBases = {
      MakeDctBasis(4), MakeDctBasis(8), MakeDctBasis(16)};
  return kBases[n == 4 ? 0 : n == 8 ? 1 : 2];
}

CoefficientBlock ForwardDct(const SpatialTile& tile) {
  const int n = tile.size();
  CheckBlockSize(n);
  CoefficientBlock out(n);
  Separable(DctBasis(n), n, /*inverse=*/false, tile.values(), out.values());
  return out;
}

SpatialTile InverseDct(const CoefficientBlock& block) {
  const int n = block.size();
  CheckBlockSize(n);
  SpatialTile out(n);
  Separable(DctBasis(n), n, /*inverse=*/true, block.values(), out.values());
  return out;
}

LappedFilterParams LappedFilterParams::ForBlockSize(int block_size) {
  CheckBlockSize(block_size);
  if (block_size == 4) {
    return LappedFilterParams(block_size, {1.2691, 1.2201}, {0.3339});
  }
  return LappedFilterParams(block_size, {1.2857, 1.1867, 1.0608, 1.0202},
                            {0.1300, -0.0639, -0.0278});
}

LappedFilterParams::LappedFilterParams(int block_size,
                                       std::vector<double> scales,
                                       std::vector<double> lifting)
    : block_size_(block_size), support_(2 * static_cast<int>(scales.size())) {
  CheckBlockSize(block_size);
  if (scales.empty() || lifting.size() + 1 != scales.size() ||
      support_ > block_size) {
    throw Error(ErrorCode::kArgument, "inconsistent lapped filter parameters");
  }
  for (double s : scales) {
    if (s == 0.0) throw Error(ErrorCode::kArgument, "zero filter scale");
  }
  pre_ = BuildFilter(support_, scales, lifting, /*inverse=*/false);
  post_ = BuildFilter(support_, scales, lifting, /*inverse=*/true);
}

PixelPlane PrefilterPlane(const PixelPlane& plane,
                          const LappedFilterParams& params) {
  CheckPlaneForBlocks(plane, params.block_size());
  PixelPlane out = plane;
  FilterEdges(out, params, params.pre_matrix(), Direction::kAlongRows);
  FilterEdges(out, params, params.pre_matrix(), Direction::kAlongColumns);
  return out;
}

PixelPlane PostfilterPlane(const PixelPlane& plane,
                           const LappedFilterParams& params) {
  CheckPlaneForBlocks(plane, params.block_size());
  PixelPlane out = plane;
  FilterEdges(out, params, params.post_matrix(), Direction::kAlongColumns);
  FilterEdges(out, params, params.post_matrix(), Direction::kAlongRows);
  return out;
}

std::vector<CoefficientBlock> ForwardDctPlane(const PixelPlane& plane, int n) {
  CheckBlockSize(n);
  CheckPlaneForBlocks(plane, n);
  std::vector<CoefficientBlock> blocks;
  blocks.reserve(static_cast<size_t>(plane.width() / n) * (plane.height() / n));
  SpatialTile tile(n);
  for (int by = 0; by < plane.height() / n; ++by) {
    for (int bx = 0; bx < plane.width() / n; ++bx) {
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) tile.at(y, x) = plane.at(bx * n + x, by * n + y);
      }
      CoefficientBlock block = ForwardDct(tile);
      block.origin = {by, bx};
      blocks.push_back(std::move(block));
    }
  }
  return blocks;
}

PixelPlane InverseDctPlane(const std::vector<CoefficientBlock>& blocks,
                           int width, int height, int n) {
  CheckBlockSize(n);
  PixelPlane plane(width, height);
  CheckPlaneForBlocks(plane, n);
  const int cols = width / n;
  if (blocks.size() != static_cast<size_t>(cols) * (height / n)) {
    throw Error(ErrorCode::kSize, "block count does not match plane size");
  }
  for (size_t i = 0; i < blocks.size(); ++i) {
    const int bx = static_cast<int>(i) % cols;
    const int by = static_cast<int>(i) / cols;
    const SpatialTile tile = InverseDct(blocks[i]);
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) plane.at(bx * n + x, by * n + y) = tile.at(y, x);
    }
  }
  return plane;
}

}  // namespace lcfl

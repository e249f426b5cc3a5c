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

#include "lcfl/image.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>
#include <utility>

#include "lcfl/color.h"
#include "lcfl/error.h"

namespace lcfl {
namespace {

void CheckDimensions(int width, int height) {
  if (width <= 0 || height <= 0 || width > (1 << 16) || height > (1 << 16)) {
    throw Error(ErrorCode::kIo, "unsupported image dimensions " +
                                    std::to_string(width) + "x" +
                                    std::to_string(height));
  }
}

// Cursor over a PNM header: whitespace-separated tokens with '#' comments.
class PnmReader {
 public:
  explicit PnmReader(const std::vector<uint8_t>& bytes) : bytes_(bytes) {}

  int ReadInt() {
    SkipSpace();
    size_t start = pos_;
    long long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1 << 20)) break;
    }
    if (pos_ == start || value > (1 << 20)) {
      throw Error(ErrorCode::kIo, "malformed PNM header");
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates the header from the raster.
  size_t RasterStart() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::kIo, "malformed PNM header");
    }
    return pos_ + 1;
  }

 private:
  void SkipSpace() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<uint8_t>& bytes_;
  size_t pos_ = 2;
};

std::vector<std::string> SplitTokens(const std::string& line) {
  std::istringstream in(line);
  return {std::istream_iterator<std::string>(in),
          std::istream_iterator<std::string>()};
}

}  // namespace

PixelPlane::PixelPlane(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::kSize, "negative plane dimensions");
  }
  samples_.assign(static_cast<size_t>(width) * height, fill);
}

PixelPlane PadPlane(const PixelPlane& plane, int width, int height) {
  if (width < plane.width() || height < plane.height() || plane.empty()) {
    throw Error(ErrorCode::kSize, "padding cannot shrink or fill empty plane");
  }
  PixelPlane out(width, height);
  for (int y = 0; y < height; ++y) {
    const int sy = std::min(y, plane.height() - 1);
    for (int x = 0; x < width; ++x) {
      out.at(x, y) = plane.at(std::min(x, plane.width() - 1), sy);
    }
  }
  return out;
}

PixelPlane CropPlane(const PixelPlane& plane, int width, int height) {
  if (width > plane.width() || height > plane.height()) {
    throw Error(ErrorCode::kSize, "crop exceeds plane");
  }
  PixelPlane out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out.at(x, y) = plane.at(x, y);
  }
  return out;
}

PixelPlane RoundToByte(const PixelPlane& plane) {
  PixelPlane out = plane;
  for (double& v : out.samples()) v = std::clamp(std::round(v), 0.0, 255.0);
  return out;
}

const char* SubsamplingName(Subsampling s) {
  return s == Subsampling::k420 ? "420" : "444";
}

Subsampling ParseSubsampling(const std::string& text) {
  if (text == "444") return Subsampling::k444;
  if (text == "420") return Subsampling::k420;
  throw Error(ErrorCode::kArgument, "unknown subsampling '" + text + "'");
}

const PixelPlane& Frame::plane(int index) const {
  switch (index) {
    case 0: return y;
    case 1: return cb;
    case 2: return cr;
  }
  throw Error(ErrorCode::kArgument, "plane index out of range");
}

PixelPlane& Frame::plane(int index) {
  return const_cast<PixelPlane&>(std::as_const(*this).plane(index));
}

void ValidateFrame(const Frame& frame) {
  if (frame.y.empty()) throw Error(ErrorCode::kArgument, "empty frame");
  int cw = frame.y.width();
  int ch = frame.y.height();
  if (frame.subsampling == Subsampling::k420) {
    if (cw % 2 != 0 || ch % 2 != 0) {
      throw Error(ErrorCode::kArgument,
                  "4:2:0 requires even image dimensions");
    }
    cw /= 2;
    ch /= 2;
  }
  for (const PixelPlane* p : {&frame.cb, &frame.cr}) {
    if (p->width() != cw || p->height() != ch) {
      throw Error(ErrorCode::kArgument,
                  "chroma plane size does not match subsampling");
    }
  }
}

PixelPlane Downsample2x2(const PixelPlane& plane) {
  if (plane.width() % 2 != 0 || plane.height() % 2 != 0) {
    throw Error(ErrorCode::kArgument, "downsampling needs even dimensions");
  }
  PixelPlane out(plane.width() / 2, plane.height() / 2);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      const double sum = plane.at(2 * x, 2 * y) + plane.at(2 * x + 1, 2 * y) +
                         plane.at(2 * x, 2 * y + 1) +
                         plane.at(2 * x + 1, 2 * y + 1);
      out.at(x, y) = std::floor((sum + 2.0) / 4.0);
    }
  }
  return out;
}

PixelPlane Upsample2x2(const PixelPlane& plane) {
  PixelPlane out(plane.width() * 2, plane.height() * 2);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) out.at(x, y) = plane.at(x / 2, y / 2);
  }
  return out;
}

Frame ConvertSubsampling(const Frame& frame, Subsampling target) {
  ValidateFrame(frame);
  if (frame.subsampling == target) return frame;
  Frame out;
  out.y = frame.y;
  out.subsampling = target;
  if (target == Subsampling::k420) {
    out.cb = Downsample2x2(frame.cb);
    out.cr = Downsample2x2(frame.cr);
  } else {
    out.cb = Upsample2x2(frame.cb);
    out.cr = Upsample2x2(frame.cr);
  }
  return out;
}

RgbImage ParsePnm(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6')) {
    throw Error(ErrorCode::kIo, "not a binary PGM/PPM file");
  }
  const bool color = bytes[1] == '6';
  PnmReader reader(bytes);
  RgbImage image;
  image.width = reader.ReadInt();
  image.height = reader.ReadInt();
  const int maxval = reader.ReadInt();
  CheckDimensions(image.width, image.height);
  if (maxval != 255) throw Error(ErrorCode::kIo, "only 8-bit PNM is supported");
  const size_t start = reader.RasterStart();
  const size_t pixels = static_cast<size_t>(image.width) * image.height;
  const size_t need = pixels * (color ? 3 : 1);
  if (bytes.size() - start < need) throw Error(ErrorCode::kIo, "truncated PNM raster");
  if (color) {
    image.rgb.assign(bytes.begin() + start, bytes.begin() + start + need);
  } else {
    image.rgb.resize(3 * pixels);
    for (size_t i = 0; i < pixels; ++i) {
      std::fill_n(image.rgb.begin() + 3 * i, 3, bytes[start + i]);
    }
  }
  return image;
}

RgbImage ReadPnm(const std::filesystem::path& path) {
  return ParsePnm(ReadFileBytes(path));
}

std::vector<uint8_t> SerializePpm(const RgbImage& image) {
  const std::string header = "P6\n" + std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.rgb.begin(), image.rgb.end());
  return out;
}

std::vector<uint8_t> SerializePgm(const PixelPlane& plane) {
  const std::string header = "P5\n" + std::to_string(plane.width()) + " " +
                             std::to_string(plane.height()) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  const PixelPlane rounded = RoundToByte(plane);
  for (double v : rounded.samples()) out.push_back(static_cast<uint8_t>(v));
  return out;
}

Frame ParseY4m(const std::vector<uint8_t>& bytes) {
  const auto eol = std::find(bytes.begin(), bytes.end(), '\n');
  if (eol == bytes.end()) throw Error(ErrorCode::kIo, "malformed Y4M header");
  const auto tokens = SplitTokens(std::string(bytes.begin(), eol));
  if (tokens.empty() || tokens[0] != "YUV4MPEG2") {
    throw Error(ErrorCode::kIo, "not a YUV4MPEG2 stream");
  }
  int width = 0;
  int height = 0;
  Subsampling sub = Subsampling::k420;
  for (size_t i = 1; i < tokens.size(); ++i) {
    const std::string& t = tokens[i];
    try {
      if (t[0] == 'W') width = std::stoi(t.substr(1));
      if (t[0] == 'H') height = std::stoi(t.substr(1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kIo, "malformed Y4M dimension '" + t + "'");
    }
    if (t[0] == 'C') {
      if (t.rfind("C420", 0) == 0) {
        sub = Subsampling::k420;
      } else if (t == "C444") {
        sub = Subsampling::k444;
      } else {
        throw Error(ErrorCode::kIo, "unsupported Y4M colorspace " + t);
      }
    }
  }
  CheckDimensions(width, height);
  if (sub == Subsampling::k420 && (width % 2 != 0 || height % 2 != 0)) {
    throw Error(ErrorCode::kIo, "odd-sized 4:2:0 Y4M is not supported");
  }
  size_t pos = static_cast<size_t>(eol - bytes.begin()) + 1;
  const auto frame_eol = std::find(bytes.begin() + pos, bytes.end(), '\n');
  if (frame_eol == bytes.end() ||
      std::string(bytes.begin() + pos, bytes.begin() + pos + std::min<size_t>(5, bytes.size() - pos)) != "FRAME") {
    throw Error(ErrorCode::kIo, "missing Y4M FRAME marker");
  }
  pos = static_cast<size_t>(frame_eol - bytes.begin()) + 1;
  Frame frame;
  frame.subsampling = sub;
  const int cw = sub == Subsampling::k420 ? width / 2 : width;
  const int ch = sub == Subsampling::k420 ? height / 2 : height;
  const size_t need = static_cast<size_t>(width) * height +
                      2 * static_cast<size_t>(cw) * ch;
  if (bytes.size() - pos < need) throw Error(ErrorCode::kIo, "truncated Y4M frame");
  auto read_plane = [&](int w, int h) {
    PixelPlane p(w, h);
    for (double& v : p.samples()) v = bytes[pos++];
    return p;
  };
  frame.y = read_plane(width, height);
  frame.cb = read_plane(cw, ch);
  frame.cr = read_plane(cw, ch);
  return frame;
}

std::vector<uint8_t> SerializeY4m(const Frame& frame) {
  ValidateFrame(frame);
  const std::string header =
      "YUV4MPEG2 W" + std::to_string(frame.y.width()) + " H" +
      std::to_string(frame.y.height()) + " F1:1 Ip A1:1 " +
      (frame.subsampling == Subsampling::k420 ? "C420jpeg" : "C444") +
      "\nFRAME\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  for (int i = 0; i < 3; ++i) {
    const PixelPlane rounded = RoundToByte(frame.plane(i));
    for (double v : rounded.samples()) {
      out.push_back(static_cast<uint8_t>(v));
    }
  }
  return out;
}

std::vector<uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  return bytes;
}

void WriteFileAtomic(const std::filesystem::path& path,
                     const std::vector<uint8_t>& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out.flush()) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error(ErrorCode::kIo, "cannot write " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
}

Frame LoadFrame(const std::filesystem::path& path, Subsampling target) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  Frame frame;
  if (bytes.size() >= 9 && std::equal(bytes.begin(), bytes.begin() + 9,
                                      "YUV4MPEG2")) {
    frame = ParseY4m(bytes);
  } else {
    frame = RgbToYcbcr(ParsePnm(bytes));
  }
  if (target == Subsampling::k420 &&
      (frame.y.width() % 2 != 0 || frame.y.height() % 2 != 0)) {
    throw Error(ErrorCode::kArgument, "4:2:0 requires even image dimensions");
  }
  return ConvertSubsampling(frame, target);
}

}  // namespace lcfl

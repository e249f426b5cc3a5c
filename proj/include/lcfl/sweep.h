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

#ifndef LCFL_SWEEP_H_
#define LCFL_SWEEP_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lcfl/bd.h"
#include "lcfl/codec.h"

namespace lcfl {

enum class Metric { kPsnr, kSsim };

const char* MetricName(Metric metric);
Metric ParseMetric(const std::string& text);

// One CSV row. `plane` is 1 for Cb, 2 for Cr.
struct RdRow {
  std::string image;
  ChromaMode mode = ChromaMode::kNone;
  double q_gain = 0.0;
  int plane = 1;
  Metric metric = Metric::kPsnr;
  uint64_t rate_bits = 0;
  double value = 0.0;

  bool operator==(const RdRow&) const = default;
};

struct SweepConfig {
  std::vector<double> q_ladder;
  std::vector<ChromaMode> modes;
  int block_size = 8;
  Subsampling subsampling = Subsampling::k420;
  int jobs = 1;
};

void ValidateSweepConfig(const SweepConfig& cfg);

struct SweepResult {
  std::vector<RdRow> rows;
  // One message per image that could not be loaded or coded.
  std::vector<std::string> errors;
};

// Regular files with .ppm, .pgm or .y4m extensions, sorted by file name.
std::vector<std::filesystem::path> ListCorpus(const std::filesystem::path& dir);

// Rows come out ordered by image (input order), q ladder, mode, plane,
// metric, whatever `jobs` is.
SweepResult RunSweep(const std::vector<std::filesystem::path>& images,
                     const SweepConfig& cfg);

inline constexpr const char* kCsvHeader =
    "image,mode,q_gain,plane,metric,rate_bits,value";

std::string FormatCsv(const std::vector<RdRow>& rows);
// Throws DecodeError on malformed input.
std::vector<RdRow> ParseCsv(const std::string& text);

// Corpus curve for one mode, plane and metric: per q_gain the rates of all
// images are summed and their metric values averaged. Only q values present
// for every image are kept. SSIM averages are mapped to dB afterwards.
std::vector<RdSample> AggregateCurve(const std::vector<RdRow>& rows,
                                     ChromaMode mode, int plane, Metric metric);

std::vector<ChromaMode> ModesIn(const std::vector<RdRow>& rows);

// Plain-text BD table of `test` against `anchor` shaped like the usual
// four-metric report; metrics that are not computed print as n/a.
std::string FormatBdReport(const std::vector<RdRow>& anchor_rows,
                           ChromaMode anchor_mode,
                           const std::vector<RdRow>& test_rows,
                           ChromaMode test_mode);

}  // namespace lcfl

#endif  // LCFL_SWEEP_H_

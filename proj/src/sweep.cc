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

#include "lcfl/sweep.h"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "lcfl/error.h"
#include "lcfl/metrics.h"

namespace lcfl {
namespace {

// Metrics per image and q for every mode, in row order.
std::vector<RdRow> SweepPoint(const std::string& name, const Frame& frame,
                              double q, const SweepConfig& cfg) {
  std::vector<RdRow> rows;
  for (ChromaMode mode : cfg.modes) {
    EncodeConfig enc{mode, cfg.block_size, q, cfg.subsampling};
    const EncodeResult result = EncodeFrame(frame, enc);
    for (int plane = 1; plane <= 2; ++plane) {
      const PixelPlane& ref = frame.plane(plane);
      const PixelPlane& rec = result.reconstruction.plane(plane);
      const uint64_t bits = result.plane_bits[plane];
      rows.push_back({name, mode, q, plane, Metric::kPsnr, bits, Psnr(ref, rec)});
      rows.push_back({name, mode, q, plane, Metric::kSsim, bits, Ssim(ref, rec)});
    }
  }
  return rows;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::string QuoteCsv(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
T ParseNumber(const std::string& text, size_t line) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw DecodeError(fmt::format("bad number '{}' on CSV line {}", text, line));
  }
  return value;
}

int ParsePlane(const std::string& text, size_t line) {
  if (text == "cb") return 1;
  if (text == "cr") return 2;
  throw DecodeError(fmt::format("bad plane '{}' on CSV line {}", text, line));
}

}  // namespace

const char* MetricName(Metric metric) {
  return metric == Metric::kPsnr ? "psnr" : "ssim";
}

Metric ParseMetric(const std::string& text) {
  if (text == "psnr") return Metric::kPsnr;
  if (text == "ssim") return Metric::kSsim;
  throw Error(ErrorCode::kArgument, "unknown metric '" + text + "'");
}

void ValidateSweepConfig(const SweepConfig& cfg) {
  if (cfg.q_ladder.empty()) throw Error(ErrorCode::kArgument, "empty q ladder");
  if (cfg.modes.empty()) throw Error(ErrorCode::kArgument, "no modes to sweep");
  if (cfg.jobs < 1) throw Error(ErrorCode::kArgument, "jobs must be at least 1");
  for (double q : cfg.q_ladder) {
    ValidateConfig({ChromaMode::kNone, cfg.block_size, q, cfg.subsampling});
  }
}

std::vector<std::filesystem::path> ListCorpus(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    const std::string ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".ppm" || ext == ".pgm" || ext == ".y4m")) {
      out.push_back(entry.path());
    }
  }
  if (ec) throw Error(ErrorCode::kIo, "cannot list " + dir.string());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.filename().string() < b.filename().string();
  });
  return out;
}

SweepResult RunSweep(const std::vector<std::filesystem::path>& images,
                     const SweepConfig& cfg) {
  ValidateSweepConfig(cfg);
  SweepResult result;
  std::vector<std::pair<std::string, Frame>> frames;
  for (const auto& path : images) {
    try {
      frames.emplace_back(path.filename().string(), LoadFrame(path, cfg.subsampling));
    } catch (const Error& e) {
      result.errors.push_back(path.string() + ": " + e.what());
    }
  }

  const size_t tasks = frames.size() * cfg.q_ladder.size();
  std::vector<std::vector<RdRow>> slots(tasks);
  std::vector<std::optional<std::string>> failures(tasks);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t t = next++; t < tasks; t = next++) {
      const auto& [name, frame] = frames[t / cfg.q_ladder.size()];
      try {
        slots[t] = SweepPoint(name, frame, cfg.q_ladder[t % cfg.q_ladder.size()], cfg);
      } catch (const std::exception& e) {
        failures[t] = name + ": " + e.what();
      }
    }
  };
  const size_t workers = std::min<size_t>(static_cast<size_t>(cfg.jobs), std::max<size_t>(tasks, 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }

  // An image with any failed point is dropped whole so curves stay aligned.
  for (size_t i = 0; i < frames.size(); ++i) {
    const size_t first = i * cfg.q_ladder.size();
    const size_t last = first + cfg.q_ladder.size();
    const auto failed = std::find_if(failures.begin() + first, failures.begin() + last,
                                     [](const auto& f) { return f.has_value(); });
    if (failed != failures.begin() + last) {
      result.errors.push_back(**failed);
      continue;
    }
    for (size_t t = first; t < last; ++t) {
      result.rows.insert(result.rows.end(), slots[t].begin(), slots[t].end());
    }
  }
  return result;
}

std::string FormatCsv(const std::vector<RdRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const RdRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{}\n", QuoteCsv(r.image),
                       ChromaModeName(r.mode), r.q_gain, r.plane == 1 ? "cb" : "cr",
                       MetricName(r.metric), r.rate_bits, r.value);
  }
  return out;
}

std::vector<RdRow> ParseCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw DecodeError("missing or unexpected CSV header");
  }
  std::vector<RdRow> rows;
  for (size_t number = 2; std::getline(in, line); ++number) {
    if (line.empty()) continue;
    const auto f = SplitCsvLine(line);
    if (f.size() != 7) {
      throw DecodeError(fmt::format("expected 7 fields on CSV line {}", number));
    }
    RdRow row;
    row.image = f[0];
    try {
      row.mode = ParseChromaMode(f[1]);
      row.metric = ParseMetric(f[4]);
    } catch (const Error& e) {
      throw DecodeError(fmt::format("{} on CSV line {}", e.what(), number));
    }
    row.q_gain = ParseNumber<double>(f[2], number);
    row.plane = ParsePlane(f[3], number);
    row.rate_bits = ParseNumber<uint64_t>(f[5], number);
    row.value = ParseNumber<double>(f[6], number);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RdSample> AggregateCurve(const std::vector<RdRow>& rows,
                                     ChromaMode mode, int plane, Metric metric) {
  std::set<std::string> images;
  std::map<double, std::vector<const RdRow*>> by_q;
  for (const RdRow& r : rows) {
    if (r.mode != mode || r.plane != plane || r.metric != metric) continue;
    images.insert(r.image);
    by_q[r.q_gain].push_back(&r);
  }
  std::vector<RdSample> curve;
  for (const auto& [q, points] : by_q) {
    std::set<std::string> seen;
    double rate = 0.0;
    double value = 0.0;
    for (const RdRow* r : points) {
      seen.insert(r->image);
      rate += static_cast<double>(r->rate_bits);
      value += r->value;
    }
    if (seen != images || points.size() != images.size()) continue;
    value /= static_cast<double>(points.size());
    curve.push_back({rate, metric == Metric::kSsim ? SsimToDb(value) : value});
  }
  return curve;
}

std::vector<ChromaMode> ModesIn(const std::vector<RdRow>& rows) {
  std::vector<ChromaMode> modes;
  for (const RdRow& r : rows) {
    if (std::find(modes.begin(), modes.end(), r.mode) == modes.end()) {
      modes.push_back(r.mode);
    }
  }
  return modes;
}

std::string FormatBdReport(const std::vector<RdRow>& anchor_rows,
                           ChromaMode anchor_mode,
                           const std::vector<RdRow>& test_rows,
                           ChromaMode test_mode) {
  std::string out = fmt::format("BD metrics of {} against {}\n\n",
                                ChromaModeName(test_mode), ChromaModeName(anchor_mode));
  out += fmt::format("{:<10}{:>12}{:>12}{:>12}{:>12}\n", "", "Cb", "", "Cr", "");
  out += fmt::format("{:<10}{:>12}{:>12}{:>12}{:>12}\n", "metric", "dRate(%)",
                     "dSNR(dB)", "dRate(%)", "dSNR(dB)");
  struct Entry {
    const char* label;
    std::optional<Metric> metric;
  };
  const Entry entries[] = {{"PSNR", Metric::kPsnr},
                           {"PSNR-HVS", std::nullopt},
                           {"SSIM", Metric::kSsim},
                           {"FastSSIM", std::nullopt}};
  for (const Entry& e : entries) {
    out += fmt::format("{:<10}", e.label);
    for (int plane = 1; plane <= 2; ++plane) {
      if (!e.metric) {
        out += fmt::format("{:>12}{:>12}", "n/a", "n/a");
        continue;
      }
      const BdResult bd =
          BdMetrics(AggregateCurve(anchor_rows, anchor_mode, plane, *e.metric),
                    AggregateCurve(test_rows, test_mode, plane, *e.metric));
      out += fmt::format("{:>12.4f}{:>12.4f}", bd.delta_rate_percent, bd.delta_snr_db);
    }
    out += "\n";
  }
  return out;
}

}  // namespace lcfl

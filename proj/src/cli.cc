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

#include "lcfl/cli.h"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lcfl/cfl.h"
#include "lcfl/codec.h"
#include "lcfl/color.h"
#include "lcfl/error.h"
#include "lcfl/metrics.h"
#include "lcfl/sweep.h"
#include "lcfl/tf.h"

namespace lcfl {
namespace {

struct EncodeArgs {
  std::string in;
  std::string out;
  std::string chroma_mode = "pvq-cfl";
  int block_size = 8;
  double q = 8.0;
  std::string subsampling = "420";
};

struct DecodeArgs {
  std::string in;
  std::string out;
};

struct SweepArgs {
  std::string corpus;
  std::string q_ladder;
  std::string modes = "fd-cfl,pvq-cfl";
  std::string out;
  int jobs = 1;
  int block_size = 8;
  std::string subsampling = "420";
};

struct BdArgs {
  std::string a;
  std::string b;
  std::string out;
  std::string mode_a;
  std::string mode_b;
};

struct MetricsArgs {
  std::string ref;
  std::string test;
  std::string metric = "psnr";
};

void SetUpLogging() {
  auto logger = spdlog::stderr_logger_mt("lcfl");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::level::level_enum level = spdlog::level::err;
  if (const char* env = std::getenv("LCFL_LOG")) {
    const std::string name = env;
    if (name == "info") level = spdlog::level::info;
    if (name == "debug") level = spdlog::level::debug;
  }
  spdlog::set_level(level);
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> ParseLadder(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : SplitList(text)) {
    size_t used = 0;
    double q = 0.0;
    try {
      q = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      throw Error(ErrorCode::kArgument, "bad q value '" + item + "'");
    }
    out.push_back(q);
  }
  return out;
}

std::vector<uint8_t> ToBytes(const std::string& s) { return {s.begin(), s.end()}; }

std::string ReadText(const std::string& path) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  return {bytes.begin(), bytes.end()};
}

std::string Extension(const std::string& path) {
  return std::filesystem::path(path).extension().string();
}

int RunEncode(const EncodeArgs& args) {
  const EncodeConfig cfg{ParseChromaMode(args.chroma_mode), args.block_size,
                         args.q, ParseSubsampling(args.subsampling)};
  ValidateConfig(cfg);
  const Frame frame = LoadFrame(args.in, cfg.subsampling);
  spdlog::info("encoding {} ({}x{}, {}, N={}, q={}, {})", args.in, frame.y.width(),
               frame.y.height(), SubsamplingName(cfg.subsampling), cfg.block_size,
               cfg.q_gain, ChromaModeName(cfg.chroma_mode));
  const EncodeResult result = EncodeFrame(frame, cfg);
  WriteFileAtomic(args.out, result.container);
  fmt::print("{} bytes, {} payload bits (Y {}, Cb {}, Cr {})\n",
             result.container.size(), result.payload.bit_length,
             result.plane_bits[0], result.plane_bits[1], result.plane_bits[2]);
  return kExitOk;
}

int RunDecode(const DecodeArgs& args) {
  const std::string ext = Extension(args.out);
  if (ext != ".ppm" && ext != ".y4m") {
    throw Error(ErrorCode::kArgument, "output must be .ppm or .y4m");
  }
  const DecodeResult decoded = DecodeFrame(ReadFileBytes(args.in));
  spdlog::info("decoded {}x{} {}", decoded.header.width, decoded.header.height,
               SubsamplingName(decoded.header.subsampling));
  WriteFileAtomic(args.out, ext == ".y4m"
                                ? SerializeY4m(decoded.frame)
                                : SerializePpm(YcbcrToRgb(decoded.frame)));
  return kExitOk;
}

int RunSweepCommand(const SweepArgs& args) {
  SweepConfig cfg;
  cfg.q_ladder = ParseLadder(args.q_ladder);
  for (const std::string& m : SplitList(args.modes)) cfg.modes.push_back(ParseChromaMode(m));
  cfg.block_size = args.block_size;
  cfg.subsampling = ParseSubsampling(args.subsampling);
  cfg.jobs = args.jobs;
  ValidateSweepConfig(cfg);
  const auto images = ListCorpus(args.corpus);
  spdlog::info("sweeping {} images x {} q values x {} modes", images.size(),
               cfg.q_ladder.size(), cfg.modes.size());
  const SweepResult result = RunSweep(images, cfg);
  for (const std::string& e : result.errors) spdlog::error("skipped {}", e);
  if (result.rows.empty()) throw Error(ErrorCode::kIo, "no image could be swept");
  WriteFileAtomic(args.out, ToBytes(FormatCsv(result.rows)));
  return kExitOk;
}

ChromaMode SelectMode(const std::vector<RdRow>& rows, const std::string& wanted,
                      const std::string& file) {
  const std::vector<ChromaMode> modes = ModesIn(rows);
  if (!wanted.empty()) {
    const ChromaMode mode = ParseChromaMode(wanted);
    if (std::find(modes.begin(), modes.end(), mode) == modes.end()) {
      throw Error(ErrorCode::kArgument, file + " has no rows for mode " + wanted);
    }
    return mode;
  }
  if (modes.size() != 1) {
    throw Error(ErrorCode::kArgument,
                file + " holds several modes; pick one with --mode-a/--mode-b");
  }
  return modes.front();
}

int RunBdrate(const BdArgs& args) {
  if (!args.mode_a.empty()) ParseChromaMode(args.mode_a);
  if (!args.mode_b.empty()) ParseChromaMode(args.mode_b);
  const std::vector<RdRow> a = ParseCsv(ReadText(args.a));
  const std::vector<RdRow> b = ParseCsv(ReadText(args.b));
  const std::string report = FormatBdReport(a, SelectMode(a, args.mode_a, args.a), b,
                                            SelectMode(b, args.mode_b, args.b));
  WriteFileAtomic(args.out, ToBytes(report));
  fmt::print("{}", report);
  return kExitOk;
}

int RunMetrics(const MetricsArgs& args) {
  const Metric metric = ParseMetric(args.metric);
  const Frame ref = LoadFrame(args.ref, Subsampling::k444);
  const Frame test = LoadFrame(args.test, Subsampling::k444);
  const char* names[] = {"y", "cb", "cr"};
  for (int p = 0; p < 3; ++p) {
    const double v = metric == Metric::kPsnr ? Psnr(ref.plane(p), test.plane(p))
                                             : Ssim(ref.plane(p), test.plane(p));
    fmt::print("{} {} {:.6f}\n", names[p], MetricName(metric), v);
  }
  return kExitOk;
}

int RunCounters(int n) {
  CheckBlockSize(n);
  const FitCost cost = FitCostCounters(n);
  fmt::print("block size {}\n", n);
  fmt::print("frequency-domain fit: {} mults, {} adds\n", cost.frequency_mults,
             cost.frequency_adds);
  fmt::print("spatial-domain fit:   {} mults, {} adds\n", cost.spatial_mults,
             cost.spatial_adds);
  OpCounts full;
  OpCounts lf;
  const CoefficientBlock zero(4);
  TfMerge2x2(zero, zero, zero, zero, &full);
  TfMergeLf(zero, zero, zero, zero, &lf);
  fmt::print("tf merge 4x4 quad:    full {} adds {} shifts, lf-only {} adds {} shifts\n",
             full.adds, full.shifts, lf.adds, lf.shifts);
  return kExitOk;
}

int ExitCodeFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kIo: return kExitIo;
    case ErrorCode::kDecode: return kExitDecode;
    default: return kExitUsage;
  }
}

}  // namespace

int RunCli(int argc, char** argv) {
  SetUpLogging();
  CLI::App app{"Chroma-from-luma image codec with lapped transforms and PVQ", "lcfl"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Encode a PPM/PGM/Y4M image");
  encode->add_option("--in", enc.in, "Input image")->required();
  encode->add_option("--out", enc.out, "Output .lcfl file")->required();
  encode->add_option("--chroma-mode", enc.chroma_mode, "none|fd-cfl|pvq-cfl")
      ->check(CLI::IsMember({"none", "fd-cfl", "pvq-cfl"}))
      ->capture_default_str();
  encode->add_option("--block-size", enc.block_size, "4|8|16")
      ->check(CLI::IsMember({4, 8, 16}))
      ->capture_default_str();
  encode->add_option("--q", enc.q, "Quantizer step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  encode->add_option("--subsampling", enc.subsampling, "444|420")
      ->check(CLI::IsMember({"444", "420"}))
      ->capture_default_str();

  DecodeArgs dec;
  auto* decode = app.add_subcommand("decode", "Decode an .lcfl file to PPM or Y4M");
  decode->add_option("--in", dec.in, "Input .lcfl file")->required();
  decode->add_option("--out", dec.out, "Output .ppm or .y4m")->required();

  SweepArgs sweep;
  auto* rd = app.add_subcommand("rd-sweep", "Rate-distortion sweep over a corpus");
  rd->add_option("--corpus", sweep.corpus, "Image directory")->required();
  rd->add_option("--q-ladder", sweep.q_ladder, "Comma-separated q values")->required();
  rd->add_option("--modes", sweep.modes, "Comma-separated chroma modes")
      ->capture_default_str();
  rd->add_option("--out", sweep.out, "Output CSV")->required();
  rd->add_option("--jobs", sweep.jobs, "Worker threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  rd->add_option("--block-size", sweep.block_size, "4|8|16")
      ->check(CLI::IsMember({4, 8, 16}))
      ->capture_default_str();
  rd->add_option("--subsampling", sweep.subsampling, "444|420")
      ->check(CLI::IsMember({"444", "420"}))
      ->capture_default_str();

  BdArgs bd;
  auto* bdrate = app.add_subcommand("bdrate", "BD-rate report of curve B against A");
  bdrate->add_option("--a", bd.a, "Anchor sweep CSV")->required();
  bdrate->add_option("--b", bd.b, "Test sweep CSV")->required();
  bdrate->add_option("--out", bd.out, "Report file")->required();
  bdrate->add_option("--mode-a", bd.mode_a, "Mode to read from A");
  bdrate->add_option("--mode-b", bd.mode_b, "Mode to read from B");

  MetricsArgs met;
  auto* metrics = app.add_subcommand("metrics", "Per-plane PSNR or SSIM of two images");
  metrics->add_option("--ref", met.ref, "Reference image")->required();
  metrics->add_option("--test", met.test, "Test image")->required();
  metrics->add_option("--metric", met.metric, "psnr|ssim")
      ->check(CLI::IsMember({"psnr", "ssim"}))
      ->capture_default_str();

  int counter_block = 8;
  auto* counters = app.add_subcommand("counters", "Model-fit operation counts");
  counters->add_option("--block-size", counter_block, "4|8|16")
      ->check(CLI::IsMember({4, 8, 16}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*encode) return RunEncode(enc);
    if (*decode) return RunDecode(dec);
    if (*rd) return RunSweepCommand(sweep);
    if (*bdrate) return RunBdrate(bd);
    if (*metrics) return RunMetrics(met);
    if (*counters) return RunCounters(counter_block);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace lcfl

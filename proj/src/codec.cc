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

#include "lcfl/codec.h"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>

#include "lcfl/cfl.h"
#include "lcfl/error.h"
#include "lcfl/pvq.h"
#include "lcfl/pvq_cfl.h"
#include "lcfl/tf.h"
#include "lcfl/transform.h"

namespace lcfl {
namespace {

constexpr double kLevelShift = 128.0;
constexpr int kDensityClasses = 5;

constexpr int kStepBuckets = 6;
constexpr int kPredictorBuckets = 6;

// Context bucket for the number of theta steps.
int StepBucket(int64_t steps) {
  if (steps <= 1) return 0;
  if (steps <= 2) return 1;
  if (steps <= 4) return 2;
  if (steps <= 8) return 3;
  if (steps <= 16) return 4;
  return 5;
}

// Context bucket for the predictor norm in quantizer steps.
int PredictorBucket(double r_norm, double q) {
  const double ratio = r_norm / q;
  if (ratio < 0.5) return 0;
  if (ratio < 1.0) return 1;
  if (ratio < 2.0) return 2;
  if (ratio < 4.0) return 3;
  if (ratio < 8.0) return 4;
  return 5;
}

template <class T>
std::vector<std::vector<T>> Grid(int rows, int cols, const T& proto) {
  return std::vector<std::vector<T>>(rows, std::vector<T>(cols, proto));
}

// Adaptive contexts of one plane, indexed by band first.
struct PlaneContexts {
  explicit PlaneContexts(int bands)
      : gain(bands, AdaptiveIntCoder(false)),
        gain_predicted(Grid(bands, kPredictorBuckets, AdaptiveIntCoder(true))),
        theta(Grid(bands, kStepBuckets, AdaptiveIntCoder(false))),
        noref_by_steps(Grid(bands, kStepBuckets, AdaptiveModel(2))),
        noref_by_predictor(Grid(bands, kPredictorBuckets, AdaptiveModel(2))),
        pulses(kDensityClasses, AdaptiveIntCoder(false)) {}

  AdaptiveIntCoder dc{true};
  std::vector<AdaptiveIntCoder> gain;
  std::vector<std::vector<AdaptiveIntCoder>> gain_predicted;
  std::vector<std::vector<AdaptiveIntCoder>> theta;
  std::vector<std::vector<AdaptiveModel>> noref_by_steps;
  std::vector<std::vector<AdaptiveModel>> noref_by_predictor;
  std::vector<AdaptiveIntCoder> pulses;
  AdaptiveModel flip{2};
};

int DensityClass(int64_t k, int dims) {
  const double density = static_cast<double>(k) / dims;
  if (density < 0.5) return 0;
  if (density < 1.0) return 1;
  if (density < 2.0) return 2;
  if (density < 4.0) return 3;
  return 4;
}

// The bitstream syntax is written once against this interface: the writer
// codes the referenced values, the reader overwrites them.
class SymbolWriter {
 public:
  static constexpr bool kReading = false;

  explicit SymbolWriter(RangeEncoder& enc) : enc_(enc) {}

  void Int(AdaptiveIntCoder& coder, int64_t& value) { coder.Encode(enc_, value); }
  void Flag(AdaptiveModel& model, bool& value) { model.Encode(enc_, value ? 1 : 0); }
  void RawBit(bool& value) { enc_.EncodeBits(value ? 1 : 0, 1); }
  void Check(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kContract, what);
  }
  uint64_t Tell() const { return enc_.TellBits(); }

 private:
  RangeEncoder& enc_;
};

class SymbolReader {
 public:
  static constexpr bool kReading = true;

  explicit SymbolReader(RangeDecoder& dec) : dec_(dec) {}

  void Int(AdaptiveIntCoder& coder, int64_t& value) { value = coder.Decode(dec_); }
  void Flag(AdaptiveModel& model, bool& value) { value = model.Decode(dec_) == 1; }
  void RawBit(bool& value) { value = dec_.DecodeBits(1) == 1; }
  void Check(bool ok, const char* what) {
    if (!ok) throw DecodeError(what, dec_.position());
  }
  uint64_t Tell() const { return 0; }

 private:
  RangeDecoder& dec_;
};

// Sums ideal code lengths without touching any model.
class CostEstimator {
 public:
  static constexpr bool kReading = false;

  void Int(AdaptiveIntCoder& coder, int64_t& value) { bits_ += coder.Cost(value); }
  void Flag(AdaptiveModel& model, bool& value) { bits_ += model.Cost(value ? 1 : 0); }
  void RawBit(bool&) { bits_ += 1.0; }
  void Check(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::kContract, what);
  }

  double bits() const { return bits_; }

 private:
  double bits_ = 0.0;
};

template <class Io>
void PulsesIo(Io& io, PlaneContexts& ctx, int dims, int64_t k,
              PulseVector& pv) {
  if constexpr (Io::kReading) {
    pv.pulses.assign(dims, 0);
  } else {
    io.Check(pv.dims() == dims && pv.k() == k, "pulse vector does not match k");
  }
  AdaptiveIntCoder& magnitude = ctx.pulses[DensityClass(k, dims)];
  int64_t remaining = k;
  for (int i = 0; i < dims && remaining > 0; ++i) {
    int64_t m = std::llabs(pv.pulses[i]);
    if (i + 1 < dims) {
      io.Int(magnitude, m);
      io.Check(m <= remaining, "pulse magnitude exceeds remaining budget");
    } else {
      m = remaining;
    }
    remaining -= m;
    if (m == 0) continue;
    bool negative = pv.pulses[i] < 0;
    io.RawBit(negative);
    pv.pulses[i] = negative ? -m : m;
  }
}

enum class BandKind { kUnpredicted, kFdCfl, kPvqCfl };

template <class Io>
void UnpredictedBodyIo(Io& io, PlaneContexts& ctx, int dims,
                       const QuantParams& qp, GainShapeCode& code) {
  code.noref = true;
  code.theta_index.reset();
  const double g =
      DequantizeGain(code.gain_index, qp.q_gain, GainMode::kUnpredicted, 0.0);
  if (g == 0.0) {
    code.pulses = {};
    return;
  }
  PulsesIo(io, ctx, dims, qp.pulse_budget(g, dims), code.pulses);
}

template <class Io>
void PredictedBodyIo(Io& io, PlaneContexts& ctx, int band, int dims,
                     double gain_hat, const QuantParams& qp,
                     GainShapeCode& code) {
  code.noref = false;
  if (gain_hat == 0.0) {
    code.theta_index = 0;
    code.pulses = {};
    return;
  }
  int64_t t = code.theta_index.value_or(0);
  const int64_t steps = qp.theta_steps(gain_hat);
  io.Int(ctx.theta[band][StepBucket(steps)], t);
  io.Check(t <= steps, "theta index out of range");
  code.theta_index = t;
  const int64_t k = PredictedPulseCount(gain_hat, t, steps, dims, qp);
  if (k == 0) {
    code.pulses = {};
    return;
  }
  PulsesIo(io, ctx, dims - 1, k, code.pulses);
}

// PVQ-CfL flip of the current block. It is sent once, just before the first
// band that is coded against the luma reference, and not at all when no band
// uses the reference.
struct PendingFlip {
  bool pending = false;
  bool negative = false;
};

// Syntax of one band. The writer's code is normalized in place to exactly
// what the reader will produce, so both sides reconstruct from equal codes.
template <class Io>
void BandIo(Io& io, PlaneContexts& ctx, int band, BandKind kind, int dims,
            double r_norm, const QuantParams& qp, GainShapeCode& code,
            PendingFlip* flip = nullptr) {
  switch (kind) {
    case BandKind::kUnpredicted:
      io.Int(ctx.gain[band], code.gain_index);
      UnpredictedBodyIo(io, ctx, dims, qp, code);
      return;
    case BandKind::kFdCfl: {
      const int bucket = PredictorBucket(r_norm, qp.q_gain);
      io.Flag(ctx.noref_by_predictor[band][bucket], code.noref);
      if (code.noref) {
        io.Int(ctx.gain[band], code.gain_index);
        UnpredictedBodyIo(io, ctx, dims, qp, code);
        return;
      }
      io.Int(ctx.gain_predicted[band][bucket], code.gain_index);
      const double g = DequantizeGain(code.gain_index, qp.q_gain,
                                      GainMode::kPredicted, r_norm);
      PredictedBodyIo(io, ctx, band, dims, g, qp, code);
      return;
    }
    case BandKind::kPvqCfl: {
      io.Int(ctx.gain[band], code.gain_index);
      const double g = DequantizeGain(code.gain_index, qp.q_gain,
                                      GainMode::kUnpredicted, 0.0);
      if (g == 0.0) {
        UnpredictedBodyIo(io, ctx, dims, qp, code);
        return;
      }
      io.Flag(ctx.noref_by_steps[band][StepBucket(qp.theta_steps(g))], code.noref);
      if (code.noref) {
        UnpredictedBodyIo(io, ctx, dims, qp, code);
        return;
      }
      if (flip && flip->pending) {
        io.Flag(ctx.flip, flip->negative);
        flip->pending = false;
      }
      PredictedBodyIo(io, ctx, band, dims, g, qp, code);
      return;
    }
  }
}

// Lagrangian weight per bit for a uniform quantizer of step q at high rate:
// 2 ln(2) * q^2 / 12.
double Lambda(double q) { return 2.0 * std::numbers::ln2 * q * q / 12.0; }

Vector ReconstructBand(BandKind kind, const GainShapeCode& code,
                       std::span<const double> r, const QuantParams& qp) {
  switch (kind) {
    case BandKind::kUnpredicted:
      return DequantizeUnpredicted(code, static_cast<int>(r.size()), qp);
    case BandKind::kFdCfl:
      return PredictedDequantize(code, r, qp, GainMode::kPredicted);
    case BandKind::kPvqCfl:
      return PredictedDequantize(code, r, qp, GainMode::kUnpredicted);
  }
  return {};
}

double BandRdCost(PlaneContexts& ctx, int band, BandKind kind,
                  std::span<const double> x, std::span<const double> r,
                  const QuantParams& qp, GainShapeCode code, PendingFlip flip) {
  CostEstimator est;
  BandIo(est, ctx, band, kind, static_cast<int>(x.size()), Norm(r), qp, code,
         &flip);
  const Vector xhat = ReconstructBand(kind, code, r, qp);
  double sse = 0.0;
  for (size_t i = 0; i < x.size(); ++i) sse += (x[i] - xhat[i]) * (x[i] - xhat[i]);
  return sse + Lambda(qp.q_gain) * est.bits();
}

// Keeps a predicted band code unless coding the band without reference is
// cheaper in rate-distortion terms. Bands the quantizer already sent to the
// unpredicted path stay there.
void ChooseReference(PlaneContexts& ctx, int band, BandKind kind,
                     std::span<const double> x, std::span<const double> r,
                     const QuantParams& qp, GainShapeCode& code,
                     PendingFlip flip = {}) {
  if (code.noref || kind == BandKind::kUnpredicted) return;
  GainShapeCode alternative = QuantizeUnpredicted(x, qp);
  if (BandRdCost(ctx, band, kind, x, r, qp, alternative, flip) <
      BandRdCost(ctx, band, kind, x, r, qp, code, flip)) {
    code = std::move(alternative);
  }
}

struct PlaneGrid {
  int width = 0;   // visible
  int height = 0;
  int padded_width = 0;
  int padded_height = 0;
  int n = 0;

  int cols() const { return padded_width / n; }
  int rows() const { return padded_height / n; }
};

std::vector<CoefficientBlock> AnalyzePlane(const PixelPlane& plane,
                                           const PlaneGrid& grid) {
  PixelPlane shifted = plane;
  for (double& v : shifted.samples()) v -= kLevelShift;
  const PixelPlane padded =
      PadPlane(shifted, grid.padded_width, grid.padded_height);
  const PixelPlane filtered =
      PrefilterPlane(padded, LappedFilterParams::ForBlockSize(grid.n));
  return ForwardDctPlane(filtered, grid.n);
}

PixelPlane SynthesizePlane(const std::vector<CoefficientBlock>& blocks,
                           const PlaneGrid& grid) {
  const PixelPlane filtered = InverseDctPlane(
      blocks, grid.padded_width, grid.padded_height, grid.n);
  PixelPlane plane = CropPlane(
      PostfilterPlane(filtered, LappedFilterParams::ForBlockSize(grid.n)),
      grid.width, grid.height);
  for (double& v : plane.samples()) v += kLevelShift;
  return RoundToByte(plane);
}

// Luma predictor blocks on the chroma block grid.
std::vector<CoefficientBlock> LumaPredictors(
    const std::vector<CoefficientBlock>& luma, const PlaneGrid& luma_grid,
    Subsampling subsampling) {
  if (subsampling == Subsampling::k444) return luma;
  const int lcols = luma_grid.cols();
  const int ccols = lcols / 2;
  const int crows = luma_grid.rows() / 2;
  std::vector<CoefficientBlock> out;
  out.reserve(static_cast<size_t>(ccols) * crows);
  for (int by = 0; by < crows; ++by) {
    for (int bx = 0; bx < ccols; ++bx) {
      const size_t tl = static_cast<size_t>(2 * by) * lcols + 2 * bx;
      CoefficientBlock merged = TfMergeLfInterleaved(
          luma[tl], luma[tl + 1], luma[tl + lcols], luma[tl + lcols + 1]);
      merged.origin = {by, bx};
      out.push_back(std::move(merged));
    }
  }
  return out;
}

struct PlaneJob {
  PlaneGrid grid;
  BandKind chroma_kind = BandKind::kUnpredicted;  // kUnpredicted for luma
  const std::vector<CoefficientBlock>* source = nullptr;      // writer only
  const std::vector<CoefficientBlock>* luma_pred = nullptr;   // CfL modes
};

template <class Io>
std::vector<CoefficientBlock> CodePlane(Io& io, const PlaneJob& job,
                                        const QuantParams& qp) {
  const int n = job.grid.n;
  const int cols = job.grid.cols();
  const int rows = job.grid.rows();
  const BandLayout layout = MakeBandLayout(n);
  PlaneContexts ctx(layout.band_count());
  const double dc_step = kDcStepScale * qp.q_gain;
  std::vector<CoefficientBlock> recon;
  recon.reserve(static_cast<size_t>(cols) * rows);

  for (int by = 0; by < rows; ++by) {
    for (int bx = 0; bx < cols; ++bx) {
      const size_t index = static_cast<size_t>(by) * cols + bx;
      CoefficientBlock out(n, {by, bx});

      NeighborContext nctx;
      auto neighbor = [&](int y, int x) -> std::optional<NeighborBlocks> {
        if (y < 0 || x < 0) return std::nullopt;
        const size_t i = static_cast<size_t>(y) * cols + x;
        const CoefficientBlock* luma =
            job.luma_pred ? &(*job.luma_pred)[i] : &recon[i];
        return NeighborBlocks{luma, &recon[i]};
      };
      nctx.up = neighbor(by - 1, bx);
      nctx.left = neighbor(by, bx - 1);
      nctx.upleft = neighbor(by - 1, bx - 1);

      const double dc_pred = NeighborAverageDc(nctx);
      int64_t dc_index = 0;
      if constexpr (!Io::kReading) {
        dc_index = ScalarQuantize((*job.source)[index].dc() - dc_pred, dc_step).index;
      }
      io.Int(ctx.dc, dc_index);

      if (job.chroma_kind == BandKind::kPvqCfl) {
        const CoefficientBlock& luma = (*job.luma_pred)[index];
        PvqCflBlockCode code;
        if constexpr (Io::kReading) {
          code.bands.resize(layout.bands.size());
          code.flip_coded = FlipIsCoded(luma, layout);
        } else {
          code = CodeChromaBlockPvqCfl((*job.source)[index], luma, qp, layout);
        }
        PendingFlip flip{code.flip_coded, code.flip < 0};
        for (int b = 0; b < layout.band_count(); ++b) {
          Vector r = GatherBand(luma, layout.bands[b]);
          const int dims = static_cast<int>(r.size());
          const BandKind kind =
              IsZero(r) ? BandKind::kUnpredicted : BandKind::kPvqCfl;
          if constexpr (!Io::kReading) {
            for (double& v : r) v *= code.flip;
            ChooseReference(ctx, b, kind,
                            GatherBand((*job.source)[index], layout.bands[b]),
                            r, qp, code.bands[b], flip);
          }
          BandIo(io, ctx, b, kind, dims, 0.0, qp, code.bands[b], &flip);
        }
        // Without a referenced band the flip is never sent and has no effect.
        code.flip = code.flip_coded && !flip.pending && flip.negative ? -1 : 1;
        out = DecodeChromaBlockPvqCfl(code, luma, qp, layout);
        out.origin = {by, bx};
      } else {
        double alpha = 0.0;
        if (job.chroma_kind == BandKind::kFdCfl) alpha = FitAcAlpha(nctx);
        for (int b = 0; b < layout.band_count(); ++b) {
          const std::vector<int>& band = layout.bands[b];
          const int dims = static_cast<int>(band.size());
          Vector r(dims, 0.0);
          if (job.chroma_kind == BandKind::kFdCfl && alpha != 0.0) {
            r = GatherBand((*job.luma_pred)[index], band);
            for (double& v : r) v *= alpha;
          }
          const BandKind kind =
              IsZero(r) ? BandKind::kUnpredicted : BandKind::kFdCfl;
          GainShapeCode code;
          if constexpr (!Io::kReading) {
            const Vector x = GatherBand((*job.source)[index], band);
            code = kind == BandKind::kUnpredicted
                       ? QuantizeUnpredicted(x, qp)
                       : PredictedQuantize(x, r, qp, GainMode::kPredicted);
            ChooseReference(ctx, b, kind, x, r, qp, code);
          }
          BandIo(io, ctx, b, kind, dims, Norm(r), qp, code);
          Vector xhat;
          try {
            xhat = ReconstructBand(kind, code, r, qp);
          } catch (const DecodeError&) {
            throw;
          } catch (const Error& e) {
            io.Check(false, e.what());
          }
          ScatterBand(xhat, band, out);
        }
      }
      out.set_dc(dc_pred + static_cast<double>(dc_index) * dc_step);
      recon.push_back(std::move(out));
    }
  }
  return recon;
}

struct Geometry {
  PlaneGrid luma;
  PlaneGrid chroma;
};

Geometry MakeGeometry(int width, int height, int n, Subsampling subsampling) {
  const bool sub = subsampling == Subsampling::k420;
  const int unit = sub ? 2 * n : n;
  Geometry g;
  g.luma = {width, height, (width + unit - 1) / unit * unit,
            (height + unit - 1) / unit * unit, n};
  g.chroma = g.luma;
  if (sub) {
    g.chroma.width /= 2;
    g.chroma.height /= 2;
    g.chroma.padded_width /= 2;
    g.chroma.padded_height /= 2;
  }
  return g;
}

BandKind ChromaKind(ChromaMode mode) {
  switch (mode) {
    case ChromaMode::kNone: return BandKind::kUnpredicted;
    case ChromaMode::kFdCfl: return BandKind::kFdCfl;
    case ChromaMode::kPvqCfl: return BandKind::kPvqCfl;
  }
  return BandKind::kUnpredicted;
}

// Codes all three planes; `frame` is non-null when writing. Returns the
// reconstructed frame and fills per-plane bit counts when writing.
template <class Io>
Frame CodeFrame(Io& io, const ContainerHeader& h, const Frame* frame,
                std::array<uint64_t, 3>* plane_bits) {
  const Geometry geo = MakeGeometry(static_cast<int>(h.width),
                                    static_cast<int>(h.height), h.block_size,
                                    h.subsampling);
  const QuantParams qp = QuantParams::Uniform(h.q_gain);
  Frame out;
  out.subsampling = h.subsampling;

  std::vector<CoefficientBlock> source;
  PlaneJob luma_job{geo.luma, BandKind::kUnpredicted, nullptr, nullptr};
  uint64_t mark = io.Tell();
  if (frame) {
    source = AnalyzePlane(frame->y, geo.luma);
    luma_job.source = &source;
  }
  const std::vector<CoefficientBlock> luma = CodePlane(io, luma_job, qp);
  if (plane_bits) (*plane_bits)[0] = io.Tell() - mark;
  out.y = SynthesizePlane(luma, geo.luma);

  std::vector<CoefficientBlock> predictors;
  const BandKind kind = ChromaKind(h.chroma_mode);
  if (kind != BandKind::kUnpredicted) {
    predictors = LumaPredictors(luma, geo.luma, h.subsampling);
  }
  for (int p = 1; p <= 2; ++p) {
    PlaneJob job{geo.chroma, kind, nullptr,
                 kind == BandKind::kUnpredicted ? nullptr : &predictors};
    mark = io.Tell();
    if (frame) {
      source = AnalyzePlane(frame->plane(p), geo.chroma);
      job.source = &source;
    }
    const std::vector<CoefficientBlock> recon = CodePlane(io, job, qp);
    if (plane_bits) (*plane_bits)[p] = io.Tell() - mark;
    out.plane(p) = SynthesizePlane(recon, geo.chroma);
  }
  return out;
}

}  // namespace

void ValidateConfig(const EncodeConfig& cfg) {
  if (!IsSupportedBlockSize(cfg.block_size)) {
    throw Error(ErrorCode::kArgument,
                "block size must be 4, 8 or 16, got " + std::to_string(cfg.block_size));
  }
  if (!(cfg.q_gain > 0.0) || !std::isfinite(cfg.q_gain)) {
    throw Error(ErrorCode::kArgument, "q_gain must be a positive number");
  }
}

EncodeResult EncodeFrame(const Frame& frame, const EncodeConfig& cfg) {
  ValidateConfig(cfg);
  ValidateFrame(frame);
  if (frame.subsampling != cfg.subsampling) {
    throw Error(ErrorCode::kArgument,
                "frame subsampling does not match the configuration");
  }
  ContainerHeader header;
  header.width = static_cast<uint32_t>(frame.y.width());
  header.height = static_cast<uint32_t>(frame.y.height());
  header.subsampling = cfg.subsampling;
  header.block_size = cfg.block_size;
  header.q_gain = cfg.q_gain;
  header.chroma_mode = cfg.chroma_mode;

  RangeEncoder enc;
  SymbolWriter io(enc);
  EncodeResult result;
  result.reconstruction = CodeFrame(io, header, &frame, &result.plane_bits);
  result.payload = enc.Finish();
  result.container = WriteContainer(header, result.payload.bytes);
  return result;
}

DecodeResult DecodeFrame(std::span<const uint8_t> container) {
  const ParsedContainer parsed = ParseContainer(container);
  RangeDecoder dec(parsed.payload, kContainerHeaderBytes);
  SymbolReader io(dec);
  DecodeResult result;
  result.header = parsed.header;
  result.frame = CodeFrame(io, parsed.header, nullptr, nullptr);
  return result;
}

}  // namespace lcfl

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

#ifndef LCFL_PVQ_H_
#define LCFL_PVQ_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace lcfl {

using Vector = std::vector<double>;

double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> a);
bool IsZero(std::span<const double> a);

struct ScalarQuantized {
  int64_t index = 0;
  double recon = 0.0;
};

// Uniform quantizer with round-to-nearest, ties away from zero:
// index = round(c / q), recon = index * q. Throws unless q > 0.
ScalarQuantized ScalarQuantize(double c, double q);

// Integer codeword on the pyramid sum(|y_i|) = k. An empty vector means no
// shape was coded.
struct PulseVector {
  std::vector<int64_t> pulses;

  int dims() const { return static_cast<int>(pulses.size()); }
  int64_t k() const;
  bool empty() const { return pulses.empty(); }
  bool operator==(const PulseVector&) const = default;
};

// Codeword with k pulses whose direction is closest to x (largest cosine).
// Exact when the codebook is small (up to 4096 magnitude patterns, e.g.
// n = 6 with k <= 11); larger budgets use greedy placement refined by
// single-pulse moves. Throws an argument error for a zero x or k < 1.
PulseVector PvqSearch(std::span<const double> x, int64_t k);

// y / ||y||. An empty pulse vector normalizes to an empty vector.
Vector PvqNormalize(const PulseVector& y);

struct HouseholderNormal {
  Vector v;
  int axis = 0;  // m: index of the largest |r_i|, lowest on ties
  int sign = 1;  // s: sign of r_m, +1 for zero
};

// v = r / ||r|| + s * e_m, which maps r onto -s * ||r|| * e_m. Throws for a
// zero r.
HouseholderNormal ComputeHouseholder(std::span<const double> r);

// z = x - 2 (v.x / v.v) v. Throws for a zero v.
Vector Reflect(std::span<const double> x, std::span<const double> v);

// Step size and the deterministic resolution rules shared by encoder and
// decoder.
struct QuantParams {
  double q_gain = 1.0;
  // Number of uniform theta steps over [0, pi/2] for a quantized gain.
  std::function<int64_t(double gain)> theta_steps;
  // Pulses for a shape of `dims` dimensions carrying `shape_gain` energy.
  std::function<int64_t(double shape_gain, int dims)> pulse_budget;

  // theta_steps = max(1, round(pi/2 * g / q)),
  // pulse_budget = clamp(round(shape_gain / q), 1, kMaxPulsesPerDim * dims).
  static QuantParams Uniform(double q_gain);
  // Constant theta steps and pulse count, independent of the gain.
  static QuantParams Fixed(double q_gain, int64_t theta_steps, int64_t pulses);
};

inline constexpr int64_t kMaxPulsesPerDim = 256;

int64_t DefaultThetaSteps(double gain, double q_gain);
int64_t DefaultPulseBudget(double shape_gain, int dims, double q_gain);

// Whether the gain of a predicted vector is coded relative to ||r||
// (g^ = gain_index * Q + ||r||) or on its own (g^ = gain_index * Q).
enum class GainMode { kPredicted, kUnpredicted };

struct GainShapeCode {
  int64_t gain_index = 0;
  // Present iff noref is false.
  std::optional<int64_t> theta_index;
  PulseVector pulses;
  bool noref = true;
  int axis = 0;
  int sign = 1;
};

// Gain of a reconstructed vector for a given gain index; never negative.
double DequantizeGain(int64_t gain_index, double q_gain, GainMode mode,
                      double predictor_norm);

// Plain gain-shape coding with no predictor: gain index round(||x|| / Q),
// then PvqSearch over all dims.
GainShapeCode QuantizeUnpredicted(std::span<const double> x,
                                  const QuantParams& qp);
Vector DequantizeUnpredicted(const GainShapeCode& code, int dims,
                             const QuantParams& qp);

// Householder-predicted gain-shape coding of x with predictor r. When the
// angle between x and r exceeds 90 degrees the code is flagged noref and x
// is coded without predictor. Otherwise theta is quantized uniformly on
// [0, pi/2] and the n-1 components of the reflected vector off axis m are
// coded with PvqSearch. Throws for a zero r.
GainShapeCode PredictedQuantize(std::span<const double> x,
                                std::span<const double> r,
                                const QuantParams& qp,
                                GainMode gain_mode = GainMode::kPredicted);

// x^ = reflect(g^ (-s cos(theta^) e_m + sin(theta^) u^), v).
Vector PredictedDequantize(const GainShapeCode& code, std::span<const double> r,
                           const QuantParams& qp,
                           GainMode gain_mode = GainMode::kPredicted);

// Pulses the decoder expects for a predicted (non-noref) code.
int64_t PredictedPulseCount(double gain, int64_t theta_index,
                            int64_t theta_steps, int dims,
                            const QuantParams& qp);

}  // namespace lcfl

#endif  // LCFL_PVQ_H_

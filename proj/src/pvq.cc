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

#include "lcfl/pvq.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "lcfl/error.h"

namespace lcfl {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// True when (xy_a^2 / yy_a) > (xy_b^2 / yy_b), i.e. codeword a has the larger
// cosine. Both xy values are non-negative.
bool BetterCosine(double xy_a, double yy_a, double xy_b, double yy_b) {
  return xy_a * xy_a * yy_b > xy_b * xy_b * yy_a;
}

// Codebooks up to this many magnitude patterns are searched exhaustively.
constexpr uint64_t kExhaustiveSearchLimit = 4096;

// Number of ways to place k pulses on n positions, saturating past `cap`.
uint64_t CompositionCount(int64_t k, size_t n, uint64_t cap) {
  // C(k + n - 1, n - 1), built up one factor at a time.
  uint64_t c = 1;
  for (uint64_t i = 1; i < n; ++i) {
    c = c * (static_cast<uint64_t>(k) + i) / i;
    if (c > cap) return cap + 1;
  }
  return c;
}

struct ExhaustiveState {
  const std::vector<double>* ax;
  std::vector<int64_t> cur;
  std::vector<int64_t> best;
  double best_xy = -1.0;
  double best_yy = 1.0;
};

void ExhaustiveSearch(ExhaustiveState& s, size_t i, int64_t left, double xy,
                      double yy) {
  const size_t n = s.cur.size();
  if (i + 1 == n) {
    const double p = static_cast<double>(left);
    xy += (*s.ax)[i] * p;
    yy += p * p;
    if (s.best_xy < 0.0 || BetterCosine(xy, yy, s.best_xy, s.best_yy)) {
      s.cur[i] = left;
      s.best = s.cur;
      s.best_xy = xy;
      s.best_yy = yy;
    }
    return;
  }
  for (int64_t v = left; v >= 0; --v) {
    s.cur[i] = v;
    const double p = static_cast<double>(v);
    ExhaustiveSearch(s, i + 1, left - v, xy + (*s.ax)[i] * p, yy + p * p);
  }
  s.cur[i] = 0;
}

void CheckSameDims(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kArgument, "vector dimensions differ");
  }
}

}  // namespace

double Dot(std::span<const double> a, std::span<const double> b) {
  CheckSameDims(a, b);
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double Norm(std::span<const double> a) { return std::sqrt(Dot(a, a)); }

bool IsZero(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
}

ScalarQuantized ScalarQuantize(double c, double q) {
  if (!(q > 0.0)) throw Error(ErrorCode::kArgument, "quantizer step must be > 0");
  const auto index = static_cast<int64_t>(std::round(c / q));
  return {index, static_cast<double>(index) * q};
}

int64_t PulseVector::k() const {
  int64_t sum = 0;
  for (int64_t p : pulses) sum += std::llabs(p);
  return sum;
}

PulseVector PvqSearch(std::span<const double> x, int64_t k) {
  if (k < 1) throw Error(ErrorCode::kArgument, "PVQ needs at least one pulse");
  if (x.empty() || IsZero(x)) {
    throw Error(ErrorCode::kArgument, "PVQ search on a zero vector");
  }
  const size_t n = x.size();
  std::vector<double> ax(n);
  double l1 = 0.0;
  for (size_t i = 0; i < n; ++i) {
    ax[i] = std::abs(x[i]);
    l1 += ax[i];
  }

  if (CompositionCount(k, n, kExhaustiveSearchLimit) <= kExhaustiveSearchLimit) {
    ExhaustiveState s{&ax, std::vector<int64_t>(n, 0), {}};
    ExhaustiveSearch(s, 0, k, 0.0, 0.0);
    PulseVector out;
    out.pulses.resize(n);
    for (size_t i = 0; i < n; ++i) out.pulses[i] = x[i] < 0.0 ? -s.best[i] : s.best[i];
    return out;
  }

  // Start from the scaled projection rounded down (never more than k
  // pulses), then add the remaining pulses greedily.
  std::vector<int64_t> y(n, 0);
  int64_t placed = 0;
  if (k > static_cast<int64_t>(n)) {
    const double scale = static_cast<double>(k) / l1;
    for (size_t i = 0; i < n; ++i) {
      y[i] = static_cast<int64_t>(std::floor(ax[i] * scale));
      placed += y[i];
    }
    // Guard against floating-point overshoot.
    for (size_t i = 0; placed > k; i = (i + 1) % n) {
      if (y[i] > 0) {
        --y[i];
        --placed;
      }
    }
  }
  double xy = 0.0, yy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    xy += ax[i] * static_cast<double>(y[i]);
    yy += static_cast<double>(y[i]) * static_cast<double>(y[i]);
  }
  for (; placed < k; ++placed) {
    size_t best = 0;
    double best_xy = -1.0, best_yy = 1.0;
    for (size_t i = 0; i < n; ++i) {
      const double cand_xy = xy + ax[i];
      const double cand_yy = yy + 2.0 * static_cast<double>(y[i]) + 1.0;
      if (best_xy < 0.0 || BetterCosine(cand_xy, cand_yy, best_xy, best_yy)) {
        best = i;
        best_xy = cand_xy;
        best_yy = cand_yy;
      }
    }
    ++y[best];
    xy = best_xy;
    yy = best_yy;
  }

  // Greedy placement can get stuck; move single pulses between positions
  // while that strictly improves the cosine.
  for (bool improved = true; improved;) {
    improved = false;
    for (size_t from = 0; from < n; ++from) {
      if (y[from] == 0) continue;
      size_t best = from;
      double best_xy = xy, best_yy = yy;
      for (size_t to = 0; to < n; ++to) {
        if (to == from) continue;
        const double cand_xy = xy - ax[from] + ax[to];
        const double cand_yy = yy - 2.0 * static_cast<double>(y[from]) + 1.0 +
                               2.0 * static_cast<double>(y[to]) + 1.0;
        if (cand_xy >= 0.0 && BetterCosine(cand_xy, cand_yy, best_xy, best_yy) &&
            // Reject changes lost in rounding noise so the loop terminates.
            (cand_xy * cand_xy * best_yy - best_xy * best_xy * cand_yy) >
                1e-12 * best_xy * best_xy * cand_yy) {
          best = to;
          best_xy = cand_xy;
          best_yy = cand_yy;
        }
      }
      if (best != from) {
        --y[from];
        ++y[best];
        xy = best_xy;
        yy = best_yy;
        improved = true;
      }
    }
  }

  PulseVector out;
  out.pulses.resize(n);
  for (size_t i = 0; i < n; ++i) out.pulses[i] = x[i] < 0.0 ? -y[i] : y[i];
  return out;
}

Vector PvqNormalize(const PulseVector& y) {
  Vector u(y.pulses.begin(), y.pulses.end());
  if (u.empty()) return u;
  const double norm = Norm(u);
  if (norm == 0.0) throw Error(ErrorCode::kArgument, "empty pulse vector");
  for (double& v : u) v /= norm;
  return u;
}

HouseholderNormal ComputeHouseholder(std::span<const double> r) {
  if (r.empty() || IsZero(r)) {
    throw Error(ErrorCode::kArgument, "Householder predictor is zero");
  }
  HouseholderNormal h;
  for (size_t i = 1; i < r.size(); ++i) {
    if (std::abs(r[i]) > std::abs(r[h.axis])) h.axis = static_cast<int>(i);
  }
  h.sign = r[h.axis] < 0.0 ? -1 : 1;
  const double norm = Norm(r);
  h.v.assign(r.begin(), r.end());
  for (double& v : h.v) v /= norm;
  h.v[h.axis] += h.sign;
  return h;
}

Vector Reflect(std::span<const double> x, std::span<const double> v) {
  const double vv = Dot(v, v);
  if (vv == 0.0) throw Error(ErrorCode::kArgument, "zero reflection normal");
  const double scale = 2.0 * Dot(v, x) / vv;
  Vector z(x.begin(), x.end());
  for (size_t i = 0; i < z.size(); ++i) z[i] -= scale * v[i];
  return z;
}

int64_t DefaultThetaSteps(double gain, double q_gain) {
  return std::max<int64_t>(1, std::llround(kHalfPi * gain / q_gain));
}

int64_t DefaultPulseBudget(double shape_gain, int dims, double q_gain) {
  const int64_t cap = kMaxPulsesPerDim * std::max(dims, 1);
  const double want = std::round(shape_gain / q_gain);
  if (!(want < static_cast<double>(cap))) return cap;
  return std::max<int64_t>(1, static_cast<int64_t>(want));
}

QuantParams QuantParams::Uniform(double q_gain) {
  if (!(q_gain > 0.0)) throw Error(ErrorCode::kArgument, "q_gain must be > 0");
  QuantParams qp;
  qp.q_gain = q_gain;
  qp.theta_steps = [q_gain](double gain) { return DefaultThetaSteps(gain, q_gain); };
  qp.pulse_budget = [q_gain](double shape_gain, int dims) {
    return DefaultPulseBudget(shape_gain, dims, q_gain);
  };
  return qp;
}

QuantParams QuantParams::Fixed(double q_gain, int64_t theta_steps,
                               int64_t pulses) {
  if (!(q_gain > 0.0) || theta_steps < 1 || pulses < 1) {
    throw Error(ErrorCode::kArgument, "invalid fixed quantizer parameters");
  }
  QuantParams qp;
  qp.q_gain = q_gain;
  qp.theta_steps = [theta_steps](double) { return theta_steps; };
  qp.pulse_budget = [pulses](double, int) { return pulses; };
  return qp;
}

double DequantizeGain(int64_t gain_index, double q_gain, GainMode mode,
                      double predictor_norm) {
  const double g = static_cast<double>(gain_index) * q_gain +
                   (mode == GainMode::kPredicted ? predictor_norm : 0.0);
  return std::max(0.0, g);
}

GainShapeCode QuantizeUnpredicted(std::span<const double> x,
                                  const QuantParams& qp) {
  GainShapeCode code;
  code.noref = true;
  code.gain_index = ScalarQuantize(Norm(x), qp.q_gain).index;
  if (code.gain_index == 0) return code;
  const double gain = DequantizeGain(code.gain_index, qp.q_gain,
                                     GainMode::kUnpredicted, 0.0);
  code.pulses = PvqSearch(x, qp.pulse_budget(gain, static_cast<int>(x.size())));
  return code;
}

Vector DequantizeUnpredicted(const GainShapeCode& code, int dims,
                             const QuantParams& qp) {
  Vector out(dims, 0.0);
  const double gain =
      DequantizeGain(code.gain_index, qp.q_gain, GainMode::kUnpredicted, 0.0);
  if (gain == 0.0) return out;
  if (code.pulses.dims() != dims || code.pulses.k() < 1) {
    throw Error(ErrorCode::kArgument, "pulse vector does not match band");
  }
  const Vector u = PvqNormalize(code.pulses);
  for (int i = 0; i < dims; ++i) out[i] = gain * u[i];
  return out;
}

int64_t PredictedPulseCount(double gain, int64_t theta_index,
                            int64_t theta_steps, int dims,
                            const QuantParams& qp) {
  if (gain == 0.0 || theta_index == 0 || dims < 2) return 0;
  const double theta = static_cast<double>(theta_index) * kHalfPi /
                       static_cast<double>(theta_steps);
  return qp.pulse_budget(gain * std::sin(theta), dims - 1);
}

GainShapeCode PredictedQuantize(std::span<const double> x,
                                std::span<const double> r,
                                const QuantParams& qp, GainMode gain_mode) {
  CheckSameDims(x, r);
  const HouseholderNormal h = ComputeHouseholder(r);
  const int n = static_cast<int>(x.size());
  const int m = h.axis;
  const double gain = Norm(x);
  const Vector z = Reflect(x, h.v);
  const double z_norm = Norm(z);
  const double cos_theta = z_norm > 0.0 ? -h.sign * z[m] / z_norm : 1.0;

  if (cos_theta < 0.0) {
    GainShapeCode code = QuantizeUnpredicted(x, qp);
    code.axis = m;
    code.sign = h.sign;
    return code;
  }

  GainShapeCode code;
  code.noref = false;
  code.axis = m;
  code.sign = h.sign;
  const double r_norm = Norm(r);
  code.gain_index =
      ScalarQuantize(gain_mode == GainMode::kPredicted ? gain - r_norm : gain,
                     qp.q_gain)
          .index;
  const double gain_hat = DequantizeGain(code.gain_index, qp.q_gain, gain_mode, r_norm);
  code.theta_index = 0;
  if (gain_hat == 0.0) return code;

  // Off-axis remainder of the reflected vector; its norm is g sin(theta).
  Vector rest;
  rest.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    if (i != m) rest.push_back(z[i]);
  }
  const double theta = std::atan2(Norm(rest), -h.sign * z[m]);
  const int64_t steps = qp.theta_steps(gain_hat);
  const int64_t t = std::clamp<int64_t>(
      std::llround(theta / kHalfPi * static_cast<double>(steps)), 0, steps);
  code.theta_index = t;
  const int64_t k = PredictedPulseCount(gain_hat, t, steps, n, qp);
  if (k == 0) return code;
  if (IsZero(rest)) {
    code.pulses.pulses.assign(n - 1, 0);
    code.pulses.pulses[0] = k;
  } else {
    code.pulses = PvqSearch(rest, k);
  }
  return code;
}

Vector PredictedDequantize(const GainShapeCode& code, std::span<const double> r,
                           const QuantParams& qp, GainMode gain_mode) {
  const int n = static_cast<int>(r.size());
  if (code.noref) return DequantizeUnpredicted(code, n, qp);
  if (!code.theta_index) {
    throw Error(ErrorCode::kArgument, "predicted code without theta");
  }
  const HouseholderNormal h = ComputeHouseholder(r);
  const double gain_hat =
      DequantizeGain(code.gain_index, qp.q_gain, gain_mode, Norm(r));
  Vector z(n, 0.0);
  if (gain_hat == 0.0) return z;
  const int64_t steps = qp.theta_steps(gain_hat);
  const int64_t t = *code.theta_index;
  if (t < 0 || t > steps) {
    throw Error(ErrorCode::kArgument, "theta index out of range");
  }
  const int64_t k = PredictedPulseCount(gain_hat, t, steps, n, qp);
  if (code.pulses.k() != k || (k > 0 && code.pulses.dims() != n - 1)) {
    throw Error(ErrorCode::kArgument, "pulse vector does not match theta");
  }
  const double theta =
      static_cast<double>(t) * kHalfPi / static_cast<double>(steps);
  z[h.axis] = -h.sign * gain_hat * std::cos(theta);
  if (k > 0) {
    const Vector u = PvqNormalize(code.pulses);
    const double shape_gain = gain_hat * std::sin(theta);
    for (int i = 0, j = 0; i < n; ++i) {
      if (i != h.axis) z[i] = shape_gain * u[j++];
    }
  }
  return Reflect(z, h.v);
}

}  // namespace lcfl

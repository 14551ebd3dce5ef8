// Copyright 2026 The smomass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "smomass/errors.hpp"
#include "smomass/types.hpp"

namespace smomass {

/// Second-order section, a0 normalized to one. First-order sections leave
/// b2 = a2 = 0.
template <typename Scalar = double>
struct Biquad {
  Scalar b0{}, b1{}, b2{}, a1{}, a2{};

  std::complex<Scalar> response(const std::complex<Scalar>& z) const {
    const std::complex<Scalar> zi = Scalar(1) / z;
    return (b0 + b1 * zi + b2 * zi * zi) / (Scalar(1) + a1 * zi + a2 * zi * zi);
  }
};

/// Multichannel cascade of biquads in transposed direct form II.
template <typename Scalar = double>
class ButterworthFilter {
 public:
  ButterworthFilter() = default;
  ButterworthFilter(std::vector<Biquad<Scalar>> sections, Eigen::Index channels, double cutoff_hz, double sample_hz,
                    int order)
      : sections_(std::move(sections)),
        state_(MatrixX<Scalar>::Zero(2 * static_cast<Eigen::Index>(sections_.size()), channels)),
        cutoff_hz_(cutoff_hz),
        sample_hz_(sample_hz),
        order_(order) {}

  VectorX<Scalar> step(const VectorX<Scalar>& input) {
    if (input.size() != state_.cols()) throw std::invalid_argument("filter input has wrong channel count");
    VectorX<Scalar> x = input;
    for (std::size_t k = 0; k < sections_.size(); ++k) {
      const Biquad<Scalar>& s = sections_[k];
      auto s1 = state_.row(2 * static_cast<Eigen::Index>(k));
      auto s2 = state_.row(2 * static_cast<Eigen::Index>(k) + 1);
      for (Eigen::Index c = 0; c < x.size(); ++c) {
        const Scalar in = x[c];
        const Scalar out = s.b0 * in + s1[c];
        s1[c] = s.b1 * in - s.a1 * out + s2[c];
        s2[c] = s.b2 * in - s.a2 * out;
        x[c] = out;
      }
    }
    return x;
  }

  void reset() { state_.setZero(); }

  /// Frequency response of the realized coefficients at `hz`.
  std::complex<Scalar> response(double hz) const {
    const std::complex<Scalar> z = std::polar(Scalar(1), Scalar(2 * std::numbers::pi * hz / sample_hz_));
    std::complex<Scalar> h(1);
    for (const auto& s : sections_) h *= s.response(z);
    return h;
  }

  const std::vector<Biquad<Scalar>>& sections() const { return sections_; }
  Eigen::Index channels() const { return state_.cols(); }
  double cutoffHz() const { return cutoff_hz_; }
  double sampleHz() const { return sample_hz_; }
  int order() const { return order_; }

 private:
  std::vector<Biquad<Scalar>> sections_;
  MatrixX<Scalar> state_;
  double cutoff_hz_ = 0.0;
  double sample_hz_ = 0.0;
  int order_ = 0;
};

using FilterState = ButterworthFilter<double>;

/// Digital Butterworth low-pass via the bilinear transform with the cutoff
/// pre-warped, realized as cascaded biquads (plus one first-order section
/// for odd orders).
template <typename Scalar = double>
ButterworthFilter<Scalar> designButterworth(double cutoff_hz, double sample_hz, int order = 4,
                                            Eigen::Index channels = 1) {
  if (!(sample_hz > 0.0)) throw FilterDesignError("sample rate must be positive");
  if (!(cutoff_hz > 0.0) || cutoff_hz >= 0.5 * sample_hz)
    throw FilterDesignError("cutoff " + std::to_string(cutoff_hz) + " Hz must lie in (0, Nyquist = " +
                            std::to_string(0.5 * sample_hz) + " Hz)");
  if (order < 1) throw FilterDesignError("filter order must be >= 1");
  if (channels < 1) throw FilterDesignError("filter needs at least one channel");

  const Scalar K = std::tan(Scalar(std::numbers::pi * cutoff_hz / sample_hz));
  const Scalar K2 = K * K;
  std::vector<Biquad<Scalar>> sections;
  for (int k = 0; k < order / 2; ++k) {
    const Scalar zeta = std::sin(Scalar(std::numbers::pi * (2 * k + 1) / (2.0 * order)));
    const Scalar norm = Scalar(1) / (Scalar(1) + Scalar(2) * zeta * K + K2);
    Biquad<Scalar> s;
    s.b0 = K2 * norm;
    s.b1 = Scalar(2) * s.b0;
    s.b2 = s.b0;
    s.a1 = Scalar(2) * (K2 - Scalar(1)) * norm;
    s.a2 = (Scalar(1) - Scalar(2) * zeta * K + K2) * norm;
    sections.push_back(s);
  }
  if (order % 2 == 1) {
    Biquad<Scalar> s;
    s.b0 = K / (Scalar(1) + K);
    s.b1 = s.b0;
    s.a1 = (K - Scalar(1)) / (K + Scalar(1));
    sections.push_back(s);
  }
  return ButterworthFilter<Scalar>(std::move(sections), channels, cutoff_hz, sample_hz, order);
}

/// Low-pass filtered z2: the equivalent output injection.
inline Eigen::VectorXd equivalentInjection(FilterState& filter, const Eigen::VectorXd& z2) { return filter.step(z2); }

}  // namespace smomass

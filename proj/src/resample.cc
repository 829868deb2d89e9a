// Copyright (c) 2026 The laughcorpus Authors
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

#include "laughcorpus/resample.h"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <numbers>

#include "laughcorpus/error.h"

namespace laughcorpus {

std::vector<float> Resample(std::span<const float> input, int in_rate,
                            int out_rate, int zero_crossings,
                            double kaiser_beta) {
  if (in_rate <= 0 || out_rate <= 0) throw Error("sample rates must be positive");
  if (zero_crossings <= 0) throw Error("zero_crossings must be positive");
  if (in_rate == out_rate) return {input.begin(), input.end()};

  const std::int64_t g = std::gcd(in_rate, out_rate);
  const std::int64_t up = out_rate / g;
  const std::int64_t down = in_rate / g;
  const std::int64_t factor = std::max(up, down);

  // Prototype filter at the upsampled rate, odd length, centered.
  const std::int64_t half = static_cast<std::int64_t>(zero_crossings) * factor;
  const std::int64_t taps = 2 * half + 1;
  const double cutoff = 0.95 / static_cast<double>(factor);  // cycles / 2
  const double i0_beta = std::cyl_bessel_i(0.0, kaiser_beta);
  std::vector<double> h(static_cast<std::size_t>(taps));
  for (std::int64_t i = 0; i < taps; ++i) {
    const double t = static_cast<double>(i - half);
    const double x = std::numbers::pi * cutoff * t;
    const double sinc = (i == half) ? 1.0 : std::sin(x) / x;
    const double r = t / static_cast<double>(half);
    const double window =
        std::cyl_bessel_i(0.0, kaiser_beta * std::sqrt(std::max(0.0, 1.0 - r * r))) /
        i0_beta;
    // Gain of `up` compensates for the zeros inserted by upsampling.
    h[static_cast<std::size_t>(i)] =
        cutoff * sinc * window * static_cast<double>(up);
  }

  const std::int64_t n_in = static_cast<std::int64_t>(input.size());
  const std::int64_t n_out = (n_in * up + down - 1) / down;
  std::vector<float> out(static_cast<std::size_t>(n_out));
  for (std::int64_t n = 0; n < n_out; ++n) {
    // Position in the upsampled stream, shifted so the filter is zero-phase.
    const std::int64_t pos = n * down + half;
    std::int64_t first = pos % up;
    double acc = 0.0;
    for (std::int64_t i = first; i < taps; i += up) {
      const std::int64_t src = (pos - i) / up;
      if (src < 0) break;
      if (src < n_in) acc += h[static_cast<std::size_t>(i)] * input[src];
    }
    out[static_cast<std::size_t>(n)] = static_cast<float>(acc);
  }
  return out;
}

}  // namespace laughcorpus

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

#include "laughcorpus/fft.h"

#include <cmath>
#include <numbers>
#include <utility>

#include "laughcorpus/error.h"

namespace laughcorpus {
namespace {

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t NextPowerOfTwo(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw Error("FFT length must be positive");
  m_ = IsPowerOfTwo(n) ? n : NextPowerOfTwo(2 * n - 1);

  std::size_t log2m = 0;
  while ((std::size_t{1} << log2m) < m_) ++log2m;
  bitrev_.resize(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < log2m; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2m - 1 - b);
    }
    bitrev_[i] = r;
  }
  twiddle_.resize(m_ / 2);
  for (std::size_t k = 0; k < m_ / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(m_);
    twiddle_[k] = {std::cos(angle), std::sin(angle)};
  }

  if (m_ != n_) {
    // w[k] = exp(-i pi k^2 / n); k^2 is reduced mod 2n to keep the angle small.
    chirp_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::size_t k2 = (k * k) % (2 * n_);
      const double angle = -std::numbers::pi * static_cast<double>(k2) /
                           static_cast<double>(n_);
      chirp_[k] = {std::cos(angle), std::sin(angle)};
    }
    chirp_fft_.assign(m_, {0.0, 0.0});
    chirp_fft_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n_; ++k) {
      chirp_fft_[k] = std::conj(chirp_[k]);
      chirp_fft_[m_ - k] = std::conj(chirp_[k]);
    }
    Radix2(chirp_fft_, false);
  }
}

void FftPlan::Radix2(std::span<std::complex<double>> data, bool inverse) const {
  for (std::size_t i = 0; i < m_; ++i) {
    if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
  }
  for (std::size_t len = 2; len <= m_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = m_ / len;
    for (std::size_t start = 0; start < m_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> w = twiddle_[j * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> t = w * data[start + j + half];
        data[start + j + half] = data[start + j] - t;
        data[start + j] += t;
      }
    }
  }
}

void FftPlan::Forward(std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw Error("FFT input length mismatch");
  if (m_ == n_) {
    Radix2(data, false);
    return;
  }
  std::vector<std::complex<double>> a(m_, {0.0, 0.0});
  for (std::size_t k = 0; k < n_; ++k) a[k] = data[k] * chirp_[k];
  Radix2(a, false);
  for (std::size_t k = 0; k < m_; ++k) a[k] *= chirp_fft_[k];
  Radix2(a, true);
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) data[k] = a[k] * scale * chirp_[k];
}

}  // namespace laughcorpus

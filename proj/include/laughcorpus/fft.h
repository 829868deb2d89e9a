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

#ifndef LAUGHCORPUS_FFT_H_
#define LAUGHCORPUS_FFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace laughcorpus {

// Forward complex DFT of a fixed length, X[k] = sum_n x[n] e^{-2 pi i kn/N}.
// Power-of-two lengths use an iterative radix-2 transform; other lengths go
// through Bluestein's chirp-z algorithm. A plan is immutable after
// construction, so one plan may be shared by concurrent callers.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  // In-place transform; data.size() must equal size().
  void Forward(std::span<std::complex<double>> data) const;

 private:
  void Radix2(std::span<std::complex<double>> data, bool inverse) const;

  std::size_t n_;
  // Radix-2 length actually transformed (n_ itself or the Bluestein size).
  std::size_t m_;
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> twiddle_;
  // Bluestein only.
  std::vector<std::complex<double>> chirp_;
  std::vector<std::complex<double>> chirp_fft_;
};

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_FFT_H_

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

#ifndef LAUGHCORPUS_FEATURES_H_
#define LAUGHCORPUS_FEATURES_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "laughcorpus/matrix.h"

namespace laughcorpus {

// Per-frame feature width: MFCCs, one RMS value, log-mel bands.
inline constexpr std::size_t kFeatureDims = 33;

struct FrameParams {
  int sample_rate = 22050;
  std::size_t frame_len = 2048;
  std::size_t hop = 512;
  std::size_t n_mels_spec = 12;
  std::size_t n_mfcc = 20;
  std::size_t n_mels_internal = 40;
  double log_floor = 1e-10;
  std::size_t max_frames = 8000;

  // Throws Error unless counts are positive, hop <= frame_len,
  // n_mfcc <= n_mels_internal and n_mfcc + 1 + n_mels_spec == 33.
  void Validate() const;

  std::size_t n_bins() const { return frame_len / 2 + 1; }
  double hop_seconds() const { return static_cast<double>(hop) / sample_rate; }

  bool operator==(const FrameParams&) const = default;
};

// Frames produced by centered framing: 1 + floor(max(n, frame_len) / hop).
std::size_t NumFrames(std::size_t n_samples, const FrameParams& params);

// The signal every frame-based operation reads: zero-padded up to
// frame_len when shorter, then reflect-padded by frame_len / 2 on both
// sides. Frame t covers [t * hop, t * hop + frame_len) of this buffer.
std::vector<double> CenterPad(std::span<const float> audio,
                              const FrameParams& params);

// Periodic Hann window of length n.
std::vector<double> HannWindow(std::size_t n);

// frames x (frame_len / 2 + 1) magnitudes of the Hann-windowed frames.
Matrix StftMagnitude(std::span<const float> audio, const FrameParams& params);

// HTK mel scale.
double HzToMel(double hz);
double MelToHz(double mel);

// Center frequencies (Hz) of n_mels triangles spaced uniformly in mel
// between 0 Hz and sample_rate / 2.
std::vector<double> MelCenterFrequencies(std::size_t n_mels, int sample_rate);

// n_mels x n_bins triangular weights with unit peak.
Matrix MelFilterbank(std::size_t n_mels, const FrameParams& params);

// log(max(mel power, log_floor)) with n_mels_spec bands.
Matrix MelSpectrogram(const Matrix& stft_mag, const FrameParams& params);

// Orthonormal DCT-II of the n_mels_internal-band log-mel power spectrum,
// first n_mfcc coefficients.
Matrix Mfcc(const Matrix& stft_mag, const FrameParams& params);

// n_out x n_in orthonormal DCT-II basis.
Matrix DctBasis(std::size_t n_out, std::size_t n_in);

// Root-mean-square of each (unwindowed) centered frame.
std::vector<double> RmsEnergy(std::span<const float> audio,
                              const FrameParams& params);

// max_frames x 33 features, row-major float32. Rows at or past
// n_frames_real are zero.
struct FeatureMatrix {
  std::uint32_t n_frames_real = 0;
  std::uint32_t max_frames = 0;
  std::vector<float> data;

  std::span<const float> row(std::size_t r) const {
    return {data.data() + r * kFeatureDims, kFeatureDims};
  }
  float at(std::size_t r, std::size_t c) const { return data[r * kFeatureDims + c]; }

  bool operator==(const FeatureMatrix&) const = default;
};

// Concatenates [mfcc | rms | log-mel] per frame, truncating or zero-padding
// to max_frames. Throws Error on empty audio.
FeatureMatrix ExtractFeatures(std::span<const float> audio,
                              const FrameParams& params);

// Binary layout, little-endian: "LFX1", u32 n_frames_real, u32 max_frames,
// u32 n_dims, then max_frames * n_dims float32 values.
std::vector<std::uint8_t> EncodeFeatures(const FeatureMatrix& matrix);
FeatureMatrix DecodeFeatures(std::span<const std::uint8_t> bytes);
void WriteFeatures(const FeatureMatrix& matrix, const std::filesystem::path& path);
FeatureMatrix ReadFeatures(const std::filesystem::path& path);

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_FEATURES_H_

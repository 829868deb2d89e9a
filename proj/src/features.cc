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

#include "laughcorpus/features.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <string>

#include "laughcorpus/error.h"
#include "laughcorpus/fft.h"

namespace laughcorpus {
namespace {

constexpr char kMagic[4] = {'L', 'F', 'X', '1'};
constexpr std::size_t kHeaderBytes = 16;

Matrix StftFrames(std::span<const float> audio, const FrameParams& params,
                  std::size_t frame_limit) {
  if (audio.empty()) throw Error("empty audio");
  params.Validate();
  const std::vector<double> padded = CenterPad(audio, params);
  const std::vector<double> window = HannWindow(params.frame_len);
  const std::size_t n_frames =
      std::min(NumFrames(audio.size(), params), frame_limit);
  const std::size_t n_bins = params.n_bins();
  const FftPlan plan(params.frame_len);
  std::vector<std::complex<double>> buf(params.frame_len);
  Matrix mag(n_frames, n_bins);
  for (std::size_t t = 0; t < n_frames; ++t) {
    const double* frame = padded.data() + t * params.hop;
    for (std::size_t n = 0; n < params.frame_len; ++n) {
      buf[n] = {frame[n] * window[n], 0.0};
    }
    plan.Forward(buf);
    for (std::size_t k = 0; k < n_bins; ++k) mag(t, k) = std::abs(buf[k]);
  }
  return mag;
}

std::vector<double> RmsFrames(std::span<const float> audio,
                              const FrameParams& params,
                              std::size_t frame_limit) {
  if (audio.empty()) throw Error("empty audio");
  params.Validate();
  const std::vector<double> padded = CenterPad(audio, params);
  const std::size_t n_frames =
      std::min(NumFrames(audio.size(), params), frame_limit);
  std::vector<double> rms(n_frames);
  for (std::size_t t = 0; t < n_frames; ++t) {
    const double* frame = padded.data() + t * params.hop;
    double energy = 0.0;
    for (std::size_t n = 0; n < params.frame_len; ++n) energy += frame[n] * frame[n];
    rms[t] = std::sqrt(energy / static_cast<double>(params.frame_len));
  }
  return rms;
}

Matrix LogMel(const Matrix& stft_mag, std::size_t n_mels,
              const FrameParams& params) {
  if (stft_mag.cols() != params.n_bins()) {
    throw Error("STFT width does not match frame_len / 2 + 1");
  }
  const Matrix bank = MelFilterbank(n_mels, params);
  Matrix out(stft_mag.rows(), n_mels);
  std::vector<double> power(stft_mag.cols());
  for (std::size_t t = 0; t < stft_mag.rows(); ++t) {
    const auto mag = stft_mag.row(t);
    for (std::size_t k = 0; k < power.size(); ++k) power[k] = mag[k] * mag[k];
    for (std::size_t m = 0; m < n_mels; ++m) {
      const auto w = bank.row(m);
      double acc = 0.0;
      for (std::size_t k = 0; k < power.size(); ++k) acc += w[k] * power[k];
      out(t, m) = std::log(std::max(acc, params.log_floor));
    }
  }
  return out;
}

void PutU32(std::vector<std::uint8_t>* out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out->push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
  }
}

std::uint32_t GetU32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void FrameParams::Validate() const {
  if (sample_rate <= 0 || frame_len == 0 || hop == 0 || n_mels_spec == 0 ||
      n_mfcc == 0 || n_mels_internal == 0 || max_frames == 0) {
    throw Error("frame parameters must be positive");
  }
  if (hop > frame_len) throw Error("hop must not exceed frame_len");
  if (n_mfcc > n_mels_internal) {
    throw Error("n_mfcc must not exceed n_mels_internal");
  }
  if (n_mfcc + 1 + n_mels_spec != kFeatureDims) {
    throw Error("n_mfcc + 1 + n_mels_spec must equal 33");
  }
  if (!(log_floor > 0.0)) throw Error("log_floor must be positive");
  if (max_frames > std::numeric_limits<std::uint32_t>::max()) {
    throw Error("max_frames too large");
  }
}

std::size_t NumFrames(std::size_t n_samples, const FrameParams& params) {
  return 1 + std::max(n_samples, params.frame_len) / params.hop;
}

std::vector<double> CenterPad(std::span<const float> audio,
                              const FrameParams& params) {
  const std::size_t len = std::max(audio.size(), params.frame_len);
  const std::size_t pad = params.frame_len / 2;
  std::vector<double> padded(len + 2 * pad, 0.0);
  std::copy(audio.begin(), audio.end(), padded.begin() + static_cast<std::ptrdiff_t>(pad));
  const double* x = padded.data() + pad;
  for (std::size_t i = 1; i <= pad; ++i) {
    padded[pad - i] = x[i];
    padded[pad + len - 1 + i] = x[len - 1 - i];
  }
  return padded;
}

std::vector<double> HannWindow(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n));
  }
  return w;
}

Matrix StftMagnitude(std::span<const float> audio, const FrameParams& params) {
  return StftFrames(audio, params, std::numeric_limits<std::size_t>::max());
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

namespace {

std::vector<double> MelEdges(std::size_t n_mels, int sample_rate) {
  const double top = HzToMel(sample_rate / 2.0);
  std::vector<double> hz(n_mels + 2);
  for (std::size_t i = 0; i < hz.size(); ++i) {
    hz[i] = MelToHz(top * static_cast<double>(i) / static_cast<double>(n_mels + 1));
  }
  return hz;
}

}  // namespace

std::vector<double> MelCenterFrequencies(std::size_t n_mels, int sample_rate) {
  const std::vector<double> edges = MelEdges(n_mels, sample_rate);
  return {edges.begin() + 1, edges.end() - 1};
}

Matrix MelFilterbank(std::size_t n_mels, const FrameParams& params) {
  const std::vector<double> edges = MelEdges(n_mels, params.sample_rate);
  const std::size_t n_bins = params.n_bins();
  Matrix bank(n_mels, n_bins);
  for (std::size_t m = 0; m < n_mels; ++m) {
    const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * params.sample_rate /
                       static_cast<double>(params.frame_len);
      const double rise = (f - lo) / (mid - lo);
      const double fall = (hi - f) / (hi - mid);
      bank(m, k) = std::max(0.0, std::min(rise, fall));
    }
  }
  return bank;
}

Matrix MelSpectrogram(const Matrix& stft_mag, const FrameParams& params) {
  return LogMel(stft_mag, params.n_mels_spec, params);
}

Matrix DctBasis(std::size_t n_out, std::size_t n_in) {
  Matrix basis(n_out, n_in);
  const double n = static_cast<double>(n_in);
  for (std::size_t k = 0; k < n_out; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (std::size_t i = 0; i < n_in; ++i) {
      basis(k, i) = scale * std::cos(std::numbers::pi * static_cast<double>(k) *
                                     (2.0 * static_cast<double>(i) + 1.0) / (2.0 * n));
    }
  }
  return basis;
}

Matrix Mfcc(const Matrix& stft_mag, const FrameParams& params) {
  const Matrix log_mel = LogMel(stft_mag, params.n_mels_internal, params);
  const Matrix basis = DctBasis(params.n_mfcc, params.n_mels_internal);
  Matrix out(log_mel.rows(), params.n_mfcc);
  for (std::size_t t = 0; t < log_mel.rows(); ++t) {
    const auto x = log_mel.row(t);
    for (std::size_t k = 0; k < params.n_mfcc; ++k) {
      const auto b = basis.row(k);
      double acc = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) acc += b[i] * x[i];
      out(t, k) = acc;
    }
  }
  return out;
}

std::vector<double> RmsEnergy(std::span<const float> audio,
                              const FrameParams& params) {
  return RmsFrames(audio, params, std::numeric_limits<std::size_t>::max());
}

FeatureMatrix ExtractFeatures(std::span<const float> audio,
                              const FrameParams& params) {
  params.Validate();
  const Matrix mag = StftFrames(audio, params, params.max_frames);
  const std::vector<double> rms = RmsFrames(audio, params, params.max_frames);
  const Matrix mfcc = Mfcc(mag, params);
  const Matrix mel = MelSpectrogram(mag, params);

  FeatureMatrix out;
  out.n_frames_real = static_cast<std::uint32_t>(mag.rows());
  out.max_frames = static_cast<std::uint32_t>(params.max_frames);
  out.data.assign(params.max_frames * kFeatureDims, 0.0f);
  for (std::size_t t = 0; t < mag.rows(); ++t) {
    float* row = out.data.data() + t * kFeatureDims;
    std::size_t c = 0;
    for (std::size_t k = 0; k < params.n_mfcc; ++k) {
      row[c++] = static_cast<float>(mfcc(t, k));
    }
    row[c++] = static_cast<float>(rms[t]);
    for (std::size_t m = 0; m < params.n_mels_spec; ++m) {
      row[c++] = static_cast<float>(mel(t, m));
    }
  }
  return out;
}

std::vector<std::uint8_t> EncodeFeatures(const FeatureMatrix& matrix) {
  if (matrix.data.size() != static_cast<std::size_t>(matrix.max_frames) * kFeatureDims) {
    throw Error("feature matrix payload does not match max_frames x 33");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + matrix.data.size() * 4);
  out.insert(out.end(), kMagic, kMagic + 4);
  PutU32(&out, matrix.n_frames_real);
  PutU32(&out, matrix.max_frames);
  PutU32(&out, static_cast<std::uint32_t>(kFeatureDims));
  for (float v : matrix.data) PutU32(&out, std::bit_cast<std::uint32_t>(v));
  return out;
}

FeatureMatrix DecodeFeatures(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) throw ParseError("truncated header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw ParseError("bad magic (expected LFX1)");
  }
  FeatureMatrix m;
  m.n_frames_real = GetU32(bytes.data() + 4);
  m.max_frames = GetU32(bytes.data() + 8);
  const std::uint32_t dims = GetU32(bytes.data() + 12);
  if (dims != kFeatureDims) {
    throw ParseError("bad dimension count " + std::to_string(dims) +
                     " (expected 33)");
  }
  if (m.n_frames_real > m.max_frames) {
    throw ParseError("n_frames_real exceeds max_frames");
  }
  const std::size_t values = static_cast<std::size_t>(m.max_frames) * dims;
  const std::size_t expected = kHeaderBytes + values * 4;
  if (bytes.size() < expected) throw ParseError("truncated payload");
  if (bytes.size() > expected) throw ParseError("trailing bytes after payload");
  m.data.resize(values);
  for (std::size_t i = 0; i < values; ++i) {
    m.data[i] = std::bit_cast<float>(GetU32(bytes.data() + kHeaderBytes + 4 * i));
  }
  return m;
}

void WriteFeatures(const FeatureMatrix& matrix, const std::filesystem::path& path) {
  const auto bytes = EncodeFeatures(matrix);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

FeatureMatrix ReadFeatures(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return DecodeFeatures(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace laughcorpus

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

#ifndef LAUGHCORPUS_WAV_H_
#define LAUGHCORPUS_WAV_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace laughcorpus {

// Mono audio at a fixed sample rate. Multi-channel input is downmixed by
// averaging channels.
struct Audio {
  int sample_rate = 0;
  int source_channels = 1;
  std::vector<float> samples;

  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

enum class WavEncoding { kPcm16, kFloat32 };

// Decodes a RIFF/WAVE byte buffer holding 16-bit PCM or 32-bit IEEE float
// (plain or WAVE_FORMAT_EXTENSIBLE). Throws ParseError on anything else,
// including a data chunk that is shorter than its declared size.
Audio DecodeWav(std::span<const std::uint8_t> bytes);

Audio ReadWav(const std::filesystem::path& path);

std::vector<std::uint8_t> EncodeWav(std::span<const float> samples,
                                    int sample_rate, WavEncoding encoding);

// Writes mono audio. PCM16 output clips to [-1, 1] first.
void WriteWav(const std::filesystem::path& path, std::span<const float> samples,
              int sample_rate, WavEncoding encoding = WavEncoding::kPcm16);

// x clipped to [-1, 1], scaled by 32768, rounded half away from zero and
// saturated to the int16 range. Inverse of the decoder's 1/32768 scale.
std::int16_t QuantizePcm16(float x);

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_WAV_H_

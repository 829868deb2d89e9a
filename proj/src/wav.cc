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

#include "laughcorpus/wav.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "laughcorpus/error.h"

namespace laughcorpus {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t ReadU16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t ReadU32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<std::uint8_t>* out, std::uint16_t v) {
  out->push_back(static_cast<std::uint8_t>(v & 0xFF));
  out->push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutU32(std::vector<std::uint8_t>* out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) {
    out->push_back(static_cast<std::uint8_t>((v >> shift) & 0xFF));
  }
}

void PutTag(std::vector<std::uint8_t>* out, const char* tag) {
  out->insert(out->end(), tag, tag + 4);
}

struct Format {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
};

}  // namespace

Audio DecodeWav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw ParseError("not a RIFF/WAVE file");
  }
  Format fmt;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = ReadU32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size()) {
        throw ParseError("truncated fmt chunk");
      }
      const std::uint8_t* f = bytes.data() + body;
      fmt.tag = ReadU16(f);
      fmt.channels = ReadU16(f + 2);
      fmt.sample_rate = ReadU32(f + 4);
      fmt.bits = ReadU16(f + 14);
      if (fmt.tag == kFormatExtensible) {
        if (size < 26) throw ParseError("truncated extensible fmt chunk");
        fmt.tag = ReadU16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw ParseError("data chunk precedes fmt chunk");
      if (fmt.channels == 0) throw ParseError("zero channels");
      if (fmt.sample_rate == 0) throw ParseError("zero sample rate");
      const bool pcm16 = fmt.tag == kFormatPcm && fmt.bits == 16;
      const bool float32 = fmt.tag == kFormatFloat && fmt.bits == 32;
      if (!pcm16 && !float32) {
        throw ParseError("unsupported sample format (tag " +
                         std::to_string(fmt.tag) + ", " +
                         std::to_string(fmt.bits) + " bits)");
      }
      if (body + size > bytes.size()) {
        throw ParseError("truncated data chunk: declared " +
                         std::to_string(size) + " bytes, found " +
                         std::to_string(bytes.size() - body));
      }
      const std::size_t bytes_per_sample = fmt.bits / 8;
      const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
      if (size % frame_bytes != 0) {
        throw ParseError("data chunk size is not a whole number of frames");
      }
      const std::size_t n_frames = size / frame_bytes;
      Audio audio;
      audio.sample_rate = static_cast<int>(fmt.sample_rate);
      audio.source_channels = fmt.channels;
      audio.samples.resize(n_frames);
      const std::uint8_t* data = bytes.data() + body;
      for (std::size_t i = 0; i < n_frames; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < fmt.channels; ++c) {
          const std::uint8_t* p = data + i * frame_bytes + c * bytes_per_sample;
          if (pcm16) {
            acc += static_cast<std::int16_t>(ReadU16(p)) / 32768.0;
          } else {
            acc += std::bit_cast<float>(ReadU32(p));
          }
        }
        audio.samples[i] = static_cast<float>(acc / fmt.channels);
      }
      return audio;
    }
    pos = body + size + (size & 1u);
  }
  throw ParseError(have_fmt ? "missing data chunk" : "missing fmt chunk");
}

Audio ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return DecodeWav(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::int16_t QuantizePcm16(float x) {
  // Same 32768 scale as decoding, so decode -> encode is lossless.
  const double clipped = std::clamp(static_cast<double>(x), -1.0, 1.0);
  return static_cast<std::int16_t>(std::clamp(std::round(clipped * 32768.0), -32768.0, 32767.0));
}

std::vector<std::uint8_t> EncodeWav(std::span<const float> samples,
                                    int sample_rate, WavEncoding encoding) {
  const bool pcm16 = encoding == WavEncoding::kPcm16;
  const std::uint16_t bits = pcm16 ? 16 : 32;
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(samples.size() * (bits / 8));
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  PutTag(&out, "RIFF");
  PutU32(&out, 36 + data_bytes);
  PutTag(&out, "WAVE");
  PutTag(&out, "fmt ");
  PutU32(&out, 16);
  PutU16(&out, pcm16 ? kFormatPcm : kFormatFloat);
  PutU16(&out, 1);
  PutU32(&out, static_cast<std::uint32_t>(sample_rate));
  PutU32(&out, static_cast<std::uint32_t>(sample_rate) * (bits / 8));
  PutU16(&out, bits / 8);
  PutU16(&out, bits);
  PutTag(&out, "data");
  PutU32(&out, data_bytes);
  for (float x : samples) {
    if (pcm16) {
      PutU16(&out, static_cast<std::uint16_t>(QuantizePcm16(x)));
    } else {
      PutU32(&out, std::bit_cast<std::uint32_t>(x));
    }
  }
  return out;
}

void WriteWav(const std::filesystem::path& path, std::span<const float> samples,
              int sample_rate, WavEncoding encoding) {
  const auto bytes = EncodeWav(samples, sample_rate, encoding);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace laughcorpus

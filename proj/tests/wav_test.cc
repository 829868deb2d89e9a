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

#include <cstring>
#include <vector>

#include <gtest/gtest.h>

#include "laughcorpus/error.h"
#include "test_util.h"

namespace laughcorpus {
namespace {

// Hand-assembled little-endian RIFF header for an independent check of the
// decoder.
std::vector<std::uint8_t> HandWav(std::uint16_t format, std::uint16_t channels,
                                  std::uint32_t rate, std::uint16_t bits,
                                  const std::vector<std::uint8_t>& payload) {
  std::vector<std::uint8_t> b;
  auto put32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  auto put16 = [&](std::uint16_t v) {
    b.push_back(static_cast<std::uint8_t>(v));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
  };
  auto tag = [&](const char* t) { b.insert(b.end(), t, t + 4); };
  tag("RIFF");
  put32(36 + static_cast<std::uint32_t>(payload.size()));
  tag("WAVE");
  tag("fmt ");
  put32(16);
  put16(format);
  put16(channels);
  put32(rate);
  put32(rate * channels * bits / 8);
  put16(static_cast<std::uint16_t>(channels * bits / 8));
  put16(bits);
  tag("data");
  put32(static_cast<std::uint32_t>(payload.size()));
  b.insert(b.end(), payload.begin(), payload.end());
  return b;
}

TEST(WavTest, DecodesHandBuiltStereoPcm16ByAveraging) {
  // Frames: (16384, 0) and (-32768, -32768).
  const std::vector<std::uint8_t> payload{0x00, 0x40, 0x00, 0x00, 0x00, 0x80, 0x00, 0x80};
  const Audio a = DecodeWav(HandWav(1, 2, 8000, 16, payload));
  EXPECT_EQ(a.sample_rate, 8000);
  EXPECT_EQ(a.source_channels, 2);
  ASSERT_EQ(a.samples.size(), 2u);
  EXPECT_FLOAT_EQ(a.samples[0], 0.25f);
  EXPECT_FLOAT_EQ(a.samples[1], -1.0f);
}

TEST(WavTest, DecodesFloat32) {
  std::vector<std::uint8_t> payload(8);
  const float v[2] = {0.5f, -0.125f};
  std::memcpy(payload.data(), v, 8);
  const Audio a = DecodeWav(HandWav(3, 1, 22050, 32, payload));
  ASSERT_EQ(a.samples.size(), 2u);
  EXPECT_EQ(a.samples[0], 0.5f);
  EXPECT_EQ(a.samples[1], -0.125f);
}

TEST(WavTest, Float32RoundTripIsExact) {
  const auto x = testing::Noise(1000, 0.9, 3);
  const Audio a = DecodeWav(EncodeWav(x, 16000, WavEncoding::kFloat32));
  EXPECT_EQ(a.samples, x);
  EXPECT_EQ(a.sample_rate, 16000);
}

TEST(WavTest, Pcm16RoundTripWithinQuantization) {
  const auto x = testing::Noise(1000, 0.9, 4);
  const Audio a = DecodeWav(EncodeWav(x, 22050, WavEncoding::kPcm16));
  ASSERT_EQ(a.samples.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(a.samples[i], x[i], 1e-4);
}

TEST(WavTest, QuantizeClipsAndRoundsHalfAway) {
  EXPECT_EQ(QuantizePcm16(2.0f), 32767);
  EXPECT_EQ(QuantizePcm16(-2.0f), -32768);
  EXPECT_EQ(QuantizePcm16(1.0f), 32767);
  EXPECT_EQ(QuantizePcm16(-1.0f), -32768);
  EXPECT_EQ(QuantizePcm16(0.0f), 0);
  // 1.5 / 32768 is exact in float and sits on a half step.
  EXPECT_EQ(QuantizePcm16(1.5f / 32768.0f), 2);
  EXPECT_EQ(QuantizePcm16(-1.5f / 32768.0f), -2);
}

TEST(WavTest, Pcm16DecodeEncodeIsLossless) {
  std::vector<std::uint8_t> payload;
  for (int v = -32768; v <= 32767; v += 7) {
    payload.push_back(static_cast<std::uint8_t>(v & 0xFF));
    payload.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
  }
  const auto bytes = HandWav(1, 1, 22050, 16, payload);
  const Audio a = DecodeWav(bytes);
  EXPECT_EQ(EncodeWav(a.samples, 22050, WavEncoding::kPcm16), bytes);
}

TEST(WavTest, TruncatedDataChunkIsParseError) {
  auto bytes = EncodeWav(testing::Tone(440, 0.1, 8000), 8000, WavEncoding::kPcm16);
  bytes.resize(bytes.size() / 2);
  EXPECT_THROW(DecodeWav(bytes), ParseError);
}

TEST(WavTest, GarbageIsParseError) {
  const std::vector<std::uint8_t> junk{'n', 'o', 'p', 'e'};
  EXPECT_THROW(DecodeWav(junk), ParseError);
}

TEST(WavTest, FileRoundTrip) {
  testing::TempDir dir;
  const auto x = testing::Tone(440, 0.5, 22050, 0.5);
  WriteWav(dir / "t.wav", x, 22050);
  const Audio a = ReadWav(dir / "t.wav");
  EXPECT_EQ(a.samples.size(), x.size());
  EXPECT_DOUBLE_EQ(a.duration_s(), 0.5);
}

}  // namespace
}  // namespace laughcorpus

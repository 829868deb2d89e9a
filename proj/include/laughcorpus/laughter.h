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

#ifndef LAUGHCORPUS_LAUGHTER_H_
#define LAUGHCORPUS_LAUGHTER_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "laughcorpus/features.h"

namespace laughcorpus {

inline constexpr double kDefaultLaughThreshold = 0.7;
inline constexpr double kDefaultMinLaughDuration = 0.1;
inline constexpr double kDefaultFadeMs = 10.0;

// Per-frame laughter probabilities; frame k covers [k * hop, (k + 1) * hop).
struct LaughProbTrack {
  double frame_hop_s = 0.0;
  std::vector<double> probs;

  bool operator==(const LaughProbTrack&) const = default;
};

// Half-open span [start_s, end_s) in seconds.
struct LaughInterval {
  double start_s = 0.0;
  double end_s = 0.0;

  double duration_s() const { return end_s - start_s; }
  bool operator==(const LaughInterval&) const = default;
};

// JSON {"frame_hop_s": number, "probs": [numbers]}.
LaughProbTrack ProbTrackFromJson(std::string_view text);
std::string ProbTrackToJson(const LaughProbTrack& track);
LaughProbTrack LoadProbTrack(const std::filesystem::path& path);
void SaveProbTrack(const LaughProbTrack& track, const std::filesystem::path& path);

// JSON [[start_s, end_s], ...].
std::string IntervalsToJson(std::span<const LaughInterval> intervals);
std::vector<LaughInterval> IntervalsFromJson(std::string_view text);

// Coefficients of the fallback detector: p = sigmoid(rms_weight * z_rms +
// flatness_weight * flatness + bias), z_rms being the frame RMS z-scored
// within the clip. The z-score denominator is floored at
// rms_std_floor * mean RMS so a clip of near-constant level does not turn
// frame-to-frame jitter into large scores.
struct HeuristicWeights {
  double rms_weight = 1.0;
  double flatness_weight = 8.0;
  double bias = -4.0;
  double rms_std_floor = 0.1;
};

// Spectral flatness (geometric / arithmetic mean of the power spectrum) of
// each STFT frame; 0 for an all-zero frame.
std::vector<double> SpectralFlatness(const Matrix& stft_mag);

// Stand-in detector for clips without an external probability track. Uses
// the feature framing at `sample_rate`. Throws Error if the audio is
// shorter than one frame.
LaughProbTrack HeuristicProbs(std::span<const float> audio, int sample_rate,
                              const HeuristicWeights& weights = {},
                              FrameParams params = {});

// Maximal runs with prob >= threshold, kept when at least min_duration_s
// long.
std::vector<LaughInterval> DetectIntervals(
    const LaughProbTrack& track, double threshold = kDefaultLaughThreshold,
    double min_duration_s = kDefaultMinLaughDuration);

double TotalLaughDuration(std::span<const LaughInterval> intervals);

// Clips intervals to [0, duration_s], dropping any that become empty.
std::vector<LaughInterval> ClipIntervals(std::span<const LaughInterval> intervals,
                                         double duration_s);

// Zeroes the samples of each interval. With fade_ms > 0 the first and last
// fade samples inside the interval ramp linearly down to and back up from
// zero; samples outside every interval are untouched.
std::vector<float> MuteIntervals(std::span<const float> audio, int sample_rate,
                                 std::span<const LaughInterval> intervals,
                                 double fade_ms = kDefaultFadeMs);

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_LAUGHTER_H_

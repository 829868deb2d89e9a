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

// Synthetic corpus shared by the pipeline, CLI and acceptance tests.
//
// Twenty standup clips carry laugh tracks with known run lengths plus decoy
// frames that detection must ignore; five nonfunny clips carry none. The
// expected ratings are worked out here from the known durations alone.

#ifndef LAUGHCORPUS_TESTS_FIXTURE_H_
#define LAUGHCORPUS_TESTS_FIXTURE_H_

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "laughcorpus/laughter.h"
#include "laughcorpus/wav.h"
#include "test_util.h"

namespace laughcorpus::testing {

inline constexpr int kFixtureRate = 22050;
inline constexpr double kFixtureSeconds = 6.0;
inline constexpr double kFixtureHop = 0.05;
inline constexpr int kFixtureFrames = 120;
inline constexpr int kStandupClips = 20;
inline constexpr int kNonfunnyClips = 5;

struct FixtureCorpus {
  std::filesystem::path standup_dir;
  std::filesystem::path nonfunny_dir;
  std::filesystem::path tracks_dir;
  std::filesystem::path transcripts_dir;
  std::map<std::string, double> laugh_seconds;  // by clip id
  std::map<std::string, int> expected_rating;   // by clip id
};

// Laugh runs for standup clip i as (first frame, frame count).
inline std::vector<std::pair<int, int>> FixtureRuns(int i) {
  const int total = 2 + 2 * i;
  if (total < 4) return {{10, total}};
  return {{10, total / 2}, {60, total - total / 2}};
}

// Hand oracle: quotients, population mean and std, then the band rules.
inline std::vector<int> FixtureOracleRatings(const std::vector<double>& quotients) {
  double mu = 0.0;
  for (double q : quotients) mu += q;
  mu /= static_cast<double>(quotients.size());
  double var = 0.0;
  for (double q : quotients) var += (q - mu) * (q - mu);
  const double sigma = std::sqrt(var / static_cast<double>(quotients.size()));
  std::vector<int> out;
  for (double q : quotients) {
    int r;
    if (q == 0.0) r = 0;
    else if (q > mu + 0.75 * sigma) r = 4;
    else if (q > mu) r = 3;
    else if (q > mu - 0.75 * sigma) r = 2;
    else r = 1;
    out.push_back(r);
  }
  return out;
}

inline std::string FixtureId(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%02d", prefix, i);
  return buf;
}

inline FixtureCorpus WriteFixtureCorpus(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  FixtureCorpus fx;
  fx.standup_dir = root / "standup";
  fx.nonfunny_dir = root / "nonfunny";
  fx.tracks_dir = root / "tracks";
  fx.transcripts_dir = root / "transcripts";
  for (const auto& d : {fx.standup_dir, fx.nonfunny_dir, fx.tracks_dir, fx.transcripts_dir}) {
    fs::create_directories(d);
  }

  std::vector<std::string> ids;
  std::vector<double> quotients;
  for (int i = 0; i < kStandupClips; ++i) {
    int frames = 0;
    for (const auto& run : FixtureRuns(i)) frames += run.second;
    ids.push_back(FixtureId("standup", i));
    fx.laugh_seconds[ids.back()] = frames * kFixtureHop;
    quotients.push_back(frames * kFixtureHop / kFixtureSeconds);
  }
  for (int i = 0; i < kNonfunnyClips; ++i) {
    ids.push_back(FixtureId("talk", i));
    fx.laugh_seconds[ids.back()] = 0.0;
    quotients.push_back(0.0);
  }
  const std::vector<int> ratings = FixtureOracleRatings(quotients);
  for (std::size_t i = 0; i < ids.size(); ++i) fx.expected_rating[ids[i]] = ratings[i];

  for (std::size_t i = 0; i < ids.size(); ++i) {
    const bool standup = static_cast<int>(i) < kStandupClips;
    // Tone pitch follows the rating so audio features carry signal after
    // the laughter is muted.
    auto audio = Tone(180.0 + 220.0 * ratings[i], kFixtureSeconds, kFixtureRate, 0.3);
    LaughProbTrack track{kFixtureHop, std::vector<double>(kFixtureFrames, 0.1)};
    if (standup) {
      for (const auto& [first, count] : FixtureRuns(static_cast<int>(i))) {
        const auto burst = Noise(static_cast<std::size_t>(count * kFixtureHop * kFixtureRate),
                                 0.6, static_cast<std::uint32_t>(i * 31 + first));
        const auto start = static_cast<std::size_t>(first * kFixtureHop * kFixtureRate);
        for (std::size_t k = 0; k < burst.size(); ++k) audio[start + k] += burst[k];
        for (int f = first; f < first + count; ++f) track.probs[f] = 0.95;
      }
      for (int f = 105; f < 110; ++f) track.probs[f] = 0.65;  // below threshold
    }
    track.probs[100] = 0.9;  // single frame, shorter than the minimum duration
    const fs::path dir = standup ? fx.standup_dir : fx.nonfunny_dir;
    WriteWav(dir / (ids[i] + ".wav"), audio, kFixtureRate);
    SaveProbTrack(track, fx.tracks_dir / (ids[i] + ".json"));
    Spit(fx.transcripts_dir / (ids[i] + ".txt"), "transcript of " + ids[i] + ", verbatim\n");
  }
  return fx;
}

}  // namespace laughcorpus::testing

#endif  // LAUGHCORPUS_TESTS_FIXTURE_H_

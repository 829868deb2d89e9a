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

#include "laughcorpus/laughter.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "laughcorpus/error.h"

namespace laughcorpus {
namespace {

using Json = nlohmann::json;

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

std::string Describe(const LaughInterval& interval) {
  std::ostringstream os;
  os << "[" << interval.start_s << ", " << interval.end_s << ")";
  return os.str();
}

}  // namespace

LaughProbTrack ProbTrackFromJson(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("prob track: ") + e.what());
  }
  if (!j.is_object() || !j.contains("frame_hop_s") || !j.contains("probs")) {
    throw ParseError("prob track: missing header (frame_hop_s, probs)");
  }
  const Json& hop = j["frame_hop_s"];
  if (!hop.is_number() || !(hop.get<double>() > 0.0)) {
    throw ParseError("prob track: frame_hop_s must be a positive number");
  }
  const Json& probs = j["probs"];
  if (!probs.is_array()) throw ParseError("prob track: probs must be an array");
  if (probs.empty()) throw ParseError("prob track: empty track");
  LaughProbTrack track;
  track.frame_hop_s = hop.get<double>();
  track.probs.reserve(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!probs[i].is_number()) {
      throw ParseError("prob track: frame " + std::to_string(i) +
                       " is not a number");
    }
    const double p = probs[i].get<double>();
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ParseError("prob track: frame " + std::to_string(i) +
                       " has probability outside [0, 1]");
    }
    track.probs.push_back(p);
  }
  return track;
}

std::string ProbTrackToJson(const LaughProbTrack& track) {
  Json j = Json::object();
  j["frame_hop_s"] = track.frame_hop_s;
  j["probs"] = track.probs;
  return j.dump() + "\n";
}

LaughProbTrack LoadProbTrack(const std::filesystem::path& path) {
  try {
    return ProbTrackFromJson(ReadText(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void SaveProbTrack(const LaughProbTrack& track, const std::filesystem::path& path) {
  WriteText(path, ProbTrackToJson(track));
}

std::string IntervalsToJson(std::span<const LaughInterval> intervals) {
  Json j = Json::array();
  for (const auto& iv : intervals) j.push_back({iv.start_s, iv.end_s});
  return j.dump() + "\n";
}

std::vector<LaughInterval> IntervalsFromJson(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("intervals: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("intervals: expected an array");
  std::vector<LaughInterval> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& pair = j[i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number()) {
      throw ParseError("intervals[" + std::to_string(i) +
                       "]: expected [start_s, end_s]");
    }
    LaughInterval iv{pair[0].get<double>(), pair[1].get<double>()};
    if (!(iv.start_s >= 0.0 && iv.end_s > iv.start_s)) {
      throw ParseError("intervals[" + std::to_string(i) + "]: invalid span " +
                       Describe(iv));
    }
    out.push_back(iv);
  }
  return out;
}

std::vector<double> SpectralFlatness(const Matrix& stft_mag) {
  constexpr double kTiny = 1e-20;
  std::vector<double> flatness(stft_mag.rows(), 0.0);
  for (std::size_t t = 0; t < stft_mag.rows(); ++t) {
    const auto mag = stft_mag.row(t);
    double log_sum = 0.0;
    double sum = 0.0;
    for (double m : mag) {
      const double p = m * m;
      log_sum += std::log(p + kTiny);
      sum += p;
    }
    const double n = static_cast<double>(mag.size());
    const double arith = sum / n;
    if (arith <= kTiny) continue;
    flatness[t] = std::min(1.0, std::exp(log_sum / n) / arith);
  }
  return flatness;
}

LaughProbTrack HeuristicProbs(std::span<const float> audio, int sample_rate,
                              const HeuristicWeights& weights,
                              FrameParams params) {
  params.sample_rate = sample_rate;
  params.Validate();
  if (audio.size() < params.frame_len) {
    throw Error("audio shorter than one analysis frame (" +
                std::to_string(params.frame_len) + " samples)");
  }
  const Matrix mag = StftMagnitude(audio, params);
  const std::vector<double> flatness = SpectralFlatness(mag);
  const std::vector<double> rms = RmsEnergy(audio, params);

  const double n = static_cast<double>(rms.size());
  double mean = 0.0;
  for (double r : rms) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : rms) var += (r - mean) * (r - mean);
  const double sd = std::max({std::sqrt(var / n), weights.rms_std_floor * mean, 1e-12});

  LaughProbTrack track;
  track.frame_hop_s = params.hop_seconds();
  track.probs.resize(rms.size());
  for (std::size_t t = 0; t < rms.size(); ++t) {
    const double z = (rms[t] - mean) / sd;
    const double logit =
        weights.rms_weight * z + weights.flatness_weight * flatness[t] + weights.bias;
    track.probs[t] = 1.0 / (1.0 + std::exp(-logit));
  }
  return track;
}

std::vector<LaughInterval> DetectIntervals(const LaughProbTrack& track,
                                           double threshold,
                                           double min_duration_s) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error("threshold must lie in (0, 1]");
  }
  if (!(min_duration_s >= 0.0)) throw Error("min_duration_s must be >= 0");
  if (!(track.frame_hop_s > 0.0)) throw Error("frame_hop_s must be > 0");

  // Run lengths are compared as frame_count * hop with a relative slack of
  // 1e-9 so that e.g. 2 frames of 0.05 s satisfy a 0.1 s minimum.
  const double min_len = min_duration_s * (1.0 - 1e-9);
  std::vector<LaughInterval> out;
  const std::size_t n = track.probs.size();
  std::size_t i = 0;
  while (i < n) {
    if (track.probs[i] < threshold) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && track.probs[j] >= threshold) ++j;
    const double length = static_cast<double>(j - i) * track.frame_hop_s;
    if (length >= min_len) {
      out.push_back({static_cast<double>(i) * track.frame_hop_s,
                     static_cast<double>(j) * track.frame_hop_s});
    }
    i = j;
  }
  return out;
}

double TotalLaughDuration(std::span<const LaughInterval> intervals) {
  double total = 0.0;
  for (const auto& iv : intervals) total += iv.end_s - iv.start_s;
  return total;
}

std::vector<LaughInterval> ClipIntervals(std::span<const LaughInterval> intervals,
                                         double duration_s) {
  std::vector<LaughInterval> out;
  for (const auto& iv : intervals) {
    const double start = std::max(0.0, iv.start_s);
    const double end = std::min(duration_s, iv.end_s);
    if (end > start) out.push_back({start, end});
  }
  return out;
}

std::vector<float> MuteIntervals(std::span<const float> audio, int sample_rate,
                                 std::span<const LaughInterval> intervals,
                                 double fade_ms) {
  if (sample_rate <= 0) throw Error("sample_rate must be positive");
  if (!(fade_ms >= 0.0)) throw Error("fade_ms must be >= 0");
  std::vector<float> out(audio.begin(), audio.end());
  if (intervals.empty()) return out;

  const auto len = static_cast<std::int64_t>(audio.size());
  const double duration = static_cast<double>(len) / sample_rate;
  const auto fade = static_cast<std::int64_t>(std::llround(fade_ms * sample_rate / 1000.0));
  std::vector<double> gain(audio.size(), 1.0);
  for (const auto& iv : intervals) {
    if (!(iv.start_s >= 0.0 && iv.end_s > iv.start_s) ||
        iv.end_s > duration + 0.5 / sample_rate) {
      throw Error("interval " + Describe(iv) + " exceeds audio length " +
                  std::to_string(duration) + " s");
    }
    const std::int64_t s = static_cast<std::int64_t>(std::llround(iv.start_s * sample_rate));
    const std::int64_t e = std::min(len, static_cast<std::int64_t>(std::llround(iv.end_s * sample_rate)));
    if (e <= s) continue;
    const std::int64_t ramp = std::min(fade, (e - s) / 2);
    for (std::int64_t i = s; i < e; ++i) {
      double g = 0.0;
      const std::int64_t from_start = i - s;
      const std::int64_t from_end = e - 1 - i;
      const std::int64_t edge = std::min(from_start, from_end);
      if (edge < ramp) {
        g = 1.0 - static_cast<double>(edge + 1) / static_cast<double>(ramp + 1);
      }
      gain[i] = std::min(gain[i], g);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (gain[i] == 0.0) {
      out[i] = 0.0f;
    } else if (gain[i] != 1.0) {
      out[i] = static_cast<float>(audio[i] * gain[i]);
    }
  }
  return out;
}

}  // namespace laughcorpus

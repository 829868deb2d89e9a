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

#ifndef LAUGHCORPUS_PIPELINE_H_
#define LAUGHCORPUS_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "laughcorpus/corpus.h"
#include "laughcorpus/features.h"
#include "laughcorpus/laughter.h"
#include "laughcorpus/rater.h"
#include "laughcorpus/scoring.h"

namespace laughcorpus {

struct LaughterSettings {
  double threshold = kDefaultLaughThreshold;
  double min_duration_s = kDefaultMinLaughDuration;
  double fade_ms = kDefaultFadeMs;
  bool mute = true;

  bool operator==(const LaughterSettings&) const = default;
};

struct SplitSettings {
  double train_fraction = 0.7;
  std::int64_t seed = 1;
  bool stratified = true;

  bool operator==(const SplitSettings&) const = default;
};

struct RaterSettings {
  TrainConfig train;
  Modality modality = Modality::kAudio;
};

// Every tunable of the toolkit. Serialized as nested JSON objects
// (laughter, features, scoring, split, rater, jobs); a config file may omit
// keys to take defaults but unknown keys are rejected.
struct PipelineConfig {
  LaughterSettings laughter;
  FrameParams features;
  StdEstimator estimator = StdEstimator::kPopulation;
  SplitSettings split;
  RaterSettings rater;
  int jobs = 0;
};

std::string ConfigToJson(const PipelineConfig& config);
PipelineConfig ConfigFromJson(std::string_view text);
PipelineConfig LoadConfig(const std::filesystem::path& path);
// Writes <dir>/config.json.
void EchoConfig(const PipelineConfig& config, const std::filesystem::path& dir);

struct PipelineInputs {
  // Directory of <clip id>.json probability tracks.
  std::optional<std::filesystem::path> tracks_dir;
  // Use HeuristicProbs for clips without a track file.
  bool heuristic = false;
  bool write_muted = false;
};

struct PipelineResult {
  CorpusManifest manifest;
  std::vector<std::vector<LaughInterval>> intervals;  // parallel to clips
};

// detect -> score -> mute -> features -> split. Writes into `out_dir`:
// manifest.json, scores.csv, histogram.csv, report.txt, config.json,
// intervals/<id>.json, features/<id>.lfx and, when requested,
// muted/<id>.wav. Throws Error listing clips that have neither a track
// file nor the heuristic fallback.
PipelineResult RunPipeline(const CorpusManifest& manifest,
                           const PipelineConfig& config,
                           const PipelineInputs& inputs,
                           const std::filesystem::path& out_dir);

// Audio at the feature sample rate (resampled when needed).
std::vector<float> LoadAudioForFeatures(const std::filesystem::path& path,
                                        const FrameParams& params);

// rating,clips,criterion rows for ratings 4..0.
std::string RatingHistogramCsv(const CorpusManifest& manifest);
std::string RunReportText(const CorpusManifest& manifest,
                          const PipelineConfig& config);

// Pooled examples for the clips of `split`, reading
// <features_dir>/<id>.lfx and, for text modalities, the embedding of each
// clip. Throws Error on unrated clips, missing embeddings, or a text
// modality without embeddings.
std::vector<PooledExample> BuildExamples(const CorpusManifest& manifest,
                                         Split split,
                                         const std::filesystem::path& features_dir,
                                         const TextEmbeddings* embeddings,
                                         Modality modality,
                                         FeatureLayout* layout = nullptr);

TrainResult TrainRater(const CorpusManifest& manifest,
                       const std::filesystem::path& features_dir,
                       const TextEmbeddings* embeddings,
                       const RaterSettings& settings);

Evaluation EvaluateRater(const SoftmaxModel& model,
                         const CorpusManifest& manifest,
                         const std::filesystem::path& features_dir,
                         const TextEmbeddings* embeddings);

std::string MetricsCsv(const Evaluation& eval);
std::string ConfusionCsv(const Evaluation& eval);
std::string MetricsText(const Evaluation& eval, Modality modality);

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_PIPELINE_H_

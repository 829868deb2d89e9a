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

#ifndef LAUGHCORPUS_RATER_H_
#define LAUGHCORPUS_RATER_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "laughcorpus/agreement.h"
#include "laughcorpus/features.h"
#include "laughcorpus/matrix.h"

namespace laughcorpus {

inline constexpr int kNumClasses = 5;
// Pooled audio width: per-dimension mean and standard deviation.
inline constexpr std::size_t kPooledAudioDims = 2 * kFeatureDims;

struct PooledExample {
  std::string clip_id;
  std::vector<double> x;
  int y = 0;
};

// [mean | population std] of each feature column over the real frames.
// Throws Error when n_frames_real == 0.
std::vector<double> PoolFeatures(const FeatureMatrix& matrix);

struct TextEmbeddings {
  std::size_t dim = 0;
  std::map<std::string, std::vector<double>> vectors;
};

// JSON object clip_id -> array of numbers, all of the same length. Throws
// ParseError on duplicate ids, non-numeric entries or a dimension mismatch.
TextEmbeddings ParseTextEmbeddings(std::string_view text);
TextEmbeddings LoadTextEmbeddings(const std::filesystem::path& path);

enum class Modality { kAudio, kText, kBoth };
std::string_view ToString(Modality modality);
Modality ParseModality(std::string_view text);

struct FeatureLayout {
  Modality modality = Modality::kAudio;
  std::size_t audio_dims = 0;
  std::size_t text_dims = 0;

  std::size_t total() const { return audio_dims + text_dims; }
  bool operator==(const FeatureLayout&) const = default;
};

// Concatenates the parts selected by `layout.modality`.
std::vector<double> ComposeFeatures(const FeatureLayout& layout,
                                    std::span<const double> audio,
                                    std::span<const double> text);

// Per-dimension affine map x -> (x - mean) / std.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> std;

  // Population statistics; dimensions with zero spread get std = 1.
  static Standardizer Fit(std::span<const PooledExample> examples);
  static Standardizer Identity(std::size_t dim);
  std::vector<double> Apply(std::span<const double> x) const;

  bool operator==(const Standardizer&) const = default;
};

// Softmax regression over standardized inputs: logits = W z + b.
struct SoftmaxModel {
  Matrix weights;  // kNumClasses x dim
  std::vector<double> bias;
  Standardizer standardizer;
  FeatureLayout layout;

  std::size_t dim() const { return weights.cols(); }
  static SoftmaxModel Zeros(std::size_t dim);
  bool operator==(const SoftmaxModel&) const = default;
};

std::string ModelToJson(const SoftmaxModel& model);
SoftmaxModel ModelFromJson(std::string_view text);
void SaveModel(const SoftmaxModel& model, const std::filesystem::path& path);
SoftmaxModel LoadModel(const std::filesystem::path& path);

struct TrainConfig {
  double lr = 0.1;
  int epochs = 2000;
  double l2 = 1e-4;
  std::int64_t seed = 0;
  bool class_weighted = false;
};

struct TrainResult {
  SoftmaxModel model;
  // Loss before each update, plus the final loss: epochs + 1 entries.
  std::vector<double> losses;
  std::vector<std::string> warnings;
};

// Full-batch gradient descent on the mean (optionally class-weighted)
// cross-entropy plus l2 * ||W||^2, from zero weights. Inputs are
// standardized with statistics fitted on `examples`. With standardized
// inputs the loss decreases monotonically for lr below 2 / (1 + dim)
// (a bound on the gradient's Lipschitz constant); larger rates usually
// work but carry no guarantee. Throws Error on a non-finite loss.
TrainResult Train(std::span<const PooledExample> examples,
                  const TrainConfig& config);

// Log-sum-exp stabilized softmax.
std::array<double, kNumClasses> Softmax(std::span<const double> logits);

struct Prediction {
  std::array<double, kNumClasses> probs{};
  int rating = 0;  // argmax, lowest index wins ties
};

Prediction Predict(const SoftmaxModel& model, std::span<const double> x);

// Mean loss of `model` on raw (unstandardized) examples.
double Loss(const SoftmaxModel& model, std::span<const PooledExample> examples,
            double l2, std::span<const double> class_weights = {});

// Analytic gradient of Loss with respect to W (row-major) then b.
std::vector<double> LossGradient(const SoftmaxModel& model,
                                 std::span<const PooledExample> examples,
                                 double l2,
                                 std::span<const double> class_weights = {});

// Largest relative difference between LossGradient and central finite
// differences over every parameter:
// max |g_a - g_n| / max(|g_a|, |g_n|, 1e-8).
double GradientCheck(const SoftmaxModel& model,
                     std::span<const PooledExample> examples, double l2,
                     double epsilon = 1e-5);

struct Evaluation {
  double qwk = 0.0;
  double accuracy = 0.0;
  ConfusionMatrix confusion;  // rows = reference rating, cols = predicted
  std::vector<int> predicted;
};

Evaluation Evaluate(const SoftmaxModel& model,
                    std::span<const PooledExample> examples);

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_RATER_H_

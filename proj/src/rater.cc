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

#include "laughcorpus/rater.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
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

std::vector<double> DefaultClassWeights() {
  return std::vector<double>(kNumClasses, 1.0);
}

// Mean weighted cross-entropy plus l2 * ||W||^2, evaluated in type T.
template <typename T>
T LossIn(const SoftmaxModel& model, std::span<const PooledExample> examples,
         double l2, std::span<const double> class_weights) {
  const std::size_t dim = model.dim();
  T data = 0;
  std::vector<T> logits(kNumClasses);
  for (const PooledExample& ex : examples) {
    const std::vector<double> z = model.standardizer.Apply(ex.x);
    for (int c = 0; c < kNumClasses; ++c) {
      T acc = model.bias[c];
      const auto w = model.weights.row(c);
      for (std::size_t d = 0; d < dim; ++d) acc += static_cast<T>(w[d]) * z[d];
      logits[c] = acc;
    }
    const T peak = *std::max_element(logits.begin(), logits.end());
    T sum = 0;
    for (T l : logits) sum += std::exp(l - peak);
    const T log_z = peak + std::log(sum);
    data += static_cast<T>(class_weights[ex.y]) * (log_z - logits[ex.y]);
  }
  if (!examples.empty()) data /= static_cast<T>(examples.size());
  T reg = 0;
  for (double w : model.weights.data()) reg += static_cast<T>(w) * w;
  return data + static_cast<T>(l2) * reg;
}

void CheckExample(const PooledExample& ex, std::size_t dim) {
  if (ex.x.size() != dim) {
    throw Error("example '" + ex.clip_id + "' has dimension " +
                std::to_string(ex.x.size()) + ", expected " + std::to_string(dim));
  }
  if (ex.y < 0 || ex.y >= kNumClasses) {
    throw Error("example '" + ex.clip_id + "' has label outside 0..4");
  }
  for (double v : ex.x) {
    if (!std::isfinite(v)) {
      throw Error("example '" + ex.clip_id + "' has a non-finite feature");
    }
  }
}

std::span<const double> WeightsOrDefault(std::span<const double> weights,
                                         std::vector<double>* storage) {
  if (!weights.empty()) {
    if (weights.size() != kNumClasses) throw Error("need 5 class weights");
    return weights;
  }
  *storage = DefaultClassWeights();
  return *storage;
}

Json MatrixToJson(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

std::vector<double> NumberArray(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const Json& v : j) {
    if (!v.is_number()) throw ParseError(where + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::vector<double> PoolFeatures(const FeatureMatrix& matrix) {
  const std::size_t n = matrix.n_frames_real;
  if (n == 0) throw Error("cannot pool a feature matrix with no real frames");
  std::vector<double> out(kPooledAudioDims, 0.0);
  for (std::size_t c = 0; c < kFeatureDims; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += matrix.at(r, c);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = matrix.at(r, c) - mean;
      var += d * d;
    }
    out[c] = mean;
    out[kFeatureDims + c] = std::sqrt(var / static_cast<double>(n));
  }
  return out;
}

TextEmbeddings ParseTextEmbeddings(std::string_view text) {
  std::set<std::string> seen;
  std::string duplicate;
  Json::parser_callback_t guard = [&](int depth, Json::parse_event_t event,
                                      Json& parsed) {
    if (event == Json::parse_event_t::key && depth == 1) {
      const std::string key = parsed.get<std::string>();
      if (!seen.insert(key).second && duplicate.empty()) duplicate = key;
    }
    return true;
  };
  Json j;
  try {
    j = Json::parse(text, guard);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("embeddings: ") + e.what());
  }
  if (!duplicate.empty()) {
    throw ParseError("embeddings: duplicate clip id '" + duplicate + "'");
  }
  if (!j.is_object()) throw ParseError("embeddings: expected an object");
  TextEmbeddings out;
  bool first = true;
  for (const auto& item : j.items()) {
    std::vector<double> v = NumberArray(item.value(), "embeddings['" + item.key() + "']");
    if (v.empty()) throw ParseError("embeddings['" + item.key() + "']: empty vector");
    if (first) {
      out.dim = v.size();
      first = false;
    } else if (v.size() != out.dim) {
      throw ParseError("embeddings['" + item.key() + "']: dimension " +
                       std::to_string(v.size()) + " differs from " +
                       std::to_string(out.dim));
    }
    out.vectors.emplace(item.key(), std::move(v));
  }
  if (out.vectors.empty()) throw ParseError("embeddings: no vectors");
  return out;
}

TextEmbeddings LoadTextEmbeddings(const std::filesystem::path& path) {
  try {
    return ParseTextEmbeddings(ReadText(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string_view ToString(Modality modality) {
  switch (modality) {
    case Modality::kAudio:
      return "audio";
    case Modality::kText:
      return "text";
    case Modality::kBoth:
      break;
  }
  return "both";
}

Modality ParseModality(std::string_view text) {
  if (text == "audio") return Modality::kAudio;
  if (text == "text") return Modality::kText;
  if (text == "both") return Modality::kBoth;
  throw Error("unknown modality '" + std::string(text) + "'");
}

std::vector<double> ComposeFeatures(const FeatureLayout& layout,
                                    std::span<const double> audio,
                                    std::span<const double> text) {
  std::vector<double> x;
  x.reserve(layout.total());
  if (layout.audio_dims > 0) {
    if (audio.size() != layout.audio_dims) throw Error("audio feature width mismatch");
    x.insert(x.end(), audio.begin(), audio.end());
  }
  if (layout.text_dims > 0) {
    if (text.size() != layout.text_dims) throw Error("text embedding width mismatch");
    x.insert(x.end(), text.begin(), text.end());
  }
  return x;
}

Standardizer Standardizer::Fit(std::span<const PooledExample> examples) {
  if (examples.empty()) throw Error("cannot fit a standardizer on no examples");
  const std::size_t dim = examples.front().x.size();
  Standardizer s{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
  const double n = static_cast<double>(examples.size());
  for (const auto& ex : examples) {
    for (std::size_t d = 0; d < dim; ++d) s.mean[d] += ex.x[d];
  }
  for (double& m : s.mean) m /= n;
  for (const auto& ex : examples) {
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = ex.x[d] - s.mean[d];
      s.std[d] += diff * diff;
    }
  }
  for (double& v : s.std) {
    v = std::sqrt(v / n);
    if (!(v > 0.0)) v = 1.0;
  }
  return s;
}

Standardizer Standardizer::Identity(std::size_t dim) {
  return {std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

std::vector<double> Standardizer::Apply(std::span<const double> x) const {
  if (x.size() != mean.size()) {
    throw Error("input dimension " + std::to_string(x.size()) +
                " does not match model dimension " + std::to_string(mean.size()));
  }
  std::vector<double> z(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) z[d] = (x[d] - mean[d]) / std[d];
  return z;
}

SoftmaxModel SoftmaxModel::Zeros(std::size_t dim) {
  SoftmaxModel m;
  m.weights = Matrix(kNumClasses, dim);
  m.bias.assign(kNumClasses, 0.0);
  m.standardizer = Standardizer::Identity(dim);
  m.layout = {Modality::kAudio, dim, 0};
  return m;
}

std::string ModelToJson(const SoftmaxModel& model) {
  Json j;
  j["n_classes"] = kNumClasses;
  j["layout"] = {{"modality", std::string(ToString(model.layout.modality))},
                 {"audio_dims", model.layout.audio_dims},
                 {"text_dims", model.layout.text_dims}};
  j["weights"] = MatrixToJson(model.weights);
  j["bias"] = model.bias;
  j["standardizer"] = {{"mean", model.standardizer.mean},
                       {"std", model.standardizer.std}};
  return j.dump(2) + "\n";
}

SoftmaxModel ModelFromJson(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
  try {
    if (j.at("n_classes").get<int>() != kNumClasses) {
      throw ParseError("model: n_classes must be 5");
    }
    SoftmaxModel m;
    const Json& layout = j.at("layout");
    m.layout.modality = ParseModality(layout.at("modality").get<std::string>());
    m.layout.audio_dims = layout.at("audio_dims").get<std::size_t>();
    m.layout.text_dims = layout.at("text_dims").get<std::size_t>();
    const std::size_t dim = m.layout.total();
    const Json& weights = j.at("weights");
    if (!weights.is_array() || weights.size() != kNumClasses) {
      throw ParseError("model: weights must have 5 rows");
    }
    m.weights = Matrix(kNumClasses, dim);
    for (int c = 0; c < kNumClasses; ++c) {
      const auto row = NumberArray(weights[c], "model.weights");
      if (row.size() != dim) throw ParseError("model: weight row width mismatch");
      std::copy(row.begin(), row.end(), m.weights.row(c).begin());
    }
    m.bias = NumberArray(j.at("bias"), "model.bias");
    m.standardizer.mean = NumberArray(j.at("standardizer").at("mean"), "model.mean");
    m.standardizer.std = NumberArray(j.at("standardizer").at("std"), "model.std");
    if (m.bias.size() != kNumClasses || m.standardizer.mean.size() != dim ||
        m.standardizer.std.size() != dim) {
      throw ParseError("model: inconsistent dimensions");
    }
    for (double s : m.standardizer.std) {
      if (!(s > 0.0)) throw ParseError("model: standardizer std must be > 0");
    }
    return m;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
}

void SaveModel(const SoftmaxModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << ModelToJson(model);
  if (!out) throw Error("write failed: " + path.string());
}

SoftmaxModel LoadModel(const std::filesystem::path& path) {
  try {
    return ModelFromJson(ReadText(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::array<double, kNumClasses> Softmax(std::span<const double> logits) {
  if (logits.size() != kNumClasses) throw Error("softmax expects 5 logits");
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::array<double, kNumClasses> p{};
  double sum = 0.0;
  for (int c = 0; c < kNumClasses; ++c) {
    p[c] = std::exp(logits[c] - peak);
    sum += p[c];
  }
  for (double& v : p) v /= sum;
  return p;
}

Prediction Predict(const SoftmaxModel& model, std::span<const double> x) {
  const std::vector<double> z = model.standardizer.Apply(x);
  std::array<double, kNumClasses> logits{};
  for (int c = 0; c < kNumClasses; ++c) {
    double acc = model.bias[c];
    const auto w = model.weights.row(c);
    for (std::size_t d = 0; d < z.size(); ++d) acc += w[d] * z[d];
    logits[c] = acc;
  }
  Prediction pred;
  pred.probs = Softmax(logits);
  pred.rating = static_cast<int>(
      std::max_element(pred.probs.begin(), pred.probs.end()) - pred.probs.begin());
  return pred;
}

double Loss(const SoftmaxModel& model, std::span<const PooledExample> examples,
            double l2, std::span<const double> class_weights) {
  std::vector<double> storage;
  const auto weights = WeightsOrDefault(class_weights, &storage);
  for (const auto& ex : examples) CheckExample(ex, model.dim());
  return LossIn<double>(model, examples, l2, weights);
}

std::vector<double> LossGradient(const SoftmaxModel& model,
                                 std::span<const PooledExample> examples,
                                 double l2, std::span<const double> class_weights) {
  std::vector<double> storage;
  const auto cw = WeightsOrDefault(class_weights, &storage);
  const std::size_t dim = model.dim();
  std::vector<double> grad(kNumClasses * (dim + 1), 0.0);
  double* gw = grad.data();
  double* gb = grad.data() + kNumClasses * dim;
  for (const PooledExample& ex : examples) {
    CheckExample(ex, dim);
    const std::vector<double> z = model.standardizer.Apply(ex.x);
    const Prediction pred = Predict(model, ex.x);
    for (int c = 0; c < kNumClasses; ++c) {
      const double err = cw[ex.y] * (pred.probs[c] - (c == ex.y ? 1.0 : 0.0));
      for (std::size_t d = 0; d < dim; ++d) gw[c * dim + d] += err * z[d];
      gb[c] += err;
    }
  }
  if (!examples.empty()) {
    const double inv_n = 1.0 / static_cast<double>(examples.size());
    for (double& g : grad) g *= inv_n;
  }
  const auto w = model.weights.data();
  for (std::size_t i = 0; i < w.size(); ++i) gw[i] += 2.0 * l2 * w[i];
  return grad;
}

double GradientCheck(const SoftmaxModel& model,
                     std::span<const PooledExample> examples, double l2,
                     double epsilon) {
  for (const auto& ex : examples) CheckExample(ex, model.dim());
  const std::vector<double> analytic = LossGradient(model, examples, l2);
  const std::vector<double> cw = DefaultClassWeights();
  const std::size_t dim = model.dim();
  SoftmaxModel probe = model;
  double worst = 0.0;
  for (std::size_t p = 0; p < analytic.size(); ++p) {
    double& param = p < kNumClasses * dim ? probe.weights.data()[p]
                                          : probe.bias[p - kNumClasses * dim];
    const double saved = param;
    param = saved + epsilon;
    const long double up = LossIn<long double>(probe, examples, l2, cw);
    param = saved - epsilon;
    const long double down = LossIn<long double>(probe, examples, l2, cw);
    param = saved;
    const double numeric = static_cast<double>((up - down) / (2.0L * epsilon));
    const double diff = std::abs(analytic[p] - numeric);
    const double scale = std::max({std::abs(analytic[p]), std::abs(numeric), 1e-8});
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

TrainResult Train(std::span<const PooledExample> examples,
                  const TrainConfig& config) {
  if (examples.empty()) throw Error("no training examples");
  if (!(config.lr >= 0.0) || config.epochs < 0 || !(config.l2 >= 0.0)) {
    throw Error("invalid training configuration");
  }
  const std::size_t dim = examples.front().x.size();
  for (const auto& ex : examples) CheckExample(ex, dim);

  TrainResult result;
  std::array<std::size_t, kNumClasses> class_counts{};
  for (const auto& ex : examples) ++class_counts[ex.y];
  for (int c = 0; c < kNumClasses; ++c) {
    if (class_counts[c] == 0) {
      result.warnings.push_back("class " + std::to_string(c) +
                                " has no training examples");
    }
  }
  std::vector<double> class_weights = DefaultClassWeights();
  if (config.class_weighted) {
    const double n = static_cast<double>(examples.size());
    for (int c = 0; c < kNumClasses; ++c) {
      if (class_counts[c] > 0) {
        class_weights[c] = n / (kNumClasses * static_cast<double>(class_counts[c]));
      }
    }
  }

  SoftmaxModel& model = result.model;
  model = SoftmaxModel::Zeros(dim);
  model.standardizer = Standardizer::Fit(examples);
  model.layout = {Modality::kAudio, dim, 0};

  auto record_loss = [&](int epoch) {
    const double loss = LossIn<double>(model, examples, config.l2, class_weights);
    if (!std::isfinite(loss)) {
      throw Error("non-finite training loss at epoch " + std::to_string(epoch));
    }
    result.losses.push_back(loss);
  };
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    record_loss(epoch);
    const std::vector<double> grad =
        LossGradient(model, examples, config.l2, class_weights);
    auto w = model.weights.data();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= config.lr * grad[i];
    for (int c = 0; c < kNumClasses; ++c) {
      model.bias[c] -= config.lr * grad[w.size() + c];
    }
  }
  record_loss(config.epochs);
  return result;
}

Evaluation Evaluate(const SoftmaxModel& model,
                    std::span<const PooledExample> examples) {
  if (examples.empty()) throw Error("evaluation set is empty");
  Evaluation eval;
  std::vector<int> truth;
  truth.reserve(examples.size());
  std::size_t correct = 0;
  for (const auto& ex : examples) {
    CheckExample(ex, model.dim());
    const int rating = Predict(model, ex.x).rating;
    eval.predicted.push_back(rating);
    truth.push_back(ex.y);
    if (rating == ex.y) ++correct;
  }
  eval.accuracy = static_cast<double>(correct) / static_cast<double>(examples.size());
  eval.confusion = Confusion(truth, eval.predicted, kNumClasses);
  eval.qwk = CohenKappa(eval.confusion, KappaWeights::kQuadratic);
  return eval;
}

}  // namespace laughcorpus

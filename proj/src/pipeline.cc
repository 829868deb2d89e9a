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

#include "laughcorpus/pipeline.h"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "laughcorpus/csv.h"
#include "laughcorpus/error.h"
#include "laughcorpus/logging.h"
#include "laughcorpus/parallel.h"
#include "laughcorpus/resample.h"
#include "laughcorpus/wav.h"

namespace laughcorpus {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

std::string ReadText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void RejectUnknown(const Json& obj, std::initializer_list<std::string_view> known,
                   const std::string& where) {
  if (!obj.is_object()) throw ParseError("config " + where + ": expected an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || item.key() == k;
    if (!ok) throw ParseError("config " + where + ": unknown key '" + item.key() + "'");
  }
}

template <typename T>
void ReadIf(const Json& obj, const char* key, T* out) {
  if (obj.contains(key)) *out = obj.at(key).get<T>();
}

std::string Fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string ConfigToJson(const PipelineConfig& c) {
  Json j;
  j["laughter"] = {{"threshold", c.laughter.threshold},
                   {"min_duration_s", c.laughter.min_duration_s},
                   {"fade_ms", c.laughter.fade_ms},
                   {"mute", c.laughter.mute}};
  j["features"] = {{"sample_rate", c.features.sample_rate},
                   {"frame_len", c.features.frame_len},
                   {"hop", c.features.hop},
                   {"n_mels_spec", c.features.n_mels_spec},
                   {"n_mfcc", c.features.n_mfcc},
                   {"n_mels_internal", c.features.n_mels_internal},
                   {"log_floor", c.features.log_floor},
                   {"max_frames", c.features.max_frames}};
  j["scoring"] = {{"estimator", std::string(ToString(c.estimator))}};
  j["split"] = {{"train_fraction", c.split.train_fraction},
                {"seed", c.split.seed},
                {"stratified", c.split.stratified}};
  j["rater"] = {{"lr", c.rater.train.lr},
                {"epochs", c.rater.train.epochs},
                {"l2", c.rater.train.l2},
                {"seed", c.rater.train.seed},
                {"class_weighted", c.rater.train.class_weighted},
                {"modality", std::string(ToString(c.rater.modality))}};
  j["jobs"] = c.jobs;
  return j.dump(2) + "\n";
}

PipelineConfig ConfigFromJson(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  PipelineConfig c;
  try {
    RejectUnknown(j, {"laughter", "features", "scoring", "split", "rater", "jobs"},
                  "top level");
    if (j.contains("laughter")) {
      const Json& l = j["laughter"];
      RejectUnknown(l, {"threshold", "min_duration_s", "fade_ms", "mute"}, "laughter");
      ReadIf(l, "threshold", &c.laughter.threshold);
      ReadIf(l, "min_duration_s", &c.laughter.min_duration_s);
      ReadIf(l, "fade_ms", &c.laughter.fade_ms);
      ReadIf(l, "mute", &c.laughter.mute);
    }
    if (j.contains("features")) {
      const Json& f = j["features"];
      RejectUnknown(f,
                    {"sample_rate", "frame_len", "hop", "n_mels_spec", "n_mfcc",
                     "n_mels_internal", "log_floor", "max_frames"},
                    "features");
      ReadIf(f, "sample_rate", &c.features.sample_rate);
      ReadIf(f, "frame_len", &c.features.frame_len);
      ReadIf(f, "hop", &c.features.hop);
      ReadIf(f, "n_mels_spec", &c.features.n_mels_spec);
      ReadIf(f, "n_mfcc", &c.features.n_mfcc);
      ReadIf(f, "n_mels_internal", &c.features.n_mels_internal);
      ReadIf(f, "log_floor", &c.features.log_floor);
      ReadIf(f, "max_frames", &c.features.max_frames);
    }
    if (j.contains("scoring")) {
      const Json& s = j["scoring"];
      RejectUnknown(s, {"estimator"}, "scoring");
      if (s.contains("estimator")) {
        c.estimator = ParseStdEstimator(s["estimator"].get<std::string>());
      }
    }
    if (j.contains("split")) {
      const Json& s = j["split"];
      RejectUnknown(s, {"train_fraction", "seed", "stratified"}, "split");
      ReadIf(s, "train_fraction", &c.split.train_fraction);
      ReadIf(s, "seed", &c.split.seed);
      ReadIf(s, "stratified", &c.split.stratified);
    }
    if (j.contains("rater")) {
      const Json& r = j["rater"];
      RejectUnknown(r, {"lr", "epochs", "l2", "seed", "class_weighted", "modality"},
                    "rater");
      ReadIf(r, "lr", &c.rater.train.lr);
      ReadIf(r, "epochs", &c.rater.train.epochs);
      ReadIf(r, "l2", &c.rater.train.l2);
      ReadIf(r, "seed", &c.rater.train.seed);
      ReadIf(r, "class_weighted", &c.rater.train.class_weighted);
      if (r.contains("modality")) {
        c.rater.modality = ParseModality(r["modality"].get<std::string>());
      }
    }
    ReadIf(j, "jobs", &c.jobs);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  c.features.Validate();
  return c;
}

PipelineConfig LoadConfig(const fs::path& path) {
  try {
    return ConfigFromJson(ReadText(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void EchoConfig(const PipelineConfig& config, const fs::path& dir) {
  fs::create_directories(dir);
  WriteText(dir / "config.json", ConfigToJson(config));
}

std::vector<float> LoadAudioForFeatures(const fs::path& path,
                                        const FrameParams& params) {
  Audio audio = ReadWav(path);
  if (audio.sample_rate == params.sample_rate) return std::move(audio.samples);
  return Resample(audio.samples, audio.sample_rate, params.sample_rate);
}

PipelineResult RunPipeline(const CorpusManifest& input,
                           const PipelineConfig& config,
                           const PipelineInputs& inputs, const fs::path& out_dir) {
  config.features.Validate();
  Validate(input);
  if (input.clips.empty()) throw Error("manifest has no clips");

  CorpusManifest manifest = input;
  std::sort(manifest.clips.begin(), manifest.clips.end(),
            [](const Clip& a, const Clip& b) { return a.id < b.id; });
  const std::size_t n = manifest.clips.size();

  std::vector<std::optional<fs::path>> track_paths(n);
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < n; ++i) {
    if (inputs.tracks_dir) {
      fs::path p = *inputs.tracks_dir / (manifest.clips[i].id + ".json");
      if (fs::is_regular_file(p)) track_paths[i] = std::move(p);
    }
    if (!track_paths[i] && !inputs.heuristic) missing.push_back(manifest.clips[i].id);
  }
  if (!missing.empty()) {
    std::string ids;
    for (const auto& id : missing) ids += (ids.empty() ? "" : ", ") + id;
    throw Error("no probability track for clips (pass --heuristic to estimate): " +
                ids);
  }

  fs::create_directories(out_dir / "intervals");
  fs::create_directories(out_dir / "features");
  if (inputs.write_muted) fs::create_directories(out_dir / "muted");

  PipelineResult result;
  result.intervals.resize(n);
  ParallelFor(n, config.jobs, [&](std::size_t i) {
    Clip& clip = manifest.clips[i];
    LaughProbTrack track;
    if (track_paths[i]) {
      track = LoadProbTrack(*track_paths[i]);
    } else {
      const auto audio = LoadAudioForFeatures(clip.audio_path, config.features);
      track = HeuristicProbs(audio, config.features.sample_rate, {}, config.features);
    }
    auto intervals = ClipIntervals(
        DetectIntervals(track, config.laughter.threshold,
                        config.laughter.min_duration_s),
        clip.duration_s);
    clip.laugh_total_s = std::min(TotalLaughDuration(intervals), clip.duration_s);
    WriteText(out_dir / "intervals" / (clip.id + ".json"), IntervalsToJson(intervals));
    result.intervals[i] = std::move(intervals);
    spdlog::debug("{}: {} laugh intervals, {:.3f} s", clip.id,
                  result.intervals[i].size(), *clip.laugh_total_s);
  });

  manifest = ScoreCorpus(std::move(manifest), config.estimator);

  ParallelFor(n, config.jobs, [&](std::size_t i) {
    const Clip& clip = manifest.clips[i];
    Audio audio = ReadWav(clip.audio_path);
    std::vector<float> samples =
        config.laughter.mute
            ? MuteIntervals(audio.samples, audio.sample_rate, result.intervals[i],
                            config.laughter.fade_ms)
            : std::move(audio.samples);
    if (inputs.write_muted) {
      WriteWav(out_dir / "muted" / (clip.id + ".wav"), samples, audio.sample_rate);
    }
    if (audio.sample_rate != config.features.sample_rate) {
      samples = Resample(samples, audio.sample_rate, config.features.sample_rate);
    }
    WriteFeatures(ExtractFeatures(samples, config.features),
                  out_dir / "features" / (clip.id + ".lfx"));
  });

  manifest = AssignSplit(std::move(manifest), config.split.train_fraction,
                         config.split.seed, config.split.stratified);

  SaveManifest(manifest, out_dir / "manifest.json");
  WriteText(out_dir / "scores.csv", ClipTableCsv(manifest));
  WriteText(out_dir / "histogram.csv", RatingHistogramCsv(manifest));
  WriteText(out_dir / "report.txt", RunReportText(manifest, config));
  EchoConfig(config, out_dir);
  result.manifest = std::move(manifest);
  return result;
}

std::string RatingHistogramCsv(const CorpusManifest& manifest) {
  std::array<std::size_t, kNumRatings> counts{};
  for (const Clip& clip : manifest.clips) {
    if (clip.rating) ++counts[*clip.rating];
  }
  static constexpr const char* kCriteria[kNumRatings] = {
      "score = 0", "mu - 0.75 sigma >= score > 0", "mu >= score > mu - 0.75 sigma",
      "mu + 0.75 sigma >= score > mu", "score > mu + 0.75 sigma"};
  std::string out = CsvRow(std::vector<std::string>{"rating", "clips", "criterion"});
  for (int r = kNumRatings - 1; r >= 0; --r) {
    out += CsvRow(std::vector<std::string>{std::to_string(r), std::to_string(counts[r]),
                                           kCriteria[r]});
  }
  return out;
}

std::string RunReportText(const CorpusManifest& manifest,
                          const PipelineConfig& config) {
  std::array<std::size_t, kNumRatings> counts{};
  std::size_t train = 0, test = 0;
  for (const Clip& clip : manifest.clips) {
    if (clip.rating) ++counts[*clip.rating];
    if (clip.split == Split::kTrain) ++train;
    if (clip.split == Split::kTest) ++test;
  }
  std::ostringstream os;
  os << "clips: " << manifest.clips.size() << "\n";
  os << "laughter threshold: " << FormatDouble(config.laughter.threshold)
     << ", min duration: " << FormatDouble(config.laughter.min_duration_s) << " s\n";
  if (manifest.stats) {
    const double mu = manifest.stats->mu, sigma = manifest.stats->sigma;
    os << "mu: " << Fixed(mu, 6) << "\n";
    os << "sigma (" << ToString(config.estimator) << "): " << Fixed(sigma, 6) << "\n";
    os << "\nrating  clips  criterion\n";
    const double hi = mu + kBandWidthSigmas * sigma;
    const double lo = mu - kBandWidthSigmas * sigma;
    os << "4       " << counts[4] << "\tscore > " << Fixed(hi, 6) << "\n";
    os << "3       " << counts[3] << "\t" << Fixed(hi, 6) << " >= score > " << Fixed(mu, 6)
       << "\n";
    os << "2       " << counts[2] << "\t" << Fixed(mu, 6) << " >= score > " << Fixed(lo, 6)
       << "\n";
    os << "1       " << counts[1] << "\t" << Fixed(lo, 6) << " >= score > 0\n";
    os << "0       " << counts[0] << "\tscore = 0\n";
  }
  os << "\nsplit: " << train << " train, " << test << " test (seed "
     << manifest.split_seed << ", " << (config.split.stratified ? "stratified" : "unstratified")
     << ")\n";
  return os.str();
}

std::vector<PooledExample> BuildExamples(const CorpusManifest& manifest, Split split,
                                         const fs::path& features_dir,
                                         const TextEmbeddings* embeddings,
                                         Modality modality, FeatureLayout* layout) {
  const bool want_audio = modality != Modality::kText;
  const bool want_text = modality != Modality::kAudio;
  if (want_text && embeddings == nullptr) {
    throw Error("modality '" + std::string(ToString(modality)) +
                "' needs a text embeddings file");
  }
  FeatureLayout fl{modality, want_audio ? kPooledAudioDims : 0,
                   want_text ? embeddings->dim : 0};
  std::vector<PooledExample> out;
  for (const Clip& clip : manifest.clips) {
    if (clip.split != split) continue;
    if (!clip.rating) throw Error("clip '" + clip.id + "' has no rating");
    std::vector<double> audio, text;
    if (want_audio) audio = PoolFeatures(ReadFeatures(features_dir / (clip.id + ".lfx")));
    if (want_text) {
      auto it = embeddings->vectors.find(clip.id);
      if (it == embeddings->vectors.end()) {
        throw Error("no text embedding for clip '" + clip.id + "'");
      }
      text = it->second;
    }
    out.push_back({clip.id, ComposeFeatures(fl, audio, text), *clip.rating});
  }
  if (layout != nullptr) *layout = fl;
  return out;
}

TrainResult TrainRater(const CorpusManifest& manifest, const fs::path& features_dir,
                       const TextEmbeddings* embeddings, const RaterSettings& settings) {
  FeatureLayout layout;
  const auto examples = BuildExamples(manifest, Split::kTrain, features_dir, embeddings,
                                      settings.modality, &layout);
  if (examples.empty()) throw Error("train split is empty");
  TrainResult result = Train(examples, settings.train);
  result.model.layout = layout;
  for (const auto& w : result.warnings) spdlog::warn("{}", w);
  return result;
}

Evaluation EvaluateRater(const SoftmaxModel& model, const CorpusManifest& manifest,
                         const fs::path& features_dir,
                         const TextEmbeddings* embeddings) {
  FeatureLayout layout;
  const auto examples = BuildExamples(manifest, Split::kTest, features_dir, embeddings,
                                      model.layout.modality, &layout);
  if (examples.empty()) throw Error("test split is empty");
  if (layout != model.layout) {
    throw Error("feature layout of the data does not match the model");
  }
  return Evaluate(model, examples);
}

std::string MetricsCsv(const Evaluation& eval) {
  std::string out = CsvRow(std::vector<std::string>{"metric", "value"});
  out += CsvRow(std::vector<std::string>{"qwk", FormatDouble(eval.qwk)});
  out += CsvRow(std::vector<std::string>{"accuracy", FormatDouble(eval.accuracy)});
  out += CsvRow(std::vector<std::string>{"n", std::to_string(eval.predicted.size())});
  return out;
}

std::string ConfusionCsv(const Evaluation& eval) {
  std::vector<std::string> header{"reference\\predicted"};
  for (int j = 0; j < eval.confusion.k; ++j) header.push_back(std::to_string(j));
  std::string out = CsvRow(header);
  for (int i = 0; i < eval.confusion.k; ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (int j = 0; j < eval.confusion.k; ++j) {
      row.push_back(std::to_string(eval.confusion.at(i, j)));
    }
    out += CsvRow(row);
  }
  return out;
}

std::string MetricsText(const Evaluation& eval, Modality modality) {
  std::ostringstream os;
  os << "modality: " << ToString(modality) << "\n";
  os << "test clips: " << eval.predicted.size() << "\n";
  os << "QWK: " << Fixed(eval.qwk) << "\n";
  os << "accuracy: " << Fixed(eval.accuracy) << "\n";
  os << "confusion (rows = automatic rating, cols = predicted):\n";
  for (int i = 0; i < eval.confusion.k; ++i) {
    os << "  " << i << ":";
    for (int j = 0; j < eval.confusion.k; ++j) os << " " << eval.confusion.at(i, j);
    os << "\n";
  }
  return os.str();
}

}  // namespace laughcorpus

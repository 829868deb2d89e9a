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

// laughcorpus: humour-rating corpus toolkit.
//
//   laughcorpus ingest   --audio-dir a/ [--transcripts t/] --kind standup --out m.json
//   laughcorpus pipeline --manifest m.json --tracks-dir tracks/ --out-dir run/
//   laughcorpus agree    --ratings ratings.csv --out-dir agree/
//   laughcorpus train    --manifest run/manifest.json --features-dir run/features --model model.json
//   laughcorpus eval     --manifest run/manifest.json --features-dir run/features --model model.json --out-dir eval/
//
// Exit codes: 0 success, 1 runtime or data error, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "laughcorpus/agreement.h"
#include "laughcorpus/corpus.h"
#include "laughcorpus/csv.h"
#include "laughcorpus/error.h"
#include "laughcorpus/features.h"
#include "laughcorpus/laughter.h"
#include "laughcorpus/logging.h"
#include "laughcorpus/pipeline.h"
#include "laughcorpus/rater.h"
#include "laughcorpus/scoring.h"
#include "laughcorpus/wav.h"

namespace fs = std::filesystem;
using namespace laughcorpus;

namespace {

// Thrown for argument combinations CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
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

// Creates the directory an output file will land in.
void EnsureParent(const fs::path& file) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

fs::path ParentDir(const fs::path& file) {
  return file.has_parent_path() ? file.parent_path() : fs::path(".");
}

// Flags shared by every subcommand; explicit flags override the config file.
struct Overrides {
  std::string config_path;
  std::optional<double> threshold;
  std::optional<double> min_duration_s;
  std::optional<double> fade_ms;
  bool no_mute = false;
  std::optional<std::string> estimator;
  std::optional<double> train_fraction;
  std::optional<std::int64_t> seed;
  bool unstratified = false;
  std::optional<double> lr;
  std::optional<int> epochs;
  std::optional<double> l2;
  bool class_weighted = false;
  std::optional<std::string> modality;
  std::optional<int> jobs;

  PipelineConfig Resolve() const {
    PipelineConfig c = config_path.empty() ? PipelineConfig{} : LoadConfig(config_path);
    if (threshold) c.laughter.threshold = *threshold;
    if (min_duration_s) c.laughter.min_duration_s = *min_duration_s;
    if (fade_ms) c.laughter.fade_ms = *fade_ms;
    if (no_mute) c.laughter.mute = false;
    if (estimator) c.estimator = ParseStdEstimator(*estimator);
    if (train_fraction) c.split.train_fraction = *train_fraction;
    if (seed) c.split.seed = *seed;
    if (unstratified) c.split.stratified = false;
    if (lr) c.rater.train.lr = *lr;
    if (epochs) c.rater.train.epochs = *epochs;
    if (l2) c.rater.train.l2 = *l2;
    if (class_weighted) c.rater.train.class_weighted = true;
    if (modality) c.rater.modality = ParseModality(*modality);
    if (jobs) c.jobs = *jobs;
    return c;
  }
};

void AddConfigFlag(CLI::App* cmd, Overrides* o) {
  cmd->add_option("--config", o->config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--jobs", o->jobs, "worker threads (default: logical cores)");
}

void AddLaughterFlags(CLI::App* cmd, Overrides* o) {
  cmd->add_option("--threshold", o->threshold, "laughter probability threshold (0.7)");
  cmd->add_option("--min-duration", o->min_duration_s,
                  "minimum laugh duration in seconds (0.1)");
}

}  // namespace

int main(int argc, char** argv) {
  InitLogging();
  CLI::App app{"Humour-rating corpus toolkit"};
  app.require_subcommand(1);
  Overrides o;

  // ingest
  std::string audio_dir, transcripts_dir, kind = "standup", out_path;
  bool strict = false, append = false;
  auto* ingest = app.add_subcommand("ingest", "Build a manifest from a directory of WAVs");
  ingest->add_option("--audio-dir", audio_dir, "directory of WAV clips")->required();
  ingest->add_option("--transcripts", transcripts_dir, "directory of <id>.txt transcripts");
  ingest->add_option("--kind", kind, "standup or nonfunny")
      ->check(CLI::IsMember({"standup", "nonfunny"}));
  ingest->add_option("--out", out_path, "manifest JSON to write")->required();
  ingest->add_flag("--strict", strict, "exit 1 if any file fails to ingest");
  ingest->add_flag("--append", append, "merge into an existing --out manifest");
  AddConfigFlag(ingest, &o);

  // pipeline
  std::string manifest_path, tracks_dir, out_dir;
  bool heuristic = false, write_muted = false;
  auto* pipeline = app.add_subcommand(
      "pipeline", "detect -> score -> mute -> features -> split");
  pipeline->add_option("--manifest", manifest_path, "input manifest")->required();
  pipeline->add_option("--tracks-dir", tracks_dir, "directory of <id>.json prob tracks");
  pipeline->add_flag("--heuristic", heuristic, "estimate tracks for clips without one");
  pipeline->add_option("--out-dir", out_dir, "output directory")->required();
  pipeline->add_flag("--write-muted", write_muted, "also write muted WAVs");
  pipeline->add_flag("--no-mute", o.no_mute, "extract features from unmuted audio");
  pipeline->add_option("--fade-ms", o.fade_ms, "mute ramp length in ms (10)");
  pipeline->add_option("--estimator", o.estimator, "population or sample")
      ->check(CLI::IsMember({"population", "sample"}));
  pipeline->add_option("--train-fraction", o.train_fraction, "train share (0.7)");
  pipeline->add_option("--seed", o.seed, "split seed (1)");
  pipeline->add_flag("--unstratified", o.unstratified, "do not stratify by rating");
  AddLaughterFlags(pipeline, &o);
  AddConfigFlag(pipeline, &o);

  // detect
  std::string track_path, audio_path;
  auto* detect = app.add_subcommand("detect", "Laugh intervals from a track or audio");
  detect->add_option("--track", track_path, "prob track JSON");
  detect->add_option("--audio", audio_path, "WAV to run the heuristic detector on");
  detect->add_option("--out", out_path, "intervals JSON to write (default stdout)");
  AddLaughterFlags(detect, &o);
  AddConfigFlag(detect, &o);

  // score
  auto* score = app.add_subcommand("score", "Quotients, corpus stats and ratings");
  score->add_option("--manifest", manifest_path, "manifest with laugh_total_s")->required();
  score->add_option("--out", out_path, "scored manifest to write")->required();
  score->add_option("--estimator", o.estimator, "population or sample")
      ->check(CLI::IsMember({"population", "sample"}));
  AddConfigFlag(score, &o);

  // mute
  std::string intervals_path;
  auto* mute = app.add_subcommand("mute", "Zero laugh intervals in a WAV");
  mute->add_option("--audio", audio_path, "input WAV")->required();
  mute->add_option("--intervals", intervals_path, "intervals JSON [[start, end], ...]");
  mute->add_option("--track", track_path, "prob track JSON (detected with the config)");
  mute->add_option("--fade-ms", o.fade_ms, "ramp length in ms (10)");
  mute->add_option("--out", out_path, "output WAV (PCM16)")->required();
  AddLaughterFlags(mute, &o);
  AddConfigFlag(mute, &o);

  // features
  auto* features = app.add_subcommand("features", "Extract the 8000 x 33 feature matrix");
  features->add_option("--audio", audio_path, "input WAV")->required();
  features->add_option("--out", out_path, "feature file (.lfx)")->required();
  AddConfigFlag(features, &o);

  // agree
  std::string ratings_path, metric = "nominal";
  auto* agree = app.add_subcommand("agree", "Inter-annotator agreement report");
  agree->add_option("--ratings", ratings_path, "CSV item_id,rater_id,rating")->required();
  agree->add_option("--metric", metric, "Krippendorff metric")
      ->check(CLI::IsMember({"nominal", "ordinal", "interval"}));
  agree->add_option("--out-dir", out_dir, "write agreement.csv / agreement.txt here");
  AddConfigFlag(agree, &o);

  // train
  std::string features_dir, embeddings_path, model_path;
  auto* train = app.add_subcommand("train", "Train the baseline rater on split=train");
  train->add_option("--manifest", manifest_path, "scored, split manifest")->required();
  train->add_option("--features-dir", features_dir, "directory of <id>.lfx")->required();
  train->add_option("--embeddings", embeddings_path, "text embeddings JSON");
  train->add_option("--modality", o.modality, "audio, text or both")
      ->check(CLI::IsMember({"audio", "text", "both"}));
  train->add_option("--model", model_path, "model JSON to write")->required();
  train->add_option("--lr", o.lr, "learning rate (0.1)");
  train->add_option("--epochs", o.epochs, "epochs (2000)");
  train->add_option("--l2", o.l2, "L2 penalty (1e-4)");
  train->add_flag("--class-weighted", o.class_weighted, "inverse-frequency class weights");
  AddConfigFlag(train, &o);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate a rater on split=test");
  eval->add_option("--manifest", manifest_path, "scored, split manifest")->required();
  eval->add_option("--features-dir", features_dir, "directory of <id>.lfx")->required();
  eval->add_option("--embeddings", embeddings_path, "text embeddings JSON");
  eval->add_option("--model", model_path, "model JSON")->required();
  eval->add_option("--out-dir", out_dir, "write metrics.csv / confusion.csv here");
  AddConfigFlag(eval, &o);

  // report
  auto* report = app.add_subcommand("report", "Corpus stats and rating histogram");
  report->add_option("--manifest", manifest_path, "scored manifest")->required();
  report->add_option("--out-dir", out_dir, "write histogram.csv / report.txt here");
  AddConfigFlag(report, &o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const PipelineConfig config = o.Resolve();

    if (ingest->parsed()) {
      std::optional<fs::path> transcripts;
      if (!transcripts_dir.empty()) transcripts = transcripts_dir;
      IngestResult result =
          Ingest(audio_dir, transcripts, ParseSourceKind(kind), config.jobs);
      for (const auto& issue : result.errors) {
        spdlog::warn("{}: {}", issue.path, issue.message);
      }
      CorpusManifest manifest = std::move(result.manifest);
      const std::size_t ingested = manifest.clips.size();
      if (append && fs::exists(out_path)) {
        manifest = MergeManifests(LoadManifest(out_path), manifest);
      }
      EnsureParent(out_path);
      SaveManifest(manifest, out_path);
      EchoConfig(config, ParentDir(out_path));
      std::cout << "ingested " << ingested << " clips, "
                << result.errors.size() << " errors\n";
      return (strict && !result.errors.empty()) ? 1 : 0;
    }

    if (pipeline->parsed()) {
      PipelineInputs inputs;
      if (!tracks_dir.empty()) inputs.tracks_dir = tracks_dir;
      inputs.heuristic = heuristic;
      inputs.write_muted = write_muted;
      const auto result =
          RunPipeline(LoadManifest(manifest_path), config, inputs, out_dir);
      std::cout << RunReportText(result.manifest, config);
      return 0;
    }

    if (detect->parsed()) {
      if (track_path.empty() == audio_path.empty()) {
        throw UsageError("detect needs exactly one of --track or --audio");
      }
      LaughProbTrack track;
      if (!track_path.empty()) {
        track = LoadProbTrack(track_path);
      } else {
        const auto audio = LoadAudioForFeatures(audio_path, config.features);
        track = HeuristicProbs(audio, config.features.sample_rate, {}, config.features);
      }
      const auto intervals = DetectIntervals(track, config.laughter.threshold,
                                             config.laughter.min_duration_s);
      const std::string json = IntervalsToJson(intervals);
      if (out_path.empty()) {
        std::cout << json;
      } else {
        WriteText(out_path, json);
        EchoConfig(config, ParentDir(out_path));
      }
      std::cerr << "total laughter: " << TotalLaughDuration(intervals) << " s\n";
      return 0;
    }

    if (score->parsed()) {
      const CorpusManifest scored = ScoreCorpus(LoadManifest(manifest_path), config.estimator);
      EnsureParent(out_path);
      SaveManifest(scored, out_path);
      EchoConfig(config, ParentDir(out_path));
      std::cout << RunReportText(scored, config);
      return 0;
    }

    if (mute->parsed()) {
      if (intervals_path.empty() == track_path.empty()) {
        throw UsageError("mute needs exactly one of --intervals or --track");
      }
      const Audio audio = ReadWav(audio_path);
      std::vector<LaughInterval> intervals =
          !intervals_path.empty()
              ? IntervalsFromJson(ReadText(intervals_path))
              : ClipIntervals(DetectIntervals(LoadProbTrack(track_path),
                                              config.laughter.threshold,
                                              config.laughter.min_duration_s),
                              audio.duration_s());
      const auto muted = MuteIntervals(audio.samples, audio.sample_rate, intervals,
                                       config.laughter.fade_ms);
      EnsureParent(out_path);
      WriteWav(out_path, muted, audio.sample_rate);
      EchoConfig(config, ParentDir(out_path));
      return 0;
    }

    if (features->parsed()) {
      const auto audio = LoadAudioForFeatures(audio_path, config.features);
      const FeatureMatrix m = ExtractFeatures(audio, config.features);
      EnsureParent(out_path);
      WriteFeatures(m, out_path);
      EchoConfig(config, ParentDir(out_path));
      std::cout << "frames: " << m.n_frames_real << " real, " << m.max_frames
                << " total, " << kFeatureDims << " dims\n";
      return 0;
    }

    if (agree->parsed()) {
      const RatingTable table = LoadRatingsCsv(ratings_path);
      if (table.n_raters() < 2) throw Error("agreement needs at least 2 raters");
      const AgreementReport rep = BuildAgreementReport(table, ParseAlphaMetric(metric));
      std::cout << rep.ToText();
      if (!out_dir.empty()) {
        WriteText(fs::path(out_dir) / "agreement.csv", rep.ToCsv());
        WriteText(fs::path(out_dir) / "agreement.txt", rep.ToText());
        EchoConfig(config, out_dir);
      }
      return 0;
    }

    if (train->parsed() || eval->parsed()) {
      if (train->parsed() && config.rater.modality != Modality::kAudio &&
          embeddings_path.empty()) {
        throw UsageError("--modality " + std::string(ToString(config.rater.modality)) +
                         " needs --embeddings");
      }
      std::optional<TextEmbeddings> embeddings;
      if (!embeddings_path.empty()) embeddings = LoadTextEmbeddings(embeddings_path);
      const TextEmbeddings* emb = embeddings ? &*embeddings : nullptr;
      const CorpusManifest manifest = LoadManifest(manifest_path);
      if (train->parsed()) {
        const TrainResult result = TrainRater(manifest, features_dir, emb, config.rater);
        EnsureParent(model_path);
        SaveModel(result.model, model_path);
        EchoConfig(config, ParentDir(model_path));
        std::cout << "trained on " << ToString(result.model.layout.modality)
                  << " features (" << result.model.dim() << " dims), final loss "
                  << FormatDouble(result.losses.back()) << "\n";
        return 0;
      }
      const SoftmaxModel model = LoadModel(model_path);
      const Evaluation ev = EvaluateRater(model, manifest, features_dir, emb);
      std::cout << MetricsText(ev, model.layout.modality);
      if (!out_dir.empty()) {
        WriteText(fs::path(out_dir) / "metrics.csv", MetricsCsv(ev));
        WriteText(fs::path(out_dir) / "confusion.csv", ConfusionCsv(ev));
        WriteText(fs::path(out_dir) / "metrics.txt", MetricsText(ev, model.layout.modality));
        EchoConfig(config, out_dir);
      }
      return 0;
    }

    if (report->parsed()) {
      const CorpusManifest manifest = LoadManifest(manifest_path);
      std::cout << RunReportText(manifest, config);
      if (!out_dir.empty()) {
        WriteText(fs::path(out_dir) / "histogram.csv", RatingHistogramCsv(manifest));
        WriteText(fs::path(out_dir) / "report.txt", RunReportText(manifest, config));
        EchoConfig(config, out_dir);
      }
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

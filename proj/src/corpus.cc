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

#include "laughcorpus/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "laughcorpus/csv.h"
#include "laughcorpus/error.h"
#include "laughcorpus/parallel.h"
#include "laughcorpus/wav.h"

namespace laughcorpus {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string JoinIds(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  return out;
}

Json ClipToJson(const Clip& clip) {
  Json j;
  j["id"] = clip.id;
  j["audio_path"] = clip.audio_path;
  if (clip.transcript_path) j["transcript_path"] = *clip.transcript_path;
  j["duration_s"] = clip.duration_s;
  j["source_kind"] = ToString(clip.source_kind);
  j["split"] = ToString(clip.split);
  if (clip.laugh_total_s) j["laugh_total_s"] = *clip.laugh_total_s;
  if (clip.quotient) j["quotient"] = *clip.quotient;
  if (clip.rating) j["rating"] = *clip.rating;
  return j;
}

const Json& Require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing key '" + key + "'");
  }
  return *it;
}

double NumberField(const Json& value, const std::string& where) {
  if (!value.is_number()) throw ParseError(where + ": expected a number");
  return value.get<double>();
}

std::string StringField(const Json& value, const std::string& where) {
  if (!value.is_string()) throw ParseError(where + ": expected a string");
  return value.get<std::string>();
}

Clip ClipFromJson(const Json& j, std::size_t index) {
  const std::string where = "clips[" + std::to_string(index) + "]";
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  static const std::set<std::string> kKnown = {
      "id",    "audio_path",    "transcript_path", "duration_s", "source_kind",
      "split", "laugh_total_s", "quotient",        "rating"};
  for (const auto& item : j.items()) {
    if (!kKnown.contains(item.key())) {
      throw ParseError(where + ": unknown key '" + item.key() + "'");
    }
  }
  Clip clip;
  clip.id = StringField(Require(j, "id", where), where + ".id");
  clip.audio_path =
      StringField(Require(j, "audio_path", where), where + ".audio_path");
  if (j.contains("transcript_path")) {
    clip.transcript_path =
        StringField(j["transcript_path"], where + ".transcript_path");
  }
  clip.duration_s =
      NumberField(Require(j, "duration_s", where), where + ".duration_s");
  try {
    clip.source_kind = ParseSourceKind(
        StringField(Require(j, "source_kind", where), where + ".source_kind"));
    clip.split =
        ParseSplit(StringField(Require(j, "split", where), where + ".split"));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
  if (j.contains("laugh_total_s")) {
    clip.laugh_total_s = NumberField(j["laugh_total_s"], where + ".laugh_total_s");
  }
  if (j.contains("quotient")) {
    clip.quotient = NumberField(j["quotient"], where + ".quotient");
  }
  if (j.contains("rating")) {
    const Json& r = j["rating"];
    if (!r.is_number_integer()) {
      throw ParseError(where + ".rating: expected an integer");
    }
    clip.rating = r.get<int>();
  }
  return clip;
}

std::string OptionalNumber(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

std::string_view ToString(SourceKind kind) {
  return kind == SourceKind::kStandup ? "standup" : "nonfunny";
}

std::string_view ToString(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kTest:
      return "test";
    case Split::kUnassigned:
      break;
  }
  return "unassigned";
}

SourceKind ParseSourceKind(std::string_view text) {
  if (text == "standup") return SourceKind::kStandup;
  if (text == "nonfunny") return SourceKind::kNonfunny;
  throw ParseError("unknown source kind '" + std::string(text) + "'");
}

Split ParseSplit(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "test") return Split::kTest;
  if (text == "unassigned") return Split::kUnassigned;
  throw ParseError("unknown split '" + std::string(text) + "'");
}

void Validate(const CorpusManifest& manifest) {
  std::set<std::string> seen;
  for (const Clip& clip : manifest.clips) {
    if (!seen.insert(clip.id).second) {
      throw Error("duplicate clip id '" + clip.id + "'");
    }
    if (!(clip.duration_s > 0.0) || !std::isfinite(clip.duration_s)) {
      throw Error("clip '" + clip.id + "': duration_s must be > 0");
    }
    if (clip.laugh_total_s &&
        !(*clip.laugh_total_s >= 0.0 && *clip.laugh_total_s <= clip.duration_s)) {
      throw Error("clip '" + clip.id +
                  "': laugh_total_s must lie in [0, duration_s]");
    }
    if (clip.quotient && !(*clip.quotient >= 0.0)) {
      throw Error("clip '" + clip.id + "': quotient must be >= 0");
    }
    if (clip.rating && (*clip.rating < 0 || *clip.rating > 4)) {
      throw Error("clip '" + clip.id + "': rating must be in 0..4");
    }
  }
  if (manifest.stats &&
      !(manifest.stats->mu >= 0.0 && manifest.stats->sigma >= 0.0)) {
    throw Error("manifest stats must have mu >= 0 and sigma >= 0");
  }
}

IngestResult Ingest(const fs::path& audio_dir,
                    const std::optional<fs::path>& transcript_dir,
                    SourceKind source_kind, int jobs) {
  if (!fs::is_directory(audio_dir)) {
    throw Error("audio directory does not exist: " + audio_dir.string());
  }
  if (transcript_dir && !fs::is_directory(*transcript_dir)) {
    throw Error("transcript directory does not exist: " +
                transcript_dir->string());
  }
  std::vector<fs::path> wavs;
  for (const auto& entry : fs::directory_iterator(audio_dir)) {
    if (entry.is_regular_file() && Lower(entry.path().extension().string()) == ".wav") {
      wavs.push_back(entry.path());
    }
  }
  if (wavs.empty()) {
    throw Error("no WAV files found in " + audio_dir.string());
  }
  std::sort(wavs.begin(), wavs.end());

  std::vector<std::optional<Clip>> clips(wavs.size());
  std::vector<std::optional<IngestIssue>> issues(wavs.size());
  ParallelFor(wavs.size(), jobs, [&](std::size_t i) {
    const fs::path& path = wavs[i];
    try {
      const Audio audio = ReadWav(path);
      if (audio.samples.empty()) throw ParseError("no samples");
      Clip clip;
      clip.id = path.stem().string();
      clip.audio_path = path.string();
      clip.duration_s = audio.duration_s();
      clip.source_kind = source_kind;
      if (transcript_dir) {
        const fs::path txt = *transcript_dir / (clip.id + ".txt");
        if (fs::is_regular_file(txt)) clip.transcript_path = txt.string();
      }
      clips[i] = std::move(clip);
    } catch (const std::exception& e) {
      issues[i] = IngestIssue{path.string(), e.what()};
    }
  });

  IngestResult result;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < wavs.size(); ++i) {
    if (issues[i]) {
      result.errors.push_back(*issues[i]);
    } else if (!ids.insert(clips[i]->id).second) {
      result.errors.push_back(
          {wavs[i].string(), "duplicate clip id '" + clips[i]->id + "'"});
    } else {
      result.manifest.clips.push_back(std::move(*clips[i]));
    }
  }
  std::sort(result.manifest.clips.begin(), result.manifest.clips.end(),
            [](const Clip& a, const Clip& b) { return a.id < b.id; });
  return result;
}

CorpusManifest MergeManifests(CorpusManifest base, const CorpusManifest& extra) {
  base.clips.insert(base.clips.end(), extra.clips.begin(), extra.clips.end());
  std::sort(base.clips.begin(), base.clips.end(),
            [](const Clip& a, const Clip& b) { return a.id < b.id; });
  base.stats.reset();
  Validate(base);
  return base;
}

CorpusManifest AssignSplit(CorpusManifest manifest, double train_fraction,
                           std::int64_t seed, bool stratified) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw Error("train_fraction must lie in (0, 1)");
  }
  if (stratified) {
    std::vector<std::string> unrated;
    for (const Clip& clip : manifest.clips) {
      if (!clip.rating) unrated.push_back(clip.id);
    }
    if (!unrated.empty()) {
      std::sort(unrated.begin(), unrated.end());
      throw Error("stratified split needs rated clips; unrated: " +
                  JoinIds(unrated));
    }
  }

  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < manifest.clips.size(); ++i) {
    const int key = stratified ? *manifest.clips[i].rating : 0;
    groups[key].push_back(i);
  }
  const std::uint64_t seed_mix = SplitMix64(static_cast<std::uint64_t>(seed));
  for (auto& [key, members] : groups) {
    std::vector<std::pair<std::uint64_t, std::size_t>> order;
    order.reserve(members.size());
    for (std::size_t idx : members) {
      order.emplace_back(SplitMix64(seed_mix ^ Fnv1a(manifest.clips[idx].id)), idx);
    }
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return manifest.clips[a.second].id < manifest.clips[b.second].id;
    });
    const auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(members.size())));
    for (std::size_t r = 0; r < order.size(); ++r) {
      manifest.clips[order[r].second].split =
          r < n_train ? Split::kTrain : Split::kTest;
    }
  }
  manifest.split_seed = seed;
  return manifest;
}

std::string ManifestToJson(const CorpusManifest& manifest) {
  Json j;
  j["schema_version"] = manifest.schema_version;
  j["split_seed"] = manifest.split_seed;
  if (manifest.stats) {
    j["stats"] = Json{{"mu", manifest.stats->mu}, {"sigma", manifest.stats->sigma}};
  } else {
    j["stats"] = nullptr;
  }
  j["clips"] = Json::array();
  for (const Clip& clip : manifest.clips) j["clips"].push_back(ClipToJson(clip));
  return j.dump(2) + "\n";
}

CorpusManifest ManifestFromJson(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("manifest: top level must be an object");
  const Json& version = Require(j, "schema_version", "manifest");
  if (!version.is_number_integer()) {
    throw ParseError("manifest: schema_version must be an integer");
  }
  if (version.get<int>() != kManifestSchemaVersion) {
    throw ParseError("manifest: schema_version " +
                     std::to_string(version.get<int>()) +
                     " does not match supported version " +
                     std::to_string(kManifestSchemaVersion));
  }
  for (const auto& item : j.items()) {
    if (item.key() != "schema_version" && item.key() != "split_seed" &&
        item.key() != "stats" && item.key() != "clips") {
      throw ParseError("manifest: unknown key '" + item.key() + "'");
    }
  }
  CorpusManifest manifest;
  const Json& seed = Require(j, "split_seed", "manifest");
  if (!seed.is_number_integer()) {
    throw ParseError("manifest: split_seed must be an integer");
  }
  manifest.split_seed = seed.get<std::int64_t>();
  if (j.contains("stats") && !j["stats"].is_null()) {
    const Json& stats = j["stats"];
    if (!stats.is_object()) throw ParseError("manifest.stats: expected an object");
    manifest.stats = QuotientStats{
        NumberField(Require(stats, "mu", "manifest.stats"), "manifest.stats.mu"),
        NumberField(Require(stats, "sigma", "manifest.stats"),
                    "manifest.stats.sigma")};
  }
  const Json& clips = Require(j, "clips", "manifest");
  if (!clips.is_array()) throw ParseError("manifest.clips: expected an array");
  for (std::size_t i = 0; i < clips.size(); ++i) {
    manifest.clips.push_back(ClipFromJson(clips[i], i));
  }
  Validate(manifest);
  return manifest;
}

void SaveManifest(const CorpusManifest& manifest, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << ManifestToJson(manifest);
  if (!out) throw Error("write failed: " + path.string());
}

CorpusManifest LoadManifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ManifestFromJson(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string ClipTableCsv(const CorpusManifest& manifest) {
  std::string out = CsvRow(std::vector<std::string>{
      "id", "audio_path", "transcript_path", "source_kind", "duration_s",
      "laugh_total_s", "quotient", "rating", "split"});
  for (const Clip& clip : manifest.clips) {
    out += CsvRow(std::vector<std::string>{
        clip.id, clip.audio_path, clip.transcript_path.value_or(""),
        std::string(ToString(clip.source_kind)), FormatDouble(clip.duration_s),
        OptionalNumber(clip.laugh_total_s), OptionalNumber(clip.quotient),
        clip.rating ? std::to_string(*clip.rating) : std::string(),
        std::string(ToString(clip.split))});
  }
  return out;
}

void ExportTable(const CorpusManifest& manifest, const fs::path& path) {
  if (manifest.clips.empty()) throw Error("cannot export an empty manifest");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << ClipTableCsv(manifest);
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace laughcorpus

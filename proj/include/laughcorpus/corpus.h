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

#ifndef LAUGHCORPUS_CORPUS_H_
#define LAUGHCORPUS_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace laughcorpus {

inline constexpr int kManifestSchemaVersion = 1;

enum class SourceKind { kStandup, kNonfunny };
enum class Split { kTrain, kTest, kUnassigned };

std::string_view ToString(SourceKind kind);
std::string_view ToString(Split split);
SourceKind ParseSourceKind(std::string_view text);
Split ParseSplit(std::string_view text);

// One audio segment and everything derived from it.
struct Clip {
  std::string id;
  std::string audio_path;
  std::optional<std::string> transcript_path;
  double duration_s = 0.0;
  SourceKind source_kind = SourceKind::kStandup;
  Split split = Split::kUnassigned;
  std::optional<double> laugh_total_s;
  std::optional<double> quotient;
  std::optional<int> rating;

  bool operator==(const Clip&) const = default;
};

struct QuotientStats {
  double mu = 0.0;
  double sigma = 0.0;

  bool operator==(const QuotientStats&) const = default;
};

struct CorpusManifest {
  std::vector<Clip> clips;
  std::optional<QuotientStats> stats;
  std::int64_t split_seed = 0;
  int schema_version = kManifestSchemaVersion;

  bool operator==(const CorpusManifest&) const = default;
};

// Throws Error if any Clip or manifest invariant is violated.
void Validate(const CorpusManifest& manifest);

struct IngestIssue {
  std::string path;
  std::string message;
};

struct IngestResult {
  CorpusManifest manifest;
  std::vector<IngestIssue> errors;
};

// One clip per *.wav file in `audio_dir` (non-recursive), id = file stem.
// Transcripts are paired by stem (<stem>.txt). Unreadable WAVs land in
// `errors` and are skipped. Clips come back sorted by id. `jobs` <= 0 uses
// the hardware concurrency.
IngestResult Ingest(const std::filesystem::path& audio_dir,
                    const std::optional<std::filesystem::path>& transcript_dir,
                    SourceKind source_kind, int jobs = 0);

// Assigns train/test. Each group (the whole corpus, or one rating class when
// `stratified`) is ordered by a seeded hash of clip id and the first
// round(train_fraction * group_size) clips become train. The result depends
// only on the id set, ratings, fraction, seed and stratification flag.
// Combines two manifests, for example a standup and a nonfunny ingest.
// Clips are sorted by id; duplicate ids are an error. Stats are dropped
// because they no longer describe the combined corpus.
CorpusManifest MergeManifests(CorpusManifest base, const CorpusManifest& extra);

CorpusManifest AssignSplit(CorpusManifest manifest, double train_fraction,
                           std::int64_t seed, bool stratified = true);

void SaveManifest(const CorpusManifest& manifest,
                  const std::filesystem::path& path);
CorpusManifest LoadManifest(const std::filesystem::path& path);

std::string ManifestToJson(const CorpusManifest& manifest);
CorpusManifest ManifestFromJson(std::string_view text);

// Clip table with a header row, RFC 4180 quoting and '\n' line endings.
// Absent optional values are written as empty fields.
std::string ClipTableCsv(const CorpusManifest& manifest);
void ExportTable(const CorpusManifest& manifest,
                 const std::filesystem::path& path);

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_CORPUS_H_

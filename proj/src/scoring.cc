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

#include "laughcorpus/scoring.h"

#include <cmath>
#include <string>
#include <vector>

#include "laughcorpus/error.h"

namespace laughcorpus {
namespace {

double PairwiseSum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return PairwiseSum(values.first(half)) + PairwiseSum(values.subspan(half));
}

}  // namespace

std::string_view ToString(StdEstimator estimator) {
  return estimator == StdEstimator::kPopulation ? "population" : "sample";
}

StdEstimator ParseStdEstimator(std::string_view text) {
  if (text == "population") return StdEstimator::kPopulation;
  if (text == "sample") return StdEstimator::kSample;
  throw Error("unknown estimator '" + std::string(text) + "'");
}

double HumourQuotient(double laugh_total_s, double duration_s) {
  if (!(duration_s > 0.0)) throw Error("clip duration must be > 0");
  if (!(laugh_total_s >= 0.0)) throw Error("laugh duration must be >= 0");
  if (laugh_total_s > duration_s) {
    throw Error("laugh duration " + std::to_string(laugh_total_s) +
                " s exceeds clip duration " + std::to_string(duration_s) + " s");
  }
  return laugh_total_s / duration_s;
}

CorpusStats ComputeCorpusStats(std::span<const double> quotients,
                               StdEstimator estimator) {
  if (quotients.empty()) throw Error("cannot compute stats of an empty list");
  const double n = static_cast<double>(quotients.size());
  double mu = PairwiseSum(quotients) / n;
  std::vector<double> sq(quotients.size());
  // One refinement step removes the rounding error of the first mean, so
  // identical values get sigma exactly 0.
  for (std::size_t i = 0; i < quotients.size(); ++i) sq[i] = quotients[i] - mu;
  mu += PairwiseSum(sq) / n;
  for (std::size_t i = 0; i < quotients.size(); ++i) {
    const double d = quotients[i] - mu;
    sq[i] = d * d;
  }
  double sigma = 0.0;
  if (quotients.size() > 1) {
    const double denom = estimator == StdEstimator::kPopulation ? n : n - 1.0;
    sigma = std::sqrt(PairwiseSum(sq) / denom);
  }
  return {mu, sigma, quotients.size()};
}

int BinRating(double quotient, const CorpusStats& stats) {
  if (quotient == 0.0) return 0;
  const double upper = stats.mu + kBandWidthSigmas * stats.sigma;
  const double lower = stats.mu - kBandWidthSigmas * stats.sigma;
  if (quotient > upper) return 4;
  if (quotient > stats.mu) return 3;
  if (quotient > lower) return 2;
  return 1;
}

CorpusManifest ScoreCorpus(CorpusManifest manifest, StdEstimator estimator) {
  if (manifest.clips.empty()) throw Error("cannot score an empty corpus");
  std::string missing;
  for (const Clip& clip : manifest.clips) {
    if (!clip.laugh_total_s) missing += (missing.empty() ? "" : ", ") + clip.id;
  }
  if (!missing.empty()) {
    throw Error("clips without laugh_total_s: " + missing);
  }
  std::vector<double> quotients;
  quotients.reserve(manifest.clips.size());
  for (Clip& clip : manifest.clips) {
    try {
      clip.quotient = HumourQuotient(*clip.laugh_total_s, clip.duration_s);
    } catch (const Error& e) {
      throw Error("clip '" + clip.id + "': " + e.what());
    }
    quotients.push_back(*clip.quotient);
  }
  const CorpusStats stats = ComputeCorpusStats(quotients, estimator);
  for (Clip& clip : manifest.clips) clip.rating = BinRating(*clip.quotient, stats);
  manifest.stats = QuotientStats{stats.mu, stats.sigma};
  return manifest;
}

}  // namespace laughcorpus

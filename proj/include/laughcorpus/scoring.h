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

#ifndef LAUGHCORPUS_SCORING_H_
#define LAUGHCORPUS_SCORING_H_

#include <cstddef>
#include <span>
#include <string_view>

#include "laughcorpus/corpus.h"

namespace laughcorpus {

inline constexpr int kNumRatings = 5;
// Half-width, in standard deviations, of the bands around the mean.
inline constexpr double kBandWidthSigmas = 0.75;

enum class StdEstimator { kPopulation, kSample };

std::string_view ToString(StdEstimator estimator);
StdEstimator ParseStdEstimator(std::string_view text);

struct CorpusStats {
  double mu = 0.0;
  double sigma = 0.0;
  std::size_t n = 0;
};

// Laughter time over clip time. Throws Error when duration_s <= 0 or
// laugh_total_s lies outside [0, duration_s].
double HumourQuotient(double laugh_total_s, double duration_s);

// Mean and standard deviation, two-pass, each pass a pairwise sum over the
// values in input order. The mean is refined once by the mean residual. A
// single value has sigma 0 under either estimator.
CorpusStats ComputeCorpusStats(std::span<const double> quotients,
                               StdEstimator estimator = StdEstimator::kPopulation);

// Five-point rating:
//   4  q > mu + 0.75 sigma
//   3  mu + 0.75 sigma >= q > mu
//   2  mu >= q > mu - 0.75 sigma
//   1  mu - 0.75 sigma >= q > 0
//   0  q == 0
// When mu - 0.75 sigma < 0 band 1 is empty, so the bands still partition
// [0, inf).
int BinRating(double quotient, const CorpusStats& stats);

// Fills quotient and rating for every clip and the corpus stats. Throws
// Error listing the ids of clips without laugh_total_s.
CorpusManifest ScoreCorpus(CorpusManifest manifest,
                           StdEstimator estimator = StdEstimator::kPopulation);

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_SCORING_H_

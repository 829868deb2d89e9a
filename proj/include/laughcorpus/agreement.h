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

#ifndef LAUGHCORPUS_AGREEMENT_H_
#define LAUGHCORPUS_AGREEMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace laughcorpus {

// Items x raters grid of category labels; an absent entry means the rater
// did not rate that item.
class RatingTable {
 public:
  RatingTable(std::size_t n_items, std::size_t n_raters, int n_categories);

  std::size_t n_items() const { return n_items_; }
  std::size_t n_raters() const { return n_raters_; }
  int n_categories() const { return n_categories_; }

  std::optional<int> at(std::size_t item, std::size_t rater) const {
    return cells_[item * n_raters_ + rater];
  }
  // Throws Error if the category is outside [0, n_categories).
  void Set(std::size_t item, std::size_t rater, int category);

  bool HasMissing() const;

  // Labels used in reports; default to "0", "1", ... and "A", "B", ...
  std::vector<std::string> item_ids;
  std::vector<std::string> rater_ids;

  // One column per rater, in order; every cell present.
  static RatingTable FromColumns(std::span<const std::vector<int>> columns,
                                 int n_categories);

 private:
  std::size_t n_items_;
  std::size_t n_raters_;
  int n_categories_;
  std::vector<std::optional<int>> cells_;
};

// Long-format CSV with header item_id,rater_id,rating. Items and raters are
// ordered by first appearance. Throws ParseError with the line number on a
// malformed row, a duplicate (item, rater) pair or an out-of-range rating.
RatingTable ParseRatingsCsv(std::string_view text, int n_categories = 5);
RatingTable LoadRatingsCsv(const std::filesystem::path& path,
                           int n_categories = 5);

struct ConfusionMatrix {
  int k = 0;
  std::vector<std::int64_t> counts;  // row-major, rows = first rater

  std::int64_t at(int i, int j) const { return counts[i * k + j]; }
  std::int64_t total() const;
  ConfusionMatrix Transposed() const;
};

// Counts over the items both raters rated. Throws Error if there are none.
ConfusionMatrix Confusion(const RatingTable& table, std::size_t rater_a,
                          std::size_t rater_b);
ConfusionMatrix Confusion(std::span<const int> a, std::span<const int> b, int k);

enum class KappaWeights { kNone, kLinear, kQuadratic };
enum class AlphaMetric { kNominal, kOrdinal, kInterval };

std::string_view ToString(KappaWeights weights);
std::string_view ToString(AlphaMetric metric);
AlphaMetric ParseAlphaMetric(std::string_view text);

// Disagreement weight w_ij for k categories (0 on the diagonal).
double KappaWeight(int i, int j, int k, KappaWeights weights);

// kappa = 1 - sum(w O) / sum(w E), O the normalized confusion matrix and E
// the product of its marginals. If sum(w E) == 0 the result is 1 when
// sum(w O) == 0 too; otherwise Error("degenerate marginals").
double CohenKappa(const ConfusionMatrix& cm, KappaWeights weights);

// Fleiss' kappa. Every item needs the same number n >= 2 of ratings and the
// table must have no missing entries. Returns 1 when chance agreement is 1.
double FleissKappa(const RatingTable& table);

// Krippendorff's alpha from the coincidence matrix of pairable values
// (items with at least two ratings). Returns 1 when there is no expected
// disagreement and no observed disagreement; Error("no variation") when
// expected disagreement is 0 but observed is not.
double KrippendorffAlpha(const RatingTable& table,
                         AlphaMetric metric = AlphaMetric::kNominal);

// Quadratic weighted kappa between two equal-length label vectors.
double Qwk(std::span<const int> a, std::span<const int> b, int k);

struct PairwiseKappa {
  std::size_t rater_a = 0;
  std::size_t rater_b = 0;
  std::string label;
  double unweighted = 0.0;
  double quadratic = 0.0;
};

struct AgreementReport {
  std::vector<PairwiseKappa> pairs;
  double mean_pairwise_unweighted = 0.0;
  double mean_pairwise_quadratic = 0.0;
  std::optional<double> fleiss;  // absent when the table has missing entries
  AlphaMetric alpha_metric = AlphaMetric::kNominal;
  double alpha = 0.0;

  std::string ToCsv() const;
  std::string ToText() const;
};

// Rater pairs in cyclic order: (0,1), (1,2), ..., (n-1,0), then pairs two
// apart, and so on. Three raters give (A,B), (B,C), (C,A).
std::vector<std::pair<std::size_t, std::size_t>> RaterPairs(std::size_t n_raters);

AgreementReport BuildAgreementReport(const RatingTable& table,
                                     AlphaMetric metric = AlphaMetric::kNominal);

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_AGREEMENT_H_

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

#include "laughcorpus/agreement.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "laughcorpus/csv.h"
#include "laughcorpus/error.h"

namespace laughcorpus {
namespace {

std::string DefaultRaterId(std::size_t r) {
  if (r < 26) return std::string(1, static_cast<char>('A' + r));
  return "R" + std::to_string(r + 1);
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string PadRight(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

RatingTable::RatingTable(std::size_t n_items, std::size_t n_raters,
                         int n_categories)
    : n_items_(n_items),
      n_raters_(n_raters),
      n_categories_(n_categories),
      cells_(n_items * n_raters) {
  if (n_categories <= 0) throw Error("n_categories must be positive");
  for (std::size_t i = 0; i < n_items; ++i) item_ids.push_back(std::to_string(i));
  for (std::size_t r = 0; r < n_raters; ++r) rater_ids.push_back(DefaultRaterId(r));
}

void RatingTable::Set(std::size_t item, std::size_t rater, int category) {
  if (category < 0 || category >= n_categories_) {
    throw Error("rating " + std::to_string(category) + " outside [0, " +
                std::to_string(n_categories_) + ")");
  }
  cells_[item * n_raters_ + rater] = category;
}

bool RatingTable::HasMissing() const {
  return std::any_of(cells_.begin(), cells_.end(),
                     [](const auto& c) { return !c.has_value(); });
}

RatingTable RatingTable::FromColumns(std::span<const std::vector<int>> columns,
                                     int n_categories) {
  if (columns.empty()) throw Error("no rater columns");
  const std::size_t n_items = columns.front().size();
  RatingTable table(n_items, columns.size(), n_categories);
  for (std::size_t r = 0; r < columns.size(); ++r) {
    if (columns[r].size() != n_items) throw Error("rater columns differ in length");
    for (std::size_t i = 0; i < n_items; ++i) table.Set(i, r, columns[r][i]);
  }
  return table;
}

RatingTable ParseRatingsCsv(std::string_view text, int n_categories) {
  const auto rows = ParseCsv(text);
  if (rows.empty() || rows[0].size() != 3 || rows[0][0] != "item_id" ||
      rows[0][1] != "rater_id" || rows[0][2] != "rating") {
    throw ParseError("ratings csv line 1: expected header item_id,rater_id,rating");
  }
  std::map<std::string, std::size_t> item_index, rater_index;
  std::vector<std::string> items, raters;
  struct Entry {
    std::size_t item, rater;
    int rating;
    std::size_t line;
  };
  std::vector<Entry> entries;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t line = r + 1;
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 3) {
      throw ParseError("ratings csv line " + std::to_string(line) +
                       ": expected 3 fields");
    }
    int rating = 0;
    std::size_t used = 0;
    try {
      rating = std::stoi(row[2], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != row[2].size()) {
      throw ParseError("ratings csv line " + std::to_string(line) +
                       ": rating '" + row[2] + "' is not an integer");
    }
    if (rating < 0 || rating >= n_categories) {
      throw ParseError("ratings csv line " + std::to_string(line) + ": rating " +
                       std::to_string(rating) + " outside [0, " +
                       std::to_string(n_categories) + ")");
    }
    auto [it_i, new_i] = item_index.try_emplace(row[0], items.size());
    if (new_i) items.push_back(row[0]);
    auto [it_r, new_r] = rater_index.try_emplace(row[1], raters.size());
    if (new_r) raters.push_back(row[1]);
    entries.push_back({it_i->second, it_r->second, rating, line});
  }
  if (entries.empty()) throw ParseError("ratings csv: no ratings");
  RatingTable table(items.size(), raters.size(), n_categories);
  table.item_ids = items;
  table.rater_ids = raters;
  for (const Entry& e : entries) {
    if (table.at(e.item, e.rater)) {
      throw ParseError("ratings csv line " + std::to_string(e.line) +
                       ": duplicate rating for item '" + items[e.item] +
                       "' by rater '" + raters[e.rater] + "'");
    }
    table.Set(e.item, e.rater, e.rating);
  }
  return table;
}

RatingTable LoadRatingsCsv(const std::filesystem::path& path, int n_categories) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseRatingsCsv(buffer.str(), n_categories);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::int64_t ConfusionMatrix::total() const {
  std::int64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

ConfusionMatrix ConfusionMatrix::Transposed() const {
  ConfusionMatrix t{k, std::vector<std::int64_t>(counts.size())};
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) t.counts[j * k + i] = at(i, j);
  }
  return t;
}

ConfusionMatrix Confusion(const RatingTable& table, std::size_t rater_a,
                          std::size_t rater_b) {
  if (rater_a >= table.n_raters() || rater_b >= table.n_raters()) {
    throw Error("rater index out of range");
  }
  const int k = table.n_categories();
  ConfusionMatrix cm{k, std::vector<std::int64_t>(static_cast<std::size_t>(k * k), 0)};
  for (std::size_t i = 0; i < table.n_items(); ++i) {
    const auto a = table.at(i, rater_a);
    const auto b = table.at(i, rater_b);
    if (a && b) ++cm.counts[*a * k + *b];
  }
  if (cm.total() == 0) {
    throw Error("raters " + table.rater_ids[rater_a] + " and " +
                table.rater_ids[rater_b] + " share no rated items");
  }
  return cm;
}

ConfusionMatrix Confusion(std::span<const int> a, std::span<const int> b, int k) {
  if (a.size() != b.size()) throw Error("rating vectors differ in length");
  if (a.empty()) throw Error("rating vectors are empty");
  if (k <= 0) throw Error("k must be positive");
  ConfusionMatrix cm{k, std::vector<std::int64_t>(static_cast<std::size_t>(k * k), 0)};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] >= k || b[i] < 0 || b[i] >= k) {
      throw Error("rating outside [0, " + std::to_string(k) + ") at index " +
                  std::to_string(i));
    }
    ++cm.counts[a[i] * k + b[i]];
  }
  return cm;
}

std::string_view ToString(KappaWeights weights) {
  switch (weights) {
    case KappaWeights::kNone:
      return "unweighted";
    case KappaWeights::kLinear:
      return "linear";
    case KappaWeights::kQuadratic:
      break;
  }
  return "quadratic";
}

std::string_view ToString(AlphaMetric metric) {
  switch (metric) {
    case AlphaMetric::kNominal:
      return "nominal";
    case AlphaMetric::kOrdinal:
      return "ordinal";
    case AlphaMetric::kInterval:
      break;
  }
  return "interval";
}

AlphaMetric ParseAlphaMetric(std::string_view text) {
  if (text == "nominal") return AlphaMetric::kNominal;
  if (text == "ordinal") return AlphaMetric::kOrdinal;
  if (text == "interval") return AlphaMetric::kInterval;
  throw Error("unknown alpha metric '" + std::string(text) + "'");
}

double KappaWeight(int i, int j, int k, KappaWeights weights) {
  if (i == j) return 0.0;
  const double d = std::abs(i - j);
  const double span = k > 1 ? static_cast<double>(k - 1) : 1.0;
  switch (weights) {
    case KappaWeights::kNone:
      return 1.0;
    case KappaWeights::kLinear:
      return d / span;
    case KappaWeights::kQuadratic:
      break;
  }
  return (d * d) / (span * span);
}

double CohenKappa(const ConfusionMatrix& cm, KappaWeights weights) {
  const int k = cm.k;
  const double total = static_cast<double>(cm.total());
  if (!(total > 0)) throw Error("empty confusion matrix");
  std::vector<double> row(k, 0.0), col(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      row[i] += static_cast<double>(cm.at(i, j));
      col[j] += static_cast<double>(cm.at(i, j));
    }
  }
  double observed = 0.0, expected = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double w = KappaWeight(i, j, k, weights);
      if (w == 0.0) continue;
      observed += w * static_cast<double>(cm.at(i, j)) / total;
      expected += w * (row[i] / total) * (col[j] / total);
    }
  }
  if (expected == 0.0) {
    if (observed == 0.0) return 1.0;
    throw Error("degenerate marginals: no expected disagreement");
  }
  return 1.0 - observed / expected;
}

double FleissKappa(const RatingTable& table) {
  if (table.HasMissing()) {
    throw Error("Fleiss' kappa needs every item rated by every rater");
  }
  const std::size_t n = table.n_raters();
  if (n < 2) throw Error("Fleiss' kappa needs at least 2 raters per item");
  if (table.n_items() == 0) throw Error("Fleiss' kappa needs at least one item");
  const int k = table.n_categories();
  const double nd = static_cast<double>(n);
  std::vector<double> category_totals(k, 0.0);
  double p_bar = 0.0;
  std::vector<int> counts(k);
  for (std::size_t i = 0; i < table.n_items(); ++i) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t r = 0; r < n; ++r) ++counts[*table.at(i, r)];
    double sum_sq = 0.0;
    for (int j = 0; j < k; ++j) {
      sum_sq += static_cast<double>(counts[j]) * counts[j];
      category_totals[j] += counts[j];
    }
    p_bar += (sum_sq - nd) / (nd * (nd - 1.0));
  }
  const double n_items = static_cast<double>(table.n_items());
  p_bar /= n_items;
  double p_e = 0.0;
  for (int j = 0; j < k; ++j) {
    const double p = category_totals[j] / (n_items * nd);
    p_e += p * p;
  }
  if (p_e == 1.0) return 1.0;
  return (p_bar - p_e) / (1.0 - p_e);
}

double KrippendorffAlpha(const RatingTable& table, AlphaMetric metric) {
  const int k = table.n_categories();
  std::vector<double> coincidence(static_cast<std::size_t>(k * k), 0.0);
  std::vector<int> counts(k);
  for (std::size_t i = 0; i < table.n_items(); ++i) {
    std::fill(counts.begin(), counts.end(), 0);
    int m = 0;
    for (std::size_t r = 0; r < table.n_raters(); ++r) {
      if (auto v = table.at(i, r)) {
        ++counts[*v];
        ++m;
      }
    }
    if (m < 2) continue;
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      for (int d = 0; d < k; ++d) {
        const double pairs = c == d ? static_cast<double>(counts[c]) * (counts[c] - 1)
                                    : static_cast<double>(counts[c]) * counts[d];
        coincidence[c * k + d] += pairs / (m - 1);
      }
    }
  }
  std::vector<double> marginal(k, 0.0);
  double n = 0.0;
  for (int c = 0; c < k; ++c) {
    for (int d = 0; d < k; ++d) marginal[c] += coincidence[c * k + d];
    n += marginal[c];
  }
  if (n < 2.0) throw Error("Krippendorff's alpha needs at least 2 pairable values");

  auto delta2 = [&](int c, int d) -> double {
    if (c == d) return 0.0;
    switch (metric) {
      case AlphaMetric::kNominal:
        return 1.0;
      case AlphaMetric::kInterval:
        return static_cast<double>(c - d) * (c - d);
      case AlphaMetric::kOrdinal: {
        const int lo = std::min(c, d), hi = std::max(c, d);
        double s = 0.0;
        for (int g = lo; g <= hi; ++g) s += marginal[g];
        s -= (marginal[c] + marginal[d]) / 2.0;
        return s * s;
      }
    }
    return 1.0;
  };

  double observed = 0.0, expected = 0.0;
  for (int c = 0; c < k; ++c) {
    for (int d = 0; d < k; ++d) {
      const double w = delta2(c, d);
      observed += coincidence[c * k + d] * w;
      expected += marginal[c] * marginal[d] * w;
    }
  }
  if (expected == 0.0) {
    if (observed == 0.0) return 1.0;
    throw Error("no variation: expected disagreement is zero");
  }
  return 1.0 - (n - 1.0) * observed / expected;
}

double Qwk(std::span<const int> a, std::span<const int> b, int k) {
  return CohenKappa(Confusion(a, b, k), KappaWeights::kQuadratic);
}

std::vector<std::pair<std::size_t, std::size_t>> RaterPairs(std::size_t n_raters) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t gap = 1; gap <= n_raters / 2; ++gap) {
    // With an even rater count the widest gap would list every pair twice.
    const std::size_t starts = (2 * gap == n_raters) ? n_raters / 2 : n_raters;
    for (std::size_t i = 0; i < starts; ++i) {
      pairs.emplace_back(i, (i + gap) % n_raters);
    }
  }
  return pairs;
}

AgreementReport BuildAgreementReport(const RatingTable& table, AlphaMetric metric) {
  if (table.n_raters() < 2) throw Error("agreement needs at least 2 raters");
  AgreementReport report;
  for (const auto& [a, b] : RaterPairs(table.n_raters())) {
    const ConfusionMatrix cm = Confusion(table, a, b);
    PairwiseKappa pk;
    pk.rater_a = a;
    pk.rater_b = b;
    pk.label = table.rater_ids[a] + " and " + table.rater_ids[b];
    pk.unweighted = CohenKappa(cm, KappaWeights::kNone);
    pk.quadratic = CohenKappa(cm, KappaWeights::kQuadratic);
    report.pairs.push_back(std::move(pk));
  }
  for (const auto& pk : report.pairs) {
    report.mean_pairwise_unweighted += pk.unweighted;
    report.mean_pairwise_quadratic += pk.quadratic;
  }
  report.mean_pairwise_unweighted /= static_cast<double>(report.pairs.size());
  report.mean_pairwise_quadratic /= static_cast<double>(report.pairs.size());
  if (!table.HasMissing()) report.fleiss = FleissKappa(table);
  report.alpha_metric = metric;
  report.alpha = KrippendorffAlpha(table, metric);
  return report;
}

std::string AgreementReport::ToCsv() const {
  std::string out = CsvRow(std::vector<std::string>{"statistic", "raters", "value"});
  for (const auto& pk : pairs) {
    out += CsvRow(std::vector<std::string>{"cohen_kappa", pk.label,
                                           FormatDouble(pk.unweighted)});
    out += CsvRow(std::vector<std::string>{"cohen_kappa_quadratic", pk.label,
                                           FormatDouble(pk.quadratic)});
  }
  out += CsvRow(std::vector<std::string>{"average_pairwise_cohen_kappa", "all",
                                         FormatDouble(mean_pairwise_unweighted)});
  out += CsvRow(std::vector<std::string>{"average_pairwise_cohen_kappa_quadratic",
                                         "all", FormatDouble(mean_pairwise_quadratic)});
  out += CsvRow(std::vector<std::string>{"fleiss_kappa", "all",
                                         fleiss ? FormatDouble(*fleiss) : ""});
  out += CsvRow(std::vector<std::string>{
      "krippendorff_alpha_" + std::string(ToString(alpha_metric)), "all",
      FormatDouble(alpha)});
  return out;
}

std::string AgreementReport::ToText() const {
  constexpr std::size_t kWidth = 40;
  std::ostringstream os;
  os << PadRight("Pairwise agreement", kWidth) << "kappa    QWK\n";
  for (const auto& pk : pairs) {
    os << PadRight("Annotators " + pk.label, kWidth) << Fixed(pk.unweighted)
       << "    " << Fixed(pk.quadratic) << "\n";
  }
  os << PadRight("Average pairwise Cohen's kappa", kWidth)
     << Fixed(mean_pairwise_unweighted) << "    " << Fixed(mean_pairwise_quadratic)
     << "\n";
  os << PadRight("Fleiss' kappa", kWidth)
     << (fleiss ? Fixed(*fleiss) : std::string("n/a (missing ratings)")) << "\n";
  os << PadRight("Krippendorff's alpha (" + std::string(ToString(alpha_metric)) + ")",
                 kWidth)
     << Fixed(alpha) << "\n";
  return os.str();
}

}  // namespace laughcorpus

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

// Acceptance suite: one PASS/FAIL line per criterion with its runtime.
// Exits nonzero when any criterion fails or exceeds its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "laughcorpus/agreement.h"
#include "laughcorpus/corpus.h"
#include "laughcorpus/features.h"
#include "laughcorpus/laughter.h"
#include "laughcorpus/pipeline.h"
#include "laughcorpus/rater.h"
#include "laughcorpus/scoring.h"
#include "fixture.h"
#include "oracles.h"
#include "test_util.h"

namespace laughcorpus {
namespace {

namespace fs = std::filesystem;

// Thrown by Check to abort a criterion with a reason.
struct Failure {
  std::string what;
};

void Check(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

// ---------------------------------------------------------------- 1

bool LiteralBand(int band, double q, double mu, double sigma) {
  const double hi = mu + 0.75 * sigma, lo = mu - 0.75 * sigma;
  switch (band) {
    case 4: return q > hi;
    case 3: return q <= hi && q > mu;
    case 2: return q <= mu && q > lo && q > 0.0;
    case 1: return q <= lo && q > 0.0;
    case 0: return q == 0.0;
  }
  return false;
}

std::string Binning() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int sigma_zero = 0, lower_empty = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    CorpusStats s;
    s.mu = u(rng) * 0.5;
    s.sigma = trial % 10 == 0 ? 0.0 : u(rng) * 0.5;
    sigma_zero += s.sigma == 0.0;
    lower_empty += s.mu - 0.75 * s.sigma < 0.0;
    std::vector<double> qs = {0.0, s.mu, s.mu + 0.75 * s.sigma, s.mu - 0.75 * s.sigma};
    for (int i = 0; i < 6; ++i) qs.push_back(u(rng));
    std::erase_if(qs, [](double q) { return q < 0.0 || q > 1.0; });
    std::sort(qs.begin(), qs.end());
    int prev = -1;
    for (double q : qs) {
      int fired = 0, band = -1;
      for (int b = 0; b <= 4; ++b) {
        if (LiteralBand(b, q, s.mu, s.sigma)) {
          ++fired;
          band = b;
        }
      }
      Check(fired == 1, "bands fired != 1");
      const int r = BinRating(q, s);
      Check(r == band, "BinRating disagrees with band table");
      Check((r == 0) == (q == 0.0), "rating 0 iff quotient 0");
      Check(r >= prev, "not monotone in quotient");
      prev = r;
    }
  }
  Check(sigma_zero > 0 && lower_empty > 0, "edge cases not sampled");
  return "10000 triples, " + std::to_string(sigma_zero) + " with sigma 0, " +
         std::to_string(lower_empty) + " with empty band 1";
}

// ---------------------------------------------------------------- 2

struct TrackCase {
  std::vector<double> probs;
  double hop;
  double threshold;
  double min_duration;
  std::vector<std::pair<int, int>> frames;  // expected [first, end) frames
};

std::vector<double> Flat(int n, double v) { return std::vector<double>(n, v); }

std::vector<double> With(std::vector<double> p, int first, int end, double v) {
  for (int i = first; i < end; ++i) p[i] = v;
  return p;
}

std::string Detection() {
  const double t = kDefaultLaughThreshold, m = kDefaultMinLaughDuration;
  const auto bg = Flat(20, 0.1);
  std::vector<TrackCase> cases = {
      {Flat(20, 0.0), 0.05, t, m, {}},
      {Flat(10, 0.7), 0.05, t, m, {{0, 10}}},
      {Flat(10, 0.6999999), 0.05, t, m, {}},
      {With(bg, 5, 6, 0.9), 0.05, t, m, {}},
      {With(bg, 3, 5, 0.9), 0.05, t, m, {{3, 5}}},
      {With(bg, 18, 20, 0.9), 0.05, t, m, {{18, 20}}},
      {With(bg, 0, 2, 0.9), 0.05, t, m, {{0, 2}}},
      {With(With(bg, 1, 3, 0.9), 4, 6, 0.9), 0.05, t, m, {{1, 3}, {4, 6}}},
      {With(With(bg, 2, 5, 0.9), 3, 4, 0.69), 0.05, t, m, {}},
      {With(bg, 7, 10, 1.0), 0.05, t, m, {{7, 10}}},
      {With(With(With(bg, 2, 3, 0.7), 3, 4, 0.9), 4, 5, 0.7), 0.05, t, m, {{2, 5}}},
      {With(With(bg, 4, 5, 0.9), 9, 10, 0.8), 0.05, t, 0.0, {{4, 5}, {9, 10}}},
      {With(With(bg, 2, 6, 0.99), 10, 12, 1.0), 0.05, 1.0, m, {{10, 12}}},
      {With(bg, 6, 7, 0.9), 0.1, t, m, {{6, 7}}},
      {With(With(bg, 1, 4, 0.9), 8, 12, 0.9), 0.03, t, m, {{8, 12}}},
      {{0.9}, 0.05, t, 0.0, {{0, 1}}},
      {{0.9, 0.1, 0.9, 0.1, 0.9, 0.1, 0.9}, 0.05, t, m, {}},
      {Flat(100, 0.95), 0.05, t, m, {{0, 100}}},
      {With(With(With(bg, 1, 2, 0.9), 4, 6, 0.9), 9, 12, 0.9), 0.05, t, m, {{4, 6}, {9, 12}}},
      {With(With(bg, 1, 6, 0.9), 10, 14, 0.9), 0.05, t, 0.25, {{1, 6}}},
      {With(With(With(bg, 3, 4, 0.6999), 4, 6, 0.8), 6, 7, 0.6999), 0.05, t, m, {{4, 6}}},
      {With(With(bg, 2, 5, 0.6), 8, 9, 0.6), 0.05, 0.5, m, {{2, 5}}},
  };
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& tc = cases[c];
    const auto got = DetectIntervals({tc.hop, tc.probs}, tc.threshold, tc.min_duration);
    std::vector<LaughInterval> want;
    for (auto [a, b] : tc.frames) want.push_back({a * tc.hop, b * tc.hop});
    Check(got.size() == want.size(), "case " + std::to_string(c) + ": interval count");
    for (std::size_t i = 0; i < got.size(); ++i) {
      Check(got[i].start_s == want[i].start_s && got[i].end_s == want[i].end_s,
            "case " + std::to_string(c) + ": interval bounds");
    }
  }

  // Raising the threshold only shrinks or removes intervals.
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    LaughProbTrack track{0.05, std::vector<double>(200)};
    double p = u(rng);
    for (double& v : track.probs) v = p = std::clamp(p + 0.3 * (u(rng) - 0.5), 0.0, 1.0);
    std::vector<LaughInterval> prev;
    double prev_total = std::numeric_limits<double>::infinity();
    for (double th = 0.05; th <= 1.0; th += 0.05) {
      const auto cur = DetectIntervals(track, th, m);
      const double total = TotalLaughDuration(cur);
      Check(total <= prev_total, "total duration grew with threshold");
      if (th > 0.05) {
        for (const auto& iv : cur) {
          const bool inside = std::any_of(prev.begin(), prev.end(), [&](const LaughInterval& o) {
            return o.start_s <= iv.start_s && iv.end_s <= o.end_s;
          });
          Check(inside, "interval not contained at lower threshold");
        }
      }
      prev = cur;
      prev_total = total;
    }
  }
  return std::to_string(cases.size()) + " constructed tracks, 200 random sweeps";
}

// ---------------------------------------------------------------- 3

std::string QwkOracle() {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> r5(0, 4);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> a(100), b(100);
    for (int i = 0; i < 100; ++i) {
      a[i] = r5(rng);
      b[i] = trial % 2 == 0 ? r5(rng) : std::clamp(a[i] + r5(rng) / 2 - 1, 0, 4);
    }
    worst = std::max(worst, std::abs(Qwk(a, b, 5) - oracle::Qwk(a, b, 5)));
  }
  Check(worst <= 1e-12, "max deviation " + std::to_string(worst));
  std::vector<int> ramp, rev;
  for (int i = 0; i < 100; ++i) {
    ramp.push_back(i % 5);
    rev.push_back(4 - i % 5);
  }
  Check(Qwk(ramp, ramp, 5) == 1.0, "perfect agreement is not 1");
  const double reversed = Qwk(ramp, rev, 5);
  Check(reversed < 0.0, "reversed ramp is not negative");
  std::ostringstream os;
  os << "max |diff| " << worst << ", reversed ramp " << reversed;
  return os.str();
}

// ---------------------------------------------------------------- 4

std::string AgreementOracles() {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> r5(0, 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int with_missing = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t items = 10 + rng() % 31, raters = 2 + rng() % 5;
    // Skewed category draws keep the statistics away from zero.
    const int bias = r5(rng);
    oracle::Table full(items), sparse(items);
    RatingTable t_full(items, raters, 5), t_sparse(items, raters, 5);
    for (std::size_t i = 0; i < items; ++i) {
      for (std::size_t r = 0; r < raters; ++r) {
        const int v = u(rng) < 0.4 ? bias : r5(rng);
        full[i].push_back(v);
        t_full.Set(i, r, v);
        if (u(rng) < 0.25) {
          sparse[i].push_back(std::nullopt);
        } else {
          sparse[i].push_back(v);
          t_sparse.Set(i, r, v);
        }
      }
    }
    with_missing += t_sparse.HasMissing();
    worst = std::max(worst, std::abs(FleissKappa(t_full) - oracle::FleissPairs(full)));
    const std::pair<AlphaMetric, oracle::Metric> metrics[] = {
        {AlphaMetric::kNominal, oracle::Metric::kNominal},
        {AlphaMetric::kOrdinal, oracle::Metric::kOrdinal},
        {AlphaMetric::kInterval, oracle::Metric::kInterval}};
    for (const auto& [mine, theirs] : metrics) {
      worst = std::max(worst, std::abs(KrippendorffAlpha(t_full, mine) -
                                       oracle::AlphaPairs(full, 5, theirs)));
      worst = std::max(worst, std::abs(KrippendorffAlpha(t_sparse, mine) -
                                       oracle::AlphaPairs(sparse, 5, theirs)));
    }
  }
  Check(worst <= 1e-12, "max deviation " + std::to_string(worst));
  Check(with_missing > 150, "too few tables with missing entries");
  std::ostringstream os;
  os << "200 tables (" << with_missing << " with missing entries), max |diff| " << worst;
  return os.str();
}

// ---------------------------------------------------------------- 5

std::vector<double> NaiveDct(const std::vector<double>& x, std::size_t n_out) {
  const double n = static_cast<double>(x.size());
  std::vector<double> out(n_out, 0.0);
  for (std::size_t k = 0; k < n_out; ++k) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      out[k] += x[i] * std::cos(std::numbers::pi * k * (2.0 * i + 1.0) / (2.0 * n));
    }
    out[k] *= std::sqrt((k == 0 ? 1.0 : 2.0) / n);
  }
  return out;
}

std::string Dsp() {
  const FrameParams p;
  const int sr = p.sample_rate;

  // Parseval: sum |X|^2 over the full spectrum equals n * sum x^2.
  const auto noise = testing::Noise(sr, 0.5, 5);
  const Matrix mag = StftMagnitude(noise, p);
  const auto padded = CenterPad(noise, p);
  const auto window = HannWindow(p.frame_len);
  const std::size_t n = p.frame_len;
  double worst_parseval = 0.0;
  for (std::size_t t = 0; t < mag.rows(); ++t) {
    double time_energy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = padded[t * p.hop + i] * window[i];
      time_energy += v * v;
    }
    const auto row = mag.row(t);
    double freq_energy = row[0] * row[0] + row[n / 2] * row[n / 2];
    for (std::size_t k = 1; k < n / 2; ++k) freq_energy += 2.0 * row[k] * row[k];
    const double rel = std::abs(freq_energy - n * time_energy) / (n * time_energy);
    worst_parseval = std::max(worst_parseval, rel);
  }
  Check(worst_parseval <= 1e-6, "Parseval deviation " + std::to_string(worst_parseval));

  const auto rms = RmsEnergy(testing::Tone(440, 2.0, sr), p);
  for (std::size_t t = 4; t + 4 < rms.size(); ++t) {
    Check(std::abs(rms[t] - 0.7071) <= 1e-2, "unit sine RMS off at frame " + std::to_string(t));
  }

  std::mt19937 rng(6);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  Matrix rand_mag(40, p.n_bins());
  for (double& v : rand_mag.data()) v = u(rng);
  rand_mag(0, 0) = 0.0;
  const Matrix mfcc = Mfcc(rand_mag, p);
  const Matrix bank = MelFilterbank(p.n_mels_internal, p);
  double worst_dct = 0.0;
  for (std::size_t t = 0; t < rand_mag.rows(); ++t) {
    std::vector<double> log_mel(p.n_mels_internal);
    for (std::size_t m = 0; m < log_mel.size(); ++m) {
      double acc = 0.0;
      for (std::size_t k = 0; k < p.n_bins(); ++k) {
        acc += bank(m, k) * rand_mag(t, k) * rand_mag(t, k);
      }
      log_mel[m] = std::log(std::max(acc, p.log_floor));
    }
    const auto want = NaiveDct(log_mel, p.n_mfcc);
    for (std::size_t k = 0; k < p.n_mfcc; ++k) {
      worst_dct = std::max(worst_dct, std::abs(mfcc(t, k) - want[k]));
    }
  }
  Check(worst_dct <= 1e-9, "MFCC deviation " + std::to_string(worst_dct));

  const FeatureMatrix silent = ExtractFeatures(std::vector<float>(5 * sr, 0.0f), p);
  for (float v : silent.data) Check(std::isfinite(v), "silence gives non-finite features");

  for (std::size_t len : {std::size_t{1}, std::size_t{100}, std::size_t{22050},
                          std::size_t{120} * 22050, std::size_t{200} * 22050}) {
    const FeatureMatrix f = ExtractFeatures(testing::Noise(len, 0.3, 7), p);
    Check(f.max_frames == 8000 && f.data.size() == 8000 * kFeatureDims,
          "shape is not 8000 x 33 for " + std::to_string(len) + " samples");
    for (float v : f.data) Check(std::isfinite(v), "non-finite features");
  }
  std::ostringstream os;
  os << "Parseval rel " << worst_parseval << ", DCT |diff| " << worst_dct
     << ", shape 8000 x " << kFeatureDims;
  return os.str();
}

// ---------------------------------------------------------------- 6

std::string Muting() {
  const int sr = 22050;
  const double fade_ms = 10.0;
  const auto ramp = static_cast<std::size_t>(std::llround(fade_ms * sr / 1000.0));
  const auto x = testing::Tone(330, 5.0, sr, 0.8);
  const std::vector<LaughInterval> iv = {{0.0, 0.5}, {1.0, 1.75}, {1.5, 2.25}, {4.5, 5.0}};
  std::vector<int> inside(x.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> spans = {
      {0, 11025}, {22050, 49613}, {99225, 110250}};  // merged sample spans
  for (auto [s, e] : spans) {
    for (std::size_t i = s; i < e; ++i) inside[i] = 1;
  }

  for (double fade : {0.0, fade_ms}) {
    const auto y = MuteIntervals(x, sr, iv, fade);
    Check(y.size() == x.size(), "length changed");
    const std::size_t r = fade > 0.0 ? ramp : 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!inside[i]) Check(y[i] == x[i], "sample outside intervals changed");
    }
    for (const auto& iv1 : iv) {
      const auto s = static_cast<std::size_t>(std::llround(iv1.start_s * sr));
      const auto e = static_cast<std::size_t>(std::llround(iv1.end_s * sr));
      for (std::size_t i = s + r; i + r < e; ++i) {
        Check(y[i] == 0.0f, "nonzero sample inside interval");
      }
    }
    const auto z = MuteIntervals(y, sr, iv, fade);
    if (fade == 0.0) Check(z == y, "muting twice differs without fade");
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (y[i] == 0.0f || !inside[i]) Check(z[i] == y[i], "second pass changed settled sample");
    }
  }
  Check(MuteIntervals(x, sr, {}, fade_ms) == x, "empty interval list changed audio");
  return "4 intervals on a 5 s tone, fade 0 and 10 ms";
}

// ---------------------------------------------------------------- 7

std::vector<PooledExample> Blobs(std::size_t per_class, std::size_t dim, double separation,
                                 std::uint32_t seed, std::uint32_t noise_seed = 0) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> centres(kNumClasses, std::vector<double>(dim));
  for (auto& c : centres) {
    for (auto& v : c) v = separation * g(rng);
  }
  if (noise_seed != 0) rng.seed(noise_seed);
  std::vector<PooledExample> out;
  for (std::size_t i = 0; i < per_class; ++i) {
    for (int c = 0; c < kNumClasses; ++c) {
      PooledExample ex;
      ex.clip_id = "c" + std::to_string(c) + "_" + std::to_string(i);
      ex.y = c;
      for (std::size_t d = 0; d < dim; ++d) ex.x.push_back(centres[c][d] + g(rng));
      out.push_back(std::move(ex));
    }
  }
  return out;
}

std::string RaterNumerics() {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  const std::size_t widths[] = {kPooledAudioDims, kPooledAudioDims + 8};
  double worst = 0.0;
  for (int draw = 0; draw < 50; ++draw) {
    const std::size_t dim = widths[draw % 2];
    SoftmaxModel model = SoftmaxModel::Zeros(dim);
    for (double& w : model.weights.data()) w = 0.3 * g(rng);
    for (double& b : model.bias) b = 0.3 * g(rng);
    for (std::size_t d = 0; d < dim; ++d) {
      model.standardizer.mean[d] = g(rng);
      model.standardizer.std[d] = 0.5 + std::abs(g(rng));
    }
    const auto batch = Blobs(2 + draw % 3, dim, 1.0, 100 + draw);
    worst = std::max(worst, GradientCheck(model, batch, 1e-3));
  }
  Check(worst < 1e-5, "gradient check error " + std::to_string(worst));

  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> logits(kNumClasses);
    for (double& l : logits) l = trial % 3 == 0 ? (u(rng) < 0 ? -1000.0 : 1000.0) : u(rng);
    const auto p = Softmax(logits);
    double sum = 0.0;
    for (double v : p) {
      Check(std::isfinite(v) && v >= 0.0 && v <= 1.0, "probability off the simplex");
      sum += v;
    }
    Check(std::abs(sum - 1.0) <= 1e-12, "probabilities do not sum to 1");
  }
  std::ostringstream os;
  os << "50 draws at widths " << widths[0] << " and " << widths[1]
     << ", max rel error " << worst;
  return os.str();
}

// ---------------------------------------------------------------- 8, 10

struct EndToEndRun {
  CorpusManifest manifest;
  Evaluation eval;
  std::string metrics_text;
};

EndToEndRun RunEndToEnd(const testing::FixtureCorpus& fx, const fs::path& out) {
  const auto standup = Ingest(fx.standup_dir, fx.transcripts_dir, SourceKind::kStandup);
  const auto talk = Ingest(fx.nonfunny_dir, fx.transcripts_dir, SourceKind::kNonfunny);
  Check(standup.errors.empty() && talk.errors.empty(), "ingest reported errors");
  const CorpusManifest manifest = MergeManifests(standup.manifest, talk.manifest);
  PipelineConfig config;
  config.rater.train.epochs = 300;
  PipelineInputs inputs;
  inputs.tracks_dir = fx.tracks_dir;
  inputs.write_muted = true;
  const PipelineResult result = RunPipeline(manifest, config, inputs, out);
  const TrainResult trained =
      TrainRater(result.manifest, out / "features", nullptr, config.rater);
  SaveModel(trained.model, out / "model.json");
  EndToEndRun run;
  run.manifest = result.manifest;
  run.eval = EvaluateRater(trained.model, result.manifest, out / "features", nullptr);
  testing::Spit(out / "metrics.csv", MetricsCsv(run.eval));
  testing::Spit(out / "confusion.csv", ConfusionCsv(run.eval));
  run.metrics_text = MetricsText(run.eval, config.rater.modality);
  return run;
}

std::string EndToEnd(const testing::FixtureCorpus& fx, const fs::path& out) {
  const EndToEndRun run = RunEndToEnd(fx, out);
  Check(run.manifest.clips.size() == 25, "expected 25 clips");
  int zeros = 0;
  for (const Clip& c : run.manifest.clips) {
    Check(c.rating.has_value(), c.id + " has no rating");
    Check(*c.rating == fx.expected_rating.at(c.id), c.id + " rating differs from oracle");
    Check(std::abs(*c.laugh_total_s - fx.laugh_seconds.at(c.id)) < 1e-9,
          c.id + " laugh total differs from the injected duration");
    if (c.source_kind == SourceKind::kNonfunny) {
      Check(*c.rating == 0, c.id + " nonfunny clip not rated 0");
      ++zeros;
    }
  }
  Check(zeros == 5, "expected 5 nonfunny clips");
  Check(run.metrics_text.find("QWK: ") != std::string::npos, "no QWK in metrics");
  std::printf("%s", run.metrics_text.c_str());
  std::ostringstream os;
  os << "25 clips match the oracle, test QWK " << run.eval.qwk;
  return os.str();
}

std::string Determinism(const testing::FixtureCorpus& fx, const fs::path& root) {
  RunEndToEnd(fx, root / "a");
  RunEndToEnd(fx, root / "b");
  std::vector<fs::path> files = {"manifest.json", "metrics.csv", "confusion.csv",
                                 "scores.csv", "histogram.csv", "model.json"};
  for (const auto& entry : fs::directory_iterator(root / "a" / "features")) {
    files.push_back(fs::path("features") / entry.path().filename());
  }
  Check(files.size() == 6 + 25, "expected 25 feature files");
  for (const auto& f : files) {
    const std::string a = testing::Slurp(root / "a" / f);
    Check(!a.empty(), f.string() + " is empty");
    Check(a == testing::Slurp(root / "b" / f), f.string() + " differs between runs");
  }
  return std::to_string(files.size()) + " files byte-identical";
}

// ---------------------------------------------------------------- 9

std::string Learnability() {
  const auto train = Blobs(35, 12, 3.0, 9);
  const auto test = Blobs(15, 12, 3.0, 9, /*noise_seed=*/91);
  const TrainResult r = Train(train, TrainConfig{});
  const double qwk = Evaluate(r.model, test).qwk;
  Check(qwk >= 0.9, "test QWK " + std::to_string(qwk));
  std::ostringstream os;
  os << "175 train / 75 test, test QWK " << qwk;
  return os.str();
}

// ----------------------------------------------------------------

struct Criterion {
  int id;
  double budget_s;  // 0 means no time limit
  std::function<std::string()> run;
};

int Main() {
  testing::TempDir dir;
  std::optional<testing::FixtureCorpus> fx;
  const auto fixture = [&]() -> const testing::FixtureCorpus& {
    if (!fx) fx = testing::WriteFixtureCorpus(dir.path() / "fixture");
    return *fx;
  };
  const std::vector<Criterion> criteria = {
      {1, 1.0, Binning},
      {2, 1.0, Detection},
      {3, 5.0, QwkOracle},
      {4, 10.0, AgreementOracles},
      {5, 30.0, Dsp},
      {6, 5.0, Muting},
      {7, 30.0, RaterNumerics},
      {8, 60.0, [&] { return EndToEnd(fixture(), dir.path() / "e2e"); }},
      {9, 60.0, Learnability},
      {10, 0.0, [&] { return Determinism(fixture(), dir.path() / "det"); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && c.budget_s > 0.0 && secs >= c.budget_s) {
      ok = false;
      detail += " (over the " + std::to_string(c.budget_s) + " s budget)";
    }
    failures += !ok;
    std::printf("criterion %d: %s (%.3fs) %s\n", c.id, ok ? "PASS" : "FAIL", secs,
                detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace laughcorpus

int main() { return laughcorpus::Main(); }

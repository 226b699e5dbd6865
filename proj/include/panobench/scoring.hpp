// Copyright 2026 The PanoBench Authors.
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

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace panobench {

// Raw values of the four reward channels. structural_iou is computed in-tree;
// the other three are ingested from external scorers.
struct RewardVector {
  double structural_iou = 0.0;
  double omniaid = 0.0;
  double longclip = 0.0;
  double hpsv3 = 0.0;
};

inline constexpr std::size_t kRewardChannels = 4;
inline constexpr const char* kRewardChannelNames[kRewardChannels] = {
    "structural_iou", "omniaid", "longclip", "hpsv3"};

struct ChannelRange {
  double lo = 0.0;
  double hi = 1.0;
};

// Uniform weights and min-max ranges by default. hpsv3 scores land in [0,10]
// in practice; the others are already unit-interval.
struct RewardConfig {
  std::array<double, kRewardChannels> weights{1.0, 1.0, 1.0, 1.0};
  std::array<ChannelRange, kRewardChannels> ranges{
      ChannelRange{0.0, 1.0}, ChannelRange{0.0, 1.0}, ChannelRange{0.0, 1.0},
      ChannelRange{0.0, 10.0}};
};

inline void check_reward(const RewardVector& v) {
  for (double x : {v.structural_iou, v.omniaid, v.longclip, v.hpsv3}) {
    if (!std::isfinite(x)) throw std::invalid_argument("reward vector: non-finite channel");
  }
  if (v.structural_iou < 0.0 || v.structural_iou > 1.0) {
    throw std::invalid_argument("reward vector: structural_iou outside [0, 1]");
  }
}

// Weighted mean of min-max-normalized channels, clamped into [0, 1] per
// channel. Invariant under uniform weight scaling.
inline double composite_reward(const RewardVector& v, const RewardConfig& cfg = {}) {
  check_reward(v);
  double weight_sum = 0.0;
  for (double w : cfg.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("composite_reward: weights must be finite and >= 0");
    }
    weight_sum += w;
  }
  if (!(weight_sum > 0.0)) {
    throw std::invalid_argument("composite_reward: all weights are zero");
  }
  const std::array<double, kRewardChannels> raw{v.structural_iou, v.omniaid, v.longclip,
                                                v.hpsv3};
  double acc = 0.0;
  for (std::size_t i = 0; i < kRewardChannels; ++i) {
    const auto& r = cfg.ranges[i];
    if (!(r.hi > r.lo)) {
      throw std::invalid_argument("composite_reward: normalizer range must have hi > lo");
    }
    double norm = (raw[i] - r.lo) / (r.hi - r.lo);
    norm = norm < 0.0 ? 0.0 : (norm > 1.0 ? 1.0 : norm);
    acc += cfg.weights[i] * norm;
  }
  return acc / weight_sum;
}

// Expert rating triple on the 1-to-5 scale; 0 marks an abstained dimension.
struct ScoreCard {
  double aesthetic = 0.0;
  double spatial_consistency = 0.0;
  double plausibility = 0.0;
};

inline void check_score_card(const ScoreCard& card) {
  for (double v : {card.aesthetic, card.spatial_consistency, card.plausibility}) {
    if (!std::isfinite(v) || (v != 0.0 && (v < 1.0 || v > 5.0))) {
      throw std::invalid_argument("score card: values must be 0 (abstained) or in [1, 5]");
    }
  }
}

// S_total, unrounded. Display rounding is the caller's concern.
inline double expert_total(const ScoreCard& card) {
  check_score_card(card);
  return 0.4 * card.aesthetic + 0.3 * card.spatial_consistency + 0.3 * card.plausibility;
}

enum class Grade { S, A, B, C, D };

inline const char* to_string(Grade g) {
  switch (g) {
    case Grade::S: return "S";
    case Grade::A: return "A";
    case Grade::B: return "B";
    case Grade::C: return "C";
    case Grade::D: return "D";
  }
  return "?";
}

// Tier thresholds: S at 4.0 and above, then A [3.5, 4), B [2.5, 3.5),
// C (1.0, 2.5), D at 1.0 and below. Exhaustive over the reals.
inline Grade grade(double s_total) {
  if (!std::isfinite(s_total)) throw std::invalid_argument("grade: non-finite total");
  if (s_total >= 4.0) return Grade::S;
  if (s_total >= 3.5) return Grade::A;
  if (s_total >= 2.5) return Grade::B;
  if (s_total > 1.0) return Grade::C;
  return Grade::D;
}

// Exact percentage per tier in S, A, B, C, D order.
inline std::array<double, 5> grade_distribution(const std::vector<double>& totals) {
  if (totals.empty()) throw std::invalid_argument("grade_distribution: no totals");
  std::array<std::size_t, 5> counts{};
  for (double t : totals) ++counts[static_cast<std::size_t>(grade(t))];
  std::array<double, 5> pct{};
  for (std::size_t i = 0; i < 5; ++i) {
    pct[i] = 100.0 * static_cast<double>(counts[i]) / static_cast<double>(totals.size());
  }
  return pct;
}

// One scored sample group, labeled with the population it belongs to
// (reward-spread analysis compares populations such as contrastive pairs
// against larger per-prompt groups).
struct GroupSamples {
  std::string id;
  std::string population;
  std::vector<double> samples;
};

struct GroupStats {
  std::string id;
  std::string population;
  std::size_t n = 0;
  double mean = 0.0;
  double sample_std = 0.0;  // Bessel-corrected
};

struct PopulationSummary {
  std::string population;
  std::size_t groups = 0;
  double mean_std = 0.0;
};

struct StdReport {
  std::vector<GroupStats> stats;
  std::vector<PopulationSummary> populations;  // first-appearance order
  // mean_std(first population) / mean_std(second); present only with exactly
  // two populations and a nonzero denominator.
  std::optional<double> ratio;
};

inline StdReport group_std_report(const std::vector<GroupSamples>& groups) {
  if (groups.empty()) throw std::invalid_argument("group_std_report: no groups");
  StdReport report;
  for (const auto& g : groups) {
    if (g.samples.size() < 2) {
      throw std::invalid_argument("group '" + g.id + "': need at least 2 samples for std");
    }
    double sum = 0.0;
    for (double s : g.samples) {
      if (!std::isfinite(s)) {
        throw std::invalid_argument("group '" + g.id + "': non-finite sample");
      }
      sum += s;
    }
    const double mean = sum / static_cast<double>(g.samples.size());
    double ss = 0.0;
    for (double s : g.samples) ss += (s - mean) * (s - mean);
    GroupStats stats;
    stats.id = g.id;
    stats.population = g.population;
    stats.n = g.samples.size();
    stats.mean = mean;
    stats.sample_std = std::sqrt(ss / static_cast<double>(g.samples.size() - 1));
    report.stats.push_back(stats);
  }

  for (const auto& s : report.stats) {
    PopulationSummary* entry = nullptr;
    for (auto& p : report.populations) {
      if (p.population == s.population) {
        entry = &p;
        break;
      }
    }
    if (!entry) {
      report.populations.push_back({s.population, 0, 0.0});
      entry = &report.populations.back();
    }
    ++entry->groups;
    entry->mean_std += s.sample_std;
  }
  for (auto& p : report.populations) p.mean_std /= static_cast<double>(p.groups);

  if (report.populations.size() == 2 && report.populations[1].mean_std > 0.0) {
    report.ratio = report.populations[0].mean_std / report.populations[1].mean_std;
  }
  return report;
}

struct MixRatio {
  double p_single = 1.0;
  double p_multi = 0.0;
};

// Task-mix warmup: all single-condition at step 0, linear slide to the stable
// 2:8 split at warmup_steps, constant afterwards.
inline MixRatio mix_schedule(long long step, long long warmup_steps) {
  if (step < 0) throw std::invalid_argument("mix_schedule: step must be >= 0");
  if (warmup_steps < 1) throw std::invalid_argument("mix_schedule: warmup_steps must be >= 1");
  const double t =
      std::min(1.0, static_cast<double>(step) / static_cast<double>(warmup_steps));
  MixRatio r;
  if (t >= 1.0) {
    // Pinned: 1.0 - 0.8 lands one ulp under 0.2, and the plateau values are
    // contractual constants.
    r.p_single = 0.2;
    r.p_multi = 0.8;
  } else {
    r.p_single = 1.0 - 0.8 * t;
    r.p_multi = 1.0 - r.p_single;
  }
  return r;
}

}  // namespace panobench

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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "panobench/image.hpp"
#include "panobench/rng.hpp"

namespace panobench {

// One candidate panorama in the curation funnel. Aesthetic score and
// embedding are ingested from external scorers; this layer never computes
// them.
struct CurationItem {
  std::string id;
  int width = 0;
  int height = 0;
  double mean_luma = 0.0;
  double luma_std = 0.0;
  double aesthetic_score = 0.0;
  std::vector<double> embedding;
};

struct QualityConfig {
  int min_width = 1024;
  int min_height = 512;
  double aspect_tol = 0.01;  // |width/height - 2| tolerance
  double b_lo = 0.15;        // mean luma lower bound
  double b_hi = 0.90;        // mean luma upper bound
  double c_min = 0.05;       // luma std lower bound
  double a_min = 0.0;        // aesthetic score lower bound
};

struct FilterResult {
  bool pass = true;
  std::vector<std::string> reasons;  // every violated check, stable order
};

// Heuristic gate. All bounds inclusive; a failing item reports every
// violated reason, not just the first.
inline FilterResult quality_filter(const CurationItem& item, const QualityConfig& cfg) {
  for (double v : {cfg.aspect_tol, cfg.b_lo, cfg.b_hi, cfg.c_min, cfg.a_min}) {
    if (std::isnan(v)) throw std::invalid_argument("quality config: NaN threshold");
  }
  FilterResult result;
  auto fail = [&](const char* reason) {
    result.pass = false;
    result.reasons.push_back(reason);
  };
  if (item.width < cfg.min_width || item.height < cfg.min_height) fail("resolution");
  if (item.height <= 0 ||
      std::abs(static_cast<double>(item.width) / item.height - 2.0) > cfg.aspect_tol) {
    fail("aspect");
  }
  if (item.mean_luma < cfg.b_lo || item.mean_luma > cfg.b_hi) fail("brightness");
  if (item.luma_std < cfg.c_min) fail("contrast");
  if (item.aesthetic_score < cfg.a_min) fail("aesthetic");
  return result;
}

// Rec. 709 luma mean and population standard deviation, the statistics the
// brightness/contrast gates read.
inline void luma_stats(const Image& img, double& mean, double& stddev) {
  check_image(img);
  if (img.channels != 1 && img.channels != 3) {
    throw std::invalid_argument("luma_stats: expected 1 or 3 channels");
  }
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  double sum = 0.0, sum_sq = 0.0;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double l = img.channels == 1
                           ? img.at(x, y, 0)
                           : 0.2126 * img.at(x, y, 0) + 0.7152 * img.at(x, y, 1) +
                                 0.0722 * img.at(x, y, 2);
      sum += l;
      sum_sq += l * l;
    }
  }
  mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
  stddev = std::sqrt(var);
}

struct ClusterModel {
  int k = 0;
  std::vector<std::vector<double>> centroids;
  std::vector<int> assignments;  // parallel to the item list
  std::uint64_t seed = 0;
  std::vector<double> objective_history;  // sum of squared distances per iteration
};

namespace detail {

inline double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    d += t * t;
  }
  return d;
}

inline int nearest_centroid(const std::vector<double>& e,
                            const std::vector<std::vector<double>>& centroids) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = sq_dist(e, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace detail

inline int default_cluster_count(std::size_t n) {
  const auto k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n) / 2.0)));
  return std::clamp(k, 1, 1024);
}

// Seeded k-means++ initialization followed by Lloyd iterations. Deterministic
// given (items, k, seed): every random draw comes from the counter generator.
// The objective is recorded per iteration and is non-increasing by
// construction; an empty cluster is reseeded to the point farthest from its
// assigned centroid.
inline ClusterModel cluster_embeddings(const std::vector<CurationItem>& items, int k,
                                       std::uint64_t seed, int max_iters = 100) {
  if (items.empty()) throw std::invalid_argument("cluster_embeddings: no items");
  if (k < 1) throw std::invalid_argument("cluster_embeddings: k must be at least 1");
  if (static_cast<std::size_t>(k) > items.size()) {
    throw std::invalid_argument("cluster_embeddings: k exceeds item count");
  }
  const std::size_t dim = items[0].embedding.size();
  if (dim == 0) throw std::invalid_argument("cluster_embeddings: empty embeddings");
  for (const auto& item : items) {
    if (item.embedding.size() != dim) {
      throw std::invalid_argument("cluster_embeddings: embedding dimension mismatch at '" +
                                  item.id + "'");
    }
    for (double v : item.embedding) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("cluster_embeddings: non-finite embedding at '" + item.id +
                                    "'");
      }
    }
  }

  const std::size_t n = items.size();
  ClusterModel model;
  model.k = k;
  model.seed = seed;

  CounterRng rng(seed);
  std::uint64_t counter = 0;

  // k-means++: first center uniform, then D^2-weighted.
  model.centroids.push_back(items[rng.below(counter++, n)].embedding);
  std::vector<double> d2(n);
  while (model.centroids.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : model.centroids) {
        best = std::min(best, detail::sq_dist(items[i].embedding, c));
      }
      d2[i] = best;
      total += best;
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform(counter++) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target) {
          pick = i;
          break;
        }
      }
    } else {
      // All points coincide with existing centers; any pick is equivalent.
      pick = rng.below(counter++, n);
    }
    model.centroids.push_back(items[pick].embedding);
  }

  model.assignments.assign(n, -1);
  for (int iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const int c = detail::nearest_centroid(items[i].embedding, model.centroids);
      if (c != model.assignments[i]) {
        model.assignments[i] = c;
        changed = true;
      }
      objective += detail::sq_dist(items[i].embedding, model.centroids[c]);
    }
    model.objective_history.push_back(objective);
    if (!changed) break;

    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const int c = model.assignments[i];
      ++counts[c];
      for (std::size_t j = 0; j < dim; ++j) sums[c][j] += items[i].embedding[j];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Reseed from the worst-fitting point (deterministic: max distance,
        // ties broken by lowest index).
        std::size_t worst = 0;
        double worst_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d =
              detail::sq_dist(items[i].embedding, model.centroids[model.assignments[i]]);
          if (d > worst_d) {
            worst_d = d;
            worst = i;
          }
        }
        model.centroids[c] = items[worst].embedding;
        continue;
      }
      for (std::size_t j = 0; j < dim; ++j) {
        model.centroids[c][j] = sums[c][j] / static_cast<double>(counts[c]);
      }
    }
  }
  return model;
}

// Budgeted per-cluster selection. Quotas follow cluster sizes with
// largest-remainder rounding; inside a cluster the representative share
// (ceil(rep_ratio * quota)) comes nearest the centroid and the rest farthest
// from it. All orderings tie-break on ascending id.
inline std::vector<std::string> diversity_sample(const ClusterModel& model,
                                                 const std::vector<CurationItem>& items,
                                                 std::size_t budget, double rep_ratio) {
  if (!(rep_ratio >= 0.0) || !(rep_ratio <= 1.0)) {
    throw std::invalid_argument("diversity_sample: rep_ratio must lie in [0, 1]");
  }
  if (budget > items.size()) {
    throw std::invalid_argument("diversity_sample: budget exceeds item count");
  }
  if (model.assignments.size() != items.size()) {
    throw std::invalid_argument("diversity_sample: model does not cover the item list");
  }

  const std::size_t n = items.size();
  std::vector<std::size_t> sizes(static_cast<std::size_t>(model.k), 0);
  for (int a : model.assignments) ++sizes[static_cast<std::size_t>(a)];

  // Largest-remainder quotas, ties broken by ascending cluster index.
  std::vector<std::size_t> quota(sizes.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    const double exact =
        static_cast<double>(budget) * static_cast<double>(sizes[c]) / static_cast<double>(n);
    quota[c] = static_cast<std::size_t>(std::floor(exact));
    assigned += quota[c];
    remainders.emplace_back(exact - std::floor(exact), c);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < budget; ++i) {
    ++quota[remainders[i].second];
    ++assigned;
  }

  std::vector<std::string> selected;
  selected.reserve(budget);
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (quota[c] == 0) continue;
    std::vector<std::pair<double, std::string>> dist;  // (distance to centroid, id)
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<std::size_t>(model.assignments[i]) != c) continue;
      dist.emplace_back(detail::sq_dist(items[i].embedding, model.centroids[c]), items[i].id);
    }
    const std::size_t m = quota[c];
    const auto rep = std::min<std::size_t>(
        static_cast<std::size_t>(std::ceil(rep_ratio * static_cast<double>(m))), m);

    auto nearest = dist;
    std::sort(nearest.begin(), nearest.end());
    std::set<std::string> taken;
    for (std::size_t i = 0; i < rep; ++i) {
      selected.push_back(nearest[i].second);
      taken.insert(nearest[i].second);
    }

    auto farthest = dist;
    std::sort(farthest.begin(), farthest.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    std::size_t need = m - rep;
    for (const auto& [d, id] : farthest) {
      if (need == 0) break;
      if (taken.count(id)) continue;
      selected.push_back(id);
      --need;
    }
  }
  return selected;
}

struct StageManifest {
  int stage = 1;
  int required_width = 1024;
  int required_height = 512;
  std::vector<std::string> item_ids;
  std::vector<std::string> filters_applied;
  std::map<std::string, bool> expert_approved;  // stage 3 only
};

// Required panorama resolution per funnel stage: the low-res broad stage,
// then the high-res refined and expert stages.
inline void stage_resolution(int stage, int& w, int& h) {
  if (stage == 1) {
    w = 1024;
    h = 512;
  } else if (stage == 2 || stage == 3) {
    w = 2048;
    h = 1024;
  } else {
    throw std::invalid_argument("stage must be 1, 2, or 3");
  }
}

// Validates items against the stage contract and records filter provenance.
// Stage 3 items must carry an ingested expert approval and, when the parent
// (stage 2) manifest is supplied, must be a subset of it.
inline StageManifest build_stage_manifest(
    int stage, const std::vector<CurationItem>& items,
    const std::vector<std::string>& filters_applied,
    const std::map<std::string, bool>& approvals = {},
    const StageManifest* parent = nullptr) {
  StageManifest manifest;
  manifest.stage = stage;
  stage_resolution(stage, manifest.required_width, manifest.required_height);
  manifest.filters_applied = filters_applied;

  std::set<std::string> seen;
  for (const auto& item : items) {
    if (!seen.insert(item.id).second) {
      throw std::invalid_argument("stage manifest: duplicate item '" + item.id + "'");
    }
    if (item.width != manifest.required_width || item.height != manifest.required_height) {
      throw std::invalid_argument("stage manifest: item '" + item.id + "' is " +
                                  std::to_string(item.width) + "x" +
                                  std::to_string(item.height) + ", stage " +
                                  std::to_string(stage) + " requires " +
                                  std::to_string(manifest.required_width) + "x" +
                                  std::to_string(manifest.required_height));
    }
    manifest.item_ids.push_back(item.id);
    if (stage == 3) {
      const auto flag = approvals.find(item.id);
      if (flag == approvals.end()) {
        throw std::invalid_argument("stage manifest: item '" + item.id +
                                    "' missing expert approval flag");
      }
      if (!flag->second) {
        throw std::invalid_argument("stage manifest: item '" + item.id +
                                    "' is not expert approved");
      }
      manifest.expert_approved[item.id] = true;
    }
  }
  if (parent) {
    const std::set<std::string> parent_ids(parent->item_ids.begin(), parent->item_ids.end());
    for (const auto& id : manifest.item_ids) {
      if (!parent_ids.count(id)) {
        throw std::invalid_argument("stage manifest: item '" + id +
                                    "' absent from the parent stage");
      }
    }
  }
  return manifest;
}

}  // namespace panobench

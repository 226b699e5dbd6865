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

#include "panobench/curation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace panobench {
namespace {

CurationItem good_item(const std::string& id) {
  CurationItem item;
  item.id = id;
  item.width = 2048;
  item.height = 1024;
  item.mean_luma = 0.5;
  item.luma_std = 0.2;
  item.aesthetic_score = 4.0;
  return item;
}

TEST(QualityFilter, UndersizedImageFailsWithResolutionReason) {
  CurationItem item = good_item("x");
  item.width = 512;
  item.height = 256;
  const FilterResult res = quality_filter(item, QualityConfig{});
  EXPECT_FALSE(res.pass);
  EXPECT_EQ(res.reasons, std::vector<std::string>{"resolution"});
}

TEST(QualityFilter, ExtremeThresholdsPassEverything) {
  QualityConfig cfg;
  cfg.min_width = 1;
  cfg.min_height = 1;
  cfg.aspect_tol = 1e300;
  cfg.b_lo = 0.0;
  cfg.b_hi = 1.0;
  cfg.c_min = 0.0;
  cfg.a_min = -1e300;
  CurationItem item;
  item.id = "tiny";
  item.width = 3;
  item.height = 7;
  EXPECT_TRUE(quality_filter(item, cfg).pass);
}

TEST(QualityFilter, BoundsAreInclusive) {
  const QualityConfig cfg;
  CurationItem item = good_item("b");
  item.width = cfg.min_width;
  item.height = cfg.min_height;
  item.mean_luma = cfg.b_lo;
  item.luma_std = cfg.c_min;
  item.aesthetic_score = cfg.a_min;
  EXPECT_TRUE(quality_filter(item, cfg).pass) << "lower bounds";

  item.mean_luma = cfg.b_hi;
  EXPECT_TRUE(quality_filter(item, cfg).pass) << "upper brightness bound";

  item.width = 2048;
  item.height = 1024 + static_cast<int>(1024 * cfg.aspect_tol / 2.0);  // still in tol
  EXPECT_TRUE(quality_filter(item, QualityConfig{}).pass);
}

TEST(QualityFilter, AllViolationsAreReported) {
  CurationItem item;
  item.id = "bad";
  item.width = 100;
  item.height = 90;  // bad resolution and aspect
  item.mean_luma = 0.05;
  item.luma_std = 0.0;
  item.aesthetic_score = -1.0;
  QualityConfig cfg;
  cfg.a_min = 2.0;
  const FilterResult res = quality_filter(item, cfg);
  EXPECT_FALSE(res.pass);
  EXPECT_EQ(res.reasons, (std::vector<std::string>{"resolution", "aspect", "brightness",
                                                   "contrast", "aesthetic"}));
}

TEST(QualityFilter, RelaxingThresholdsNeverFlipsPassToFail) {
  std::mt19937 gen(606);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    CurationItem item;
    item.id = "t";
    item.width = 256 + static_cast<int>(gen() % 4096);
    item.height = 128 + static_cast<int>(gen() % 2048);
    item.mean_luma = unit(gen);
    item.luma_std = unit(gen) * 0.5;
    item.aesthetic_score = unit(gen) * 5.0;

    QualityConfig strict;
    strict.min_width = 512 + static_cast<int>(gen() % 2048);
    strict.min_height = 256 + static_cast<int>(gen() % 1024);
    strict.aspect_tol = unit(gen) * 0.5;
    strict.b_lo = unit(gen) * 0.4;
    strict.b_hi = 0.6 + unit(gen) * 0.4;
    strict.c_min = unit(gen) * 0.2;
    strict.a_min = unit(gen) * 3.0;

    QualityConfig relaxed = strict;
    relaxed.min_width -= 100;
    relaxed.min_height -= 50;
    relaxed.aspect_tol += 0.25;
    relaxed.b_lo = std::max(0.0, relaxed.b_lo - 0.1);
    relaxed.b_hi = std::min(1.0, relaxed.b_hi + 0.1);
    relaxed.c_min = std::max(0.0, relaxed.c_min - 0.05);
    relaxed.a_min -= 1.0;

    if (quality_filter(item, strict).pass) {
      EXPECT_TRUE(quality_filter(item, relaxed).pass) << "trial " << trial;
    }
  }
}

TEST(QualityFilter, NanThresholdIsAnError) {
  QualityConfig cfg;
  cfg.c_min = std::nan("");
  EXPECT_THROW(quality_filter(good_item("n"), cfg), std::invalid_argument);
}

TEST(LumaStats, MatchesHandComputation) {
  Image img(2, 1, 1);
  img.at(0, 0, 0) = 0.0f;
  img.at(1, 0, 0) = 1.0f;
  double mean = -1.0, stddev = -1.0;
  luma_stats(img, mean, stddev);
  EXPECT_DOUBLE_EQ(mean, 0.5);
  EXPECT_DOUBLE_EQ(stddev, 0.5);  // population, not sample

  Image rgb(1, 1, 3);
  rgb.at(0, 0, 0) = 1.0f;
  luma_stats(rgb, mean, stddev);
  EXPECT_NEAR(mean, 0.2126, 1e-12);
  EXPECT_NEAR(stddev, 0.0, 1e-12);

  Image rgba(1, 1, 4);
  EXPECT_THROW(luma_stats(rgba, mean, stddev), std::invalid_argument);
}

std::vector<CurationItem> embedded_items(const std::vector<std::vector<double>>& embeddings,
                                         const std::string& prefix = "it") {
  std::vector<CurationItem> items;
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    CurationItem item = good_item(prefix + std::to_string(i));
    item.embedding = embeddings[i];
    items.push_back(std::move(item));
  }
  return items;
}

TEST(ClusterEmbeddings, SingleClusterCentroidIsTheMean) {
  const auto items = embedded_items({{1.0, 0.0}, {3.0, 2.0}, {5.0, 4.0}, {7.0, 6.0}});
  const ClusterModel model = cluster_embeddings(items, 1, 9);
  ASSERT_EQ(model.centroids.size(), 1u);
  EXPECT_NEAR(model.centroids[0][0], 4.0, 1e-12);
  EXPECT_NEAR(model.centroids[0][1], 3.0, 1e-12);
  for (int a : model.assignments) EXPECT_EQ(a, 0);
}

TEST(ClusterEmbeddings, SameSeedReproducesByteIdenticalModel) {
  std::mt19937 gen(12);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<std::vector<double>> embeddings;
  for (int i = 0; i < 30; ++i) embeddings.push_back({d(gen), d(gen), d(gen)});
  const auto items = embedded_items(embeddings);

  const ClusterModel a = cluster_embeddings(items, 4, 555);
  const ClusterModel b = cluster_embeddings(items, 4, 555);
  EXPECT_EQ(a.assignments, b.assignments);
  EXPECT_EQ(a.centroids, b.centroids);
  EXPECT_EQ(a.objective_history, b.objective_history);
}

TEST(ClusterEmbeddings, ObjectiveHistoryIsNonIncreasing) {
  std::mt19937 gen(13);
  std::uniform_real_distribution<double> d(0.0, 10.0);
  std::vector<std::vector<double>> embeddings;
  for (int i = 0; i < 60; ++i) embeddings.push_back({d(gen), d(gen)});
  const auto items = embedded_items(embeddings);
  const ClusterModel model = cluster_embeddings(items, 5, 404);
  ASSERT_FALSE(model.objective_history.empty());
  for (std::size_t i = 1; i < model.objective_history.size(); ++i) {
    EXPECT_LE(model.objective_history[i], model.objective_history[i - 1] + 1e-9);
  }
}

TEST(ClusterEmbeddings, SeparatedBlobsAreSplitAlongGroundTruth) {
  std::mt19937 gen(14);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<std::vector<double>> embeddings;
  for (int i = 0; i < 20; ++i) embeddings.push_back({noise(gen), noise(gen)});
  for (int i = 0; i < 20; ++i) embeddings.push_back({5.0 + noise(gen), 5.0 + noise(gen)});
  const auto items = embedded_items(embeddings);
  const ClusterModel model = cluster_embeddings(items, 2, 77);
  for (int i = 1; i < 20; ++i) EXPECT_EQ(model.assignments[i], model.assignments[0]);
  for (int i = 21; i < 40; ++i) EXPECT_EQ(model.assignments[i], model.assignments[20]);
  EXPECT_NE(model.assignments[0], model.assignments[20]);
}

// Brute force over all 2-partitions of 8 points: the model's converged
// objective must equal the global optimum.
TEST(ClusterEmbeddings, TwoClusterResultIsGloballyOptimalOnEightPoints) {
  const std::vector<std::vector<double>> embeddings = {
      {0.0, 0.0}, {0.1, 0.0}, {0.0, 0.1}, {0.1, 0.1},
      {5.0, 5.0}, {5.1, 5.0}, {5.0, 5.1}, {5.1, 5.1},
  };
  const auto items = embedded_items(embeddings);
  const ClusterModel model = cluster_embeddings(items, 2, 3);

  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < 255; ++mask) {  // both sides non-empty
    std::vector<double> mean_a(2, 0.0), mean_b(2, 0.0);
    int na = 0, nb = 0;
    for (int i = 0; i < 8; ++i) {
      auto& m = (mask >> i) & 1u ? mean_a : mean_b;
      ((mask >> i) & 1u ? na : nb) += 1;
      for (int j = 0; j < 2; ++j) m[j] += embeddings[i][j];
    }
    for (int j = 0; j < 2; ++j) {
      mean_a[j] /= na;
      mean_b[j] /= nb;
    }
    double obj = 0.0;
    for (int i = 0; i < 8; ++i) {
      const auto& m = (mask >> i) & 1u ? mean_a : mean_b;
      obj += detail::sq_dist(embeddings[i], m);
    }
    best = std::min(best, obj);
  }
  EXPECT_NEAR(model.objective_history.back(), best, 1e-9);
}

TEST(ClusterEmbeddings, CoincidentPointsStayWellFormed) {
  const auto items = embedded_items({{1.0}, {1.0}, {1.0}, {1.0}, {1.0}});
  const ClusterModel model = cluster_embeddings(items, 2, 6);
  EXPECT_EQ(model.assignments.size(), 5u);
  for (int a : model.assignments) EXPECT_TRUE(a == 0 || a == 1);
  EXPECT_DOUBLE_EQ(model.objective_history.back(), 0.0);
}

TEST(ClusterEmbeddings, InputValidation) {
  const auto items = embedded_items({{1.0}, {2.0}});
  EXPECT_THROW(cluster_embeddings({}, 1, 0), std::invalid_argument);
  EXPECT_THROW(cluster_embeddings(items, 0, 0), std::invalid_argument);
  EXPECT_THROW(cluster_embeddings(items, 3, 0), std::invalid_argument);

  auto ragged = items;
  ragged[1].embedding = {1.0, 2.0};
  EXPECT_THROW(cluster_embeddings(ragged, 1, 0), std::invalid_argument);

  auto poisoned = items;
  poisoned[0].embedding = {std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(cluster_embeddings(poisoned, 1, 0), std::invalid_argument);
}

TEST(DefaultClusterCount, FollowsSquareRootHeuristicWithCap) {
  EXPECT_EQ(default_cluster_count(2), 1);
  EXPECT_EQ(default_cluster_count(50), 5);
  EXPECT_EQ(default_cluster_count(20000), 100);
  EXPECT_EQ(default_cluster_count(10000000), 1024);
  EXPECT_EQ(default_cluster_count(1), 1);
}

TEST(DiversitySample, FullBudgetSelectsEveryItem) {
  const auto items = embedded_items({{0.0}, {0.25}, {10.0}, {10.25}, {0.5}, {9.75}});
  const ClusterModel model = cluster_embeddings(items, 2, 1);
  const auto selected = diversity_sample(model, items, items.size(), 0.5);
  EXPECT_EQ(selected.size(), items.size());
  EXPECT_EQ(std::set<std::string>(selected.begin(), selected.end()).size(), items.size());
}

TEST(DiversitySample, MatchesHandEnumeratedDistanceTable) {
  // Two 6-point clusters with exact dyadic means (0 and 10). Distance ranks
  // within each cluster: {x0, x1} nearest (d 0), {x4, x5} farthest (d 0.25).
  const auto items = embedded_items(
      {{0.0}, {0.0}, {0.25}, {-0.25}, {0.5}, {-0.5},
       {10.0}, {10.0}, {10.25}, {9.75}, {10.5}, {9.5}});
  const ClusterModel model = cluster_embeddings(items, 2, 99);
  ASSERT_EQ(model.objective_history.back(),
            4 * (0.0625 + 0.25));  // sanity: converged to the two exact means

  // Quotas 3 + 3; rep share ceil(0.5 * 3) = 2 nearest, 1 farthest.
  const auto selected = diversity_sample(model, items, 6, 0.5);
  const std::set<std::string> got(selected.begin(), selected.end());
  const std::set<std::string> want = {"it0", "it1", "it4", "it6", "it7", "it10"};
  EXPECT_EQ(got, want);
}

TEST(DiversitySample, RepRatioOneTakesNearestOnly) {
  const auto items = embedded_items({{0.0}, {0.25}, {0.5}, {4.0}, {4.25}, {4.5}});
  const ClusterModel model = cluster_embeddings(items, 2, 2);
  const auto selected = diversity_sample(model, items, 2, 1.0);
  // One pick per cluster, nearest to each centroid: means 0.25 and 4.25 sit
  // exactly on the middle items.
  const std::set<std::string> got(selected.begin(), selected.end());
  EXPECT_EQ(got, (std::set<std::string>{"it1", "it4"}));
}

TEST(DiversitySample, RepRatioZeroTakesFarthestOnly) {
  const auto items = embedded_items({{0.0}, {0.25}, {1.0}, {4.0}, {4.25}, {5.0}});
  const ClusterModel model = cluster_embeddings(items, 2, 2);
  const auto selected = diversity_sample(model, items, 2, 0.0);
  const std::set<std::string> got(selected.begin(), selected.end());
  EXPECT_EQ(got, (std::set<std::string>{"it2", "it5"}));
}

TEST(DiversitySample, QuotasFollowClusterSizesExactly) {
  // Sizes 2 and 6; budget 4 -> exact quotas 1.0 and 3.0.
  const auto items = embedded_items(
      {{0.0}, {0.25}, {10.0}, {10.1}, {10.2}, {10.3}, {10.4}, {10.5}});
  const ClusterModel model = cluster_embeddings(items, 2, 4);
  const auto selected = diversity_sample(model, items, 4, 0.5);
  int small = 0, large = 0;
  for (const auto& id : selected) {
    (std::stoi(id.substr(2)) < 2 ? small : large) += 1;
  }
  EXPECT_EQ(small, 1);
  EXPECT_EQ(large, 3);
}

TEST(DiversitySample, InputValidation) {
  const auto items = embedded_items({{0.0}, {1.0}});
  const ClusterModel model = cluster_embeddings(items, 1, 0);
  EXPECT_THROW(diversity_sample(model, items, 3, 0.5), std::invalid_argument);
  EXPECT_THROW(diversity_sample(model, items, 1, -0.1), std::invalid_argument);
  EXPECT_THROW(diversity_sample(model, items, 1, 1.1), std::invalid_argument);

  ClusterModel stale = model;
  stale.assignments.pop_back();
  EXPECT_THROW(diversity_sample(stale, items, 1, 0.5), std::invalid_argument);
}

TEST(StageResolution, PerStageRequirements) {
  int w = 0, h = 0;
  stage_resolution(1, w, h);
  EXPECT_EQ(w, 1024);
  EXPECT_EQ(h, 512);
  stage_resolution(2, w, h);
  EXPECT_EQ(w, 2048);
  EXPECT_EQ(h, 1024);
  stage_resolution(3, w, h);
  EXPECT_EQ(w, 2048);
  EXPECT_EQ(h, 1024);
  EXPECT_THROW(stage_resolution(0, w, h), std::invalid_argument);
  EXPECT_THROW(stage_resolution(4, w, h), std::invalid_argument);
}

TEST(StageManifest, StageOneAcceptsLowResolutionItems) {
  CurationItem item = good_item("s1");
  item.width = 1024;
  item.height = 512;
  const StageManifest manifest = build_stage_manifest(1, {item}, {"resolution", "aspect"});
  EXPECT_EQ(manifest.stage, 1);
  EXPECT_EQ(manifest.item_ids, std::vector<std::string>{"s1"});
  EXPECT_EQ(manifest.filters_applied, (std::vector<std::string>{"resolution", "aspect"}));
}

TEST(StageManifest, ResolutionViolationNamesTheItem) {
  CurationItem item = good_item("low-res-7");
  item.width = 1024;
  item.height = 512;
  try {
    build_stage_manifest(2, {item}, {});
    FAIL() << "expected resolution error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("low-res-7"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("2048x1024"), std::string::npos);
  }
}

TEST(StageManifest, StageThreeRequiresTrueApprovalFlags) {
  const CurationItem item = good_item("s3");
  EXPECT_THROW(build_stage_manifest(3, {item}, {}), std::invalid_argument);
  EXPECT_THROW(build_stage_manifest(3, {item}, {}, {{"s3", false}}), std::invalid_argument);
  const StageManifest manifest = build_stage_manifest(3, {item}, {}, {{"s3", true}});
  EXPECT_TRUE(manifest.expert_approved.at("s3"));
}

TEST(StageManifest, StageThreeMustBeSubsetOfParent) {
  const CurationItem a = good_item("a"), b = good_item("b");
  const StageManifest parent = build_stage_manifest(2, {a}, {});
  EXPECT_NO_THROW(build_stage_manifest(3, {a}, {}, {{"a", true}}, &parent));
  EXPECT_THROW(build_stage_manifest(3, {b}, {}, {{"b", true}}, &parent),
               std::invalid_argument);
}

TEST(StageManifest, DuplicateIdsRejected) {
  const CurationItem item = good_item("dup");
  EXPECT_THROW(build_stage_manifest(2, {item, item}, {}), std::invalid_argument);
}

}  // namespace
}  // namespace panobench

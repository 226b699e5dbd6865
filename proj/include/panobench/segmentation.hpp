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

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace panobench {

enum class ClassGroup { layout, semantic };

struct ClassEntry {
  std::uint8_t id = 0;
  std::string name;
  ClassGroup group = ClassGroup::semantic;

  bool operator==(const ClassEntry&) const = default;
};

struct ClassRegistry {
  std::vector<ClassEntry> entries;
  std::uint8_t background_id = 0;

  bool operator==(const ClassRegistry&) const = default;

  const ClassEntry* find(std::uint8_t id) const noexcept {
    for (const auto& e : entries)
      if (e.id == id) return &e;
    return nullptr;
  }
  const ClassEntry* find(const std::string& name) const noexcept {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

inline void check_registry(const ClassRegistry& reg) {
  std::set<std::uint8_t> ids;
  std::set<std::string> names;
  for (const auto& e : reg.entries) {
    if (!ids.insert(e.id).second) {
      throw std::invalid_argument("class registry: duplicate id " + std::to_string(e.id));
    }
    if (!names.insert(e.name).second) {
      throw std::invalid_argument("class registry: duplicate name '" + e.name + "'");
    }
  }
  if (!ids.count(reg.background_id)) {
    throw std::invalid_argument("class registry: background id not present");
  }
}

// Default six-class benchmark registry plus background.
inline ClassRegistry default_registry() {
  ClassRegistry reg;
  reg.background_id = 0;
  reg.entries = {
      {0, "Background", ClassGroup::layout},
      {1, "Wall", ClassGroup::layout},
      {2, "Door", ClassGroup::semantic},
      {3, "Window", ClassGroup::semantic},
      {4, "Cabinet", ClassGroup::semantic},
      {5, "Sofa", ClassGroup::semantic},
      {6, "Bed", ClassGroup::semantic},
  };
  return reg;
}

// Single-channel class-index raster bound to a registry.
struct ClassRaster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;
  std::shared_ptr<const ClassRegistry> registry;

  ClassRaster() = default;
  ClassRaster(int w, int h, std::shared_ptr<const ClassRegistry> reg)
      : width(w), height(h),
        data(static_cast<std::size_t>(w) * h, reg ? reg->background_id : 0),
        registry(std::move(reg)) {
    if (w <= 0 || h <= 0) {
      throw std::invalid_argument("ClassRaster: dimensions must be positive");
    }
  }

  std::uint8_t at(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x];
  }
  std::uint8_t& at(int x, int y) {
    return data[static_cast<std::size_t>(y) * width + x];
  }
};

inline void check_class_raster(const ClassRaster& raster) {
  if (raster.width <= 0 || raster.height <= 0) {
    throw std::invalid_argument("class raster: degenerate dimensions");
  }
  if (raster.data.size() != static_cast<std::size_t>(raster.width) * raster.height) {
    throw std::invalid_argument("class raster: data size does not match dimensions");
  }
  if (!raster.registry) {
    throw std::invalid_argument("class raster: missing registry");
  }
  check_registry(*raster.registry);
  for (std::uint8_t id : raster.data) {
    if (!raster.registry->find(id)) {
      throw std::invalid_argument("class raster: pixel class " + std::to_string(id) +
                                  " not in registry");
    }
  }
}

inline void check_same_frame(const ClassRaster& a, const ClassRaster& b) {
  if (a.width != b.width || a.height != b.height) {
    throw std::invalid_argument("class rasters: dimension mismatch");
  }
  if (!a.registry || !b.registry || !(*a.registry == *b.registry)) {
    throw std::invalid_argument("class rasters: registry mismatch");
  }
}

// Pixel IoU of one class between two rasters. Empty union -> nullopt (the
// class is absent from both and contributes nothing to averages).
inline std::optional<double> class_iou(const ClassRaster& a, const ClassRaster& b,
                                       std::uint8_t class_id) {
  check_same_frame(a, b);
  std::size_t inter = 0;
  std::size_t uni = 0;
  const std::size_t n = a.data.size();
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_a = a.data[i] == class_id;
    const bool in_b = b.data[i] == class_id;
    inter += in_a && in_b;
    uni += in_a || in_b;
  }
  if (uni == 0) return std::nullopt;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

struct ConsistencyReport {
  // One entry per requested class, in request order. nullopt marks a class
  // absent from both rasters.
  std::vector<std::pair<std::string, std::optional<double>>> per_class;
  double average = 0.0;   // unweighted mean over evaluated (non-absent) classes
  std::size_t evaluated = 0;
};

inline ConsistencyReport spatial_consistency(const ClassRaster& pred,
                                             const ClassRaster& ref,
                                             const std::vector<std::uint8_t>& classes) {
  if (classes.empty()) {
    throw std::invalid_argument("spatial_consistency: class list is empty");
  }
  check_same_frame(pred, ref);
  ConsistencyReport report;
  double sum = 0.0;
  for (std::uint8_t c : classes) {
    const ClassEntry* entry = pred.registry->find(c);
    if (!entry) {
      throw std::invalid_argument("spatial_consistency: class " + std::to_string(c) +
                                  " not in registry");
    }
    const auto iou = class_iou(pred, ref, c);
    if (iou) {
      sum += *iou;
      ++report.evaluated;
    }
    report.per_class.emplace_back(entry->name, iou);
  }
  if (report.evaluated == 0) {
    throw std::runtime_error("spatial_consistency: every requested class is absent");
  }
  report.average = sum / static_cast<double>(report.evaluated);
  return report;
}

// The spatial-consistency average exposed as a reward channel in [0, 1].
inline double structural_fidelity_reward(const ClassRaster& pred, const ClassRaster& ref,
                                         const std::vector<std::uint8_t>& classes) {
  return spatial_consistency(pred, ref, classes).average;
}

}  // namespace panobench

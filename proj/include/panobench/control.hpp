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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "panobench/image.hpp"
#include "panobench/rng.hpp"
#include "panobench/segmentation.hpp"

namespace panobench {

using NormalMap = Image;

struct ControlProvenance {
  std::string normal_source_id;
  std::string segmentation_source_id;
};

// Fused conditioning artifact: empty-room surface normals stacked with a
// coarse instance-class channel. Sources are kept in their native forms so
// channel extraction reproduces the inputs bit-exactly.
struct ControlSignal {
  NormalMap normals;       // 3 channels, encoded (n+1)/2
  ClassRaster instances;   // class index per pixel
  ControlProvenance provenance;

  int width() const { return normals.width; }
  int height() const { return normals.height; }
  static constexpr int channels() { return 4; }  // 3 normal + 1 instance index
};

inline ControlSignal fuse_control(NormalMap normals, ClassRaster instances,
                                  ControlProvenance provenance = {}) {
  check_image(normals);
  if (normals.channels != 3) {
    throw std::invalid_argument("fuse_control: normal map must have 3 channels");
  }
  check_normal_map(normals);
  check_class_raster(instances);
  if (normals.width != instances.width || normals.height != instances.height) {
    throw std::invalid_argument("fuse_control: source dimension mismatch");
  }
  return {std::move(normals), std::move(instances), std::move(provenance)};
}

// One plane per registry entry, in registry order, 1.0 where the pixel holds
// that class. Expansion for consumers that want binary planes instead of the
// compact index channel.
inline Image one_hot_instances(const ClassRaster& raster) {
  check_class_raster(raster);
  const auto& entries = raster.registry->entries;
  Image planes(raster.width, raster.height, static_cast<int>(entries.size()));
  std::map<std::uint8_t, int> plane_of;
  for (std::size_t k = 0; k < entries.size(); ++k) plane_of[entries[k].id] = static_cast<int>(k);
  for (int y = 0; y < raster.height; ++y)
    for (int x = 0; x < raster.width; ++x)
      planes.at(x, y, plane_of.at(raster.at(x, y))) = 1.0f;
  return planes;
}

// Token grid of reference latents, row-major with interleaved channels.
struct LatentGrid {
  int grid_h = 0;
  int grid_w = 0;
  int channels = 0;
  std::vector<float> data;

  LatentGrid() = default;
  LatentGrid(int h, int w, int c)
      : grid_h(h), grid_w(w), channels(c),
        data(static_cast<std::size_t>(h) * w * c, 0.0f) {
    if (h <= 0 || w <= 0 || c <= 0) {
      throw std::invalid_argument("LatentGrid: dimensions must be positive");
    }
  }

  float at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * grid_w + x) * channels + c];
  }
  float& at(int x, int y, int c) {
    return data[(static_cast<std::size_t>(y) * grid_w + x) * channels + c];
  }
};

inline void check_latent(const LatentGrid& z) {
  if (z.grid_h <= 0 || z.grid_w <= 0 || z.channels <= 0) {
    throw std::invalid_argument("latent grid: degenerate dimensions");
  }
  if (z.data.size() != static_cast<std::size_t>(z.grid_h) * z.grid_w * z.channels) {
    throw std::invalid_argument("latent grid: data size does not match dimensions");
  }
  for (float v : z.data) {
    if (!std::isfinite(v)) throw std::invalid_argument("latent grid: non-finite value");
  }
}

// Everything needed to rebuild the mask: the draw is a pure function of
// (seed, block index), so the kept flags are redundant but serialized for
// audit.
struct LatentMaskRecord {
  std::uint64_t seed = 0;
  double keep_prob = 1.0;
  int patch = 1;
  int blocks_h = 0;
  int blocks_w = 0;
  std::vector<std::uint8_t> kept;  // row-major over blocks, 1 = kept
};

// Block-wise Bernoulli keep mask over the token grid. Blocks are patch x patch
// token tiles (partial tiles at the bottom/right edges allowed); a dropped
// block zeroes every channel of every token it covers.
inline std::pair<LatentGrid, LatentMaskRecord> latent_mask(const LatentGrid& z,
                                                           double keep_prob, int patch,
                                                           std::uint64_t seed) {
  check_latent(z);
  if (!(keep_prob >= 0.0) || !(keep_prob <= 1.0)) {
    throw std::invalid_argument("latent_mask: keep_prob must lie in [0, 1]");
  }
  if (patch <= 0) {
    throw std::invalid_argument("latent_mask: patch size must be positive");
  }
  LatentMaskRecord record;
  record.seed = seed;
  record.keep_prob = keep_prob;
  record.patch = patch;
  record.blocks_h = (z.grid_h + patch - 1) / patch;
  record.blocks_w = (z.grid_w + patch - 1) / patch;
  record.kept.resize(static_cast<std::size_t>(record.blocks_h) * record.blocks_w);

  CounterRng rng(seed);
  for (std::size_t b = 0; b < record.kept.size(); ++b) {
    record.kept[b] = rng.bernoulli(b, keep_prob) ? 1 : 0;
  }

  LatentGrid masked = z;
  for (int y = 0; y < z.grid_h; ++y) {
    for (int x = 0; x < z.grid_w; ++x) {
      const std::size_t b =
          static_cast<std::size_t>(y / patch) * record.blocks_w + (x / patch);
      if (record.kept[b]) continue;
      for (int c = 0; c < z.channels; ++c) masked.at(x, y, c) = 0.0f;
    }
  }
  return {std::move(masked), std::move(record)};
}

// 64-bit FNV-1a over raw bytes; stable content fingerprint for depth rasters.
inline std::uint64_t fnv1a64(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string to_hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

// Fingerprint of a single-channel depth raster in its serialized 16-bit form,
// so the hash survives a PNG round trip.
inline std::string depth_hash(const Image& depth) {
  check_image(depth);
  if (depth.channels != 1) {
    throw std::invalid_argument("depth_hash: depth raster must be single-channel");
  }
  std::vector<std::uint8_t> bytes;
  bytes.reserve(depth.data.size() * 2);
  for (float v : depth.data) {
    const auto q = static_cast<std::uint16_t>(std::lround(static_cast<double>(v) * 65535.0));
    bytes.push_back(static_cast<std::uint8_t>(q & 0xFF));
    bytes.push_back(static_cast<std::uint8_t>(q >> 8));
  }
  return to_hex64(fnv1a64(bytes.data(), bytes.size()));
}

// The standardized depth template a room type's references are warped to.
struct TemplateRecord {
  std::string room_type;
  std::string template_id;
  std::string depth_hash;  // hex fingerprint of the template depth raster
};

// One standardized reference artifact, as produced by the external warping
// step. Conformance checking validates these against the template.
struct ReferenceRecord {
  std::string record_id;
  std::string room_type;
  int width = 0;
  int height = 0;
  std::string template_id;
  std::string depth_hash;
};

struct ConformanceOffence {
  std::string record_id;
  std::string reason;
};

struct ConformanceReport {
  bool pass = false;
  std::size_t checked = 0;
  std::vector<ConformanceOffence> offenders;
};

// PASS iff every record names the template's id, matches its depth hash, and
// all records agree on resolution. Resolution offenders are the records off
// the strict-majority resolution; with no majority, every record is listed.
inline ConformanceReport check_template_conformance(const std::vector<ReferenceRecord>& refs,
                                                    const TemplateRecord& tmpl) {
  if (refs.empty()) {
    throw std::invalid_argument("check_template_conformance: no reference records");
  }
  ConformanceReport report;
  report.checked = refs.size();
  for (const auto& r : refs) {
    if (r.template_id != tmpl.template_id) {
      report.offenders.push_back({r.record_id, "template_id '" + r.template_id +
                                                   "' != '" + tmpl.template_id + "'"});
    }
    if (r.depth_hash != tmpl.depth_hash) {
      report.offenders.push_back({r.record_id, "depth_hash mismatch"});
    }
  }

  std::map<std::pair<int, int>, std::size_t> res_count;
  for (const auto& r : refs) ++res_count[{r.width, r.height}];
  if (res_count.size() > 1) {
    std::pair<int, int> majority{0, 0};
    std::size_t best = 0;
    for (const auto& [res, count] : res_count) {
      if (count > best) {
        best = count;
        majority = res;
      }
    }
    const bool has_majority = best * 2 > refs.size();
    for (const auto& r : refs) {
      if (!has_majority || std::pair<int, int>{r.width, r.height} != majority) {
        report.offenders.push_back(
            {r.record_id, "resolution " + std::to_string(r.width) + "x" +
                              std::to_string(r.height) + " inconsistent"});
      }
    }
  }

  report.pass = report.offenders.empty();
  return report;
}

}  // namespace panobench

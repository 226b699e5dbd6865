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
#include <stdexcept>
#include <string>
#include <vector>

namespace panobench {

// Row-major, channel-interleaved float raster. Channel values live in [0, 1].
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> data;

  Image() = default;
  Image(int w, int h, int c, float fill = 0.0f)
      : width(w), height(h), channels(c),
        data(static_cast<std::size_t>(w) * h * c, fill) {
    if (w <= 0 || h <= 0 || c <= 0) {
      throw std::invalid_argument("Image: dimensions must be positive");
    }
  }

  bool empty() const noexcept { return data.empty(); }

  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * width + x) * channels + c;
  }
  float at(int x, int y, int c) const { return data[index(x, y, c)]; }
  float& at(int x, int y, int c) { return data[index(x, y, c)]; }
};

// An equirectangular panorama is an Image whose width is twice its height;
// operations that require the 2:1 invariant call check_panorama first.
using Panorama = Image;

inline void check_image(const Image& img) {
  if (img.width <= 0 || img.height <= 0 || img.channels <= 0) {
    throw std::invalid_argument("image: empty or degenerate dimensions");
  }
  if (img.data.size() !=
      static_cast<std::size_t>(img.width) * img.height * img.channels) {
    throw std::invalid_argument("image: data size does not match dimensions");
  }
  for (float v : img.data) {
    if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
      throw std::invalid_argument("image: channel values must be finite and in [0, 1]");
    }
  }
}

inline void check_panorama(const Panorama& pano) {
  check_image(pano);
  if (pano.width != 2 * pano.height) {
    throw std::invalid_argument(
        "panorama: width must equal 2 x height, got " +
        std::to_string(pano.width) + "x" + std::to_string(pano.height));
  }
  if (pano.channels != 1 && pano.channels != 3) {
    throw std::invalid_argument("panorama: channels must be 1 or 3");
  }
}

// Normal maps store per-pixel unit vectors encoded as stored = (n + 1) / 2.
struct Normal3 {
  double x = 0;
  double y = 0;
  double z = 0;
};

inline Normal3 decode_normal(const Image& map, int x, int y) {
  return Normal3{2.0 * map.at(x, y, 0) - 1.0,
                 2.0 * map.at(x, y, 1) - 1.0,
                 2.0 * map.at(x, y, 2) - 1.0};
}

// Decoded vectors must have norm within norm_tol of 1 on at least
// min_valid_fraction of pixels.
inline void check_normal_map(const Image& map, double norm_tol = 0.05,
                             double min_valid_fraction = 0.99) {
  check_image(map);
  if (map.channels != 3) {
    throw std::invalid_argument("normal map: expected 3 channels");
  }
  std::size_t valid = 0;
  const std::size_t total = static_cast<std::size_t>(map.width) * map.height;
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      const Normal3 n = decode_normal(map, x, y);
      const double norm = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
      if (norm >= 1.0 - norm_tol && norm <= 1.0 + norm_tol) ++valid;
    }
  }
  if (static_cast<double>(valid) < min_valid_fraction * static_cast<double>(total)) {
    throw std::invalid_argument("normal map: too many non-unit vectors");
  }
}

}  // namespace panobench

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
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "panobench/image.hpp"
#include "panobench/segmentation.hpp"

namespace panobench {

inline constexpr double kPi = std::numbers::pi_v<double>;

// Direction on the unit sphere. Longitude in [-pi, pi), latitude in
// [-pi/2, pi/2]; latitude grows toward the zenith.
struct SphereDirection {
  double lon = 0.0;
  double lat = 0.0;
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline double norm(const Vec3& v) {
  return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
}

// y is up, z is forward (lon = 0, lat = 0), x is right (lon = +pi/2).
inline Vec3 sphere_to_unit(const SphereDirection& d) {
  const double cl = std::cos(d.lat);
  return {cl * std::sin(d.lon), std::sin(d.lat), cl * std::cos(d.lon)};
}

inline SphereDirection unit_to_sphere(const Vec3& v) {
  const double y = std::clamp(v.y, -1.0, 1.0);
  return {std::atan2(v.x, v.z), std::asin(y)};
}

// Continuous pixel coordinates (u, v) on a w x h equirect grid to a sphere
// direction. Pixel (i, j) has its center at (i + 0.5, j + 0.5). u = 0 maps to
// lon = -pi, v = 0 to lat = +pi/2 (top row is the zenith side).
inline SphereDirection erp_to_sphere(double u, double v, int w, int h) {
  if (w <= 0 || h <= 0) {
    throw std::invalid_argument("erp_to_sphere: degenerate grid");
  }
  if (!(u >= 0.0) || !(u <= w) || !(v >= 0.0) || !(v <= h)) {
    throw std::domain_error("erp_to_sphere: pixel coordinates outside the grid");
  }
  return {(u / w) * 2.0 * kPi - kPi, kPi / 2.0 - (v / h) * kPi};
}

// Inverse of erp_to_sphere. Longitude is wrapped into [-pi, pi) first so the
// result lands in [0, w).
inline void sphere_to_erp(const SphereDirection& d, int w, int h, double& u, double& v) {
  if (w <= 0 || h <= 0) {
    throw std::invalid_argument("sphere_to_erp: degenerate grid");
  }
  double lon = std::fmod(d.lon + kPi, 2.0 * kPi);
  if (lon < 0.0) lon += 2.0 * kPi;
  u = (lon / (2.0 * kPi)) * w;
  v = ((kPi / 2.0 - d.lat) / kPi) * h;
}

// Bilinear sample at continuous pixel coordinates. Wraps horizontally (the
// equirect seam), clamps vertically. Texel i covers [i, i+1) with its center
// at i + 0.5.
inline void sample_bilinear(const Image& img, double u, double v, float* out) {
  const double x = u - 0.5;
  const double y = v - 0.5;
  double x0f = std::floor(x);
  double y0f = std::floor(y);
  const double fx = x - x0f;
  const double fy = y - y0f;

  int x0 = static_cast<int>(x0f) % img.width;
  if (x0 < 0) x0 += img.width;
  const int x1 = (x0 + 1) % img.width;
  const int y0 = std::clamp(static_cast<int>(y0f), 0, img.height - 1);
  const int y1 = std::clamp(static_cast<int>(y0f) + 1, 0, img.height - 1);

  const double w00 = (1.0 - fx) * (1.0 - fy);
  const double w10 = fx * (1.0 - fy);
  const double w01 = (1.0 - fx) * fy;
  const double w11 = fx * fy;
  for (int c = 0; c < img.channels; ++c) {
    out[c] = static_cast<float>(w00 * img.at(x0, y0, c) + w10 * img.at(x1, y0, c) +
                                w01 * img.at(x0, y1, c) + w11 * img.at(x1, y1, c));
  }
}

// Pinhole view into the panorama. Roll is fixed at zero; positive pitch looks
// up. Vertical field of view follows from hfov and the aspect ratio.
struct CameraSpec {
  double yaw = 0.0;     // radians
  double pitch = 0.0;   // radians
  double hfov = kPi / 2.0;
  int out_width = 512;
  int out_height = 512;
};

inline void check_camera(const CameraSpec& cam) {
  if (cam.out_width < 8 || cam.out_height < 8) {
    throw std::invalid_argument("camera: output dimensions must be at least 8");
  }
  if (!(cam.hfov > 0.0) || !(cam.hfov < kPi)) {
    throw std::invalid_argument("camera: hfov must lie in (0, pi)");
  }
  if (!(cam.pitch >= -kPi / 2.0) || !(cam.pitch <= kPi / 2.0)) {
    throw std::invalid_argument("camera: pitch must lie in [-pi/2, pi/2]");
  }
  if (!std::isfinite(cam.yaw)) {
    throw std::invalid_argument("camera: yaw must be finite");
  }
}

// Camera ray direction in world coordinates for output pixel center (i, j).
// The camera frame is rotated by pitch about x, then yaw about y.
inline Vec3 nfov_ray(const CameraSpec& cam, double i, double j) {
  const double f = (cam.out_width / 2.0) / std::tan(cam.hfov / 2.0);
  const double cx = cam.out_width / 2.0;
  const double cy = cam.out_height / 2.0;
  Vec3 d{i - cx, cy - j, f};
  const double n = norm(d);
  d = {d.x / n, d.y / n, d.z / n};

  const double cp = std::cos(cam.pitch), sp = std::sin(cam.pitch);
  d = {d.x, d.y * cp + d.z * sp, -d.y * sp + d.z * cp};
  const double cyaw = std::cos(cam.yaw), syaw = std::sin(cam.yaw);
  return {d.x * cyaw + d.z * syaw, d.y, -d.x * syaw + d.z * cyaw};
}

// Render a perspective view by inverse projection and bilinear resampling of
// the equirect source.
inline Image render_nfov(const Panorama& pano, const CameraSpec& cam) {
  check_panorama(pano);
  check_camera(cam);
  Image out(cam.out_width, cam.out_height, pano.channels);
  std::vector<float> px(static_cast<std::size_t>(pano.channels));
  for (int j = 0; j < cam.out_height; ++j) {
    for (int i = 0; i < cam.out_width; ++i) {
      const Vec3 dir = nfov_ray(cam, i + 0.5, j + 0.5);
      double u, v;
      sphere_to_erp(unit_to_sphere(dir), pano.width, pano.height, u, v);
      sample_bilinear(pano, u, v, px.data());
      for (int c = 0; c < pano.channels; ++c) out.at(i, j, c) = px[c];
    }
  }
  return out;
}

// Nearest-neighbour counterpart for class rasters (labels must not blend).
inline ClassRaster render_nfov_classes(const ClassRaster& raster, const CameraSpec& cam) {
  check_class_raster(raster);
  check_camera(cam);
  ClassRaster out(cam.out_width, cam.out_height, raster.registry);
  for (int j = 0; j < cam.out_height; ++j) {
    for (int i = 0; i < cam.out_width; ++i) {
      const Vec3 dir = nfov_ray(cam, i + 0.5, j + 0.5);
      double u, v;
      sphere_to_erp(unit_to_sphere(dir), raster.width, raster.height, u, v);
      int x = static_cast<int>(std::floor(u)) % raster.width;
      if (x < 0) x += raster.width;
      const int y = std::clamp(static_cast<int>(std::floor(v)), 0, raster.height - 1);
      out.at(i, j) = raster.at(x, y);
    }
  }
  return out;
}

struct ViewCamera {
  CameraSpec camera;
  std::uint8_t class_id = 0;
  std::string class_name;
  std::size_t component_px = 0;
};

struct ViewPlacement {
  std::vector<ViewCamera> cameras;
  std::vector<std::string> warnings;
};

namespace detail {

// Connected components of one class, 4-connected with horizontal wrap so a
// region split by the seam stays one component. Returns pixel index lists in
// first-encounter scan order.
inline std::vector<std::vector<std::size_t>> class_components(const ClassRaster& raster,
                                                              std::uint8_t class_id) {
  const int w = raster.width, h = raster.height;
  std::vector<char> seen(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < raster.data.size(); ++start) {
    if (seen[start] || raster.data[start] != class_id) continue;
    components.emplace_back();
    auto& comp = components.back();
    stack.assign(1, start);
    seen[start] = 1;
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      comp.push_back(p);
      const int x = static_cast<int>(p % w);
      const int y = static_cast<int>(p / w);
      const int nx[4] = {(x + 1) % w, (x + w - 1) % w, x, x};
      const int ny[4] = {y, y, y - 1, y + 1};
      for (int k = 0; k < 4; ++k) {
        if (ny[k] < 0 || ny[k] >= h) continue;
        const std::size_t q = static_cast<std::size_t>(ny[k]) * w + nx[k];
        if (!seen[q] && raster.data[q] == class_id) {
          seen[q] = 1;
          stack.push_back(q);
        }
      }
    }
  }
  return components;
}

}  // namespace detail

// One camera per sufficiently large connected region of each target class,
// aimed at the region's spherical centroid. Components are found with seam
// wrap, so furniture crossing the equirect boundary gets a single view.
// view_template supplies hfov and output dims; its yaw/pitch are overwritten.
//
// min_component_px == 0 selects an area threshold proportional to the raster
// size (64 px at 2048 x 1024).
inline ViewPlacement furniture_view_cameras(const ClassRaster& raster,
                                            const std::vector<std::uint8_t>& target_classes,
                                            const CameraSpec& view_template = {},
                                            std::size_t min_component_px = 0) {
  check_class_raster(raster);
  check_camera(view_template);
  if (min_component_px == 0) {
    const double scaled =
        64.0 * (static_cast<double>(raster.width) * raster.height) / (2048.0 * 1024.0);
    min_component_px = static_cast<std::size_t>(std::max(1.0, std::round(scaled)));
  }
  ViewPlacement placement;
  for (std::uint8_t class_id : target_classes) {
    const ClassEntry* entry = raster.registry->find(class_id);
    if (!entry) {
      throw std::invalid_argument("furniture_view_cameras: class " +
                                  std::to_string(class_id) + " not in registry");
    }
    for (const auto& comp : detail::class_components(raster, class_id)) {
      if (comp.size() < min_component_px) continue;
      Vec3 sum{};
      for (std::size_t p : comp) {
        const double u = static_cast<double>(p % raster.width) + 0.5;
        const double v = static_cast<double>(p / raster.width) + 0.5;
        const Vec3 unit = sphere_to_unit(erp_to_sphere(u, v, raster.width, raster.height));
        sum = {sum.x + unit.x, sum.y + unit.y, sum.z + unit.z};
      }
      const double n = norm(sum);
      if (n < 1e-6) {
        // Antipodal-balanced region; no stable aim direction exists.
        placement.warnings.push_back("degenerate centroid for class " + entry->name +
                                     " component of " + std::to_string(comp.size()) +
                                     " px; view skipped");
        continue;
      }
      const SphereDirection center = unit_to_sphere({sum.x / n, sum.y / n, sum.z / n});
      CameraSpec cam = view_template;
      cam.yaw = center.lon;
      cam.pitch = center.lat;
      placement.cameras.push_back({cam, class_id, entry->name, comp.size()});
    }
  }
  return placement;
}

// Mean absolute difference between the first and last pixel columns. A clean
// wrap-around render keeps this near the panorama's local gradient scale.
inline double seam_continuity(const Panorama& pano) {
  check_panorama(pano);
  double sum = 0.0;
  for (int y = 0; y < pano.height; ++y)
    for (int c = 0; c < pano.channels; ++c)
      sum += std::abs(static_cast<double>(pano.at(0, y, c)) -
                      static_cast<double>(pano.at(pano.width - 1, y, c)));
  return sum / (static_cast<double>(pano.height) * pano.channels);
}

}  // namespace panobench

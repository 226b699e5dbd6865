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

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "panobench/image.hpp"
#include "panobench/segmentation.hpp"

namespace panobench {

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FileHandle = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace detail

// Writes 1- or 3-channel [0,1] data as 8- or 16-bit gray/RGB PNG. 16-bit
// samples are packed big-endian per the PNG byte order.
inline void write_png(const std::string& path, const Image& img, int bit_depth = 8) {
  check_image(img);
  if (img.channels != 1 && img.channels != 3) {
    throw std::invalid_argument("write_png: only 1 or 3 channels supported");
  }
  if (bit_depth != 8 && bit_depth != 16) {
    throw std::invalid_argument("write_png: bit depth must be 8 or 16");
  }

  detail::FileHandle fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw std::runtime_error("write_png: cannot open '" + path + "'");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, info ? &info : nullptr);
    throw std::runtime_error("write_png: libpng init failed");
  }

  // All buffers live before the setjmp point; the jump target only cleans up
  // libpng state and rethrows.
  const int bytes_per_sample = bit_depth / 8;
  const std::size_t stride =
      static_cast<std::size_t>(img.width) * img.channels * bytes_per_sample;
  std::vector<std::uint8_t> bytes(stride * static_cast<std::size_t>(img.height));
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height));

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("write_png: failed writing '" + path + "'");
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
               static_cast<png_uint_32>(img.height), bit_depth,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);

  const double maxval = bit_depth == 8 ? 255.0 : 65535.0;
  std::size_t o = 0;
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    const auto q = static_cast<std::uint32_t>(
        std::lround(static_cast<double>(img.data[i]) * maxval));
    if (bit_depth == 8) {
      bytes[o++] = static_cast<std::uint8_t>(q);
    } else {
      bytes[o++] = static_cast<std::uint8_t>(q >> 8);
      bytes[o++] = static_cast<std::uint8_t>(q & 0xFF);
    }
  }
  for (int y = 0; y < img.height; ++y) rows[static_cast<std::size_t>(y)] = &bytes[y * stride];

  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
}

// Reads gray/RGB PNG into [0,1] floats. Palette images expand to RGB, alpha
// is stripped, sub-8-bit gray widens to 8.
inline Image read_png(const std::string& path) {
  detail::FileHandle fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw std::runtime_error("read_png: cannot open '" + path + "'");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    throw std::runtime_error("read_png: libpng init failed");
  }

  std::vector<std::uint8_t> bytes;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("read_png: failed reading '" + path + "'");
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);

  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  const int channels =
      color == PNG_COLOR_TYPE_GRAY ? 1 : (color == PNG_COLOR_TYPE_RGB ? 3 : 0);
  if (channels == 0 || (depth != 8 && depth != 16)) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("read_png: unsupported format in '" + path + "'");
  }

  const std::size_t stride = static_cast<std::size_t>(w) * channels * (depth / 8);
  bytes.resize(stride * h);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = &bytes[y * stride];
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  Image img(static_cast<int>(w), static_cast<int>(h), channels);
  const double maxval = depth == 8 ? 255.0 : 65535.0;
  std::size_t o = 0;
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    std::uint32_t q;
    if (depth == 8) {
      q = bytes[o++];
    } else {
      q = static_cast<std::uint32_t>(bytes[o] << 8) | bytes[o + 1];
      o += 2;
    }
    img.data[i] = static_cast<float>(q / maxval);
  }
  return img;
}

// Class rasters serialize as 8-bit gray with raw class ids (no scaling).
inline void write_class_png(const std::string& path, const ClassRaster& raster) {
  check_class_raster(raster);

  detail::FileHandle fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw std::runtime_error("write_class_png: cannot open '" + path + "'");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, info ? &info : nullptr);
    throw std::runtime_error("write_class_png: libpng init failed");
  }

  std::vector<png_bytep> rows(static_cast<std::size_t>(raster.height));

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("write_class_png: failed writing '" + path + "'");
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(raster.width),
               static_cast<png_uint_32>(raster.height), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  for (int y = 0; y < raster.height; ++y) {
    rows[static_cast<std::size_t>(y)] =
        const_cast<png_bytep>(&raster.data[static_cast<std::size_t>(y) * raster.width]);
  }
  png_set_rows(png, info, rows.data());
  png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
  png_destroy_write_struct(&png, &info);
}

inline ClassRaster read_class_png(const std::string& path,
                                  std::shared_ptr<const ClassRegistry> registry) {
  if (!registry) throw std::invalid_argument("read_class_png: null registry");

  detail::FileHandle fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw std::runtime_error("read_class_png: cannot open '" + path + "'");

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    throw std::runtime_error("read_class_png: libpng init failed");
  }

  std::vector<std::uint8_t> bytes;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("read_class_png: failed reading '" + path + "'");
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);
  png_set_expand_gray_1_2_4_to_8(png);
  png_read_update_info(png, info);

  const png_uint_32 w = png_get_image_width(png, info);
  const png_uint_32 h = png_get_image_height(png, info);
  if (png_get_color_type(png, info) != PNG_COLOR_TYPE_GRAY ||
      png_get_bit_depth(png, info) != 8) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw std::runtime_error("read_class_png: '" + path + "' is not 8-bit gray");
  }

  bytes.resize(static_cast<std::size_t>(w) * h);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) rows[y] = &bytes[static_cast<std::size_t>(y) * w];
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  ClassRaster raster(static_cast<int>(w), static_cast<int>(h), std::move(registry));
  raster.data = std::move(bytes);
  check_class_raster(raster);  // rejects ids outside the registry
  return raster;
}

}  // namespace panobench

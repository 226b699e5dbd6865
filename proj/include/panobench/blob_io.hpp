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

#include <bit>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "panobench/control.hpp"

namespace panobench {

// Latent / embedding blob layout, all little-endian:
//   bytes 0..3   magic "PBL1"
//   bytes 4..7   u32 grid_h
//   bytes 8..11  u32 grid_w
//   bytes 12..15 u32 channels
//   then grid_h * grid_w * channels float32, row-major, channel-interleaved.
inline constexpr char kBlobMagic[4] = {'P', 'B', 'L', '1'};

namespace detail {

inline void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

inline std::uint32_t get_u32le(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace detail

inline std::vector<std::uint8_t> latent_to_bytes(const LatentGrid& z) {
  check_latent(z);
  std::vector<std::uint8_t> out;
  out.reserve(16 + z.data.size() * 4);
  out.insert(out.end(), kBlobMagic, kBlobMagic + 4);
  detail::put_u32le(out, static_cast<std::uint32_t>(z.grid_h));
  detail::put_u32le(out, static_cast<std::uint32_t>(z.grid_w));
  detail::put_u32le(out, static_cast<std::uint32_t>(z.channels));
  for (float f : z.data) detail::put_u32le(out, std::bit_cast<std::uint32_t>(f));
  return out;
}

inline LatentGrid latent_from_bytes(const std::vector<std::uint8_t>& bytes,
                                    const std::string& origin = "<buffer>") {
  if (bytes.size() < 16 || !std::equal(kBlobMagic, kBlobMagic + 4, bytes.begin())) {
    throw std::runtime_error("latent blob '" + origin + "': bad header");
  }
  const std::uint32_t gh = detail::get_u32le(&bytes[4]);
  const std::uint32_t gw = detail::get_u32le(&bytes[8]);
  const std::uint32_t ch = detail::get_u32le(&bytes[12]);
  if (gh == 0 || gw == 0 || ch == 0) {
    throw std::runtime_error("latent blob '" + origin + "': zero dimension");
  }
  const std::size_t count = static_cast<std::size_t>(gh) * gw * ch;
  if (bytes.size() != 16 + count * 4) {
    throw std::runtime_error("latent blob '" + origin + "': size mismatch");
  }
  LatentGrid z(static_cast<int>(gh), static_cast<int>(gw), static_cast<int>(ch));
  for (std::size_t i = 0; i < count; ++i) {
    z.data[i] = std::bit_cast<float>(detail::get_u32le(&bytes[16 + i * 4]));
  }
  check_latent(z);
  return z;
}

inline void write_latent_blob(const std::string& path, const LatentGrid& z) {
  const auto bytes = latent_to_bytes(z);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_latent_blob: cannot open '" + path + "'");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write_latent_blob: failed writing '" + path + "'");
}

inline LatentGrid read_latent_blob(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_latent_blob: cannot open '" + path + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return latent_from_bytes(bytes, path);
}

// Embeddings reuse the latent container as a 1 x 1 x D grid.
inline void write_embedding_blob(const std::string& path, const std::vector<double>& e) {
  if (e.empty()) throw std::invalid_argument("write_embedding_blob: empty embedding");
  LatentGrid z(1, 1, static_cast<int>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i) z.data[i] = static_cast<float>(e[i]);
  write_latent_blob(path, z);
}

inline std::vector<double> read_embedding_blob(const std::string& path) {
  const LatentGrid z = read_latent_blob(path);
  if (z.grid_h != 1 || z.grid_w != 1) {
    throw std::runtime_error("read_embedding_blob: '" + path + "' is not a 1x1 grid");
  }
  return {z.data.begin(), z.data.end()};
}

}  // namespace panobench

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
#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "panobench/formats.hpp"
#include "panobench/geometry.hpp"
#include "panobench/png_io.hpp"
#include "panobench/segmentation.hpp"

namespace panobench {

inline constexpr int kToolkitMajorVersion = 1;

// Raised on structural manifest problems (the usage-error exit path, as
// opposed to per-item failures, which are isolated).
struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ManifestItem {
  std::string id;
  std::string panorama;
  std::string pred_raster;
  std::string ref_raster;
  std::string normals;    // optional; consumed by control subcommands
  std::string embedding;  // optional; consumed by curation subcommands
  std::map<std::string, double> scores;  // ingested external metrics
};

struct EvalConfig {
  std::vector<std::string> classes = {"Wall", "Door", "Window", "Cabinet", "Sofa", "Bed"};
  std::vector<std::string> view_classes = {"Cabinet", "Sofa", "Bed"};
  double view_hfov_deg = 90.0;
  int view_size = 512;
  bool write_views = true;
};

struct RunManifest {
  int version = kToolkitMajorVersion;
  std::shared_ptr<const ClassRegistry> registry;
  std::vector<ManifestItem> items;
  EvalConfig config;
};

inline EvalConfig eval_config_from_json(const json& j) {
  EvalConfig cfg;
  if (j.contains("classes")) cfg.classes = j.at("classes").get<std::vector<std::string>>();
  if (j.contains("view_classes")) {
    cfg.view_classes = j.at("view_classes").get<std::vector<std::string>>();
  }
  if (j.contains("view_hfov_deg")) cfg.view_hfov_deg = j.at("view_hfov_deg").get<double>();
  if (j.contains("view_size")) cfg.view_size = j.at("view_size").get<int>();
  if (j.contains("write_views")) cfg.write_views = j.at("write_views").get<bool>();
  return cfg;
}

// Loads and structurally validates a run manifest. Relative item paths are
// resolved against the manifest's directory. File existence is checked per
// item at processing time, not here, so one bad path cannot abort a batch.
inline RunManifest load_run_manifest(const std::string& path) {
  json j;
  try {
    j = load_json_file(path);
  } catch (const std::exception& e) {
    throw ManifestError(e.what());
  }
  RunManifest m;
  try {
    if (!j.contains("version")) throw std::runtime_error("manifest: missing version");
    m.version = j.at("version").get<int>();
    if (m.version != kToolkitMajorVersion) {
      throw std::runtime_error("manifest: version " + std::to_string(m.version) +
                               " does not match toolkit major version " +
                               std::to_string(kToolkitMajorVersion));
    }
    m.registry = std::make_shared<ClassRegistry>(
        j.contains("registry") ? registry_from_json(j.at("registry")) : default_registry());
    if (j.contains("config")) m.config = eval_config_from_json(j.at("config"));

    if (!j.contains("items") || !j.at("items").is_array() || j.at("items").empty()) {
      throw std::runtime_error("manifest: no items");
    }
    const auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& p) {
      if (p.empty()) return p;
      const std::filesystem::path fp(p);
      return fp.is_absolute() ? p : (base / fp).string();
    };
    std::set<std::string> ids;
    for (const auto& it : j.at("items")) {
      ManifestItem item;
      item.id = it.at("id").get<std::string>();
      if (item.id.empty()) throw std::runtime_error("manifest: empty item id");
      if (!ids.insert(item.id).second) {
        throw std::runtime_error("manifest: duplicate item id '" + item.id + "'");
      }
      item.panorama = resolve(it.at("panorama").get<std::string>());
      item.pred_raster = resolve(it.at("pred_raster").get<std::string>());
      item.ref_raster = resolve(it.at("ref_raster").get<std::string>());
      if (it.contains("normals")) item.normals = resolve(it.at("normals").get<std::string>());
      if (it.contains("embedding")) {
        item.embedding = resolve(it.at("embedding").get<std::string>());
      }
      if (item.panorama.empty() || item.pred_raster.empty() || item.ref_raster.empty()) {
        throw std::runtime_error("manifest: item '" + item.id + "' has an empty path");
      }
      if (it.contains("scores")) {
        item.scores = it.at("scores").get<std::map<std::string, double>>();
      }
      m.items.push_back(std::move(item));
    }

    // Class names must resolve against the registry up front.
    for (const auto& list : {m.config.classes, m.config.view_classes}) {
      for (const auto& name : list) {
        if (!m.registry->find(name)) {
          throw std::runtime_error("manifest: class '" + name + "' not in registry");
        }
      }
    }
    if (m.config.classes.empty()) throw std::runtime_error("manifest: empty class list");
    if (m.config.view_size < 8) throw std::runtime_error("manifest: view_size below 8");
    if (!(m.config.view_hfov_deg > 0.0) || !(m.config.view_hfov_deg < 180.0)) {
      throw std::runtime_error("manifest: view_hfov_deg outside (0, 180)");
    }
  } catch (const ManifestError&) {
    throw;
  } catch (const std::exception& e) {
    throw ManifestError(e.what());
  }
  return m;
}

struct ItemResult {
  std::string id;
  bool failed = false;
  std::string error;
  std::vector<std::pair<std::string, std::optional<double>>> per_class;
  std::optional<double> average;
  std::optional<double> seam;
  std::map<std::string, double> external;
  std::vector<std::string> view_files;
  std::vector<std::string> warnings;
};

struct EvalReport {
  std::vector<std::string> class_columns;
  std::vector<ItemResult> items;
  std::vector<std::optional<double>> aggregate_per_class;
  std::optional<double> aggregate_average;
  std::optional<double> aggregate_seam;
  std::map<std::string, double> aggregate_external;
  std::size_t failed_count = 0;
};

namespace detail {

inline ItemResult eval_one_item(const ManifestItem& item, const RunManifest& manifest,
                                const std::filesystem::path& views_dir) {
  ItemResult result;
  result.id = item.id;
  result.external = item.scores;

  std::vector<std::uint8_t> class_ids;
  for (const auto& name : manifest.config.classes) {
    class_ids.push_back(manifest.registry->find(name)->id);
  }

  const Panorama pano = read_png(item.panorama);
  check_panorama(pano);
  result.seam = seam_continuity(pano);

  const ClassRaster pred = read_class_png(item.pred_raster, manifest.registry);
  const ClassRaster ref = read_class_png(item.ref_raster, manifest.registry);
  const ConsistencyReport consistency = spatial_consistency(pred, ref, class_ids);
  result.per_class = consistency.per_class;
  result.average = consistency.average;

  if (manifest.config.write_views && !manifest.config.view_classes.empty()) {
    std::vector<std::uint8_t> view_ids;
    for (const auto& name : manifest.config.view_classes) {
      view_ids.push_back(manifest.registry->find(name)->id);
    }
    CameraSpec view_template;
    view_template.hfov = manifest.config.view_hfov_deg * kPi / 180.0;
    view_template.out_width = manifest.config.view_size;
    view_template.out_height = manifest.config.view_size;
    // Aim from the reference raster: competing generators get scored at
    // identical viewpoints.
    const ViewPlacement placement = furniture_view_cameras(ref, view_ids, view_template);
    result.warnings = placement.warnings;
    std::map<std::string, int> counter_by_class;
    for (const auto& view : placement.cameras) {
      const int k = counter_by_class[view.class_name]++;
      const Image nfov = render_nfov(pano, view.camera);
      const auto file =
          views_dir / (item.id + "_" + view.class_name + "_" + std::to_string(k) + ".png");
      write_png(file.string(), nfov, 8);
      result.view_files.push_back(file.string());
    }
  }
  return result;
}

}  // namespace detail

// Column-wise means over non-failed rows; a class column averages the rows
// where that class was evaluated, external columns the rows carrying them.
inline void aggregate_report(EvalReport& report) {
  report.aggregate_per_class.assign(report.class_columns.size(), std::nullopt);
  std::vector<double> class_sum(report.class_columns.size(), 0.0);
  std::vector<std::size_t> class_n(report.class_columns.size(), 0);
  double avg_sum = 0.0, seam_sum = 0.0;
  std::size_t avg_n = 0, seam_n = 0;
  std::map<std::string, std::pair<double, std::size_t>> ext;

  for (const auto& item : report.items) {
    if (item.failed) continue;
    for (std::size_t c = 0; c < item.per_class.size(); ++c) {
      if (item.per_class[c].second) {
        class_sum[c] += *item.per_class[c].second;
        ++class_n[c];
      }
    }
    if (item.average) {
      avg_sum += *item.average;
      ++avg_n;
    }
    if (item.seam) {
      seam_sum += *item.seam;
      ++seam_n;
    }
    for (const auto& [name, value] : item.external) {
      ext[name].first += value;
      ++ext[name].second;
    }
  }
  for (std::size_t c = 0; c < report.class_columns.size(); ++c) {
    if (class_n[c]) report.aggregate_per_class[c] = class_sum[c] / class_n[c];
  }
  if (avg_n) report.aggregate_average = avg_sum / static_cast<double>(avg_n);
  if (seam_n) report.aggregate_seam = seam_sum / static_cast<double>(seam_n);
  for (const auto& [name, acc] : ext) {
    report.aggregate_external[name] = acc.first / static_cast<double>(acc.second);
  }
}

inline std::string eval_report_to_csv(const EvalReport& report) {
  std::set<std::string> score_cols;
  for (const auto& item : report.items) {
    for (const auto& [name, value] : item.external) score_cols.insert(name);
  }
  std::string out = "id";
  for (const auto& c : report.class_columns) out += "," + c;
  out += ",Average,Seam";
  for (const auto& s : score_cols) out += "," + s;
  out += ",status\n";

  auto cell = [](const std::optional<double>& v) { return v ? csv_num(*v) : std::string(); };
  for (const auto& item : report.items) {
    out += item.id;
    for (const auto& [name, iou] : item.per_class) out += "," + cell(iou);
    if (item.per_class.empty()) {
      out.append(report.class_columns.size(), ',');
    }
    out += "," + cell(item.average) + "," + cell(item.seam);
    for (const auto& s : score_cols) {
      const auto it = item.external.find(s);
      out += "," + (it == item.external.end() ? std::string() : csv_num(it->second));
    }
    out += item.failed ? ",FAILED\n" : ",ok\n";
  }

  out += "aggregate";
  for (const auto& v : report.aggregate_per_class) out += "," + cell(v);
  out += "," + cell(report.aggregate_average) + "," + cell(report.aggregate_seam);
  for (const auto& s : score_cols) {
    const auto it = report.aggregate_external.find(s);
    out += "," + (it == report.aggregate_external.end() ? std::string() : csv_num(it->second));
  }
  out += ",ok\n";
  return out;
}

inline json eval_report_to_json(const EvalReport& report) {
  json j;
  j["classes"] = report.class_columns;
  j["failed_count"] = report.failed_count;
  j["items"] = json::array();
  for (const auto& item : report.items) {
    json ji;
    ji["id"] = item.id;
    ji["status"] = item.failed ? "FAILED" : "ok";
    if (item.failed) ji["error"] = item.error;
    json per_class = json::object();
    for (const auto& [name, iou] : item.per_class) {
      per_class[name] = iou ? json(*iou) : json(nullptr);
    }
    ji["per_class"] = std::move(per_class);
    if (item.average) ji["average"] = *item.average;
    if (item.seam) ji["seam"] = *item.seam;
    ji["external"] = item.external;
    ji["views"] = item.view_files;
    if (!item.warnings.empty()) ji["warnings"] = item.warnings;
    j["items"].push_back(std::move(ji));
  }
  json agg;
  json agg_classes = json::object();
  for (std::size_t c = 0; c < report.class_columns.size(); ++c) {
    agg_classes[report.class_columns[c]] =
        report.aggregate_per_class[c] ? json(*report.aggregate_per_class[c]) : json(nullptr);
  }
  agg["per_class"] = std::move(agg_classes);
  if (report.aggregate_average) agg["average"] = *report.aggregate_average;
  if (report.aggregate_seam) agg["seam"] = *report.aggregate_seam;
  agg["external"] = report.aggregate_external;
  j["aggregate"] = std::move(agg);
  return j;
}

// Runs the batch: per item, spatial consistency between predicted and
// reference rasters, seam score of the panorama, furniture-centered view
// extraction for downstream perceptual scorers, and external-score join.
// Item failures are recorded, never fatal. Reports land in out_dir.
inline EvalReport run_eval(const RunManifest& manifest, const std::string& out_dir,
                           int jobs = 1) {
  const std::filesystem::path out(out_dir);
  const std::filesystem::path views_dir = out / "views";
  std::filesystem::create_directories(out);
  if (manifest.config.write_views) std::filesystem::create_directories(views_dir);

  EvalReport report;
  report.class_columns = manifest.config.classes;
  report.items.resize(manifest.items.size());

  jobs = std::clamp(jobs, 1, 64);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= manifest.items.size()) break;
      try {
        report.items[i] = detail::eval_one_item(manifest.items[i], manifest, views_dir);
      } catch (const std::exception& e) {
        report.items[i] = ItemResult{};
        report.items[i].id = manifest.items[i].id;
        report.items[i].failed = true;
        report.items[i].error = e.what();
        report.items[i].external = manifest.items[i].scores;
      }
    }
  };
  if (jobs == 1 || manifest.items.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& item : report.items) report.failed_count += item.failed;
  aggregate_report(report);

  write_text_file((out / "report.csv").string(), eval_report_to_csv(report));
  write_text_file((out / "report.json").string(), eval_report_to_json(report).dump(2) + "\n");
  return report;
}

// Stable process exit contract: 0 clean, 2 when any item failed.
inline int eval_exit_code(const EvalReport& report) {
  return report.failed_count == 0 ? 0 : 2;
}

}  // namespace panobench

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

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "panobench/control.hpp"
#include "panobench/curation.hpp"
#include "panobench/elements.hpp"
#include "panobench/scoring.hpp"
#include "panobench/segmentation.hpp"

// Manifest, record, and report (de)serialization. JSON objects render with
// alphabetically sorted keys and shortest round-trip floats, so identical
// inputs always produce byte-identical files.

namespace panobench {

using json = nlohmann::json;

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline json parse_json(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw std::runtime_error("malformed JSON in " + origin);
  return j;
}

inline json load_json_file(const std::string& path) {
  return parse_json(read_text_file(path), "'" + path + "'");
}

// Fixed-precision float for CSV cells: enough digits to survive a round trip,
// stable across platforms.
inline std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Class registry

inline json registry_to_json(const ClassRegistry& reg) {
  json j;
  j["background_id"] = reg.background_id;
  j["classes"] = json::array();
  for (const auto& e : reg.entries) {
    j["classes"].push_back({{"id", e.id},
                            {"name", e.name},
                            {"group", e.group == ClassGroup::layout ? "layout" : "semantic"}});
  }
  return j;
}

inline ClassRegistry registry_from_json(const json& j) {
  ClassRegistry reg;
  reg.background_id = j.at("background_id").get<std::uint8_t>();
  for (const auto& c : j.at("classes")) {
    ClassEntry e;
    e.id = c.at("id").get<std::uint8_t>();
    e.name = c.at("name").get<std::string>();
    const auto group = c.at("group").get<std::string>();
    if (group != "layout" && group != "semantic") {
      throw std::runtime_error("class '" + e.name + "': unknown group '" + group + "'");
    }
    e.group = group == "layout" ? ClassGroup::layout : ClassGroup::semantic;
    reg.entries.push_back(std::move(e));
  }
  check_registry(reg);
  return reg;
}

// ---------------------------------------------------------------------------
// Latent mask records

inline json mask_record_to_json(const LatentMaskRecord& r) {
  json j;
  j["seed"] = r.seed;
  j["keep_prob"] = r.keep_prob;
  j["patch"] = r.patch;
  j["blocks_h"] = r.blocks_h;
  j["blocks_w"] = r.blocks_w;
  j["kept"] = json::array();
  for (std::uint8_t k : r.kept) j["kept"].push_back(static_cast<int>(k));
  return j;
}

inline LatentMaskRecord mask_record_from_json(const json& j) {
  LatentMaskRecord r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.keep_prob = j.at("keep_prob").get<double>();
  r.patch = j.at("patch").get<int>();
  r.blocks_h = j.at("blocks_h").get<int>();
  r.blocks_w = j.at("blocks_w").get<int>();
  for (const auto& k : j.at("kept")) r.kept.push_back(k.get<int>() ? 1 : 0);
  if (r.kept.size() != static_cast<std::size_t>(r.blocks_h) * r.blocks_w) {
    throw std::runtime_error("mask record: kept flags do not match block grid");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Template conformance

inline json template_to_json(const TemplateRecord& t) {
  return {{"room_type", t.room_type},
          {"template_id", t.template_id},
          {"depth_hash", t.depth_hash}};
}

inline TemplateRecord template_from_json(const json& j) {
  return {j.at("room_type").get<std::string>(), j.at("template_id").get<std::string>(),
          j.at("depth_hash").get<std::string>()};
}

inline json reference_to_json(const ReferenceRecord& r) {
  return {{"record_id", r.record_id}, {"room_type", r.room_type}, {"width", r.width},
          {"height", r.height},       {"template_id", r.template_id},
          {"depth_hash", r.depth_hash}};
}

inline ReferenceRecord reference_from_json(const json& j) {
  ReferenceRecord r;
  r.record_id = j.at("record_id").get<std::string>();
  r.room_type = j.at("room_type").get<std::string>();
  r.width = j.at("width").get<int>();
  r.height = j.at("height").get<int>();
  r.template_id = j.at("template_id").get<std::string>();
  r.depth_hash = j.at("depth_hash").get<std::string>();
  return r;
}

inline json conformance_to_json(const ConformanceReport& report) {
  json j;
  j["pass"] = report.pass;
  j["checked"] = report.checked;
  j["offenders"] = json::array();
  for (const auto& o : report.offenders) {
    j["offenders"].push_back({{"record_id", o.record_id}, {"reason", o.reason}});
  }
  return j;
}

// ---------------------------------------------------------------------------
// Elements and masked sets

inline json element_to_json(const Element& e) {
  return {{"category", e.category}, {"attributes", e.attributes}};
}

inline Element element_from_json(const json& j) {
  return make_element(j.at("category").get<std::string>(),
                      j.at("attributes").get<std::vector<std::string>>());
}

inline json element_set_to_json(const ElementSet& set) {
  json j;
  j["style"] = set.style;
  j["room_type"] = set.room_type;
  j["elements"] = json::array();
  for (const auto& e : set.elements) j["elements"].push_back(element_to_json(e));
  return j;
}

inline ElementSet element_set_from_json(const json& j) {
  ElementSet set;
  set.style = j.at("style").get<std::string>();
  set.room_type = j.at("room_type").get<std::string>();
  for (const auto& e : j.at("elements")) set.elements.push_back(element_from_json(e));
  check_element_set(set);
  return set;
}

inline json masking_config_to_json(const MaskingConfig& cfg) {
  return {{"p_attr_fur", cfg.p_attr_fur},
          {"p_cat_dec", cfg.p_cat_dec},
          {"p_attr_dec", cfg.p_attr_dec}};
}

inline MaskingConfig masking_config_from_json(const json& j) {
  MaskingConfig cfg;
  if (j.contains("p_attr_fur")) cfg.p_attr_fur = j.at("p_attr_fur").get<double>();
  if (j.contains("p_cat_dec")) cfg.p_cat_dec = j.at("p_cat_dec").get<double>();
  if (j.contains("p_attr_dec")) cfg.p_attr_dec = j.at("p_attr_dec").get<double>();
  check_masking_config(cfg);
  return cfg;
}

inline json masked_set_to_json(const MaskedElementSet& set) {
  json j;
  j["style"] = set.style;
  j["room_type"] = set.room_type;
  j["seed"] = set.seed;
  j["config"] = masking_config_to_json(set.config);
  j["elements"] = json::array();
  for (const auto& m : set.elements) {
    json e = element_to_json(m.element);
    e["category_masked"] = m.category_masked;
    json flags = json::array();
    for (std::uint8_t f : m.attribute_masked) flags.push_back(static_cast<bool>(f));
    e["attribute_masked"] = std::move(flags);
    // Rendered token view, for consumers that never unmask.
    e["masked_category"] = masked_category(m);
    e["masked_attributes"] = masked_attributes(m);
    j["elements"].push_back(std::move(e));
  }
  return j;
}

inline MaskedElementSet masked_set_from_json(const json& j) {
  MaskedElementSet set;
  set.style = j.at("style").get<std::string>();
  set.room_type = j.at("room_type").get<std::string>();
  set.seed = j.at("seed").get<std::uint64_t>();
  set.config = masking_config_from_json(j.at("config"));
  for (const auto& e : j.at("elements")) {
    MaskedElement m;
    m.element = element_from_json(e);
    m.category_masked = e.at("category_masked").get<bool>();
    for (const auto& f : e.at("attribute_masked")) {
      m.attribute_masked.push_back(f.get<bool>() ? 1 : 0);
    }
    if (m.attribute_masked.size() != m.element.attributes.size()) {
      throw std::runtime_error("masked element: flag count does not match attributes");
    }
    set.elements.push_back(std::move(m));
  }
  return set;
}

// One corpus line: masked inputs plus the target description.
inline std::string training_record_to_jsonl(const TrainingRecord& r) {
  json j;
  j["inputs"] = masked_set_to_json(r.inputs);
  j["target"] = r.target_description;
  return j.dump();
}

inline TrainingRecord training_record_from_jsonl(const std::string& line) {
  const json j = parse_json(line, "corpus line");
  TrainingRecord r;
  r.inputs = masked_set_from_json(j.at("inputs"));
  r.target_description = j.at("target").get<std::string>();
  if (r.target_description.empty()) {
    throw std::runtime_error("corpus line: empty target description");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Compatibility table

inline json compatibility_to_json(const CompatibilityTable& t) {
  json j;
  j["attribute_class"] = t.attribute_class;
  j["class_hosts"] = t.class_hosts;
  return j;
}

inline CompatibilityTable compatibility_from_json(const json& j) {
  CompatibilityTable t;
  t.attribute_class =
      j.at("attribute_class").get<std::map<std::string, std::string>>();
  t.class_hosts =
      j.at("class_hosts").get<std::map<std::string, std::vector<std::string>>>();
  return t;
}

// ---------------------------------------------------------------------------
// Curation

inline json quality_config_to_json(const QualityConfig& cfg) {
  return {{"min_width", cfg.min_width}, {"min_height", cfg.min_height},
          {"aspect_tol", cfg.aspect_tol}, {"b_lo", cfg.b_lo}, {"b_hi", cfg.b_hi},
          {"c_min", cfg.c_min},          {"a_min", cfg.a_min}};
}

inline QualityConfig quality_config_from_json(const json& j) {
  QualityConfig cfg;
  if (j.contains("min_width")) cfg.min_width = j.at("min_width").get<int>();
  if (j.contains("min_height")) cfg.min_height = j.at("min_height").get<int>();
  if (j.contains("aspect_tol")) cfg.aspect_tol = j.at("aspect_tol").get<double>();
  if (j.contains("b_lo")) cfg.b_lo = j.at("b_lo").get<double>();
  if (j.contains("b_hi")) cfg.b_hi = j.at("b_hi").get<double>();
  if (j.contains("c_min")) cfg.c_min = j.at("c_min").get<double>();
  if (j.contains("a_min")) cfg.a_min = j.at("a_min").get<double>();
  return cfg;
}

// Items travel as a JSON table; embeddings either inline or referenced by
// blob path (resolved by the caller).
inline json curation_item_to_json(const CurationItem& item) {
  json j;
  j["id"] = item.id;
  j["width"] = item.width;
  j["height"] = item.height;
  j["mean_luma"] = item.mean_luma;
  j["luma_std"] = item.luma_std;
  j["aesthetic_score"] = item.aesthetic_score;
  j["embedding"] = item.embedding;
  return j;
}

inline CurationItem curation_item_from_json(const json& j) {
  CurationItem item;
  item.id = j.at("id").get<std::string>();
  item.width = j.at("width").get<int>();
  item.height = j.at("height").get<int>();
  item.mean_luma = j.at("mean_luma").get<double>();
  item.luma_std = j.at("luma_std").get<double>();
  item.aesthetic_score = j.at("aesthetic_score").get<double>();
  if (j.contains("embedding")) item.embedding = j.at("embedding").get<std::vector<double>>();
  return item;
}

inline constexpr const char* kStageManifestFormat = "panobench-stage-manifest";
inline constexpr int kStageManifestVersion = 1;

inline json stage_manifest_to_json(const StageManifest& m) {
  json j;
  j["format"] = kStageManifestFormat;
  j["version"] = kStageManifestVersion;
  j["stage"] = m.stage;
  j["required_width"] = m.required_width;
  j["required_height"] = m.required_height;
  j["items"] = m.item_ids;
  j["filters_applied"] = m.filters_applied;
  if (m.stage == 3) j["expert_approved"] = m.expert_approved;
  return j;
}

inline StageManifest stage_manifest_from_json(const json& j) {
  if (j.at("format").get<std::string>() != kStageManifestFormat ||
      j.at("version").get<int>() != kStageManifestVersion) {
    throw std::runtime_error("stage manifest: unknown format or version");
  }
  StageManifest m;
  m.stage = j.at("stage").get<int>();
  m.required_width = j.at("required_width").get<int>();
  m.required_height = j.at("required_height").get<int>();
  m.item_ids = j.at("items").get<std::vector<std::string>>();
  m.filters_applied = j.at("filters_applied").get<std::vector<std::string>>();
  if (j.contains("expert_approved")) {
    m.expert_approved = j.at("expert_approved").get<std::map<std::string, bool>>();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Scoring

inline json reward_config_to_json(const RewardConfig& cfg) {
  json j;
  for (std::size_t i = 0; i < kRewardChannels; ++i) {
    j[kRewardChannelNames[i]] = {{"weight", cfg.weights[i]},
                                 {"lo", cfg.ranges[i].lo},
                                 {"hi", cfg.ranges[i].hi}};
  }
  return j;
}

inline RewardConfig reward_config_from_json(const json& j) {
  RewardConfig cfg;
  for (std::size_t i = 0; i < kRewardChannels; ++i) {
    if (!j.contains(kRewardChannelNames[i])) continue;
    const json& c = j.at(kRewardChannelNames[i]);
    if (c.contains("weight")) cfg.weights[i] = c.at("weight").get<double>();
    if (c.contains("lo")) cfg.ranges[i].lo = c.at("lo").get<double>();
    if (c.contains("hi")) cfg.ranges[i].hi = c.at("hi").get<double>();
  }
  return cfg;
}

// Sample-group CSV: one row per (group id, population, sample value).
inline std::vector<GroupSamples> groups_from_csv(const std::string& text) {
  std::vector<GroupSamples> groups;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::string id, population, value;
    if (!std::getline(row, id, ',') || !std::getline(row, population, ',') ||
        !std::getline(row, value)) {
      throw std::runtime_error("samples CSV line " + std::to_string(line_no) +
                               ": expected id,population,value");
    }
    if (line_no == 1 && id == "id") continue;  // optional header
    double v = 0.0;
    try {
      v = std::stod(value);
    } catch (const std::exception&) {
      throw std::runtime_error("samples CSV line " + std::to_string(line_no) +
                               ": bad value '" + value + "'");
    }
    GroupSamples* g = nullptr;
    for (auto& existing : groups) {
      if (existing.id == id) {
        g = &existing;
        break;
      }
    }
    if (!g) {
      groups.push_back({id, population, {}});
      g = &groups.back();
    } else if (g->population != population) {
      throw std::runtime_error("samples CSV: group '" + id + "' listed under two populations");
    }
    g->samples.push_back(v);
  }
  return groups;
}

inline std::string std_report_to_csv(const StdReport& report) {
  std::string out = "id,population,n,mean,sample_std\n";
  for (const auto& s : report.stats) {
    out += s.id + "," + s.population + "," + std::to_string(s.n) + "," + csv_num(s.mean) +
           "," + csv_num(s.sample_std) + "\n";
  }
  for (const auto& p : report.populations) {
    out += "population:" + p.population + "," + p.population + "," +
           std::to_string(p.groups) + "," + csv_num(p.mean_std) + ",\n";
  }
  return out;
}

inline json std_report_to_json(const StdReport& report) {
  json j;
  j["groups"] = json::array();
  for (const auto& s : report.stats) {
    j["groups"].push_back({{"id", s.id},
                           {"population", s.population},
                           {"n", s.n},
                           {"mean", s.mean},
                           {"sample_std", s.sample_std}});
  }
  j["populations"] = json::array();
  for (const auto& p : report.populations) {
    j["populations"].push_back(
        {{"population", p.population}, {"groups", p.groups}, {"mean_std", p.mean_std}});
  }
  if (report.ratio) j["ratio"] = *report.ratio;
  return j;
}

}  // namespace panobench

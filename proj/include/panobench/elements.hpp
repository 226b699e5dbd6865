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
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "panobench/rng.hpp"

namespace panobench {

inline constexpr const char* kMaskToken = "<MASK>";

enum class ElementKind { core_furnishing, decorative };

// Categories whose elements are decorative; everything else is a core
// furnishing.
inline bool is_decorative_category(const std::string& category) {
  return category == "Decorative Items" || category == "Plants";
}

struct Element {
  std::string category;
  std::vector<std::string> attributes;  // material / color / shape tokens
  ElementKind kind = ElementKind::core_furnishing;

  bool operator==(const Element&) const = default;
};

inline Element make_element(std::string category, std::vector<std::string> attributes = {}) {
  Element e;
  e.kind =
      is_decorative_category(category) ? ElementKind::decorative : ElementKind::core_furnishing;
  e.category = std::move(category);
  e.attributes = std::move(attributes);
  return e;
}

inline void check_element(const Element& e) {
  if (e.category.empty()) {
    throw std::invalid_argument("element: empty category");
  }
  const bool dec = is_decorative_category(e.category);
  if (dec != (e.kind == ElementKind::decorative)) {
    throw std::invalid_argument("element: kind inconsistent with category '" + e.category + "'");
  }
}

struct ElementSet {
  std::vector<Element> elements;
  std::string style;
  std::string room_type;

  bool operator==(const ElementSet&) const = default;
};

inline void check_element_set(const ElementSet& set) {
  std::set<std::string> fur_categories;
  for (const auto& e : set.elements) {
    check_element(e);
    if (e.kind == ElementKind::core_furnishing && !fur_categories.insert(e.category).second) {
      throw std::invalid_argument("element set: duplicate core-furnishing category '" +
                                  e.category + "'");
    }
  }
}

// Splits a set into core furnishings and decoratives, order preserved within
// each half. Style and room type are carried on both halves.
inline std::pair<ElementSet, ElementSet> partition_elements(const ElementSet& set) {
  check_element_set(set);
  ElementSet fur{{}, set.style, set.room_type};
  ElementSet dec{{}, set.style, set.room_type};
  for (const auto& e : set.elements) {
    (e.kind == ElementKind::decorative ? dec : fur).elements.push_back(e);
  }
  return {std::move(fur), std::move(dec)};
}

// Inverse-direction companion of partition_elements: concatenates a pure
// furnishing half and a pure decorative half, so partition(merge(f, d)) is
// (f, d) again.
inline ElementSet merge_elements(const ElementSet& fur, const ElementSet& dec) {
  if (fur.style != dec.style || fur.room_type != dec.room_type) {
    throw std::invalid_argument("merge_elements: style or room type mismatch");
  }
  ElementSet out{fur.elements, fur.style, fur.room_type};
  out.elements.insert(out.elements.end(), dec.elements.begin(), dec.elements.end());
  check_element_set(out);
  return out;
}

struct MaskingConfig {
  double p_attr_fur = 0.3;  // attribute drop rate on core furnishings
  double p_cat_dec = 0.5;   // category drop rate on decoratives
  double p_attr_dec = 0.5;  // attribute drop rate on decoratives
};

inline void check_masking_config(const MaskingConfig& cfg) {
  for (double p : {cfg.p_attr_fur, cfg.p_cat_dec, cfg.p_attr_dec}) {
    if (!(p >= 0.0) || !(p <= 1.0)) {
      throw std::invalid_argument("masking config: probability outside [0, 1]");
    }
  }
}

struct MaskedElement {
  Element element;
  bool category_masked = false;
  std::vector<std::uint8_t> attribute_masked;  // parallel to element.attributes

  bool operator==(const MaskedElement&) const = default;
};

inline std::string masked_category(const MaskedElement& m) {
  return m.category_masked ? kMaskToken : m.element.category;
}

inline std::vector<std::string> masked_attributes(const MaskedElement& m) {
  std::vector<std::string> out;
  out.reserve(m.element.attributes.size());
  for (std::size_t i = 0; i < m.element.attributes.size(); ++i) {
    out.push_back(m.attribute_masked[i] ? kMaskToken : m.element.attributes[i]);
  }
  return out;
}

struct MaskedElementSet {
  std::vector<MaskedElement> elements;
  std::string style;
  std::string room_type;
  MaskingConfig config;
  std::uint64_t seed = 0;
};

// Category-aware stochastic masking. Core-furnishing category tokens are
// never masked; their attributes drop at p_attr_fur. Decorative categories
// drop at p_cat_dec, their attributes at p_attr_dec, and a masked category
// forces its attributes masked (nothing is left to anchor them).
//
// Draw order is part of the record contract: one counter per stochastic
// decision, consumed left to right through the element list (decorative
// category first, then that element's attributes).
inline MaskedElementSet mask_elements(const ElementSet& set, const MaskingConfig& cfg,
                                      std::uint64_t seed) {
  check_element_set(set);
  check_masking_config(cfg);
  MaskedElementSet out;
  out.style = set.style;
  out.room_type = set.room_type;
  out.config = cfg;
  out.seed = seed;

  CounterRng rng(seed);
  std::uint64_t counter = 0;
  for (const auto& e : set.elements) {
    MaskedElement m;
    m.element = e;
    const bool dec = e.kind == ElementKind::decorative;
    if (dec) {
      m.category_masked = rng.bernoulli(counter++, cfg.p_cat_dec);
    }
    const double p_attr = dec ? cfg.p_attr_dec : cfg.p_attr_fur;
    m.attribute_masked.resize(e.attributes.size(), 0);
    for (std::size_t i = 0; i < e.attributes.size(); ++i) {
      const bool drop = rng.bernoulli(counter++, p_attr);
      m.attribute_masked[i] = (drop || m.category_masked) ? 1 : 0;
    }
    out.elements.push_back(std::move(m));
  }
  return out;
}

// Maps raw attribute tokens to attribute classes and classes to the
// categories that can host them. Shipped table is demonstrative; real
// hierarchies are loaded from a manifest.
struct CompatibilityTable {
  std::map<std::string, std::string> attribute_class;          // "walnut" -> "material.wood"
  std::map<std::string, std::vector<std::string>> class_hosts; // class -> host categories
};

// Ordered category vocabulary. Order is load-bearing: attribute transfer
// attaches to the first compatible host in this order.
inline std::vector<std::string> default_category_registry() {
  return {"Bed",  "Sofa",    "Cabinet", "Table",            "Chair",
          "Lamp", "Curtain", "Rug",     "Decorative Items", "Plants"};
}

inline CompatibilityTable default_compatibility() {
  CompatibilityTable t;
  t.attribute_class = {
      {"walnut", "material.wood"},   {"oak", "material.wood"},
      {"pine", "material.wood"},     {"leather", "material.upholstery"},
      {"linen", "material.fabric"},  {"velvet", "material.fabric"},
      {"marble", "material.stone"},  {"brass", "material.metal"},
      {"white", "color.neutral"},    {"beige", "color.neutral"},
      {"charcoal", "color.neutral"}, {"navy", "color.accent"},
      {"emerald", "color.accent"},   {"rounded", "shape.profile"},
      {"slatted", "shape.profile"},  {"tufted", "shape.profile"},
  };
  t.class_hosts = {
      {"material.wood", {"Cabinet", "Bed", "Table", "Chair"}},
      {"material.upholstery", {"Sofa", "Chair", "Bed"}},
      {"material.fabric", {"Sofa", "Curtain", "Rug", "Bed"}},
      {"material.stone", {"Table"}},
      {"material.metal", {"Lamp", "Table", "Chair"}},
      {"color.neutral", {"Sofa", "Bed", "Cabinet", "Table", "Chair", "Curtain", "Rug", "Lamp"}},
      {"color.accent", {"Sofa", "Curtain", "Rug", "Chair"}},
      {"shape.profile", {"Sofa", "Bed", "Cabinet", "Chair"}},
  };
  return t;
}

// Filters reference furnishings down to the categories present in the place
// and re-homes orphaned attributes onto compatible surviving categories.
// Decoratives pass through untouched. An attribute whose class has a
// compatible host category in place_categories but no surviving element gets
// a fresh element for that category (appended after the survivors); never
// introduces a category outside place_categories.
inline ElementSet transfer_attributes(
    const ElementSet& ref, const std::set<std::string>& place_categories,
    const CompatibilityTable& table = default_compatibility(),
    const std::vector<std::string>& category_registry = default_category_registry()) {
  check_element_set(ref);
  ElementSet out{{}, ref.style, ref.room_type};
  std::vector<Element> dropped;
  for (const auto& e : ref.elements) {
    if (e.kind == ElementKind::decorative || place_categories.count(e.category)) {
      out.elements.push_back(e);
    } else {
      dropped.push_back(e);
    }
  }

  auto host_for = [&](const std::string& attr) -> const std::string* {
    const auto cls = table.attribute_class.find(attr);
    if (cls == table.attribute_class.end()) return nullptr;
    const auto hosts = table.class_hosts.find(cls->second);
    if (hosts == table.class_hosts.end()) return nullptr;
    for (const auto& category : category_registry) {
      if (!place_categories.count(category)) continue;
      if (std::find(hosts->second.begin(), hosts->second.end(), category) !=
          hosts->second.end()) {
        return &category;
      }
    }
    return nullptr;
  };

  for (const auto& e : dropped) {
    for (const auto& attr : e.attributes) {
      const std::string* host = host_for(attr);
      if (!host) continue;  // no compatible surviving home; attribute dropped
      Element* target = nullptr;
      for (auto& candidate : out.elements) {
        if (candidate.kind == ElementKind::core_furnishing && candidate.category == *host) {
          target = &candidate;
          break;
        }
      }
      if (!target) {
        out.elements.push_back(make_element(*host));
        target = &out.elements.back();
      }
      if (std::find(target->attributes.begin(), target->attributes.end(), attr) ==
          target->attributes.end()) {
        target->attributes.push_back(attr);
      }
    }
  }
  check_element_set(out);
  return out;
}

// Supervised pair for the description model: masked elements in, full
// description out. Serialization lives in the formats layer.
struct TrainingRecord {
  MaskedElementSet inputs;
  std::string target_description;
};

inline TrainingRecord build_training_record(const ElementSet& set, const MaskingConfig& cfg,
                                            std::uint64_t seed,
                                            const std::string& target_description) {
  if (target_description.empty()) {
    throw std::invalid_argument("build_training_record: empty target description");
  }
  return {mask_elements(set, cfg, seed), target_description};
}

}  // namespace panobench

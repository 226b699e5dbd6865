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

// panobench: manifest-driven batch evaluation plus thin wrappers over each
// library operation. Exit codes: 0 success, 1 usage or manifest error,
// 2 partial item failure in a batch run.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "panobench/panobench.hpp"

namespace fs = std::filesystem;
using namespace panobench;

namespace {

double deg2rad(double deg) { return deg * kPi / 180.0; }

// --seed flag wins; PANOBENCH_SEED is the fallback; default 0.
std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t flag_value) {
  if (seed_opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("PANOBENCH_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    throw std::runtime_error("PANOBENCH_SEED is not an unsigned integer");
  }
  return 0;
}

std::shared_ptr<const ClassRegistry> load_registry(const std::string& path) {
  if (path.empty()) return std::make_shared<ClassRegistry>(default_registry());
  return std::make_shared<ClassRegistry>(registry_from_json(load_json_file(path)));
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

std::vector<std::uint8_t> ids_for(const ClassRegistry& reg,
                                  const std::vector<std::string>& names) {
  std::vector<std::uint8_t> ids;
  for (const auto& name : names) {
    const ClassEntry* e = reg.find(name);
    if (!e) throw std::runtime_error("class '" + name + "' not in registry");
    ids.push_back(e->id);
  }
  return ids;
}

void ensure_parent_dir(const std::string& file) {
  const fs::path parent = fs::path(file).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

// %g with a guaranteed decimal point, so ratios print as "1.0 0.0".
std::string ratio_num(double v) {
  std::string s = csv_num(v);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos) {
    s += ".0";
  }
  return s;
}

void emit_json(const json& j, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    ensure_parent_dir(out_file);
    write_text_file(out_file, j.dump(2) + "\n");
  }
}

// ---------------------------------------------------------------------------

struct ProjectArgs {
  std::string panorama, raster, registry, out, out_dir;
  std::string classes = "Cabinet,Sofa,Bed";
  double yaw_deg = 0.0, pitch_deg = 0.0, hfov_deg = 90.0;
  int size = 512;
};

int run_project(const ProjectArgs& a) {
  const Panorama pano = read_png(a.panorama);
  check_panorama(pano);
  CameraSpec cam;
  cam.hfov = deg2rad(a.hfov_deg);
  cam.out_width = a.size;
  cam.out_height = a.size;

  if (a.raster.empty()) {
    if (a.out.empty()) throw std::runtime_error("single-view mode needs --out");
    cam.yaw = deg2rad(a.yaw_deg);
    cam.pitch = deg2rad(a.pitch_deg);
    ensure_parent_dir(a.out);
    write_png(a.out, render_nfov(pano, cam), 8);
    std::cout << a.out << "\n";
    return 0;
  }

  if (a.out_dir.empty()) throw std::runtime_error("furniture mode needs --out-dir");
  const auto registry = load_registry(a.registry);
  const ClassRaster raster = read_class_png(a.raster, registry);
  const auto placement =
      furniture_view_cameras(raster, ids_for(*registry, split_list(a.classes)), cam);
  fs::create_directories(a.out_dir);
  std::map<std::string, int> counter;
  for (const auto& view : placement.cameras) {
    const int k = counter[view.class_name]++;
    const fs::path file =
        fs::path(a.out_dir) / (view.class_name + "_" + std::to_string(k) + ".png");
    write_png(file.string(), render_nfov(pano, view.camera), 8);
    std::cout << file.string() << "\n";
  }
  for (const auto& w : placement.warnings) std::cerr << "warning: " << w << "\n";
  return 0;
}

struct IouArgs {
  std::string pred, ref, registry, out;
  std::string classes = "Wall,Door,Window,Cabinet,Sofa,Bed";
};

int run_iou(const IouArgs& a) {
  const auto registry = load_registry(a.registry);
  const ClassRaster pred = read_class_png(a.pred, registry);
  const ClassRaster ref = read_class_png(a.ref, registry);
  const auto names = split_list(a.classes);
  const auto report = spatial_consistency(pred, ref, ids_for(*registry, names));
  for (const auto& [name, iou] : report.per_class) {
    std::cout << name << " " << (iou ? csv_num(*iou) : "ABSENT") << "\n";
  }
  std::cout << "Average " << csv_num(report.average) << "\n";
  if (!a.out.empty()) {
    std::string csv;
    for (const auto& [name, iou] : report.per_class) csv += name + ",";
    csv += "Average\n";
    for (const auto& [name, iou] : report.per_class) {
      csv += (iou ? csv_num(*iou) : "") + ",";
    }
    csv += csv_num(report.average) + "\n";
    ensure_parent_dir(a.out);
    write_text_file(a.out, csv);
  }
  return 0;
}

struct FuseArgs {
  std::string normals, instances, registry, out_dir;
  std::string normal_source_id = "normals", segmentation_source_id = "instances";
};

int run_fuse(const FuseArgs& a) {
  const auto registry = load_registry(a.registry);
  const ControlSignal control =
      fuse_control(read_png(a.normals), read_class_png(a.instances, registry),
                   {a.normal_source_id, a.segmentation_source_id});
  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  write_png((dir / "control_normals.png").string(), control.normals, 16);
  write_class_png((dir / "control_instances.png").string(), control.instances);
  json manifest;
  manifest["width"] = control.width();
  manifest["height"] = control.height();
  manifest["channels"] = ControlSignal::channels();
  manifest["provenance"] = {{"normal_source_id", control.provenance.normal_source_id},
                            {"segmentation_source_id",
                             control.provenance.segmentation_source_id}};
  manifest["registry"] = registry_to_json(*registry);
  write_text_file((dir / "control_manifest.json").string(), manifest.dump(2) + "\n");
  std::cout << "control signal " << control.width() << "x" << control.height() << " -> "
            << a.out_dir << "\n";
  return 0;
}

struct LatentMaskArgs {
  std::string latent, out, record;
  double keep_prob = 0.5;
  int patch = 1;
  std::uint64_t seed = 0;
};

int run_latent_mask(const LatentMaskArgs& a, const CLI::Option* seed_opt) {
  const LatentGrid z = read_latent_blob(a.latent);
  const auto seed = resolve_seed(seed_opt, a.seed);
  const auto [masked, record] = latent_mask(z, a.keep_prob, a.patch, seed);
  ensure_parent_dir(a.out);
  write_latent_blob(a.out, masked);
  if (!a.record.empty()) emit_json(mask_record_to_json(record), a.record);
  std::size_t kept = 0;
  for (auto k : record.kept) kept += k;
  std::cout << "kept " << kept << "/" << record.kept.size() << " blocks (seed " << seed
            << ")\n";
  return 0;
}

struct MaskElementsArgs {
  std::string elements, config, out;
  std::uint64_t seed = 0;
};

int run_mask_elements(const MaskElementsArgs& a, const CLI::Option* seed_opt) {
  const ElementSet set = element_set_from_json(load_json_file(a.elements));
  MaskingConfig cfg;
  if (!a.config.empty()) cfg = masking_config_from_json(load_json_file(a.config));
  const auto masked = mask_elements(set, cfg, resolve_seed(seed_opt, a.seed));
  emit_json(masked_set_to_json(masked), a.out);
  return 0;
}

struct TransferArgs {
  std::string elements, place_categories, table, category_registry, out;
};

int run_transfer(const TransferArgs& a) {
  const ElementSet ref = element_set_from_json(load_json_file(a.elements));
  const auto place_list = split_list(a.place_categories);
  if (place_list.empty()) throw std::runtime_error("--place-categories is empty");
  const std::set<std::string> place(place_list.begin(), place_list.end());
  CompatibilityTable table = default_compatibility();
  if (!a.table.empty()) table = compatibility_from_json(load_json_file(a.table));
  std::vector<std::string> registry = default_category_registry();
  if (!a.category_registry.empty()) {
    registry = load_json_file(a.category_registry).get<std::vector<std::string>>();
  }
  emit_json(element_set_to_json(transfer_attributes(ref, place, table, registry)), a.out);
  return 0;
}

struct CurateArgs {
  std::string items, quality_config, approvals, parent, out_dir;
  int stage = 1;
  int k = 0;
  std::size_t budget = 0;
  double rep_ratio = 0.5;
  std::uint64_t seed = 0;
};

int run_curate(const CurateArgs& a, const CLI::Option* seed_opt) {
  const json items_json = load_json_file(a.items);
  std::vector<CurationItem> items;
  for (const auto& j : items_json) items.push_back(curation_item_from_json(j));
  if (items.empty()) throw std::runtime_error("no curation items");

  QualityConfig qcfg;
  if (!a.quality_config.empty()) {
    qcfg = quality_config_from_json(load_json_file(a.quality_config));
  }

  json filtered = json::array();
  std::vector<CurationItem> passing;
  for (const auto& item : items) {
    const FilterResult r = quality_filter(item, qcfg);
    filtered.push_back(
        {{"id", item.id}, {"pass", r.pass}, {"reasons", r.reasons}});
    if (r.pass) passing.push_back(item);
  }
  if (passing.empty()) throw std::runtime_error("no items pass the quality filter");

  const auto seed = resolve_seed(seed_opt, a.seed);
  const int k = a.k > 0 ? a.k : default_cluster_count(passing.size());
  if (static_cast<std::size_t>(k) > passing.size()) {
    throw std::runtime_error("--k exceeds the passing item count");
  }
  const ClusterModel model = cluster_embeddings(passing, k, seed);

  const std::size_t budget = a.budget > 0 ? a.budget : passing.size();
  const auto selected_ids = diversity_sample(model, passing, budget, a.rep_ratio);

  std::vector<CurationItem> selected;
  for (const auto& id : selected_ids) {
    for (const auto& item : passing) {
      if (item.id == id) {
        selected.push_back(item);
        break;
      }
    }
  }

  std::map<std::string, bool> approvals;
  if (!a.approvals.empty()) {
    approvals = load_json_file(a.approvals).get<std::map<std::string, bool>>();
  }
  std::optional<StageManifest> parent;
  if (!a.parent.empty()) parent = stage_manifest_from_json(load_json_file(a.parent));

  std::vector<std::string> provenance = {
      "quality_filter", "cluster_embeddings(k=" + std::to_string(k) + ")",
      "diversity_sample(budget=" + std::to_string(budget) +
          ",rep_ratio=" + csv_num(a.rep_ratio) + ")"};
  const StageManifest manifest = build_stage_manifest(
      a.stage, selected, provenance, approvals, parent ? &*parent : nullptr);

  fs::create_directories(a.out_dir);
  const fs::path dir(a.out_dir);
  write_text_file((dir / "filtered.json").string(), filtered.dump(2) + "\n");
  json cluster_json;
  cluster_json["k"] = model.k;
  cluster_json["seed"] = model.seed;
  cluster_json["objective_history"] = model.objective_history;
  json assign = json::object();
  for (std::size_t i = 0; i < passing.size(); ++i) {
    assign[passing[i].id] = model.assignments[i];
  }
  cluster_json["assignments"] = std::move(assign);
  write_text_file((dir / "clusters.json").string(), cluster_json.dump(2) + "\n");
  write_text_file((dir / "selection.json").string(), json(selected_ids).dump(2) + "\n");
  write_text_file((dir / "stage_manifest.json").string(),
                  stage_manifest_to_json(manifest).dump(2) + "\n");
  std::cout << "stage " << a.stage << ": " << items.size() << " in, " << passing.size()
            << " pass filter, " << selected.size() << " selected -> " << a.out_dir << "\n";
  return 0;
}

struct ScheduleArgs {
  long long step = 0;
  long long warmup = 1;
};

int run_schedule(const ScheduleArgs& a) {
  const MixRatio r = mix_schedule(a.step, a.warmup);
  std::cout << ratio_num(r.p_single) << " " << ratio_num(r.p_multi) << "\n";
  return 0;
}

struct RewardArgs {
  double structural_iou = 0.0, omniaid = 0.0, longclip = 0.0, hpsv3 = 0.0;
  std::string config;
};

int run_reward(const RewardArgs& a) {
  RewardConfig cfg;
  if (!a.config.empty()) cfg = reward_config_from_json(load_json_file(a.config));
  const RewardVector v{a.structural_iou, a.omniaid, a.longclip, a.hpsv3};
  std::cout << csv_num(composite_reward(v, cfg)) << "\n";
  return 0;
}

struct ExpertArgs {
  double aesthetic = 0.0, spatial = 0.0, plausibility = 0.0;
};

int run_expert(const ExpertArgs& a) {
  const double total = expert_total({a.aesthetic, a.spatial, a.plausibility});
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", total);
  std::cout << buf << " " << to_string(grade(total)) << "\n";
  return 0;
}

struct StdReportArgs {
  std::string samples, out_csv, out_json;
};

int run_std_report(const StdReportArgs& a) {
  const auto groups = groups_from_csv(read_text_file(a.samples));
  const StdReport report = group_std_report(groups);
  for (const auto& p : report.populations) {
    std::cout << p.population << " mean_std " << csv_num(p.mean_std) << " (" << p.groups
              << " groups)\n";
  }
  if (report.ratio) std::cout << "ratio " << csv_num(*report.ratio) << "\n";
  if (!a.out_csv.empty()) {
    ensure_parent_dir(a.out_csv);
    write_text_file(a.out_csv, std_report_to_csv(report));
  }
  if (!a.out_json.empty()) emit_json(std_report_to_json(report), a.out_json);
  return 0;
}

struct ReportArgs {
  std::string manifest, out_dir;
  int jobs = 1;
};

int run_report(const ReportArgs& a) {
  const RunManifest manifest = load_run_manifest(a.manifest);
  const EvalReport report = run_eval(manifest, a.out_dir, a.jobs);
  for (const auto& item : report.items) {
    std::cout << item.id << " "
              << (item.failed ? "FAILED: " + item.error
                              : "average " + csv_num(item.average.value_or(0.0)))
              << "\n";
  }
  if (report.aggregate_average) {
    std::cout << "aggregate average " << csv_num(*report.aggregate_average) << "\n";
  }
  std::cout << "report written to " << a.out_dir << "\n";
  return eval_exit_code(report);
}

struct CorpusArgs {
  std::string sets, config, out;
  std::uint64_t seed = 0;
};

int run_build_corpus(const CorpusArgs& a, const CLI::Option* seed_opt) {
  MaskingConfig cfg;
  if (!a.config.empty()) cfg = masking_config_from_json(load_json_file(a.config));
  const auto base_seed = resolve_seed(seed_opt, a.seed);

  std::ifstream in(a.sets);
  if (!in) throw std::runtime_error("cannot open '" + a.sets + "'");
  ensure_parent_dir(a.out);
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + a.out + "' for writing");

  std::string line;
  std::uint64_t index = 0;
  std::size_t written = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = parse_json(line, "sets line " + std::to_string(index + 1));
    const ElementSet set = element_set_from_json(j.at("set"));
    const auto target = j.at("target").get<std::string>();
    // Per-record seed offsets keep records independent and the file
    // reproducible from the base seed alone.
    const TrainingRecord record = build_training_record(set, cfg, base_seed + index, target);
    out << training_record_to_jsonl(record) << "\n";
    ++index;
    ++written;
  }
  if (written == 0) throw std::runtime_error("no records in '" + a.sets + "'");
  std::cout << written << " records -> " << a.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Panoramic interior-design evaluation and data toolkit"};
  app.set_version_flag("--version", "panobench 1.0.0");
  app.require_subcommand(1);

  ProjectArgs project_args;
  auto* project = app.add_subcommand("project", "Render NFoV perspective views");
  project->add_option("--panorama", project_args.panorama, "Equirect panorama PNG")
      ->required();
  project->add_option("--raster", project_args.raster,
                      "Class raster PNG; enables furniture-centered views");
  project->add_option("--registry", project_args.registry, "Class registry JSON");
  project->add_option("--classes", project_args.classes, "View classes (comma-separated)");
  project->add_option("--yaw", project_args.yaw_deg, "Camera yaw, degrees");
  project->add_option("--pitch", project_args.pitch_deg, "Camera pitch, degrees");
  project->add_option("--hfov", project_args.hfov_deg, "Horizontal FOV, degrees");
  project->add_option("--size", project_args.size, "Square output size, pixels");
  project->add_option("--out", project_args.out, "Output PNG (single-view mode)");
  project->add_option("--out-dir", project_args.out_dir, "Output dir (furniture mode)");

  IouArgs iou_args;
  auto* iou = app.add_subcommand("iou", "Spatial consistency between two class rasters");
  iou->add_option("--pred", iou_args.pred, "Predicted raster PNG")->required();
  iou->add_option("--ref", iou_args.ref, "Reference raster PNG")->required();
  iou->add_option("--registry", iou_args.registry, "Class registry JSON");
  iou->add_option("--classes", iou_args.classes, "Classes (comma-separated)");
  iou->add_option("--out", iou_args.out, "Write report CSV here");

  FuseArgs fuse_args;
  auto* fuse = app.add_subcommand("fuse-control", "Fuse normals and instances");
  fuse->add_option("--normals", fuse_args.normals, "Normal map PNG (16-bit)")->required();
  fuse->add_option("--instances", fuse_args.instances, "Instance raster PNG")->required();
  fuse->add_option("--registry", fuse_args.registry, "Class registry JSON");
  fuse->add_option("--normal-source-id", fuse_args.normal_source_id, "Provenance id");
  fuse->add_option("--segmentation-source-id", fuse_args.segmentation_source_id,
                   "Provenance id");
  fuse->add_option("--out-dir", fuse_args.out_dir, "Output directory")->required();

  LatentMaskArgs lm_args;
  auto* lm = app.add_subcommand("latent-mask", "Block-wise Bernoulli latent masking");
  lm->add_option("--latent", lm_args.latent, "Input latent blob")->required();
  lm->add_option("--keep-prob", lm_args.keep_prob, "Keep probability in [0,1]");
  lm->add_option("--patch", lm_args.patch, "Token block size");
  auto* lm_seed = lm->add_option("--seed", lm_args.seed, "Mask seed");
  lm->add_option("--out", lm_args.out, "Output latent blob")->required();
  lm->add_option("--record", lm_args.record, "Write mask record JSON here");

  MaskElementsArgs me_args;
  auto* me = app.add_subcommand("mask-elements", "Category-aware element masking");
  me->add_option("--elements", me_args.elements, "Element set JSON")->required();
  me->add_option("--config", me_args.config, "Masking config JSON");
  auto* me_seed = me->add_option("--seed", me_args.seed, "Mask seed");
  me->add_option("--out", me_args.out, "Output JSON (default stdout)");

  TransferArgs tr_args;
  auto* tr = app.add_subcommand("transfer", "Filter and transfer reference attributes");
  tr->add_option("--elements", tr_args.elements, "Reference element set JSON")->required();
  tr->add_option("--place-categories", tr_args.place_categories,
                 "Categories present in the place (comma-separated)")
      ->required();
  tr->add_option("--table", tr_args.table, "Compatibility table JSON");
  tr->add_option("--category-registry", tr_args.category_registry,
                 "Ordered category list JSON");
  tr->add_option("--out", tr_args.out, "Output JSON (default stdout)");

  CurateArgs cu_args;
  auto* cu = app.add_subcommand("curate", "Filter, cluster, and sample curation items");
  cu->add_option("--items", cu_args.items, "Curation item table JSON")->required();
  cu->add_option("--quality-config", cu_args.quality_config, "Quality filter config JSON");
  cu->add_option("--stage", cu_args.stage, "Funnel stage (1, 2, or 3)");
  cu->add_option("--k", cu_args.k, "Cluster count (default sqrt(n/2))");
  cu->add_option("--budget", cu_args.budget, "Selection budget (default all passing)");
  cu->add_option("--rep-ratio", cu_args.rep_ratio, "Representative share in [0,1]");
  auto* cu_seed = cu->add_option("--seed", cu_args.seed, "Clustering seed");
  cu->add_option("--approvals", cu_args.approvals, "Expert approval flags JSON (stage 3)");
  cu->add_option("--parent", cu_args.parent, "Parent stage manifest JSON");
  cu->add_option("--out-dir", cu_args.out_dir, "Output directory")->required();

  ScheduleArgs sc_args;
  auto* sc = app.add_subcommand("schedule", "Single/multi-condition task mix at a step");
  sc->add_option("--step", sc_args.step, "Training step")->required();
  sc->add_option("--warmup", sc_args.warmup, "Warmup step count")->required();

  RewardArgs rw_args;
  auto* rw = app.add_subcommand("reward", "Composite reward from channel values");
  rw->add_option("--structural-iou", rw_args.structural_iou, "Structural IoU in [0,1]")
      ->required();
  rw->add_option("--omniaid", rw_args.omniaid, "Distortion-detector score")->required();
  rw->add_option("--longclip", rw_args.longclip, "Text-alignment score")->required();
  rw->add_option("--hpsv3", rw_args.hpsv3, "Human-preference score")->required();
  rw->add_option("--config", rw_args.config, "Reward weights/ranges JSON");

  ExpertArgs ex_args;
  auto* ex = app.add_subcommand("expert-score", "Weighted expert total and grade");
  ex->add_option("--aesthetic", ex_args.aesthetic, "Aesthetic score")->required();
  ex->add_option("--spatial", ex_args.spatial, "Spatial consistency score")->required();
  ex->add_option("--plausibility", ex_args.plausibility, "Plausibility score")->required();

  StdReportArgs sr_args;
  auto* sr = app.add_subcommand("std-report", "Per-group sample-std analysis");
  sr->add_option("--samples", sr_args.samples, "CSV of id,population,value rows")
      ->required();
  sr->add_option("--out-csv", sr_args.out_csv, "Write stats CSV here");
  sr->add_option("--out-json", sr_args.out_json, "Write stats JSON here");

  ReportArgs rp_args;
  auto* rp = app.add_subcommand("report", "Manifest-driven batch evaluation");
  rp->add_option("--manifest", rp_args.manifest, "Run manifest JSON")->required();
  rp->add_option("--out-dir", rp_args.out_dir, "Output directory")->required();
  rp->add_option("--jobs", rp_args.jobs, "Concurrent item workers");

  CorpusArgs co_args;
  auto* co = app.add_subcommand("build-corpus", "Emit masked training records");
  co->add_option("--sets", co_args.sets, "JSONL of {set, target} lines")->required();
  co->add_option("--config", co_args.config, "Masking config JSON");
  auto* co_seed = co->add_option("--seed", co_args.seed, "Base seed");
  co->add_option("--out", co_args.out, "Output corpus JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\nRun with --help for usage.\n";
    return 1;
  }

  try {
    if (*project) return run_project(project_args);
    if (*iou) return run_iou(iou_args);
    if (*fuse) return run_fuse(fuse_args);
    if (*lm) return run_latent_mask(lm_args, lm_seed);
    if (*me) return run_mask_elements(me_args, me_seed);
    if (*tr) return run_transfer(tr_args);
    if (*cu) return run_curate(cu_args, cu_seed);
    if (*sc) return run_schedule(sc_args);
    if (*rw) return run_reward(rw_args);
    if (*ex) return run_expert(ex_args);
    if (*sr) return run_std_report(sr_args);
    if (*rp) return run_report(rp_args);
    if (*co) return run_build_corpus(co_args, co_seed);
  } catch (const ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

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

// End-to-end smoke tests against the built binary. Each call runs through
// the shell with PANOBENCH_SEED scrubbed unless a test sets it explicitly.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "panobench/panobench.hpp"
#include "test_util.hpp"

namespace panobench {
namespace {

namespace fs = std::filesystem;

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CommandResult run_cli(const testutil::TempDir& dir, const std::string& args,
                      const std::string& env = "-u PANOBENCH_SEED") {
  static int counter = 0;
  const std::string out_file = dir.file(".cli_out_" + std::to_string(counter));
  const std::string err_file = dir.file(".cli_err_" + std::to_string(counter));
  ++counter;
  const std::string cmd = "env " + env + " \"" + PANOBENCH_CLI_PATH + "\" " + args + " > \"" +
                          out_file + "\" 2> \"" + err_file + "\"";
  const int status = std::system(cmd.c_str());
  CommandResult r;
  r.exit_code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  r.out = read_text_file(out_file);
  r.err = read_text_file(err_file);
  return r;
}

TEST(Cli, VersionHelpAndUsageErrors) {
  testutil::TempDir dir;
  const CommandResult version = run_cli(dir, "--version");
  EXPECT_EQ(version.exit_code, 0);
  EXPECT_NE(version.out.find("panobench"), std::string::npos);

  EXPECT_EQ(run_cli(dir, "--help").exit_code, 0);
  EXPECT_EQ(run_cli(dir, "").exit_code, 1);
  EXPECT_EQ(run_cli(dir, "no-such-command").exit_code, 1);
  EXPECT_EQ(run_cli(dir, "schedule --step 5").exit_code, 1);  // missing --warmup
}

TEST(Cli, SchedulePrintsRatioPairs) {
  testutil::TempDir dir;
  EXPECT_EQ(run_cli(dir, "schedule --step 0 --warmup 1000").out, "1.0 0.0\n");
  EXPECT_EQ(run_cli(dir, "schedule --step 500 --warmup 1000").out, "0.6 0.4\n");
  EXPECT_EQ(run_cli(dir, "schedule --step 1000 --warmup 1000").out, "0.2 0.8\n");
  EXPECT_EQ(run_cli(dir, "schedule --step 90000 --warmup 1000").out, "0.2 0.8\n");

  const CommandResult bad = run_cli(dir, "schedule --step -1 --warmup 1000");
  EXPECT_EQ(bad.exit_code, 1);
  EXPECT_NE(bad.err.find("error:"), std::string::npos);
}

TEST(Cli, ExpertScorePrintsTotalAndGrade) {
  testutil::TempDir dir;
  EXPECT_EQ(run_cli(dir, "expert-score --aesthetic 1.26 --spatial 1.66 --plausibility 1.80").out,
            "1.54 C\n");
  EXPECT_EQ(run_cli(dir, "expert-score --aesthetic 2.66 --spatial 3.33 --plausibility 3.79").out,
            "3.20 B\n");
  EXPECT_EQ(run_cli(dir, "expert-score --aesthetic 0.5 --spatial 3 --plausibility 3").exit_code,
            1);
}

TEST(Cli, RewardAppliesConfigOverrides) {
  testutil::TempDir dir;
  EXPECT_EQ(run_cli(dir, "reward --structural-iou 0.3 --omniaid 0.3 --longclip 0.3 --hpsv3 3").out,
            "0.3\n");

  RewardConfig cfg;
  cfg.weights = {1.0, 0.0, 0.0, 0.0};
  const std::string cfg_path = dir.file("reward.json");
  write_text_file(cfg_path, reward_config_to_json(cfg).dump());
  const CommandResult r = run_cli(
      dir, "reward --structural-iou 0.85 --omniaid 0 --longclip 0 --hpsv3 0 --config \"" +
               cfg_path + "\"");
  EXPECT_EQ(r.out, "0.85\n");
}

TEST(Cli, IouReportsPerClassAndAverage) {
  testutil::TempDir dir;
  auto reg = testutil::shared_registry();
  ClassRaster pred(64, 32, reg), ref(64, 32, reg);
  testutil::paint_rect(pred, 8, 8, 24, 16, 1);
  testutil::paint_rect(ref, 0, 8, 16, 16, 1);
  write_class_png(dir.file("pred.png"), pred);
  write_class_png(dir.file("ref.png"), ref);

  const CommandResult r = run_cli(dir, "iou --pred \"" + dir.file("pred.png") + "\" --ref \"" +
                                           dir.file("ref.png") + "\" --out \"" +
                                           dir.file("iou.csv") + "\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("Wall 0.3333333333\n"), std::string::npos);
  EXPECT_NE(r.out.find("Door ABSENT\n"), std::string::npos);
  EXPECT_NE(r.out.find("Average 0.3333333333\n"), std::string::npos);
  const std::string csv = read_text_file(dir.file("iou.csv"));
  EXPECT_NE(csv.find("Average"), std::string::npos);
  EXPECT_NE(csv.find("0.3333333333"), std::string::npos);
}

TEST(Cli, ProjectSingleViewAndFurnitureMode) {
  testutil::TempDir dir;
  write_png(dir.file("pano.png"), testutil::make_smooth_pano(64, 32), 8);

  const CommandResult single =
      run_cli(dir, "project --panorama \"" + dir.file("pano.png") + "\" --yaw 30 --size 32 --out \"" +
                       dir.file("view.png") + "\"");
  EXPECT_EQ(single.exit_code, 0);
  const Image view = read_png(dir.file("view.png"));
  EXPECT_EQ(view.width, 32);
  EXPECT_EQ(view.height, 32);

  ClassRaster raster(64, 32, testutil::shared_registry());
  testutil::paint_rect(raster, 28, 12, 36, 20, 5);
  write_class_png(dir.file("sofa.png"), raster);
  const CommandResult furniture = run_cli(
      dir, "project --panorama \"" + dir.file("pano.png") + "\" --raster \"" +
               dir.file("sofa.png") + "\" --classes Sofa --size 16 --out-dir \"" +
               dir.file("views") + "\"");
  EXPECT_EQ(furniture.exit_code, 0);
  EXPECT_NE(furniture.out.find("Sofa_0.png"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.file("views/Sofa_0.png")));
}

TEST(Cli, FuseControlWritesArtifactTriplet) {
  testutil::TempDir dir;
  write_png(dir.file("normals.png"), testutil::constant_normals(64, 32, 0.0, 0.0, 1.0), 16);
  ClassRaster raster(64, 32, testutil::shared_registry());
  testutil::paint_rect(raster, 10, 10, 20, 20, 4);
  write_class_png(dir.file("instances.png"), raster);

  const CommandResult r = run_cli(
      dir, "fuse-control --normals \"" + dir.file("normals.png") + "\" --instances \"" +
               dir.file("instances.png") + "\" --normal-source-id nrm-v1 --out-dir \"" +
               dir.file("control") + "\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("control signal 64x32"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.file("control/control_normals.png")));
  EXPECT_TRUE(fs::exists(dir.file("control/control_instances.png")));
  const json manifest = load_json_file(dir.file("control/control_manifest.json"));
  EXPECT_EQ(manifest.at("channels").get<int>(), 4);
  EXPECT_EQ(manifest.at("provenance").at("normal_source_id").get<std::string>(), "nrm-v1");
}

TEST(Cli, LatentMaskSeedFlagEnvFallbackAndDeterminism) {
  testutil::TempDir dir;
  LatentGrid z(8, 8, 2);
  for (std::size_t i = 0; i < z.data.size(); ++i) z.data[i] = 0.01f * static_cast<float>(i);
  write_latent_blob(dir.file("z.pbl"), z);
  const std::string base = "latent-mask --latent \"" + dir.file("z.pbl") + "\" --keep-prob 0.5 ";

  const CommandResult a =
      run_cli(dir, base + "--seed 31 --out \"" + dir.file("a.pbl") + "\" --record \"" +
                       dir.file("a.json") + "\"");
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_NE(a.out.find("/64 blocks (seed 31)"), std::string::npos);

  run_cli(dir, base + "--seed 31 --out \"" + dir.file("b.pbl") + "\"");
  EXPECT_EQ(read_latent_blob(dir.file("a.pbl")).data, read_latent_blob(dir.file("b.pbl")).data);

  // No --seed: the environment variable supplies it.
  const CommandResult env_run = run_cli(dir, base + "--out \"" + dir.file("c.pbl") + "\"",
                                        "PANOBENCH_SEED=31");
  EXPECT_NE(env_run.out.find("(seed 31)"), std::string::npos);
  EXPECT_EQ(read_latent_blob(dir.file("a.pbl")).data, read_latent_blob(dir.file("c.pbl")).data);

  run_cli(dir, base + "--seed 32 --out \"" + dir.file("d.pbl") + "\"");
  EXPECT_NE(read_latent_blob(dir.file("a.pbl")).data, read_latent_blob(dir.file("d.pbl")).data);

  const json record = load_json_file(dir.file("a.json"));
  EXPECT_EQ(record.at("seed").get<std::uint64_t>(), 31u);

  const CommandResult bad_env =
      run_cli(dir, base + "--out \"" + dir.file("e.pbl") + "\"", "PANOBENCH_SEED=abc");
  EXPECT_EQ(bad_env.exit_code, 1);
  EXPECT_NE(bad_env.err.find("error:"), std::string::npos);
}

TEST(Cli, MaskElementsIsDeterministicPerSeed) {
  testutil::TempDir dir;
  ElementSet set;
  set.style = "japandi";
  set.room_type = "bedroom";
  set.elements = {make_element("Bed", {"walnut", "beige"}), make_element("Plants", {"emerald"}),
                  make_element("Decorative Items", {"brass"})};
  write_text_file(dir.file("set.json"), element_set_to_json(set).dump());
  const std::string base = "mask-elements --elements \"" + dir.file("set.json") + "\" ";

  run_cli(dir, base + "--seed 7 --out \"" + dir.file("m1.json") + "\"");
  run_cli(dir, base + "--seed 7 --out \"" + dir.file("m2.json") + "\"");
  EXPECT_EQ(read_text_file(dir.file("m1.json")), read_text_file(dir.file("m2.json")));

  const CommandResult stdout_mode = run_cli(dir, base + "--seed 7");
  EXPECT_EQ(stdout_mode.exit_code, 0);
  const json parsed = parse_json(stdout_mode.out, "cli stdout");
  EXPECT_TRUE(parsed.contains("elements"));
  EXPECT_EQ(parsed.at("seed").get<std::uint64_t>(), 7u);
}

TEST(Cli, TransferRehomesAttributes) {
  testutil::TempDir dir;
  ElementSet ref;
  ref.style = "modern";
  ref.room_type = "living room";
  ref.elements = {make_element("Bed", {"walnut"}), make_element("Cabinet", {"oak"})};
  write_text_file(dir.file("ref.json"), element_set_to_json(ref).dump());

  const CommandResult r = run_cli(dir, "transfer --elements \"" + dir.file("ref.json") +
                                           "\" --place-categories Cabinet --out \"" +
                                           dir.file("out.json") + "\"");
  EXPECT_EQ(r.exit_code, 0);
  const ElementSet out = element_set_from_json(load_json_file(dir.file("out.json")));
  ASSERT_EQ(out.elements.size(), 1u);
  EXPECT_EQ(out.elements[0].category, "Cabinet");
  EXPECT_EQ(out.elements[0].attributes, (std::vector<std::string>{"oak", "walnut"}));
}

TEST(Cli, CurateEmitsDeterministicStageArtifacts) {
  testutil::TempDir dir;
  json items = json::array();
  for (int i = 0; i < 8; ++i) {
    CurationItem item;
    item.id = "it" + std::to_string(i);
    item.width = 1024;
    item.height = 512;
    item.mean_luma = 0.5;
    item.luma_std = 0.2;
    item.aesthetic_score = 4.0;
    const double base = i < 4 ? 0.0 : 5.0;
    item.embedding = {base + 0.05 * i, base - 0.05 * i};
    items.push_back(curation_item_to_json(item));
  }
  write_text_file(dir.file("items.json"), items.dump());
  const std::string base_cmd = "curate --items \"" + dir.file("items.json") +
                               "\" --stage 1 --k 2 --budget 4 --seed 9 --out-dir \"";

  const CommandResult r = run_cli(dir, base_cmd + dir.file("cur1") + "\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("8 in, 8 pass filter, 4 selected"), std::string::npos);
  for (const char* name : {"filtered.json", "clusters.json", "selection.json",
                           "stage_manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir.file(std::string("cur1/") + name))) << name;
  }
  const StageManifest manifest =
      stage_manifest_from_json(load_json_file(dir.file("cur1/stage_manifest.json")));
  EXPECT_EQ(manifest.stage, 1);
  EXPECT_EQ(manifest.item_ids.size(), 4u);

  run_cli(dir, base_cmd + dir.file("cur2") + "\"");
  EXPECT_EQ(read_text_file(dir.file("cur1/stage_manifest.json")),
            read_text_file(dir.file("cur2/stage_manifest.json")));
  EXPECT_EQ(read_text_file(dir.file("cur1/selection.json")),
            read_text_file(dir.file("cur2/selection.json")));
}

TEST(Cli, StdReportSummarizesPopulations) {
  testutil::TempDir dir;
  write_text_file(dir.file("samples.csv"),
                  "id,population,value\n"
                  "g1,dpo,0.0\ng1,dpo,2.0\n"
                  "g2,nft,0.0\ng2,nft,1.0\n");
  const CommandResult r = run_cli(dir, "std-report --samples \"" + dir.file("samples.csv") +
                                           "\" --out-csv \"" + dir.file("r.csv") +
                                           "\" --out-json \"" + dir.file("r.json") + "\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("dpo mean_std"), std::string::npos);
  EXPECT_NE(r.out.find("ratio"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.file("r.csv")));
  const json jr = load_json_file(dir.file("r.json"));
  EXPECT_TRUE(jr.contains("ratio"));
}

TEST(Cli, ReportExitCodesTrackBatchHealth) {
  testutil::TempDir dir;
  write_png(dir.file("pano.png"), testutil::make_smooth_pano(64, 32), 8);
  ClassRaster raster(64, 32, testutil::shared_registry());
  testutil::paint_rect(raster, 0, 8, 16, 16, 1);
  write_class_png(dir.file("r.png"), raster);

  auto manifest_json = [&](const std::string& pano_name, int version) {
    json j;
    j["version"] = version;
    j["config"] = {{"write_views", false}};
    j["items"] = json::array(
        {{{"id", "a"}, {"panorama", pano_name}, {"pred_raster", "r.png"}, {"ref_raster", "r.png"}}});
    return j;
  };

  write_text_file(dir.file("good.json"), manifest_json("pano.png", 1).dump());
  const CommandResult good = run_cli(dir, "report --manifest \"" + dir.file("good.json") +
                                              "\" --out-dir \"" + dir.file("out_good") + "\"");
  EXPECT_EQ(good.exit_code, 0);
  EXPECT_NE(good.out.find("aggregate average 1\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.file("out_good/report.csv")));

  write_text_file(dir.file("partial.json"), manifest_json("missing.png", 1).dump());
  const CommandResult partial = run_cli(dir, "report --manifest \"" + dir.file("partial.json") +
                                                 "\" --out-dir \"" + dir.file("out_partial") +
                                                 "\"");
  EXPECT_EQ(partial.exit_code, 2);
  EXPECT_NE(partial.out.find("FAILED"), std::string::npos);

  write_text_file(dir.file("broken.json"), manifest_json("pano.png", 99).dump());
  const CommandResult broken = run_cli(dir, "report --manifest \"" + dir.file("broken.json") +
                                                "\" --out-dir \"" + dir.file("out_broken") +
                                                "\"");
  EXPECT_EQ(broken.exit_code, 1);
  EXPECT_NE(broken.err.find("manifest error"), std::string::npos);
}

TEST(Cli, BuildCorpusSeedsRecordsByLine) {
  testutil::TempDir dir;
  ElementSet set;
  set.style = "retro";
  set.room_type = "kitchen";
  set.elements = {make_element("Table", {"marble"}), make_element("Plants", {"fern"})};
  json line;
  line["set"] = element_set_to_json(set);
  line["target"] = "a cozy kitchen";
  write_text_file(dir.file("sets.jsonl"), line.dump() + "\n" + line.dump() + "\n");

  const std::string base = "build-corpus --sets \"" + dir.file("sets.jsonl") + "\" --seed 5 ";
  const CommandResult r = run_cli(dir, base + "--out \"" + dir.file("corpus.jsonl") + "\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("2 records ->"), std::string::npos);

  std::istringstream corpus(read_text_file(dir.file("corpus.jsonl")));
  std::vector<TrainingRecord> records;
  std::string text;
  while (std::getline(corpus, text)) {
    if (!text.empty()) records.push_back(training_record_from_jsonl(text));
  }
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].inputs.seed, 5u);
  EXPECT_EQ(records[1].inputs.seed, 6u);
  EXPECT_EQ(records[0].target_description, "a cozy kitchen");

  run_cli(dir, base + "--out \"" + dir.file("corpus2.jsonl") + "\"");
  EXPECT_EQ(read_text_file(dir.file("corpus.jsonl")), read_text_file(dir.file("corpus2.jsonl")));
}

}  // namespace
}  // namespace panobench

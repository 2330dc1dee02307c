// Copyright 2026 The xzp Authors
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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "support.hpp"

using namespace xzp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("xzp_test_pipeline_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

RunConfig config(long p, const fs::path& out, const fs::path& cache) {
  RunConfig c;
  c.fixture = testdata::fixture_path(p);
  if (fs::exists(testdata::curve_path(p))) c.curve = testdata::curve_path(p);
  c.out = out;
  c.cache_dir = cache;
  return c;
}

/// Cache shared by the tests that need the full 163 run.
const fs::path& shared_cache() {
  static const fs::path p = scratch("shared_cache");
  return p;
}

std::string slurp(const fs::path& p) { return read_text_file(p); }

const std::vector<std::string> kOutputs = {"model.json", "points.json", "map.json", "certificate.json", "report.txt"};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(XZP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Hashing, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Hashing, CanonicalDumpIsStable) {
  const Json a = Json::parse(R"({"b": 1, "a": [1, 2]})");
  const Json b = Json::parse(R"({"a": [1, 2], "b": 1})");
  EXPECT_EQ(canonical_dump(a), canonical_dump(b));
  EXPECT_EQ(canonical_dump(a).back(), '\n');
}

TEST(Config, RejectsBadValues) {
  RunConfig c;
  EXPECT_THROW(c.validate(), Error);
  c.fixture = testdata::fixture_path(163);
  c.delta = -1;
  try {
    c.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInput);
  }
  c.delta = 10;
  c.precision_bits = 8;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Pipeline, Level163IsCertifiedAndReproducible) {
  const auto& cache = shared_cache();
  const auto first = run_pipeline(config(163, scratch("out1"), cache));
  ASSERT_TRUE(first.certificate.has_value());
  EXPECT_TRUE(first.certificate->certified());
  for (const auto& s : first.stages) EXPECT_FALSE(s.cache_hit) << s.name;
  // Second run is served from the cache.
  const auto second = run_pipeline(config(163, scratch("out2"), cache));
  for (const auto& s : second.stages) EXPECT_TRUE(s.cache_hit) << s.name;
  // Forced recomputation without a cache.
  const auto third = run_pipeline(config(163, scratch("out3"), ""));
  for (const auto& name : kOutputs) {
    const auto a = slurp(first.config.out / name);
    EXPECT_EQ(a, slurp(second.config.out / name)) << name;
    EXPECT_EQ(a, slurp(third.config.out / name)) << name;
  }
  ASSERT_EQ(first.stages.size(), third.stages.size());
  for (std::size_t i = 0; i < first.stages.size(); ++i) {
    EXPECT_EQ(first.stages[i].key, third.stages[i].key);
    EXPECT_EQ(first.stages[i].output, third.stages[i].output);
  }
}

TEST(Pipeline, ChangingDeltaReusesEarlierStages) {
  const auto cache = scratch("cache_delta");
  auto c = config(269, scratch("d1"), cache);
  c.delta = 50;
  c.lmax = 40;
  run_pipeline(c);
  c.delta = 60;
  const auto b = run_pipeline(c);
  EXPECT_TRUE(b.stage("model")->cache_hit);
  EXPECT_TRUE(b.stage("points")->cache_hit);
  EXPECT_TRUE(b.stage("map")->cache_hit);
  EXPECT_FALSE(b.stage("sieve")->cache_hit);
}

TEST(Pipeline, LevelWithoutEllipticFactorSkipsMapAndSieve) {
  const auto b = run_pipeline(config(193, scratch("out193"), ""));
  ASSERT_NE(b.stage("map"), nullptr);
  EXPECT_FALSE(b.stage("map")->ran);
  EXPECT_EQ(b.stage("map")->notice, "no elliptic factor configured");
  EXPECT_FALSE(b.stage("sieve")->ran);
  EXPECT_FALSE(b.certificate.has_value());
  EXPECT_FALSE(fs::exists(b.config.out / "certificate.json"));
  EXPECT_NE(b.report.find("not run"), std::string::npos);
}

TEST(Report, ListsEveryRationalPoint) {
  const auto b = run_pipeline(config(163, scratch("rep163"), shared_cache()));
  std::istringstream in(b.report);
  std::string line;
  std::size_t rows = 0;
  bool in_table = false;
  while (std::getline(in, line)) {
    if (line.rfind("Rational points", 0) == 0) {
      in_table = true;
      continue;
    }
    if (in_table && line.empty()) break;
    if (in_table) ++rows;
  }
  EXPECT_EQ(rows, 11u);
  EXPECT_NE(b.report.find("Verdict: CERTIFIED"), std::string::npos);
}

TEST(Report, ShowsTheModularDegree) {
  auto c = config(197, scratch("rep197"), "");
  c.last = Stage::kMap;
  const auto b = run_pipeline(c);
  EXPECT_NE(b.report.find("deg(phi+) = 5"), std::string::npos);
}

TEST(Artifacts, StageOutputsRoundTrip) {
  const auto cache = scratch("cache_rt");
  auto c = config(269, scratch("rt"), cache);
  c.last = Stage::kMap;
  const auto b = run_pipeline(c);
  const auto mj = Json::parse(b.model_json);
  EXPECT_EQ(canonical_dump(mj), b.model_json);
  EXPECT_EQ(model_to_json(model_from_json(mj.at("model"))), mj.at("model"));
  const auto pj = Json::parse(b.points_json);
  EXPECT_EQ(points_to_json(points_from_json(pj.at("points"))), pj.at("points"));
  const auto aj = Json::parse(b.map_json);
  EXPECT_EQ(map_to_json(map_from_json(aj.at("map"))), aj.at("map"));
  EXPECT_EQ(aj.at("inputs").at("model"), b.stage("model")->output);
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch("cli");
  const std::string common = "--out " + (dir / "out").string() + " --cache-dir " + (dir / "cache").string();
  EXPECT_EQ(run_cli("model build --level 163 " + common), 0);
  EXPECT_EQ(run_cli("model verify --level 163 " + common), 0);
  EXPECT_EQ(run_cli("model verify --level 359 " + common), 4);
  EXPECT_EQ(run_cli("points check --level 271 " + common), 4);
  EXPECT_EQ(run_cli("sieve run --level 193 " + common), 3);
  EXPECT_EQ(run_cli("model build --fixture /nonexistent.json " + common), 3);
  EXPECT_EQ(run_cli("model build --level 163 --delta -1 " + common), 3);
  EXPECT_EQ(run_cli("sieve run --level 269 --lmax 3 --delta 1000 " + common), 2);
  EXPECT_EQ(run_cli("sieve run --level 269 --lmax 60 --delta 10 " + common), 0);
  EXPECT_NE(run_cli("frobnicate"), 0);
}

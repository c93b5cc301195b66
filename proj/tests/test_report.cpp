// Copyright 2026 The qcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "support.hpp"

using namespace qcut;

TEST_CASE("shot log round trip", "[report]") {
  const auto c = cluster_demo();
  CutSpec s;
  s.gate_cuts = {cluster_bridge_op(c)};
  const CutCircuit cc(c, s);
  SampleOptions opt;
  opt.seed = 4;
  opt.record_shots = true;
  const auto r = run_monte_carlo(cc, 500, opt);
  REQUIRE(r.records.size() == 500);
  const std::string log = encode_shot_log(r.records);
  CHECK(log.size() == 16 + 500 * kShotRecordSize);
  CHECK(log.compare(0, 8, "QCUTSHOT") == 0);
  const auto back = decode_shot_log(log);
  REQUIRE(back.size() == r.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].term == r.records[i].term);
    CHECK(back[i].sign_count == r.records[i].sign_count);
    CHECK(back[i].sign_bits == r.records[i].sign_bits);
    CHECK(back[i].y == r.records[i].y);
    CHECK(back[i].value == r.values[i]);
  }

  const auto path = std::filesystem::temp_directory_path() / "qcut_test_shots.bin";
  write_file(path.string(), log);
  CHECK(read_file(path.string()) == log);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(decode_shot_log("garbage"), ValidationError);
  CHECK_THROWS_AS(decode_shot_log(log.substr(0, log.size() - 3)), ValidationError);
  std::string wrong = log;
  wrong[8] = 9;
  CHECK_THROWS_AS(decode_shot_log(wrong), ValidationError);
}

TEST_CASE("shot CSV running mean", "[report]") {
  std::vector<ShotRecord> recs(3);
  recs[0].value = 1;
  recs[1].value = -1;
  recs[2].value = 3;
  recs[2].term = 7;
  const std::string csv = shot_csv(recs);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "shot,term,value,running_mean");
  std::getline(in, line);
  CHECK(line == "0,0,1,1");
  std::getline(in, line);
  CHECK(line == "1,0,-1,0");
  std::getline(in, line);
  CHECK(line == "2,7,3,1");
}

TEST_CASE("report JSON shapes", "[report]") {
  const auto b = budget_to_json(sample_budget(1, 0, 0.1, 0.05));
  CHECK(b["shots"] == 4145);
  CHECK(b["magnitude_bound"] == 3.0);

  Estimate e;
  e.method = "montecarlo";
  e.mean = 0.25;
  e.std_error = 0.01;
  e.per_term.push_back({3, {0, 3}, -0.5, 10, 0.1, 0.2});
  const auto j = estimate_to_json(e);
  CHECK(j["stderr"] == 0.01);
  CHECK(j["per_term"][0]["selection"] == nlohmann::json::array({0, 3}));

  const auto c = cluster_demo();
  CutSpec s;
  s.wire_cuts = {{2, cluster_bridge_op(c)}};
  const auto f = fragments_to_json(CutCircuit(c, s));
  CHECK(f["mt"] == 1);
  CHECK(f["fragments"].size() == 2);
  CHECK(f["decompositions"][0]["gamma"] == 4.0);
  CHECK(f["term_selections"] == 8);
}

TEST_CASE("missing files", "[report]") {
  CHECK_THROWS_AS(read_file("/nonexistent/qcut/file.json"), ValidationError);
  CHECK_THROWS_AS(write_file("/nonexistent/qcut/file.json", "x"), ConfigurationError);
}

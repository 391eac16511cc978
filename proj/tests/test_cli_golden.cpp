// Copyright (c) 2026, the secmc authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs the CLI from the source root so model paths in reports are stable.
CliResult run_cli(const std::string& args) {
  static int seq = 0;
  const std::string base = "/tmp/secmc_cli_" + std::to_string(++seq);
  const std::string cmd = std::string("cd ") + SECMC_SOURCE_DIR + " && " + SECMC_CLI_PATH + " " +
                          args + " > " + base + ".out 2> " + base + ".err";
  int rc = std::system(cmd.c_str());
  CliResult r;
  if (rc >= 0 && WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
  r.out = slurp(base + ".out");
  r.err = slurp(base + ".err");
  return r;
}

std::string golden(const std::string& name) {
  return slurp(std::string(SECMC_SOURCE_DIR) + "/tests/golden/" + name);
}

}  // namespace

TEST_CASE("check-ctl reproduces its reports byte for byte") {
  auto r = run_cli("check-ctl --model models/healthcare_l1.json \"EF shc\"");
  REQUIRE(r.code == 0);
  REQUIRE(r.out == golden("check_ctl_l1_ef_shc.txt"));
  // Timing goes to stderr only, so reports stay reproducible.
  REQUIRE(r.err.find("elapsed:") != std::string::npos);
  REQUIRE(r.err.find(" ms") != std::string::npos);
  REQUIRE(r.out.find("elapsed") == std::string::npos);
}

TEST_CASE("the insider overwrite run reports a replaying witness") {
  auto r = run_cli("check-ctl --model models/healthcare_l4_insider.json \"EF overwrite_attack\"");
  REQUIRE(r.code == 0);
  REQUIRE(r.out == golden("check_ctl_insider_overwrite.txt"));
  REQUIRE(r.out.find("trace replay: ok") != std::string::npos);

  auto s = run_cli(
      "check-ctl --model models/healthcare_l4_insider.json --format structured"
      " \"EF overwrite_attack\"");
  REQUIRE(s.code == 0);
  auto j = nlohmann::json::parse(s.out);
  REQUIRE(j["holds"] == true);
  REQUIRE(j["trace_replays"] == true);
  REQUIRE(j["witness"].is_array());
  REQUIRE(j["witness"].size() >= 1);

  // The consensus precondition closes the attack: exit code 1, not an error.
  auto c = run_cli(
      "check-ctl --model models/healthcare_l4_insider.json --options consensus_put=true"
      " \"EF overwrite_attack\"");
  REQUIRE(c.code == 1);
  REQUIRE(c.out.find("result: does not hold") != std::string::npos);
}

TEST_CASE("attack validate accepts the two-step tree document") {
  auto r = run_cli(
      "attack validate --model models/healthcare_l1.json --tree models/two_step_get_attack.json");
  REQUIRE(r.code == 0);
  REQUIRE(r.out == golden("attack_validate_two_step.txt"));
  REQUIRE(r.out.find("result: valid") != std::string::npos);
  REQUIRE(r.out.find("EF cross-check: confirmed") != std::string::npos);
}

TEST_CASE("a synthesized tree re-validates when fed back in") {
  auto r = run_cli(
      "attack synthesize --model models/healthcare_l2.json --goal eval_attack"
      " --format structured");
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["result"] == "attack found");
  REQUIRE(j["valid"] == true);
  {
    std::ofstream out("/tmp/secmc_synth_tree.json", std::ios::binary);
    out << j["tree"].dump(2) << "\n";
  }
  auto v = run_cli(
      "attack validate --model models/healthcare_l2.json --tree /tmp/secmc_synth_tree.json");
  REQUIRE(v.code == 0);
  REQUIRE(v.out.find("result: valid") != std::string::npos);
  REQUIRE(v.out.find("EF cross-check: confirmed") != std::string::npos);
}

TEST_CASE("check-refinement reports hold and failure verdicts") {
  auto r = run_cli(
      "check-refinement --abstract models/healthcare_l1.json --model models/healthcare_l2.json"
      " --map two_to_one");
  REQUIRE(r.code == 0);
  REQUIRE(r.out == golden("check_refinement_two_to_one.txt"));
  REQUIRE(r.out.find("result: holds") != std::string::npos);

  auto b = run_cli(
      "check-refinement --abstract models/healthcare_l1.json --model models/healthcare_l2.json"
      " --map two_to_one --options buggy_delete=true");
  REQUIRE(b.code == 1);
  REQUIRE(b.out.find("result: does not hold") != std::string::npos);
  REQUIRE(b.out.find("failure: step-not-simulated") != std::string::npos);
  REQUIRE(b.out.find(": delete ") != std::string::npos);  // the offending rule, replayed

  auto m = run_cli(
      "check-refinement --abstract models/healthcare_l1.json --model models/healthcare_l2.json"
      " --map three_to_two");
  REQUIRE(m.code == 2);
  REQUIRE(m.err.find("expects a level-3 refined model") != std::string::npos);
}

TEST_CASE("the case-study run reproduces the full report") {
  auto r = run_cli("case-study");
  REQUIRE(r.code == 0);
  REQUIRE(r.out == golden("case_study.txt"));
  REQUIRE(r.out.find("result: all checks passed") != std::string::npos);

  auto s = run_cli("case-study --format structured");
  REQUIRE(s.code == 0);
  auto j = nlohmann::json::parse(s.out);
  REQUIRE(j["all_passed"] == true);
  REQUIRE(j["table"].size() == 5);
  REQUIRE(j["table"][4]["attack"] == "no attack known yet");
  REQUIRE(j["global_checks"]["ownership_preservation"] == true);
  REQUIRE(j["global_checks"]["deletion_regression_as_expected"] == true);
}

TEST_CASE("schema errors and bad invocations exit with code 2") {
  {
    std::ofstream out("/tmp/secmc_bad_model.json", std::ios::binary);
    out << "{\"schema_version\": 1, \"level\": 9}\n";
  }
  auto r = run_cli("parse --model /tmp/secmc_bad_model.json");
  REQUIRE(r.code == 2);
  REQUIRE(r.err.find("model config error") != std::string::npos);

  auto cap = run_cli("check-ctl --model models/healthcare_l2.json --state-cap 100 \"EF shc\"");
  REQUIRE(cap.code == 2);
  REQUIRE(cap.err.find("state explosion") != std::string::npos);

  auto missing = run_cli("check-ctl \"EF shc\"");
  REQUIRE(missing.code == 2);

  auto ok = run_cli(
      "parse --model models/healthcare_l4.json --tree models/two_step_get_attack.json");
  REQUIRE(ok.code == 0);
  REQUIRE(ok.out.find("ok") != std::string::npos);
}

TEST_CASE("depth truncation is visible in the report and still answers") {
  auto r = run_cli("check-ctl --model models/healthcare_l1.json --depth 0 \"EF shc\"");
  REQUIRE(r.code == 0);  // the initial state itself satisfies the attack set
  REQUIRE(r.out.find("states: 1 (truncated)") != std::string::npos);
}

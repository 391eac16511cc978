// Copyright (c) 2026, the secmc authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include <secmc/state_graph.hpp>

#include "support/oracles.hpp"

using secmc::KripkeStructure;
using secmc::StateExplosionError;
using secmc::build_kripke;
using secmc::compute_reachable;
using secmc::witness_path;

namespace {

std::vector<int> succ_diamond(const int& s) {
  // 0 -> {1,2}, 1 -> {3}, 2 -> {3}, 3 -> {}
  switch (s) {
    case 0: return {2, 1};  // deliberately unsorted: canonical order is the builder's job
    case 1: return {3};
    case 2: return {3};
    default: return {};
  }
}

}  // namespace

TEST_CASE("reachable closure is sorted, deduplicated, and complete") {
  auto r = compute_reachable<int>({0}, succ_diamond);
  REQUIRE(r.states == std::vector<int>{0, 1, 2, 3});
  REQUIRE_FALSE(r.truncated);

  // Duplicate initial states collapse.
  auto r2 = compute_reachable<int>({3, 3, 3}, succ_diamond);
  REQUIRE(r2.states == std::vector<int>{3});
}

TEST_CASE("state cap raises a state-explosion error") {
  auto counter = [](const int& s) { return std::vector<int>{s + 1}; };
  REQUIRE_THROWS_AS(compute_reachable<int>({0}, counter, 10), StateExplosionError);
  REQUIRE_THROWS_WITH(compute_reachable<int>({0}, counter, 10),
                      Catch::Matchers::ContainsSubstring("state explosion"));
  try {
    compute_reachable<int>({0}, counter, 10);
    FAIL("expected StateExplosionError");
  } catch (const StateExplosionError& e) {
    REQUIRE(e.cap() == 10);
  }
}

TEST_CASE("depth bound truncates and flags the closure") {
  auto counter = [](const int& s) { return s < 100 ? std::vector<int>{s + 1} : std::vector<int>{}; };
  auto r = compute_reachable<int>({0}, counter, secmc::kDefaultStateCap, 5);
  REQUIRE(r.states == std::vector<int>{0, 1, 2, 3, 4, 5});
  REQUIRE(r.truncated);

  // A bound that still covers the full closure is not a truncation.
  auto full = compute_reachable<int>({95}, counter, secmc::kDefaultStateCap, 10);
  REQUIRE(full.states.size() == 6);
  REQUIRE_FALSE(full.truncated);
}

TEST_CASE("kripke structure rejects initial states outside the universe") {
  std::vector<int> states{0, 1};
  auto succ = [](const int&) { return std::vector<int>{}; };
  REQUIRE_THROWS_AS(KripkeStructure<int>(states, {7}, succ), std::invalid_argument);
}

TEST_CASE("kripke structure drops edges that leave the declared universe") {
  std::vector<int> states{0, 1};
  auto succ = [](const int& s) { return s == 0 ? std::vector<int>{1, 9} : std::vector<int>{}; };
  KripkeStructure<int> m(states, {0}, succ);
  REQUIRE(m.successors(0) == std::vector<std::uint32_t>{1});
  REQUIRE(m.has_edge(0, 1));
  REQUIRE_FALSE(m.has_edge(1, 0));
}

TEST_CASE("witness path is a shortest path from an initial state") {
  oracles::IntSystem sys;
  sys.n = 5;
  sys.adj = {{1}, {2}, {3}, {4}, {}};
  sys.init = {0};
  auto m = sys.kripke();
  std::vector<bool> goal(5, false);
  goal[4] = true;
  auto p = witness_path(m, goal);
  REQUIRE(p.has_value());
  REQUIRE(*p == std::vector<std::uint32_t>{0, 1, 2, 3, 4});

  // Goal already at an initial state: a one-state path.
  std::vector<bool> at_init(5, false);
  at_init[0] = true;
  auto q = witness_path(m, at_init);
  REQUIRE(q.has_value());
  REQUIRE(*q == std::vector<std::uint32_t>{0});

  // Unreachable goal.
  oracles::IntSystem cut;
  cut.n = 3;
  cut.adj = {{1}, {}, {}};
  cut.init = {0};
  std::vector<bool> far(3, false);
  far[2] = true;
  REQUIRE_FALSE(witness_path(cut.kripke(), far).has_value());
}

TEST_CASE("witness paths match the BFS oracle on random systems") {
  std::mt19937_64 rng(0x5ec5717e57u);
  for (int round = 0; round < 200; ++round) {
    auto sys = oracles::random_system(rng, 30);
    auto m = sys.kripke();
    auto goal = oracles::random_subset(rng, sys.n);
    std::vector<bool> goal_bits(goal.begin(), goal.end());
    auto got = witness_path(m, goal_bits);
    auto want = oracles::shortest_path_oracle(sys, sys.init, goal);
    REQUIRE(got.has_value() == want.has_value());
    if (got) {
      // Same (optimal) length, valid endpoints, and every hop is a real edge.
      REQUIRE(got->size() == want->size());
      REQUIRE(std::binary_search(sys.init.begin(), sys.init.end(), static_cast<int>(got->front())));
      REQUIRE(goal[got->back()]);
      for (std::size_t i = 0; i + 1 < got->size(); ++i) REQUIRE(m.has_edge((*got)[i], (*got)[i + 1]));
    }
  }
}

TEST_CASE("build_kripke restricts the universe to the reachable closure") {
  oracles::IntSystem sys;
  sys.n = 4;
  sys.adj = {{1}, {0}, {3}, {2}};  // two separate cycles
  sys.init = {0};
  auto m = sys.reachable_kripke();
  REQUIRE(m.size() == 2);
  REQUIRE(m.states() == std::vector<int>{0, 1});
  REQUIRE_FALSE(m.truncated());
}

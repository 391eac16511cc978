// Copyright (c) 2026, the secmc authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance gate: one line per criterion, wall-clock limits pinned in code,
// nonzero exit if any criterion fails or overruns its limit.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <secmc/attack_tree.hpp>
#include <secmc/ctl.hpp>
#include <secmc/refinement.hpp>
#include <secmc/refmaps.hpp>
#include <secmc/scenario.hpp>
#include <secmc/semantics.hpp>
#include <secmc/state_graph.hpp>

#include "support/oracles.hpp"

namespace {

using namespace secmc;
using Clock = std::chrono::steady_clock;
using F = CtlFormula<InfraState>;

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class Body>
void criterion(int n, double limit_s, const std::string& what, Body&& body) {
  auto t0 = Clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string("; exception: ") + e.what();
  }
  const double secs = seconds_since(t0);
  if (secs > limit_s) {
    ok = false;
    note += "; overran the time limit";
  }
  std::printf("criterion %d: %s [%.1fs <= %.0fs] %s%s\n", n, ok ? "PASS" : "FAIL", secs, limit_s,
              what.c_str(), note.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

// Criterion 8(b): a tree built from random walks — an and-chain of one-step
// base attacks per start state, or-combined over pairwise-distinct starts.
AttackTree<int> random_valid_tree(std::mt19937_64& rng, const oracles::IntSystem& sys) {
  using Tree = AttackTree<int>;
  std::vector<int> starts(static_cast<std::size_t>(sys.n));
  for (int i = 0; i < sys.n; ++i) starts[static_cast<std::size_t>(i)] = i;
  std::shuffle(starts.begin(), starts.end(), rng);
  std::uniform_int_distribution<int> kd(1, std::min(3, sys.n));
  const int k = kd(rng);
  std::vector<Tree> chains;
  std::vector<int> froms, tos;
  for (int c = 0; c < k; ++c) {
    const int start = starts[static_cast<std::size_t>(c)];
    std::uniform_int_distribution<int> len(0, 6);
    int steps = len(rng);
    std::vector<int> path = {start};
    for (int i = 0; i < steps; ++i) {
      const auto& succ = sys.adj[static_cast<std::size_t>(path.back())];
      if (succ.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, succ.size() - 1);
      path.push_back(succ[pick(rng)]);
    }
    std::vector<Tree> bases;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      bases.push_back(Tree::base({path[i]}, {path[i + 1]}));
    chains.push_back(Tree::and_node(std::move(bases), {path.front()}, {path.back()}));
    froms.push_back(start);
    tos.push_back(path.back());
  }
  if (k == 1) return chains[0];
  return Tree::or_node(std::move(chains), froms, tos);
}

bool suite_ef_vs_oracles(int rounds) {
  std::mt19937_64 rng(0xacce97edu);
  for (int round = 0; round < rounds; ++round) {
    auto sys = oracles::random_system(rng, 40);
    auto target = oracles::random_subset(rng, sys.n);
    auto m = sys.kripke();
    auto marks = eval_ctl(m, CtlFormula<int>::ef(CtlFormula<int>::atom(
                                 [&target](const int& s) { return target[static_cast<std::size_t>(s)]; })));
    auto closure = oracles::ef_oracle(sys, target);
    auto bfs = oracles::ef_backward_bfs(sys, target);
    for (int s = 0; s < sys.n; ++s) {
      const auto i = static_cast<std::size_t>(s);
      if (marks[i] != closure[i] || marks[i] != bfs[i]) return false;
    }
  }
  return true;
}

bool suite_valid_trees(int rounds) {
  std::mt19937_64 rng(0x7bee5eedu);
  for (int round = 0; round < rounds; ++round) {
    auto sys = oracles::random_system(rng, 30);
    auto tree = random_valid_tree(rng, sys);
    if (!is_valid(tree, sys.successor())) return false;
    if (!check_at_ef(tree, sys.successor())) return false;
  }
  return true;
}

bool suite_synthesis_complete(int rounds) {
  std::mt19937_64 rng(0xc0371e7eu);
  for (int round = 0; round < rounds; ++round) {
    auto sys = oracles::random_system(rng, 25);
    auto bits = oracles::random_subset(rng, sys.n);
    std::vector<int> target;
    for (int s = 0; s < sys.n; ++s)
      if (bits[static_cast<std::size_t>(s)]) target.push_back(s);
    auto reach = oracles::ef_backward_bfs(sys, bits);
    bool all_init_reach = true;
    for (int s0 : sys.init) all_init_reach = all_init_reach && reach[static_cast<std::size_t>(s0)];
    auto m = sys.kripke();
    auto tree = synthesize(m, sys.init, target);
    if (all_init_reach) {
      if (!tree) return false;
      if (!is_valid(*tree, sys.successor())) return false;
      if (tree->goal.from != sys.init) return false;
      if (tree->goal.to != target) return false;
    } else if (tree) {
      return false;
    }
  }
  return true;
}

bool suite_refinement_chain(int rounds) {
  std::mt19937_64 rng(0x51b11a7eu);
  for (int round = 0; round < rounds; ++round) {
    oracles::IntSystem abs_sys, ref_sys;
    std::vector<int> e;
    if (round % 2 == 0) {
      auto inst = oracles::random_split_instance(rng, 12);
      abs_sys = std::move(inst.abs_sys);
      ref_sys = std::move(inst.ref_sys);
      e = std::move(inst.e);
    } else {
      abs_sys = oracles::random_system(rng, 12);
      ref_sys = oracles::random_system(rng, 12);
      std::uniform_int_distribution<int> ad(0, abs_sys.n - 1);
      e.resize(static_cast<std::size_t>(ref_sys.n));
      for (auto& a : e) a = ad(rng);
    }
    auto ka = abs_sys.kripke();
    auto kr = ref_sys.kripke();
    RefMap<int, int> em = [e](const int& s) { return e[static_cast<std::size_t>(s)]; };
    const bool strong_all = check_strong_mt(ka, kr, em).holds;
    const bool strong_reach = check_strong_mt_reachable(ka, kr, em).holds;
    const bool direct = check_refinement_direct(ka, kr, em).holds;
    if (strong_all != oracles::strong_sim_oracle(abs_sys, ref_sys, e, false)) return false;
    if (strong_reach != oracles::strong_sim_oracle(abs_sys, ref_sys, e, true)) return false;
    if (direct != oracles::direct_refinement_oracle(abs_sys, ref_sys, e)) return false;
    if (strong_all && !strong_reach) return false;  // all-sources implies reachable-sources
    if (strong_reach && !direct) return false;      // one-step simulation implies reachability
  }
  return true;
}

bool suite_fiber_lemma(int rounds) {
  std::mt19937_64 rng(0xf1be42u);
  std::uniform_int_distribution<int> out(0, 6);
  std::bernoulli_distribution coin(0.4);
  for (int round = 0; round < rounds; ++round) {
    std::vector<int> f(31);
    for (auto& y : f) y = out(rng);
    std::vector<int> xs;
    for (int x = 0; x <= 30; ++x)
      if (coin(rng)) xs.push_back(x);
    auto ys = fmap_set(xs, [&f](const int& x) { return f[static_cast<std::size_t>(x)]; });
    for (int y = 0; y <= 6; ++y) {
      const bool in_image = std::binary_search(ys.begin(), ys.end(), y);
      bool has_preimage = false;
      for (int x : xs) has_preimage = has_preimage || f[static_cast<std::size_t>(x)] == y;
      if (in_image != has_preimage) return false;
    }
  }
  return true;
}

bool suite_transfer(int rounds) {
  std::mt19937_64 rng(0x7a4e95fu);
  for (int round = 0; round < rounds; ++round) {
    auto inst = oracles::random_split_instance(rng, 12);
    auto ka = inst.abs_sys.kripke();
    auto kr = inst.ref_sys.kripke();
    RefMap<int, int> em = [e = inst.e](const int& s) { return e[static_cast<std::size_t>(s)]; };
    auto bits = oracles::random_subset(rng, inst.ref_sys.n);
    std::vector<int> target;
    for (int s = 0; s < inst.ref_sys.n; ++s)
      if (bits[static_cast<std::size_t>(s)]) target.push_back(s);
    auto tr = transfer_ef(ka, kr, em, target);

    auto ref_reach = oracles::ef_backward_bfs(inst.ref_sys, bits);
    bool ref_expected = true;
    for (int s0 : inst.ref_sys.init)
      ref_expected = ref_expected && ref_reach[static_cast<std::size_t>(s0)];
    std::vector<bool> abits(static_cast<std::size_t>(inst.abs_sys.n), false);
    for (int t : target) abits[static_cast<std::size_t>(inst.e[static_cast<std::size_t>(t)])] = true;
    auto abs_reach = oracles::ef_backward_bfs(inst.abs_sys, abits);
    bool abs_expected = true;
    for (int a0 : inst.abs_sys.init)
      abs_expected = abs_expected && abs_reach[static_cast<std::size_t>(a0)];

    if (tr.refined_ef != ref_expected || tr.abstract_ef != abs_expected) return false;
    if (tr.refined_ef && !tr.abstract_ef) return false;  // the preservation theorem
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, 10.0, "level-1 policy attack: EF holds, two-step and synthesized trees valid",
            [] {
              auto r = run_iteration(1);
              return r.attack_found && r.initial_in_target && r.two_step_tree_valid &&
                     r.tree_synthesized && r.tree_valid;
            });

  criterion(2, 60.0,
            "level-2 relabel and level-3 put attacks: EF holds and synthesized trees"
            " re-validate (30s each)",
            [] {
              auto t2 = Clock::now();
              auto b2 = build_scenario(2);
              auto p2 = pred_enables(*b2->ctx, "cloud", "Eve", Action::kEval);
              bool ef2 = sat(b2->kripke, F::ef(F::atom(p2)));
              auto tree2 = synthesize(b2->kripke, {b2->initial}, states_where(b2->kripke, p2));
              bool ok2 = ef2 && tree2 && is_valid(*tree2, b2->successor());
              const double s2 = seconds_since(t2);

              auto t3 = Clock::now();
              auto b3 = build_scenario(3);
              auto p3 = pred_enables(*b3->ctx, "cloud", "Eve", Action::kPut);
              bool ef3 = sat(b3->kripke, F::ef(F::atom(p3)));
              auto tree3 = synthesize(b3->kripke, {b3->initial}, states_where(b3->kripke, p3));
              bool ok3 = ef3 && tree3 && is_valid(*tree3, b3->successor());
              const double s3 = seconds_since(t3);

              return ok2 && ok3 && s2 < 30.0 && s3 < 30.0;
            });

  criterion(3, 120.0,
            "refinements hold (strong, reachable sources) for 2->1, 3->2, 4->3 on complete"
            " state spaces",
            [] {
              auto b1 = build_scenario(1);
              auto b2 = build_scenario(2);
              auto b3 = build_scenario(3);
              auto b4 = build_scenario(4);
              if (b1->kripke.truncated() || b2->kripke.truncated() || b3->kripke.truncated() ||
                  b4->kripke.truncated())
                return false;
              auto e21 = refmap_two_to_one(*b2->ctx, *b1->ctx);
              auto e32 = refmap_three_to_two(*b3->ctx, *b2->ctx);
              auto e43 = refmap_four_to_three(*b4->ctx, *b3->ctx);
              return check_strong_mt_reachable(b1->kripke, b2->kripke, e21).holds &&
                     check_strong_mt_reachable(b2->kripke, b3->kripke, e32).holds &&
                     check_strong_mt_reachable(b3->kripke, b4->kripke, e43).holds;
            });

  criterion(4, 60.0,
            "buggy delete yields a replayable delete-on-doubly-labeled counterexample;"
            " fixed delete refines",
            [] {
              auto r = regression_design_error();
              return r.buggy_fails && r.counterexample_is_delete && r.datum_doubly_labeled &&
                     r.replays && r.fixed_holds;
            });

  criterion(5, 30.0, "ownership of the record is preserved in every reachable level-3 state",
            [] { return check_priv_pres(); });

  criterion(6, 30.0, "ledger consistency holds in every reachable level-4 state",
            [] {
              ScenarioOptions off;
              off.consensus_put = false;
              return check_ledger_con() && check_ledger_con(off);
            });

  criterion(7, 30.0,
            "insider overwrite is reachable without the consensus precondition and closed"
            " with it",
            [] {
              ScenarioOptions io;
              io.insider = true;
              io.consensus_put = false;
              auto open_model = build_scenario(4, io);
              bool attack =
                  sat(open_model->kripke, F::ef(F::atom(pred_overwrite_attack(*open_model->ctx))));
              io.consensus_put = true;
              auto closed_model = build_scenario(4, io);
              bool closed = !sat(closed_model->kripke,
                                 F::ef(F::atom(pred_overwrite_attack(*closed_model->ctx))));
              return attack && closed;
            });

  criterion(8, 300.0,
            "2100 randomized checks match the independent oracles (EF x200, trees x500,"
            " synthesis x200, refinement x100, set-image x1000, transfer x100)",
            [] {
              return suite_ef_vs_oracles(200) && suite_valid_trees(500) &&
                     suite_synthesis_complete(200) && suite_refinement_chain(100) &&
                     suite_fiber_lemma(1000) && suite_transfer(100);
            });

  std::printf("acceptance: %d/8 criteria passed\n", 8 - g_failures);
  return g_failures == 0 ? 0 : 1;
}

// Copyright (c) 2026, the secmc authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include <secmc/ctl.hpp>
#include <secmc/scenario.hpp>

using secmc::Action;
using secmc::CaseOptions;
using secmc::CtlFormula;
using secmc::InfraState;
using secmc::ScenarioOptions;
using secmc::build_scenario;
using secmc::check_ledger_con;
using secmc::check_priv_pres;
using secmc::global_policy_holds;
using secmc::healthcare_context;
using secmc::iteration_attack_pred;
using secmc::iteration_table;
using secmc::pred_at;
using secmc::pred_owns;
using secmc::pred_shc;
using secmc::regression_design_error;
using secmc::run_iteration;
using secmc::sat;

namespace {
using F = CtlFormula<InfraState>;
}

TEST_CASE("state spaces are complete and have the hand-derived sizes") {
  // Level 1: positions (Patient 3, Doctor 3, Eve 2 -> 18) x datum spread
  // (any subset of the four locations -> 16) = 288.
  auto l1 = build_scenario(1);
  REQUIRE_FALSE(l1->kripke.truncated());
  REQUIRE(l1->kripke.size() == 288);

  // Level 3 has no puts, so only the initial item spreads: again 18 x 16.
  auto l3 = build_scenario(3);
  REQUIRE_FALSE(l3->kripke.truncated());
  REQUIRE(l3->kripke.size() == 288);

  // Level 2: positions and data are NOT independent, because the hospital
  // guard (resides_at(hospital) and skey) also covers `move` and is checked
  // in the pre-state: the doctor can leave the hospital but never re-enter.
  // His item (empty reader set) is gettable by nobody else, so it reaches
  // home/cloud only after he leaves, at which point doctor-at-hospital
  // positions can never recur. While he is still at the hospital (6 of the
  // 18 positions): home/cloud hold subsets of the three other items (8 each),
  // smartphone 4, hospital 4 -> 1024 data configurations. For the 12
  // positions with the doctor elsewhere: 16*16*4*4 = 4096.
  // 6*1024 + 12*4096 = 55296.
  auto l2 = build_scenario(2);
  REQUIRE_FALSE(l2->kripke.truncated());
  REQUIRE(l2->kripke.size() == 55296);

  // Level 4 (consensus, no insider): puts never fire, the single ledger
  // entry grows monotonically from {cloud} (8 supersets) or is deleted to
  // nothing: 9 ledger configurations x 18 positions.
  auto l4 = build_scenario(4);
  REQUIRE_FALSE(l4->kripke.truncated());
  REQUIRE(l4->kripke.size() == 162);
}

TEST_CASE("the global policy fails for the intruder already in the initial state") {
  auto l1 = build_scenario(1);
  REQUIRE(global_policy_holds(*l1->ctx, l1->initial, "Patient"));
  REQUIRE(global_policy_holds(*l1->ctx, l1->initial, "Doctor"));
  REQUIRE_FALSE(global_policy_holds(*l1->ctx, l1->initial, "Eve"));
  REQUIRE(pred_shc(*l1->ctx)(l1->initial));
}

TEST_CASE("ownership of the record is preserved at level 3 but not at level 2") {
  REQUIRE(check_priv_pres());

  // The contrast: level 2's unguarded relabelling breaks the same property.
  auto l2 = build_scenario(2);
  REQUIRE_FALSE(sat(l2->kripke, F::ag(F::atom(pred_owns(*l2->ctx, "Patient", "42")))));
  // At level 3 Eve never even holds a processable copy.
  auto l3 = build_scenario(3);
  REQUIRE(sat(l3->kripke, F::ag(F::atom(pred_owns(*l3->ctx, "Patient", "42")))));
}

TEST_CASE("the ledger invariant holds in every reachable state, under all options") {
  REQUIRE(check_ledger_con());  // consensus, no insider
  ScenarioOptions off;
  off.consensus_put = false;
  REQUIRE(check_ledger_con(off));
  ScenarioOptions insider_off;
  insider_off.insider = true;
  insider_off.consensus_put = false;
  REQUIRE(check_ledger_con(insider_off));
  ScenarioOptions insider_on;
  insider_on.insider = true;
  insider_on.consensus_put = true;
  REQUIRE(check_ledger_con(insider_on));
}

TEST_CASE("the deletion design error is caught, explained, and fixed") {
  auto r = regression_design_error();
  REQUIRE(r.buggy_fails);
  REQUIRE(r.counterexample_is_delete);
  REQUIRE(r.datum_doubly_labeled);
  REQUIRE(r.replays);
  REQUIRE(r.fixed_holds);
  REQUIRE(r.as_expected());
  REQUIRE(r.counterexample.has_value());
  // The counterexample is a genuine reachable step of the buggy model.
  ScenarioOptions buggy;
  buggy.buggy_delete = true;
  auto l2b = build_scenario(2, buggy);
  REQUIRE(l2b->kripke.try_index_of(r.counterexample->first).has_value());
  REQUIRE(l2b->kripke.try_index_of(r.counterexample->second).has_value());
}

TEST_CASE("iteration 1: the policy break is found and both trees validate") {
  auto r = run_iteration(1);
  REQUIRE(r.system_row == "Initial Fusion system home-cloud-hospital");
  REQUIRE(r.attack_row == "Eve can perform action get at cloud");
  REQUIRE(r.attack_found);
  REQUIRE(r.initial_in_target);
  REQUIRE(r.two_step_tree_valid);
  REQUIRE(r.tree_synthesized);
  REQUIRE(r.tree_valid);
  REQUIRE(r.tree_leaves == 0);  // the initial state already violates the policy
  REQUIRE_FALSE(r.refinement_checked);
}

TEST_CASE("iteration 2: the relabelling attack, and the refinement to level 1") {
  auto r = run_iteration(2);
  REQUIRE(r.system_row == "Access control by DLM labels");
  REQUIRE(r.attack_row == "Eve can perform action eval at cloud; changes label to her own");
  REQUIRE(r.attack_found);
  REQUIRE(r.tree_synthesized);
  REQUIRE(r.tree_valid);
  REQUIRE(r.refinement_checked);
  REQUIRE(r.refinement_holds);
  REQUIRE(r.refinement_map == "two_to_one");
  REQUIRE(r.transfer_checked);
  REQUIRE(r.transfer_refined_ef);
  REQUIRE(r.transfer_abstract_ef);
}

TEST_CASE("iteration 3: the put attack, and the refinement to level 2") {
  auto r = run_iteration(3);
  REQUIRE(r.system_row == "Privacy preserving functions type label_fun");
  REQUIRE(r.attack_row == "Eve puts Bob's data labelled as her own");
  REQUIRE(r.attack_found);
  REQUIRE(r.tree_synthesized);
  REQUIRE(r.tree_valid);
  REQUIRE(r.refinement_holds);
  REQUIRE(r.refinement_map == "three_to_two");
  REQUIRE(r.transfer_refined_ef);
  REQUIRE(r.transfer_abstract_ef);
}

TEST_CASE("iteration 4: insider overwrite without consensus; no attack with it") {
  auto r = run_iteration(4);
  REQUIRE(r.system_row == "Global blockchain");
  REQUIRE(r.attack_row == "Eve is an insider impersonating the blockchain controller");
  REQUIRE(r.attack_found);  // insider, consensus off
  REQUIRE(r.tree_synthesized);
  REQUIRE(r.tree_valid);
  REQUIRE(r.consensus_checked);
  REQUIRE_FALSE(r.consensus_attack_found);  // consensus closes the attack
  REQUIRE(r.followup_system_row == "Consensus (for example Nakamoto) blockchain");
  REQUIRE(r.followup_attack_row == "no attack known yet");
  REQUIRE(r.refinement_checked);
  REQUIRE(r.refinement_holds);
  REQUIRE(r.refinement_map == "four_to_three");
  // The overwrite set is empty under consensus, so nothing transfers.
  REQUIRE(r.transfer_checked);
  REQUIRE_FALSE(r.transfer_refined_ef);
  REQUIRE_FALSE(r.transfer_abstract_ef);
}

TEST_CASE("pinning the consensus option turns iteration 4 into the closing row") {
  CaseOptions user;
  user.consensus_put = true;
  auto r = run_iteration(4, user);
  REQUIRE_FALSE(r.attack_found);
  REQUIRE_FALSE(r.consensus_checked);  // single phase: the user chose the setting
  REQUIRE(r.system_row == "Consensus (for example Nakamoto) blockchain");
  REQUIRE(r.attack_row == "no attack known yet");
}

TEST_CASE("the iteration table reproduces the five rows in order") {
  std::vector<secmc::IterationResult> results;
  for (int n = 1; n <= 4; ++n) results.push_back(run_iteration(n));
  auto rows = iteration_table(results);
  REQUIRE(rows.size() == 5);
  REQUIRE(rows[0] == std::make_pair(std::string("Initial Fusion system home-cloud-hospital"),
                                    std::string("Eve can perform action get at cloud")));
  REQUIRE(rows[1].second == "Eve can perform action eval at cloud; changes label to her own");
  REQUIRE(rows[2].second == "Eve puts Bob's data labelled as her own");
  REQUIRE(rows[3].second == "Eve is an insider impersonating the blockchain controller");
  REQUIRE(rows[4] == std::make_pair(std::string("Consensus (for example Nakamoto) blockchain"),
                                    std::string("no attack known yet")));
}

TEST_CASE("attack predicates reject out-of-scope queries") {
  auto l3 = healthcare_context(3);
  REQUIRE_THROWS_AS(secmc::pred_overwrite_attack(l3), std::invalid_argument);
  REQUIRE_THROWS_AS(iteration_attack_pred(l3, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(run_iteration(0), std::invalid_argument);
  REQUIRE_THROWS_AS(healthcare_context(7), std::invalid_argument);
}

// Copyright (c) 2026, the secmc authors
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include <secmc/refmaps.hpp>
#include <secmc/scenario.hpp>
#include <secmc/semantics.hpp>

using secmc::DataLabel;
using secmc::InfraState;
using secmc::LabeledItem;
using secmc::ModelContext;
using secmc::ScenarioOptions;
using secmc::dlm_to_dlm;
using secmc::healthcare_context;
using secmc::ledger_to_loc;
using secmc::make_initial;
using secmc::refmap_four_to_three;
using secmc::refmap_identity;
using secmc::refmap_three_to_two;
using secmc::refmap_two_to_one;

TEST_CASE("the label-erasing map sends the initial store to the initial store") {
  auto l2 = healthcare_context(2);
  auto l1 = healthcare_context(1);
  auto e = refmap_two_to_one(l2, l1);
  REQUIRE(e(make_initial(l2)) == make_initial(l1));
}

TEST_CASE("the label-erasing map unions all labels of a datum into one bit") {
  auto l2 = healthcare_context(2);
  auto l1 = healthcare_context(1);
  auto e = refmap_two_to_one(l2, l1);

  InfraState s = make_initial(l2);
  // Plant the patient's item at home and Eve's relabelled copy at the cloud.
  s.cells[0] |= (1u << l2.item_id(LabeledItem{0, 1, 0}));
  s.cells[1] |= (1u << l2.item_id(LabeledItem{2, 0, 0}));
  InfraState img = e(s);
  REQUIRE(img.pos == s.pos);
  REQUIRE(img.cells == std::vector<std::uint32_t>{0b1, 0b1, 0, 0});

  // Dropping one of two labels at a location does not change the image.
  InfraState t = s;
  t.cells[1] &= ~(1u << l2.item_id(LabeledItem{0, 1, 0}));
  REQUIRE(e(t) == img);
}

TEST_CASE("the item re-embedding maps the processing model into the labelled model") {
  auto l3 = healthcare_context(3);
  auto l2 = healthcare_context(2);
  auto e = refmap_three_to_two(l3, l2);
  REQUIRE(e(make_initial(l3)) == make_initial(l2));

  // The two vocabularies coincide, so content is preserved item by item.
  InfraState s = make_initial(l3);
  s.cells[3] |= (1u << l3.item_id(LabeledItem{0, 1, 0}));
  InfraState img = e(s);
  REQUIRE((img.cells[3] & (1u << l2.item_id(LabeledItem{0, 1, 0}))) != 0);
}

TEST_CASE("the ledger map materializes cells as per-location stores") {
  auto l4 = healthcare_context(4);
  auto l3 = healthcare_context(3);
  auto e = refmap_four_to_three(l4, l3);
  REQUIRE(e(make_initial(l4)) == make_initial(l3));

  // Spread the ledger entry to the hospital and map again.
  InfraState s = make_initial(l4);
  const std::uint32_t c = l4.cell_id(l4.label_id(DataLabel{0, 1}), 0);
  s.cells[c] |= (1u << 3);
  InfraState img = e(s);
  const std::uint32_t bit = 1u << l3.item_id(LabeledItem{0, 1, 0});
  REQUIRE(img.cells == std::vector<std::uint32_t>{0, bit, 0, bit});

  auto view = ledger_to_loc(l4, l3, s);
  REQUIRE(view[1] == std::vector<LabeledItem>{LabeledItem{0, 1, 0}});
  REQUIRE(view[3] == std::vector<LabeledItem>{LabeledItem{0, 1, 0}});
  REQUIRE(view[0].empty());
  REQUIRE(view[2].empty());
}

TEST_CASE("ledger labels translate raw identities through the actor resolution") {
  auto l4 = healthcare_context(4);
  auto l3 = healthcare_context(3);

  // Without aliasing, raw Eve maps to Eve with the empty reader set.
  auto it = dlm_to_dlm(l4, l3, DataLabel{2, 0}, 0);
  REQUIRE(it == LabeledItem{2, 0, 0});
  // The patient's label with readers {Doctor} survives untouched.
  REQUIRE(dlm_to_dlm(l4, l3, DataLabel{0, 1}, 0) == LabeledItem{0, 1, 0});
}

TEST_CASE("the insider's ledger does not map into the processing model") {
  ScenarioOptions insider;
  insider.insider = true;
  insider.consensus_put = false;
  auto l4 = healthcare_context(4, insider);
  auto l3 = healthcare_context(3);
  // Labels owned through the controller alias have no counterpart below.
  REQUIRE_THROWS_WITH(refmap_four_to_three(l4, l3),
                      Catch::Matchers::ContainsSubstring("no abstract counterpart"));
}

TEST_CASE("vocabulary mismatches are rejected at map construction") {
  auto l2 = healthcare_context(2);
  auto weird = healthcare_context(1);
  weird.locations[0] = "casa";
  REQUIRE_THROWS_WITH(refmap_two_to_one(l2, weird),
                      Catch::Matchers::ContainsSubstring("refined location has no abstract counterpart"));
}

TEST_CASE("a placed identity without an abstract counterpart fails at mapping time") {
  auto l2 = healthcare_context(2);
  l2.identities.push_back("Ghost");
  l2.alias.push_back(3);
  l2.credentials.resize(4);
  l2.placement.push_back(1);  // placed at the cloud
  l2.finalize();
  auto l1 = healthcare_context(1);

  auto e = refmap_two_to_one(l2, l1);  // construction is fine: ids translate lazily
  REQUIRE_THROWS_WITH(e(make_initial(l2)),
                      Catch::Matchers::ContainsSubstring("placed identity"));

  // Unplaced, the extra identity is harmless.
  l2.placement[3] = -1;
  REQUIRE(e(make_initial(l2)).pos == make_initial(l1).pos);
}

TEST_CASE("the identity map is the identity") {
  auto l1 = healthcare_context(1);
  auto e = refmap_identity();
  auto s = make_initial(l1);
  REQUIRE(e(s) == s);
}

/*
 * Copyright (c) 2026, the secmc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#ifndef SECMC_REFMAPS_HPP_
#define SECMC_REFMAPS_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "secmc/infra.hpp"
#include "secmc/refinement.hpp"

namespace secmc {

namespace detail {

/// Location/identity/datum index translations from a refined vocabulary into
/// an abstract one; throws when a refined location or datum has no abstract
/// counterpart. Identities missing from the abstract vocabulary are dropped
/// (translation -1), which is only legal while they stay unplaced.
struct VocabMap {
  std::vector<std::int32_t> loc;    // refined location id -> abstract location id
  std::vector<std::int32_t> ident;  // refined identity id -> abstract identity id (-1 dropped)
  std::vector<std::int32_t> datum;  // refined datum id -> abstract datum id

  static VocabMap build(const ModelContext& refined, const ModelContext& abstract) {
    VocabMap m;
    for (const auto& name : refined.locations) {
      auto i = abstract.location_id(name);
      if (!i) throw std::invalid_argument("refined location has no abstract counterpart: " + name);
      m.loc.push_back(static_cast<std::int32_t>(*i));
    }
    for (const auto& name : refined.identities) {
      auto i = abstract.identity_id(name);
      m.ident.push_back(i ? static_cast<std::int32_t>(*i) : -1);
    }
    for (const auto& d : refined.data_universe) {
      auto i = abstract.datum_id(d);
      if (!i) throw std::invalid_argument("refined datum has no abstract counterpart: " + d);
      m.datum.push_back(static_cast<std::int32_t>(*i));
    }
    return m;
  }

  std::vector<std::int8_t> map_positions(const ModelContext& abstract,
                                         const std::vector<std::int8_t>& pos) const {
    std::vector<std::int8_t> out(abstract.num_identities(), -1);
    for (std::size_t h = 0; h < pos.size(); ++h) {
      if (ident[h] < 0) {
        if (pos[h] >= 0)
          throw std::invalid_argument("placed identity has no abstract counterpart");
        continue;
      }
      out[static_cast<std::size_t>(ident[h])] =
          pos[h] < 0 ? std::int8_t{-1} : static_cast<std::int8_t>(loc[pos[h]]);
    }
    return out;
  }
};

inline std::uint32_t map_reader_set(const ModelContext& refined, const ModelContext& abstract,
                                    const VocabMap& vm, std::uint32_t rs,
                                    bool canonicalize_members) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t r : refined.reader_sets[rs]) {
    std::uint32_t member = canonicalize_members ? refined.alias[r] : r;
    std::int32_t a = vm.ident[member];
    if (a < 0) throw std::invalid_argument("image reader has no abstract counterpart");
    out.push_back(static_cast<std::uint32_t>(a));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  auto id = abstract.reader_set_id(out);
  if (!id) throw std::invalid_argument("image reader set not representable in the abstract model");
  return *id;
}

}  // namespace detail

/// Label translation used by the level-4 → level-3 map: level-4 labels hold
/// raw identities, level-3 labels hold actor values, so the owner and every
/// reader pass through the alias (Actor) resolution of the level-4 model.
inline LabeledItem dlm_to_dlm(const ModelContext& l4, const ModelContext& l3,
                              const DataLabel& raw, std::uint32_t datum) {
  detail::VocabMap vm = detail::VocabMap::build(l4, l3);
  std::int32_t owner = vm.ident[l4.alias[raw.owner]];
  if (owner < 0) throw std::invalid_argument("image owner has no abstract counterpart");
  LabeledItem it;
  it.owner = static_cast<std::uint32_t>(owner);
  it.readers = detail::map_reader_set(l4, l3, vm, raw.readers, /*canonicalize_members=*/true);
  std::int32_t d = vm.datum[datum];
  it.datum = static_cast<std::uint32_t>(d);
  return it;
}

/// The per-location view of a ledger state: location -> set of labeled items
/// (translated into the abstract level-3 vocabulary).
inline std::vector<std::vector<LabeledItem>> ledger_to_loc(const ModelContext& l4,
                                                           const ModelContext& l3,
                                                           const InfraState& s4) {
  std::vector<std::vector<LabeledItem>> view(l3.num_locations());
  detail::VocabMap vm = detail::VocabMap::build(l4, l3);
  for (std::uint32_t lb = 0; lb < l4.labels.size(); ++lb) {
    for (std::uint32_t d = 0; d < l4.data_universe.size(); ++d) {
      const std::uint32_t mask = s4.cells[l4.cell_id(lb, d)];
      if (mask == 0) continue;
      LabeledItem it = dlm_to_dlm(l4, l3, l4.labels[lb], d);
      for (std::uint32_t l = 0; l < l4.num_locations(); ++l) {
        if (mask & (1u << l)) view[static_cast<std::uint32_t>(vm.loc[l])].push_back(it);
      }
    }
  }
  for (auto& v : view) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return view;
}

/// Level 2 → level 1: projects out the data labels (fmap snd per location);
/// graph, positions, and credentials pass through.
inline RefMap<InfraState, InfraState> refmap_two_to_one(const ModelContext& l2,
                                                        const ModelContext& l1) {
  detail::VocabMap vm = detail::VocabMap::build(l2, l1);
  return [&l2, &l1, vm](const InfraState& s) {
    InfraState out;
    out.pos = vm.map_positions(l1, s.pos);
    out.cells.assign(l1.num_locations(), 0);
    for (std::uint32_t l = 0; l < l2.num_locations(); ++l) {
      std::uint32_t m = s.cells[l];
      while (m) {
        const unsigned i = static_cast<unsigned>(__builtin_ctz(m));
        out.cells[static_cast<std::uint32_t>(vm.loc[l])] |=
            (1u << static_cast<std::uint32_t>(vm.datum[l2.items[i].datum]));
        m &= m - 1;
      }
    }
    return out;
  };
}

/// Level 3 → level 2: the identity re-embedding (same state content, item
/// ids translated between the two vocabularies).
inline RefMap<InfraState, InfraState> refmap_three_to_two(const ModelContext& l3,
                                                          const ModelContext& l2) {
  detail::VocabMap vm = detail::VocabMap::build(l3, l2);
  std::vector<std::uint32_t> item_map;
  for (const LabeledItem& it : l3.items) {
    LabeledItem t;
    std::int32_t owner = vm.ident[it.owner];
    if (owner < 0) throw std::invalid_argument("image owner has no abstract counterpart");
    t.owner = static_cast<std::uint32_t>(owner);
    t.readers = detail::map_reader_set(l3, l2, vm, it.readers, /*canonicalize_members=*/false);
    t.datum = static_cast<std::uint32_t>(vm.datum[it.datum]);
    item_map.push_back(l2.item_id(t));  // throws when not representable
  }
  return [&l2, vm, item_map](const InfraState& s) {
    InfraState out;
    out.pos = vm.map_positions(l2, s.pos);
    out.cells.assign(l2.num_locations(), 0);
    for (std::size_t l = 0; l < s.cells.size(); ++l) {
      std::uint32_t m = s.cells[l];
      while (m) {
        const unsigned i = static_cast<unsigned>(__builtin_ctz(m));
        out.cells[static_cast<std::uint32_t>(vm.loc[l])] |= (1u << item_map[i]);
        m &= m - 1;
      }
    }
    return out;
  };
}

/// Level 4 → level 3: materializes the ledger as per-location labeled-item
/// stores (ledger_to_loc) with labels translated by dlm_to_dlm.
inline RefMap<InfraState, InfraState> refmap_four_to_three(const ModelContext& l4,
                                                           const ModelContext& l3) {
  detail::VocabMap vm = detail::VocabMap::build(l4, l3);
  // Pre-translate every representable (label, datum) cell to a level-3 item.
  std::vector<std::uint32_t> cell_map(l4.num_cells());
  for (std::uint32_t lb = 0; lb < l4.labels.size(); ++lb) {
    for (std::uint32_t d = 0; d < l4.data_universe.size(); ++d) {
      cell_map[l4.cell_id(lb, d)] = l3.item_id(dlm_to_dlm(l4, l3, l4.labels[lb], d));
    }
  }
  return [&l4, &l3, vm, cell_map](const InfraState& s) {
    InfraState out;
    out.pos = vm.map_positions(l3, s.pos);
    out.cells.assign(l3.num_locations(), 0);
    for (std::uint32_t c = 0; c < l4.num_cells(); ++c) {
      std::uint32_t m = s.cells[c];
      while (m) {
        const unsigned l = static_cast<unsigned>(__builtin_ctz(m));
        out.cells[static_cast<std::uint32_t>(vm.loc[l])] |= (1u << cell_map[c]);
        m &= m - 1;
      }
    }
    return out;
  };
}

/// The trivial map for same-vocabulary comparisons.
inline RefMap<InfraState, InfraState> refmap_identity() {
  return [](const InfraState& s) { return s; };
}

}  // namespace secmc

#endif  // SECMC_REFMAPS_HPP_

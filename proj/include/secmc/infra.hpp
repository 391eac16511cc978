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

#ifndef SECMC_INFRA_HPP_
#define SECMC_INFRA_HPP_

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "secmc/state_graph.hpp"

namespace secmc {

/// The four infrastructure actions. Deletion is a separate rule on stores and
/// ledgers, not an action subject to location policies.
enum class Action : std::uint8_t { kGet = 0, kMove = 1, kEval = 2, kPut = 3 };

inline const char* action_name(Action a) {
  switch (a) {
    case Action::kGet: return "get";
    case Action::kMove: return "move";
    case Action::kEval: return "eval";
    case Action::kPut: return "put";
  }
  return "?";
}

inline std::optional<Action> parse_action(const std::string& s) {
  if (s == "get") return Action::kGet;
  if (s == "move") return Action::kMove;
  if (s == "eval") return Action::kEval;
  if (s == "put") return Action::kPut;
  return std::nullopt;
}

/// Credential assignment of one identity: a set of credential strings and a
/// set of role strings (both sorted).
struct Credentials {
  std::vector<std::string> creds;
  std::vector<std::string> roles;

  bool has(const std::string& c) const {
    return std::binary_search(creds.begin(), creds.end(), c);
  }
  bool has_role(const std::string& r) const {
    return std::binary_search(roles.begin(), roles.end(), r);
  }
};

/// Policy predicates over the requesting identity, evaluated against the
/// current actor positions.
struct PolicyPred {
  enum class Kind : std::uint8_t {
    kTrue,           // holds for every identity
    kHasCredential,  // the identity owns credential `arg`
    kResidesAt,      // some actor whose identity resolves to the requester is at location `arg`
    kIdentityIs,     // the requesting identity is exactly `arg`
    kAnd,
    kOr,
    kNot,
  };

  Kind kind = Kind::kTrue;
  std::string arg;
  std::vector<PolicyPred> children;

  static PolicyPred truep() { return {}; }
  static PolicyPred has_credential(std::string c) {
    return {Kind::kHasCredential, std::move(c), {}};
  }
  static PolicyPred resides_at(std::string loc) { return {Kind::kResidesAt, std::move(loc), {}}; }
  static PolicyPred identity_is(std::string who) {
    return {Kind::kIdentityIs, std::move(who), {}};
  }
  static PolicyPred conj(PolicyPred a, PolicyPred b) {
    return {Kind::kAnd, {}, {std::move(a), std::move(b)}};
  }
  static PolicyPred disj(PolicyPred a, PolicyPred b) {
    return {Kind::kOr, {}, {std::move(a), std::move(b)}};
  }
  static PolicyPred negation(PolicyPred a) { return {Kind::kNot, {}, {std::move(a)}}; }
};

/// One clause of a location policy: a predicate guarding a set of actions.
struct PolicyClause {
  PolicyPred when;
  std::vector<Action> actions;

  bool covers(Action a) const {
    return std::find(actions.begin(), actions.end(), a) != actions.end();
  }
};

/// A label-preserving data transformer: it rewrites only the datum, never the
/// label, so label preservation holds by construction.
struct LabelFun {
  enum class Kind : std::uint8_t { kIdentity, kConstant, kSuffix };

  std::string name = "id";
  Kind kind = Kind::kIdentity;
  std::string arg;

  std::string apply(const std::string& datum) const {
    switch (kind) {
      case Kind::kIdentity: return datum;
      case Kind::kConstant: return arg;
      case Kind::kSuffix: return datum + arg;
    }
    return datum;
  }
};

/// A labelled data item (owner identity, reader-set id, datum id); the state
/// representation packs per-location item sets as bitmasks over the table of
/// all representable items, so the table is capped at 32 entries.
struct LabeledItem {
  std::uint32_t owner = 0;    // canonical identity index
  std::uint32_t readers = 0;  // index into ModelContext::reader_sets
  std::uint32_t datum = 0;    // index into ModelContext::data_universe

  auto operator<=>(const LabeledItem&) const = default;
};

/// A security label (owner, reader-set id) for ledger cells.
struct DataLabel {
  std::uint32_t owner = 0;
  std::uint32_t readers = 0;

  auto operator<=>(const DataLabel&) const = default;
};

/// One system state, shared by every abstraction level:
///  - pos[a]   = location of actor a (-1 when unplaced);
///  - level 1  : cells[l] = bitmask of datum indices present at location l;
///  - level 2,3: cells[l] = bitmask over the item table at location l;
///  - level 4  : cells[c] = bitmask of locations holding ledger cell c, where
///               c indexes labels × data.
struct InfraState {
  std::vector<std::int8_t> pos;
  std::vector<std::uint32_t> cells;

  auto operator<=>(const InfraState&) const = default;
};

/// Static model vocabulary, tables, and policies; immutable during
/// exploration.
struct ModelContext {
  int level = 1;

  std::vector<std::string> locations;  // declaration order defines location ids
  std::vector<std::pair<std::uint8_t, std::uint8_t>> edges;
  std::vector<std::string> identities;  // declaration order defines identity ids
  std::vector<std::uint32_t> alias;     // alias[i] = canonical identity of actor i
  std::vector<Credentials> credentials;
  std::vector<std::int8_t> placement;  // initial location per actor, -1 unplaced

  std::vector<std::string> data_universe;
  std::vector<std::vector<std::uint32_t>> reader_sets;  // sorted identity indices
  std::vector<std::uint32_t> put_reader_sets;           // reader-set ids available to put
  std::vector<std::uint32_t> put_data;                  // datum ids available to put
  std::vector<LabelFun> label_funs;

  std::vector<std::vector<PolicyClause>> policies;  // per location

  // Initial data contents (level-variant).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> initial_l1;      // (location, datum)
  std::vector<std::pair<std::uint32_t, LabeledItem>> initial_items;     // (location, item)
  struct LedgerEntry {
    DataLabel label;
    std::uint32_t datum = 0;
    std::uint32_t loc_mask = 0;
  };
  std::vector<LedgerEntry> initial_ledger;  // level 4

  // Derived tables (filled by finalize()).
  std::vector<LabeledItem> items;  // levels 2,3: all representable items, sorted
  std::vector<DataLabel> labels;   // level 4: all representable labels, sorted
  std::vector<std::uint32_t> item_datum_mask;  // per datum: bitmask of items carrying it

  bool buggy_delete = false;  // level 3: use the single-pair deletion
  bool consensus_put = true;  // level 4: require an empty ledger entry before put

  std::size_t state_cap = kDefaultStateCap;
  std::optional<std::size_t> depth_bound;

  std::size_t num_locations() const { return locations.size(); }
  std::size_t num_identities() const { return identities.size(); }

  std::optional<std::uint32_t> location_id(const std::string& name) const {
    for (std::uint32_t i = 0; i < locations.size(); ++i)
      if (locations[i] == name) return i;
    return std::nullopt;
  }
  std::optional<std::uint32_t> identity_id(const std::string& name) const {
    for (std::uint32_t i = 0; i < identities.size(); ++i)
      if (identities[i] == name) return i;
    return std::nullopt;
  }
  std::optional<std::uint32_t> datum_id(const std::string& d) const {
    for (std::uint32_t i = 0; i < data_universe.size(); ++i)
      if (data_universe[i] == d) return i;
    return std::nullopt;
  }
  std::optional<std::uint32_t> reader_set_id(const std::vector<std::uint32_t>& rs) const {
    for (std::uint32_t i = 0; i < reader_sets.size(); ++i)
      if (reader_sets[i] == rs) return i;
    return std::nullopt;
  }

  std::uint32_t item_id(const LabeledItem& it) const {
    auto p = std::lower_bound(items.begin(), items.end(), it);
    if (p == items.end() || !(*p == it))
      throw std::invalid_argument("image item not representable in the item table");
    return static_cast<std::uint32_t>(p - items.begin());
  }
  std::optional<std::uint32_t> try_item_id(const LabeledItem& it) const {
    auto p = std::lower_bound(items.begin(), items.end(), it);
    if (p == items.end() || !(*p == it)) return std::nullopt;
    return static_cast<std::uint32_t>(p - items.begin());
  }
  std::uint32_t label_id(const DataLabel& lb) const {
    auto p = std::lower_bound(labels.begin(), labels.end(), lb);
    if (p == labels.end() || !(*p == lb))
      throw std::invalid_argument("image label not representable in the label table");
    return static_cast<std::uint32_t>(p - labels.begin());
  }
  std::uint32_t cell_id(std::uint32_t label, std::uint32_t datum) const {
    return label * static_cast<std::uint32_t>(data_universe.size()) + datum;
  }
  std::size_t num_cells() const { return labels.size() * data_universe.size(); }

  /// Builds the derived item/label tables from the initially present items
  /// plus everything the mint rules (put, relabelling eval) can create:
  /// identities × put reader sets × data.
  void finalize() {
    items.clear();
    labels.clear();
    if (locations.size() > 32)
      throw std::invalid_argument("more than 32 locations are not representable");
    if (data_universe.size() > 32)
      throw std::invalid_argument("more than 32 data values are not representable");
    if (level == 2 || level == 3) {
      // Initial items enter together with every label-preserving datum
      // rewrite of them, so transformer outputs are always representable.
      for (const auto& [loc, it] : initial_items) {
        (void)loc;
        for (std::uint32_t d = 0; d < data_universe.size(); ++d)
          items.push_back(LabeledItem{it.owner, it.readers, d});
      }
      for (std::uint32_t who = 0; who < identities.size(); ++who) {
        if (alias[who] != who) continue;  // level-2/3 labels hold canonical actor values
        for (std::uint32_t rs : put_reader_sets)
          for (std::uint32_t d = 0; d < data_universe.size(); ++d)
            items.push_back(LabeledItem{who, rs, d});
      }
      std::sort(items.begin(), items.end());
      items.erase(std::unique(items.begin(), items.end()), items.end());
      if (items.size() > 32)
        throw std::invalid_argument("item table exceeds 32 entries; shrink data_universe or put_reader_sets");
      item_datum_mask.assign(data_universe.size(), 0);
      for (std::uint32_t i = 0; i < items.size(); ++i)
        item_datum_mask[items[i].datum] |= (1u << i);
    } else if (level == 4) {
      // Level-4 labels carry raw identities (an aliased actor's put still
      // writes its own name), so no restriction to canonical identities here.
      for (const auto& e : initial_ledger) labels.push_back(e.label);
      for (std::uint32_t who = 0; who < identities.size(); ++who) {
        for (std::uint32_t rs : put_reader_sets) labels.push_back(DataLabel{who, rs});
      }
      std::sort(labels.begin(), labels.end());
      labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
      if (num_cells() > 4096)
        throw std::invalid_argument("ledger cell table exceeds 4096 entries; shrink the vocabulary");
    }
  }
};

/// Evaluates a policy predicate for canonical identity `who` under actor
/// positions `pos`.
inline bool eval_policy_pred(const ModelContext& ctx, const PolicyPred& p,
                             const std::vector<std::int8_t>& pos, std::uint32_t who) {
  using K = PolicyPred::Kind;
  switch (p.kind) {
    case K::kTrue:
      return true;
    case K::kHasCredential:
      return who < ctx.credentials.size() && ctx.credentials[who].has(p.arg);
    case K::kResidesAt: {
      auto l = ctx.location_id(p.arg);
      if (!l) return false;
      for (std::uint32_t n = 0; n < ctx.alias.size(); ++n) {
        if (ctx.alias[n] == who && pos[n] == static_cast<std::int8_t>(*l)) return true;
      }
      return false;
    }
    case K::kIdentityIs: {
      auto id = ctx.identity_id(p.arg);
      return id && *id == who;
    }
    case K::kAnd:
      for (const auto& c : p.children)
        if (!eval_policy_pred(ctx, c, pos, who)) return false;
      return true;
    case K::kOr:
      for (const auto& c : p.children)
        if (eval_policy_pred(ctx, c, pos, who)) return true;
      return false;
    case K::kNot:
      return !p.children.empty() && !eval_policy_pred(ctx, p.children[0], pos, who);
  }
  return false;
}

/// enables: some policy clause of location l grants action a to identity
/// `who` under the current positions.
inline bool enables(const ModelContext& ctx, const std::vector<std::int8_t>& pos, std::uint32_t l,
                    std::uint32_t who, Action a) {
  for (const PolicyClause& c : ctx.policies[l]) {
    if (c.covers(a) && eval_policy_pred(ctx, c.when, pos, who)) return true;
  }
  return false;
}

/// Image of a set under f, as a sorted duplicate-free vector.
template <class T, class F>
std::vector<T> fmap_set(const std::vector<T>& s, F&& f) {
  std::vector<T> out;
  out.reserve(s.size());
  for (const T& x : s) out.push_back(f(x));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace secmc

template <>
struct std::hash<secmc::InfraState> {
  std::size_t operator()(const secmc::InfraState& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (auto p : s.pos) mix(static_cast<std::size_t>(static_cast<std::uint8_t>(p)));
    for (auto c : s.cells) mix(static_cast<std::size_t>(c));
    return h;
  }
};

#endif  // SECMC_INFRA_HPP_

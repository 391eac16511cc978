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

#ifndef SECMC_MODEL_CONFIG_HPP_
#define SECMC_MODEL_CONFIG_HPP_

#include <cstdint>
#include <fstream>
#include <limits>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "secmc/infra.hpp"
#include "secmc/scenario.hpp"
#include "secmc/semantics.hpp"

namespace secmc {

/// A malformed or inconsistent model file; the message names the offending
/// JSON path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& path, const std::string& msg)
      : std::runtime_error("model config error at " + path + ": " + msg) {}
};

namespace cfg {

using nlohmann::json;

inline const json& require(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path, std::string("missing key '") + key + "'");
  return *it;
}

inline std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

inline const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  return j;
}

inline const json& as_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  return j;
}

inline bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ConfigError(path, "expected a boolean");
  return j.get<bool>();
}

inline std::uint32_t lookup_location(const ModelContext& ctx, const std::string& name,
                                     const std::string& path) {
  auto l = ctx.location_id(name);
  if (!l) throw ConfigError(path, "unknown location '" + name + "'");
  return *l;
}

inline std::uint32_t lookup_identity(const ModelContext& ctx, const std::string& name,
                                     const std::string& path) {
  auto i = ctx.identity_id(name);
  if (!i) throw ConfigError(path, "unknown identity '" + name + "'");
  return *i;
}

inline std::uint32_t lookup_datum(const ModelContext& ctx, const std::string& d,
                                  const std::string& path) {
  auto i = ctx.datum_id(d);
  if (!i) throw ConfigError(path, "datum '" + d + "' is not in data_universe");
  return *i;
}

inline std::vector<std::uint32_t> parse_reader_list(const ModelContext& ctx, const json& j,
                                                    const std::string& path) {
  std::vector<std::uint32_t> rs;
  for (std::size_t k = 0; k < as_array(j, path).size(); ++k)
    rs.push_back(lookup_identity(ctx, as_string(j[k], path + "[" + std::to_string(k) + "]"),
                                 path + "[" + std::to_string(k) + "]"));
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  return rs;
}

inline PolicyPred parse_policy_pred(const json& j, const std::string& path) {
  as_object(j, path);
  const std::string type = as_string(require(j, "type", path), path + ".type");
  if (type == "true") return PolicyPred::truep();
  if (type == "has_credential")
    return PolicyPred::has_credential(
        as_string(require(j, "credential", path), path + ".credential"));
  if (type == "resides_at")
    return PolicyPred::resides_at(as_string(require(j, "location", path), path + ".location"));
  if (type == "identity_is")
    return PolicyPred::identity_is(as_string(require(j, "identity", path), path + ".identity"));
  if (type == "and" || type == "or") {
    const json& kids = as_array(require(j, "children", path), path + ".children");
    if (kids.size() != 2) throw ConfigError(path + ".children", "expected exactly two children");
    auto a = parse_policy_pred(kids[0], path + ".children[0]");
    auto b = parse_policy_pred(kids[1], path + ".children[1]");
    return type == "and" ? PolicyPred::conj(std::move(a), std::move(b))
                         : PolicyPred::disj(std::move(a), std::move(b));
  }
  if (type == "not") {
    const json& kids = as_array(require(j, "children", path), path + ".children");
    if (kids.size() != 1) throw ConfigError(path + ".children", "expected exactly one child");
    return PolicyPred::negation(parse_policy_pred(kids[0], path + ".children[0]"));
  }
  throw ConfigError(path + ".type", "unknown policy predicate type '" + type + "'");
}

inline LabeledItem parse_item(const ModelContext& ctx, const json& j, const std::string& path,
                              bool canonicalize_owner) {
  as_object(j, path);
  std::uint32_t owner =
      lookup_identity(ctx, as_string(require(j, "owner", path), path + ".owner"), path + ".owner");
  if (canonicalize_owner) owner = ctx.alias[owner];
  auto readers = parse_reader_list(ctx, require(j, "readers", path), path + ".readers");
  auto rs = ctx.reader_set_id(readers);
  if (!rs) throw ConfigError(path + ".readers", "reader set not declared in reader_sets");
  std::uint32_t d =
      lookup_datum(ctx, as_string(require(j, "datum", path), path + ".datum"), path + ".datum");
  return LabeledItem{owner, *rs, d};
}

}  // namespace cfg

/// Parses a model document into a finalized ModelContext.
inline ModelContext parse_model_config(const nlohmann::json& j) {
  using cfg::as_array;
  using cfg::as_bool;
  using cfg::as_object;
  using cfg::as_string;
  using cfg::require;
  using nlohmann::json;

  as_object(j, "$");
  static const std::set<std::string> known = {
      "schema_version", "level",      "locations",       "edges",      "identities",
      "aliases",        "credentials", "placement",      "data_universe", "reader_sets",
      "put_reader_sets", "put_data",  "label_funs",      "policies",   "initial_store",
      "ledger",         "options",    "bounds"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError("$", "unknown key '" + it.key() + "'");
  }

  if (!require(j, "schema_version", "$").is_number_integer() ||
      j["schema_version"].get<int>() != 1)
    throw ConfigError("$.schema_version", "expected schema_version 1");

  ModelContext ctx;
  if (!require(j, "level", "$").is_number_integer())
    throw ConfigError("$.level", "expected an integer");
  ctx.level = j["level"].get<int>();
  if (ctx.level < 1 || ctx.level > 4) throw ConfigError("$.level", "level must be 1..4");

  const json& locs = as_array(require(j, "locations", "$"), "$.locations");
  for (std::size_t k = 0; k < locs.size(); ++k)
    ctx.locations.push_back(as_string(locs[k], "$.locations[" + std::to_string(k) + "]"));
  if (std::set<std::string>(ctx.locations.begin(), ctx.locations.end()).size() !=
      ctx.locations.size())
    throw ConfigError("$.locations", "duplicate location name");
  if (ctx.locations.empty()) throw ConfigError("$.locations", "at least one location is required");

  const json& ids = as_array(require(j, "identities", "$"), "$.identities");
  for (std::size_t k = 0; k < ids.size(); ++k)
    ctx.identities.push_back(as_string(ids[k], "$.identities[" + std::to_string(k) + "]"));
  if (std::set<std::string>(ctx.identities.begin(), ctx.identities.end()).size() !=
      ctx.identities.size())
    throw ConfigError("$.identities", "duplicate identity name");

  if (j.contains("edges")) {
    const json& edges = as_array(j["edges"], "$.edges");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string p = "$.edges[" + std::to_string(k) + "]";
      const json& e = as_array(edges[k], p);
      if (e.size() != 2) throw ConfigError(p, "expected a pair of locations");
      auto a = cfg::lookup_location(ctx, as_string(e[0], p + "[0]"), p + "[0]");
      auto b = cfg::lookup_location(ctx, as_string(e[1], p + "[1]"), p + "[1]");
      ctx.edges.emplace_back(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b));
    }
  }

  ctx.alias.resize(ctx.identities.size());
  for (std::uint32_t i = 0; i < ctx.alias.size(); ++i) ctx.alias[i] = i;
  if (j.contains("aliases")) {
    const json& al = as_object(j["aliases"], "$.aliases");
    for (auto it = al.begin(); it != al.end(); ++it) {
      const std::string p = "$.aliases." + it.key();
      auto from = cfg::lookup_identity(ctx, it.key(), p);
      auto to = cfg::lookup_identity(ctx, as_string(it.value(), p), p);
      ctx.alias[from] = to;
    }
  }

  ctx.credentials.resize(ctx.identities.size());
  if (j.contains("credentials")) {
    const json& cr = as_object(j["credentials"], "$.credentials");
    for (auto it = cr.begin(); it != cr.end(); ++it) {
      const std::string p = "$.credentials." + it.key();
      auto who = cfg::lookup_identity(ctx, it.key(), p);
      const json& entry = as_object(it.value(), p);
      if (entry.contains("creds")) {
        const json& cs = as_array(entry["creds"], p + ".creds");
        for (std::size_t k = 0; k < cs.size(); ++k)
          ctx.credentials[who].creds.push_back(
              as_string(cs[k], p + ".creds[" + std::to_string(k) + "]"));
      }
      if (entry.contains("roles")) {
        const json& rs = as_array(entry["roles"], p + ".roles");
        for (std::size_t k = 0; k < rs.size(); ++k)
          ctx.credentials[who].roles.push_back(
              as_string(rs[k], p + ".roles[" + std::to_string(k) + "]"));
      }
      std::sort(ctx.credentials[who].creds.begin(), ctx.credentials[who].creds.end());
      std::sort(ctx.credentials[who].roles.begin(), ctx.credentials[who].roles.end());
    }
  }

  ctx.placement.assign(ctx.identities.size(), -1);
  if (j.contains("placement")) {
    const json& pl = as_object(j["placement"], "$.placement");
    for (auto it = pl.begin(); it != pl.end(); ++it) {
      const std::string p = "$.placement." + it.key();
      auto who = cfg::lookup_identity(ctx, it.key(), p);
      ctx.placement[who] =
          static_cast<std::int8_t>(cfg::lookup_location(ctx, as_string(it.value(), p), p));
    }
  }

  const json& data = as_array(require(j, "data_universe", "$"), "$.data_universe");
  for (std::size_t k = 0; k < data.size(); ++k)
    ctx.data_universe.push_back(as_string(data[k], "$.data_universe[" + std::to_string(k) + "]"));
  if (std::set<std::string>(ctx.data_universe.begin(), ctx.data_universe.end()).size() !=
      ctx.data_universe.size())
    throw ConfigError("$.data_universe", "duplicate datum");

  if (j.contains("reader_sets")) {
    const json& rs = as_array(j["reader_sets"], "$.reader_sets");
    for (std::size_t k = 0; k < rs.size(); ++k) {
      auto set = cfg::parse_reader_list(ctx, rs[k], "$.reader_sets[" + std::to_string(k) + "]");
      if (ctx.reader_set_id(set))
        throw ConfigError("$.reader_sets[" + std::to_string(k) + "]", "duplicate reader set");
      ctx.reader_sets.push_back(std::move(set));
    }
  }
  if (ctx.reader_sets.empty()) ctx.reader_sets.push_back({});

  if (j.contains("put_reader_sets")) {
    const json& prs = as_array(j["put_reader_sets"], "$.put_reader_sets");
    for (std::size_t k = 0; k < prs.size(); ++k) {
      const std::string p = "$.put_reader_sets[" + std::to_string(k) + "]";
      auto set = cfg::parse_reader_list(ctx, prs[k], p);
      auto id = ctx.reader_set_id(set);
      if (!id) throw ConfigError(p, "put reader set not declared in reader_sets");
      ctx.put_reader_sets.push_back(*id);
    }
  } else {
    auto id = ctx.reader_set_id({});
    if (id) ctx.put_reader_sets.push_back(*id);
  }

  if (j.contains("put_data")) {
    const json& pd = as_array(j["put_data"], "$.put_data");
    for (std::size_t k = 0; k < pd.size(); ++k) {
      const std::string p = "$.put_data[" + std::to_string(k) + "]";
      ctx.put_data.push_back(cfg::lookup_datum(ctx, as_string(pd[k], p), p));
    }
  }

  if (j.contains("label_funs")) {
    ctx.label_funs.clear();
    const json& lf = as_array(j["label_funs"], "$.label_funs");
    for (std::size_t k = 0; k < lf.size(); ++k) {
      const std::string p = "$.label_funs[" + std::to_string(k) + "]";
      as_object(lf[k], p);
      LabelFun f;
      f.name = as_string(require(lf[k], "name", p), p + ".name");
      const std::string t = as_string(require(lf[k], "transformer", p), p + ".transformer");
      if (t == "identity") {
        f.kind = LabelFun::Kind::kIdentity;
      } else if (t == "constant") {
        f.kind = LabelFun::Kind::kConstant;
        f.arg = as_string(require(lf[k], "value", p), p + ".value");
      } else if (t == "suffix") {
        f.kind = LabelFun::Kind::kSuffix;
        f.arg = as_string(require(lf[k], "value", p), p + ".value");
      } else {
        throw ConfigError(p + ".transformer", "unknown transformer '" + t + "'");
      }
      for (const std::string& d : ctx.data_universe) {
        if (!ctx.datum_id(f.apply(d)))
          throw ConfigError(p, "label function '" + f.name + "' maps '" + d +
                                   "' outside data_universe");
      }
      ctx.label_funs.push_back(std::move(f));
    }
  } else {
    ctx.label_funs = {LabelFun{}};
  }

  ctx.policies.resize(ctx.locations.size());
  const json& pol = as_object(require(j, "policies", "$"), "$.policies");
  for (auto it = pol.begin(); it != pol.end(); ++it) {
    const std::string p = "$.policies." + it.key();
    auto l = cfg::lookup_location(ctx, it.key(), p);
    const json& clauses = as_array(it.value(), p);
    for (std::size_t k = 0; k < clauses.size(); ++k) {
      const std::string cp = p + "[" + std::to_string(k) + "]";
      as_object(clauses[k], cp);
      PolicyClause clause;
      clause.when = cfg::parse_policy_pred(require(clauses[k], "when", cp), cp + ".when");
      const json& acts = as_array(require(clauses[k], "actions", cp), cp + ".actions");
      for (std::size_t a = 0; a < acts.size(); ++a) {
        const std::string ap = cp + ".actions[" + std::to_string(a) + "]";
        auto act = parse_action(as_string(acts[a], ap));
        if (!act) throw ConfigError(ap, "unknown action '" + acts[a].get<std::string>() + "'");
        clause.actions.push_back(*act);
      }
      ctx.policies[l].push_back(std::move(clause));
    }
  }

  if (ctx.level == 4) {
    if (j.contains("initial_store"))
      throw ConfigError("$.initial_store", "level 4 uses 'ledger', not 'initial_store'");
    if (!j.contains("ledger"))
      throw ConfigError("$", "a level-4 model requires a 'ledger' section");
    {
      const json& led = as_array(j["ledger"], "$.ledger");
      for (std::size_t k = 0; k < led.size(); ++k) {
        const std::string p = "$.ledger[" + std::to_string(k) + "]";
        // Ledger labels keep the raw owner identity.
        LabeledItem it = cfg::parse_item(ctx, led[k], p, /*canonicalize_owner=*/false);
        ModelContext::LedgerEntry e;
        e.label = DataLabel{it.owner, it.readers};
        e.datum = it.datum;
        const json& ls = as_array(require(led[k], "locations", p), p + ".locations");
        for (std::size_t m = 0; m < ls.size(); ++m) {
          const std::string lp = p + ".locations[" + std::to_string(m) + "]";
          e.loc_mask |= (1u << cfg::lookup_location(ctx, as_string(ls[m], lp), lp));
        }
        ctx.initial_ledger.push_back(e);
      }
    }
  } else if (j.contains("ledger")) {
    throw ConfigError("$.ledger", "'ledger' is only meaningful at level 4");
  } else if (j.contains("initial_store")) {
    const json& store = as_object(j["initial_store"], "$.initial_store");
    for (auto it = store.begin(); it != store.end(); ++it) {
      const std::string p = "$.initial_store." + it.key();
      auto l = cfg::lookup_location(ctx, it.key(), p);
      const json& entries = as_array(it.value(), p);
      for (std::size_t k = 0; k < entries.size(); ++k) {
        const std::string ep = p + "[" + std::to_string(k) + "]";
        if (ctx.level == 1) {
          ctx.initial_l1.emplace_back(l, cfg::lookup_datum(ctx, as_string(entries[k], ep), ep));
        } else {
          ctx.initial_items.emplace_back(l, cfg::parse_item(ctx, entries[k], ep,
                                                            /*canonicalize_owner=*/true));
        }
      }
    }
  }

  if (j.contains("options")) {
    const json& opt = as_object(j["options"], "$.options");
    for (auto it = opt.begin(); it != opt.end(); ++it) {
      const std::string p = "$.options." + it.key();
      if (it.key() == "buggy_delete")
        ctx.buggy_delete = as_bool(it.value(), p);
      else if (it.key() == "consensus_put")
        ctx.consensus_put = as_bool(it.value(), p);
      else
        throw ConfigError(p, "unknown option");
    }
  }

  if (j.contains("bounds")) {
    const json& b = as_object(j["bounds"], "$.bounds");
    for (auto it = b.begin(); it != b.end(); ++it) {
      const std::string p = "$.bounds." + it.key();
      if (it.key() == "state_cap") {
        if (!it.value().is_number_integer() || it.value().get<std::int64_t>() <= 0)
          throw ConfigError(p, "expected a positive integer");
        ctx.state_cap = static_cast<std::size_t>(it.value().get<std::int64_t>());
      } else if (it.key() == "depth") {
        if (it.value().is_null()) continue;
        if (!it.value().is_number_integer() || it.value().get<std::int64_t>() < 0)
          throw ConfigError(p, "expected a non-negative integer or null");
        ctx.depth_bound = static_cast<std::size_t>(it.value().get<std::int64_t>());
      } else {
        throw ConfigError(p, "unknown bound");
      }
    }
  }

  try {
    ctx.finalize();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("$", e.what());
  }
  return ctx;
}

/// Command-line overrides applied on top of a model file before exploration.
struct ModelOverrides {
  std::optional<std::size_t> state_cap;
  std::optional<std::size_t> depth;
  std::optional<bool> buggy_delete;
  std::optional<bool> consensus_put;
};

/// Loads a model file and explores its state space into a bundle.
inline std::shared_ptr<const ScenarioBundle> load_model_file(const std::string& path,
                                                             const ModelOverrides& ov = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot open model file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  ModelContext parsed = parse_model_config(j);
  if (ov.state_cap) parsed.state_cap = *ov.state_cap;
  if (ov.depth) parsed.depth_bound = *ov.depth;
  if (ov.buggy_delete) parsed.buggy_delete = *ov.buggy_delete;
  if (ov.consensus_put) parsed.consensus_put = *ov.consensus_put;
  auto ctx = std::make_shared<const ModelContext>(std::move(parsed));
  InfraState init = make_initial(*ctx);
  auto fn = [ctx](const InfraState& s) { return successors(*ctx, s); };
  auto kripke = build_kripke<InfraState>({init}, fn, ctx->state_cap, ctx->depth_bound);
  return std::make_shared<ScenarioBundle>(
      ScenarioBundle{ctx->level, ScenarioOptions{ctx->buggy_delete, ctx->consensus_put, false},
                     ctx, std::move(init), std::move(kripke)});
}

// ---------------------------------------------------------------------------
// Attack tree documents
// ---------------------------------------------------------------------------

/// A serialized attack tree: goals are either set expressions (resolved by
/// the formula layer against a model) or explicit lists of canonical state
/// indices.
struct TreeDoc {
  enum class Kind : std::uint8_t { kBase, kAnd, kOr };
  Kind kind = Kind::kBase;
  std::string from_expr, to_expr;                    // used when non-empty
  std::vector<std::uint32_t> from_states, to_states; // used otherwise
  bool explicit_states = false;
  std::vector<TreeDoc> children;
};

inline TreeDoc parse_tree_doc(const nlohmann::json& j, const std::string& path = "$") {
  using cfg::as_array;
  using cfg::as_object;
  using cfg::as_string;
  using cfg::require;
  as_object(j, path);
  static const std::set<std::string> known = {"type", "goal", "children"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigError(path, "unknown key '" + it.key() + "'");
  TreeDoc doc;
  const std::string type = as_string(require(j, "type", path), path + ".type");
  if (type == "base")
    doc.kind = TreeDoc::Kind::kBase;
  else if (type == "and")
    doc.kind = TreeDoc::Kind::kAnd;
  else if (type == "or")
    doc.kind = TreeDoc::Kind::kOr;
  else
    throw ConfigError(path + ".type", "unknown tree node type '" + type + "'");

  const nlohmann::json& goal = as_object(require(j, "goal", path), path + ".goal");
  const bool has_expr = goal.contains("from") || goal.contains("to");
  const bool has_states = goal.contains("from_states") || goal.contains("to_states");
  if (has_expr == has_states)
    throw ConfigError(path + ".goal",
                      "expected either from/to expressions or from_states/to_states indices");
  if (has_expr) {
    doc.from_expr = as_string(require(goal, "from", path + ".goal"), path + ".goal.from");
    doc.to_expr = as_string(require(goal, "to", path + ".goal"), path + ".goal.to");
  } else {
    doc.explicit_states = true;
    for (const char* key : {"from_states", "to_states"}) {
      const nlohmann::json& arr =
          as_array(require(goal, key, path + ".goal"), path + ".goal." + std::string(key));
      auto& dst = std::string(key) == "from_states" ? doc.from_states : doc.to_states;
      for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string p = path + ".goal." + key + "[" + std::to_string(k) + "]";
        // Accept any integral JSON value that fits a state index; nlohmann
        // stores positive C++ literals as signed integers, so checking only
        // the unsigned storage class would reject programmatic documents.
        const nlohmann::json& v = arr[k];
        constexpr std::uint64_t kMax = std::numeric_limits<std::uint32_t>::max();
        const bool ok = v.is_number_unsigned()
                            ? v.get<std::uint64_t>() <= kMax
                            : v.is_number_integer() && v.get<std::int64_t>() >= 0 &&
                                  v.get<std::int64_t>() <= static_cast<std::int64_t>(kMax);
        if (!ok) throw ConfigError(p, "expected a state index");
        dst.push_back(static_cast<std::uint32_t>(v.get<std::uint64_t>()));
      }
    }
  }
  if (doc.kind != TreeDoc::Kind::kBase) {
    if (j.contains("children")) {
      const nlohmann::json& kids = as_array(j["children"], path + ".children");
      for (std::size_t k = 0; k < kids.size(); ++k)
        doc.children.push_back(
            parse_tree_doc(kids[k], path + ".children[" + std::to_string(k) + "]"));
    }
  } else if (j.contains("children") && !j["children"].empty()) {
    throw ConfigError(path + ".children", "base nodes take no children");
  }
  return doc;
}

inline TreeDoc load_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("$", "cannot open attack tree file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_tree_doc(j);
}

/// Serializes a tree over canonical state indices of `m`.
inline nlohmann::ordered_json tree_to_json(const AttackTree<InfraState>& t,
                                           const KripkeStructure<InfraState>& m) {
  nlohmann::ordered_json j;
  switch (t.kind) {
    case AttackTree<InfraState>::Kind::kBase: j["type"] = "base"; break;
    case AttackTree<InfraState>::Kind::kAnd: j["type"] = "and"; break;
    case AttackTree<InfraState>::Kind::kOr: j["type"] = "or"; break;
  }
  auto indices = [&m](const std::vector<InfraState>& ss) {
    std::vector<std::uint32_t> out;
    for (const auto& s : ss) out.push_back(m.index_of(s));
    return out;
  };
  j["goal"]["from_states"] = indices(t.goal.from);
  j["goal"]["to_states"] = indices(t.goal.to);
  if (t.kind != AttackTree<InfraState>::Kind::kBase) {
    j["children"] = nlohmann::ordered_json::array();
    for (const auto& c : t.children) j["children"].push_back(tree_to_json(c, m));
  }
  return j;
}

}  // namespace secmc

#endif  // SECMC_MODEL_CONFIG_HPP_

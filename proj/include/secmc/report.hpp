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

#ifndef SECMC_REPORT_HPP_
#define SECMC_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "secmc/infra.hpp"
#include "secmc/semantics.hpp"

namespace secmc {

inline std::string render_reader_set(const ModelContext& ctx, std::uint32_t rs) {
  std::string out = "{";
  bool first = true;
  for (std::uint32_t i : ctx.reader_sets[rs]) {
    if (!first) out += ",";
    first = false;
    out += ctx.identities[i];
  }
  return out + "}";
}

/// "((Patient,{Doctor}),42)" for a level-2/3 item table entry.
inline std::string render_item(const ModelContext& ctx, std::uint32_t item) {
  const LabeledItem& it = ctx.items[item];
  return "((" + ctx.identities[it.owner] + "," + render_reader_set(ctx, it.readers) + ")," +
         ctx.data_universe[it.datum] + ")";
}

/// "((Patient,{Doctor}),42)" for a level-4 ledger cell.
inline std::string render_cell(const ModelContext& ctx, std::uint32_t cell) {
  const std::uint32_t nd = static_cast<std::uint32_t>(ctx.data_universe.size());
  const DataLabel& lb = ctx.labels[cell / nd];
  return "((" + ctx.identities[lb.owner] + "," + render_reader_set(ctx, lb.readers) + ")," +
         ctx.data_universe[cell % nd] + ")";
}

inline std::string render_loc_mask(const ModelContext& ctx, std::uint32_t mask) {
  std::string out = "{";
  bool first = true;
  for (std::uint32_t l = 0; l < ctx.num_locations(); ++l) {
    if (!(mask & (1u << l))) continue;
    if (!first) out += ",";
    first = false;
    out += ctx.locations[l];
  }
  return out + "}";
}

/// The payload of a Step::item / Step::out field, level-dependent.
inline std::string render_subject(const ModelContext& ctx, std::int32_t id, bool datum_like) {
  if (id < 0) return "-";
  const auto u = static_cast<std::uint32_t>(id);
  if (ctx.level == 1 || datum_like) return ctx.data_universe[u];
  if (ctx.level == 4) return render_cell(ctx, u);
  return render_item(ctx, u);
}

/// One line per state: actors, then the store or ledger view.
inline std::string render_state(const ModelContext& ctx, const InfraState& s) {
  std::string out;
  for (std::uint32_t i = 0; i < ctx.num_identities(); ++i) {
    if (i) out += " ";
    out += ctx.identities[i] + "@";
    out += s.pos[i] < 0 ? std::string("-") : ctx.locations[static_cast<std::uint32_t>(s.pos[i])];
  }
  out += " | ";
  if (ctx.level == 4) {
    bool any = false;
    for (std::uint32_t c = 0; c < ctx.num_cells(); ++c) {
      if (s.cells[c] == 0) continue;
      if (any) out += " ";
      any = true;
      out += render_cell(ctx, c) + "->" + render_loc_mask(ctx, s.cells[c]);
    }
    if (!any) out += "-";
    return out;
  }
  for (std::uint32_t l = 0; l < ctx.num_locations(); ++l) {
    if (l) out += " ";
    out += ctx.locations[l] + ":[";
    bool first = true;
    const std::uint32_t limit =
        ctx.level == 1 ? static_cast<std::uint32_t>(ctx.data_universe.size())
                       : static_cast<std::uint32_t>(ctx.items.size());
    for (std::uint32_t i = 0; i < limit; ++i) {
      if (!(s.cells[l] & (1u << i))) continue;
      if (!first) out += ",";
      first = false;
      out += ctx.level == 1 ? ctx.data_universe[i] : render_item(ctx, i);
    }
    out += "]";
  }
  return out;
}

inline std::string render_step(const ModelContext& ctx, const Step& st) {
  const std::string who = ctx.identities[st.actor];
  auto loc = [&ctx](std::int32_t l) {
    return l < 0 ? std::string("-") : ctx.locations[static_cast<std::uint32_t>(l)];
  };
  switch (st.rule) {
    case Step::Rule::kMove:
      return who + ": move " + loc(st.loc_src) + " -> " + loc(st.loc);
    case Step::Rule::kGet:
      return who + ": get " + render_subject(ctx, st.item, false) + " " + loc(st.loc_src) +
             " -> " + loc(st.loc);
    case Step::Rule::kPut:
      return who + ": put " + render_subject(ctx, st.item, false) + " at " + loc(st.loc);
    case Step::Rule::kEval:
    case Step::Rule::kProcess:
      return who + ": " + rule_name(st.rule) + " " + render_subject(ctx, st.item, false) +
             " -> " + render_subject(ctx, st.out, false) + " at " + loc(st.loc);
    case Step::Rule::kDel:
      return who + ": delete " + render_subject(ctx, st.item, false) + " at " + loc(st.loc);
    case Step::Rule::kDelAll:
      return who + ": delete-all " +
             render_subject(ctx, st.item, ctx.level != 4);
  }
  return who + ": ?";
}

/// The first enumerated step of `from` landing exactly on `to`.
inline std::optional<Step> find_step(const ModelContext& ctx, const InfraState& from,
                                     const InfraState& to) {
  for (auto& st : enumerate_steps(ctx, from)) {
    if (st.next == to) return st;
  }
  return std::nullopt;
}

/// A rendered trace with its machine replay check: every consecutive pair
/// must be connected by an enumerable rule instance.
struct RenderedTrace {
  std::vector<std::string> lines;
  bool replays = true;
};

inline RenderedTrace render_trace(const ModelContext& ctx, const std::vector<InfraState>& path) {
  RenderedTrace t;
  for (std::size_t i = 0; i < path.size(); ++i) {
    t.lines.push_back("[" + std::to_string(i) + "] " + render_state(ctx, path[i]));
    if (i + 1 < path.size()) {
      auto st = find_step(ctx, path[i], path[i + 1]);
      if (st) {
        t.lines.push_back("    -> " + render_step(ctx, *st));
      } else {
        t.lines.push_back("    -> (no rule connects these states)");
        t.replays = false;
      }
    }
  }
  return t;
}

inline nlohmann::ordered_json trace_json(const ModelContext& ctx,
                                         const std::vector<InfraState>& path) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < path.size(); ++i) {
    nlohmann::ordered_json e;
    e["state"] = render_state(ctx, path[i]);
    if (i + 1 < path.size()) {
      auto st = find_step(ctx, path[i], path[i + 1]);
      e["step"] = st ? render_step(ctx, *st) : "(no rule connects these states)";
      if (st) e["rule"] = rule_name(st->rule);
    }
    arr.push_back(std::move(e));
  }
  return arr;
}

}  // namespace secmc

#endif  // SECMC_REPORT_HPP_

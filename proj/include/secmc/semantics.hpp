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

#ifndef SECMC_SEMANTICS_HPP_
#define SECMC_SEMANTICS_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "secmc/infra.hpp"
#include "secmc/state_graph.hpp"

namespace secmc {

/// One enumerated rule instance: which rule fired, for which actor, where,
/// on what, and the resulting state. Field meaning varies by rule:
///  - kMove: loc = target location, loc_src = previous location;
///  - kGet:  loc = acting location, loc_src = source location, item = datum
///           id (level 1), item id (levels 2,3) or cell id (level 4);
///  - kPut:  loc = acting location, item = datum id (level 1/4) or item id;
///  - kEval/kProcess: loc = acting location, item = input, out = output
///           (datum, item, or cell id by level);
///  - kDel:  loc = location acted on, item as for kGet;
///  - kDelAll: item = datum id (levels 1-3) or cell id (level 4's
///           everywhere-delete), loc unused.
struct Step {
  enum class Rule : std::uint8_t { kMove, kGet, kPut, kEval, kProcess, kDel, kDelAll };

  Rule rule = Rule::kMove;
  std::uint32_t actor = 0;
  std::int32_t loc = -1;
  std::int32_t loc_src = -1;
  std::int32_t item = -1;
  std::int32_t out = -1;
  InfraState next;
};

inline const char* rule_name(Step::Rule r) {
  switch (r) {
    case Step::Rule::kMove: return "move";
    case Step::Rule::kGet: return "get";
    case Step::Rule::kPut: return "put";
    case Step::Rule::kEval: return "eval";
    case Step::Rule::kProcess: return "process";
    case Step::Rule::kDel: return "delete";
    case Step::Rule::kDelAll: return "delete-all";
  }
  return "?";
}

/// Initial state from the context's placements and initial contents.
inline InfraState make_initial(const ModelContext& ctx) {
  InfraState s;
  s.pos = ctx.placement;
  if (ctx.level == 4) {
    s.cells.assign(ctx.num_cells(), 0);
    for (const auto& e : ctx.initial_ledger)
      s.cells[ctx.cell_id(ctx.label_id(e.label), e.datum)] |= e.loc_mask;
  } else {
    s.cells.assign(ctx.num_locations(), 0);
    if (ctx.level == 1) {
      for (const auto& [loc, d] : ctx.initial_l1) s.cells[loc] |= (1u << d);
    } else {
      for (const auto& [loc, it] : ctx.initial_items) s.cells[loc] |= (1u << ctx.item_id(it));
    }
  }
  return s;
}

/// The per-datum invariant of the distributed ledger: a datum is either
/// assigned nowhere, or under exactly one label.
inline bool ledger_invariant(const ModelContext& ctx, const InfraState& s) {
  if (ctx.level != 4) return true;
  for (std::uint32_t d = 0; d < ctx.data_universe.size(); ++d) {
    int nonempty = 0;
    for (std::uint32_t lb = 0; lb < ctx.labels.size(); ++lb) {
      if (s.cells[ctx.cell_id(lb, d)] != 0) ++nonempty;
    }
    if (nonempty > 1) return false;
  }
  return true;
}

namespace detail {

inline bool label_guard_canonical(const ModelContext& ctx, const LabeledItem& it,
                                  std::uint32_t who) {
  if (it.owner == who) return true;
  const auto& rs = ctx.reader_sets[it.readers];
  return std::binary_search(rs.begin(), rs.end(), who);
}

inline bool label_guard_raw(const ModelContext& ctx, const DataLabel& lb, std::uint32_t h) {
  if (lb.owner == h) return true;
  const auto& rs = ctx.reader_sets[lb.readers];
  return std::binary_search(rs.begin(), rs.end(), h);
}

inline std::uint32_t transformed_datum(const ModelContext& ctx, const LabelFun& g,
                                       std::uint32_t d) {
  auto out = ctx.datum_id(g.apply(ctx.data_universe[d]));
  if (!out)
    throw std::invalid_argument("transformer output escapes the data universe: " +
                                g.apply(ctx.data_universe[d]));
  return *out;
}

inline void push(std::vector<Step>& out, Step::Rule r, std::uint32_t h, std::int32_t loc,
                 std::int32_t loc_src, std::int32_t item, std::int32_t o, InfraState next) {
  Step st;
  st.rule = r;
  st.actor = h;
  st.loc = loc;
  st.loc_src = loc_src;
  st.item = item;
  st.out = o;
  st.next = std::move(next);
  out.push_back(std::move(st));
}

}  // namespace detail

/// Enumerates every rule instance applicable in `s`, in a fixed deterministic
/// order (actors ascending; per actor: move, get, put, eval/process, delete,
/// delete-all; inner loops over locations/items/transformers ascending).
/// Self-moves are excluded; other rules may yield self-loop instances, which
/// are kept (they are real transitions of the semantics).
inline std::vector<Step> enumerate_steps(const ModelContext& ctx, const InfraState& s) {
  if (ctx.level == 4 && !ledger_invariant(ctx, s))
    throw std::runtime_error("corrupt ledger: a datum is assigned under more than one label");

  std::vector<Step> out;
  const auto L = static_cast<std::int32_t>(ctx.num_locations());
  const std::uint32_t nd = static_cast<std::uint32_t>(ctx.data_universe.size());

  for (std::uint32_t h = 0; h < ctx.num_identities(); ++h) {
    if (s.pos[h] < 0) continue;  // unplaced identities cannot act
    const std::uint32_t who = ctx.alias[h];
    const std::int32_t at = s.pos[h];

    // move
    for (std::int32_t l2 = 0; l2 < L; ++l2) {
      if (l2 == at) continue;
      if (!enables(ctx, s.pos, static_cast<std::uint32_t>(l2), who, Action::kMove)) continue;
      InfraState n = s;
      n.pos[h] = static_cast<std::int8_t>(l2);
      detail::push(out, Step::Rule::kMove, h, l2, at, -1, -1, std::move(n));
    }

    // get
    if (ctx.level == 1) {
      for (std::int32_t src = 0; src < L; ++src) {
        if (!enables(ctx, s.pos, static_cast<std::uint32_t>(src), who, Action::kGet)) continue;
        for (std::uint32_t d = 0; d < nd; ++d) {
          if (!(s.cells[src] & (1u << d))) continue;
          InfraState n = s;
          n.cells[at] |= (1u << d);
          detail::push(out, Step::Rule::kGet, h, at, src, static_cast<std::int32_t>(d), -1,
                       std::move(n));
        }
      }
    } else if (ctx.level == 2 || ctx.level == 3) {
      if (enables(ctx, s.pos, static_cast<std::uint32_t>(at), who, Action::kGet)) {
        for (std::int32_t src = 0; src < L; ++src) {
          for (std::uint32_t i = 0; i < ctx.items.size(); ++i) {
            if (!(s.cells[src] & (1u << i))) continue;
            if (!detail::label_guard_canonical(ctx, ctx.items[i], who)) continue;
            InfraState n = s;
            n.cells[at] |= (1u << i);
            detail::push(out, Step::Rule::kGet, h, at, src, static_cast<std::int32_t>(i), -1,
                         std::move(n));
          }
        }
      }
    } else {
      for (std::int32_t src = 0; src < L; ++src) {
        if (!enables(ctx, s.pos, static_cast<std::uint32_t>(src), who, Action::kGet)) continue;
        for (std::uint32_t lb = 0; lb < ctx.labels.size(); ++lb) {
          if (!detail::label_guard_raw(ctx, ctx.labels[lb], h)) continue;
          for (std::uint32_t d = 0; d < nd; ++d) {
            const std::uint32_t c = ctx.cell_id(lb, d);
            if (!(s.cells[c] & (1u << src))) continue;  // l' ∈ L
            InfraState n = s;
            n.cells[c] |= (1u << at);
            detail::push(out, Step::Rule::kGet, h, at, src, static_cast<std::int32_t>(c), -1,
                         std::move(n));
          }
        }
      }
    }

    // put
    if (enables(ctx, s.pos, static_cast<std::uint32_t>(at), who, Action::kPut)) {
      for (std::uint32_t d : ctx.put_data) {
        if (ctx.level == 1) {
          InfraState n = s;
          n.cells[at] |= (1u << d);
          detail::push(out, Step::Rule::kPut, h, at, -1, static_cast<std::int32_t>(d), -1,
                       std::move(n));
        } else if (ctx.level == 2 || ctx.level == 3) {
          for (std::uint32_t rs : ctx.put_reader_sets) {
            const std::uint32_t i = ctx.item_id(LabeledItem{who, rs, d});
            InfraState n = s;
            n.cells[at] |= (1u << i);
            detail::push(out, Step::Rule::kPut, h, at, -1, static_cast<std::int32_t>(i), -1,
                         std::move(n));
          }
        } else {
          for (std::uint32_t rs : ctx.put_reader_sets) {
            const std::uint32_t lb = ctx.label_id(DataLabel{h, rs});
            if (ctx.consensus_put) {
              bool assigned = false;
              for (std::uint32_t lb2 = 0; lb2 < ctx.labels.size() && !assigned; ++lb2)
                assigned = s.cells[ctx.cell_id(lb2, d)] != 0;
              if (assigned) continue;  // the datum must not yet be assigned to anyone
              InfraState n = s;
              n.cells[ctx.cell_id(lb, d)] = (1u << at);
              detail::push(out, Step::Rule::kPut, h, at, -1,
                           static_cast<std::int32_t>(ctx.cell_id(lb, d)), -1, std::move(n));
            } else {
              InfraState n = s;
              for (std::uint32_t lb2 = 0; lb2 < ctx.labels.size(); ++lb2)
                n.cells[ctx.cell_id(lb2, d)] = 0;  // overwrite replaces the assignment
              n.cells[ctx.cell_id(lb, d)] = (1u << at);
              detail::push(out, Step::Rule::kPut, h, at, -1,
                           static_cast<std::int32_t>(ctx.cell_id(lb, d)), -1, std::move(n));
            }
          }
        }
      }
    }

    // eval (levels 1,2) / process (levels 3,4)
    if (enables(ctx, s.pos, static_cast<std::uint32_t>(at), who, Action::kEval)) {
      if (ctx.level == 1) {
        for (std::uint32_t d = 0; d < nd; ++d) {
          if (!(s.cells[at] & (1u << d))) continue;
          for (const LabelFun& g : ctx.label_funs) {
            const std::uint32_t d2 = detail::transformed_datum(ctx, g, d);
            InfraState n = s;
            n.cells[at] = (n.cells[at] & ~(1u << d)) | (1u << d2);
            detail::push(out, Step::Rule::kEval, h, at, -1, static_cast<std::int32_t>(d),
                         static_cast<std::int32_t>(d2), std::move(n));
          }
        }
      } else if (ctx.level == 2) {
        for (std::uint32_t i = 0; i < ctx.items.size(); ++i) {
          if (!(s.cells[at] & (1u << i))) continue;
          const LabeledItem& it = ctx.items[i];
          for (const LabelFun& g : ctx.label_funs) {
            const std::uint32_t d2 = detail::transformed_datum(ctx, g, it.datum);
            // Unconstrained relabelling is the level-2 vulnerability: the
            // output may keep the original label or take the actor's own.
            std::vector<LabeledItem> outs;
            outs.push_back(LabeledItem{it.owner, it.readers, d2});
            for (std::uint32_t rs : ctx.put_reader_sets)
              outs.push_back(LabeledItem{who, rs, d2});
            std::sort(outs.begin(), outs.end());
            outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
            for (const LabeledItem& o : outs) {
              const std::uint32_t oi = ctx.item_id(o);
              InfraState n = s;
              n.cells[at] = (n.cells[at] & ~ctx.item_datum_mask[it.datum]) | (1u << oi);
              detail::push(out, Step::Rule::kEval, h, at, -1, static_cast<std::int32_t>(i),
                           static_cast<std::int32_t>(oi), std::move(n));
            }
          }
        }
      } else if (ctx.level == 3) {
        for (std::uint32_t i = 0; i < ctx.items.size(); ++i) {
          if (!(s.cells[at] & (1u << i))) continue;
          const LabeledItem& it = ctx.items[i];
          if (!detail::label_guard_canonical(ctx, it, who)) continue;
          for (const LabelFun& g : ctx.label_funs) {
            const std::uint32_t d2 = detail::transformed_datum(ctx, g, it.datum);
            const std::uint32_t oi = ctx.item_id(LabeledItem{it.owner, it.readers, d2});
            InfraState n = s;
            n.cells[at] = (n.cells[at] & ~ctx.item_datum_mask[it.datum]) | (1u << oi);
            detail::push(out, Step::Rule::kProcess, h, at, -1, static_cast<std::int32_t>(i),
                         static_cast<std::int32_t>(oi), std::move(n));
          }
        }
      } else {
        for (std::uint32_t lb = 0; lb < ctx.labels.size(); ++lb) {
          if (!detail::label_guard_raw(ctx, ctx.labels[lb], h)) continue;
          for (std::uint32_t d = 0; d < nd; ++d) {
            const std::uint32_t c = ctx.cell_id(lb, d);
            const std::uint32_t locs = s.cells[c];
            if (!(locs & (1u << at))) continue;  // the data resides where the actor acts
            for (const LabelFun& g : ctx.label_funs) {
              const std::uint32_t d2 = detail::transformed_datum(ctx, g, d);
              InfraState n = s;
              n.cells[c] = 0;
              for (std::uint32_t lb2 = 0; lb2 < ctx.labels.size(); ++lb2)
                n.cells[ctx.cell_id(lb2, d2)] = 0;
              n.cells[ctx.cell_id(lb, d2)] = locs;
              detail::push(out, Step::Rule::kProcess, h, at, -1, static_cast<std::int32_t>(c),
                           static_cast<std::int32_t>(ctx.cell_id(lb, d2)), std::move(n));
            }
          }
        }
      }
    }

    // delete (single location; remote deletion is allowed: no premise h @ l)
    if (ctx.level == 1) {
      for (std::int32_t l = 0; l < L; ++l) {
        for (std::uint32_t d = 0; d < nd; ++d) {
          if (!(s.cells[l] & (1u << d))) continue;
          InfraState n = s;
          n.cells[l] &= ~(1u << d);
          detail::push(out, Step::Rule::kDel, h, l, -1, static_cast<std::int32_t>(d), -1,
                       std::move(n));
        }
      }
    } else if (ctx.level == 2 || ctx.level == 3) {
      for (std::int32_t l = 0; l < L; ++l) {
        for (std::uint32_t i = 0; i < ctx.items.size(); ++i) {
          if (!(s.cells[l] & (1u << i))) continue;
          if (ctx.items[i].owner != who) continue;  // the actor's own labeled pair
          InfraState n = s;
          if (ctx.buggy_delete) {
            n.cells[l] &= ~(1u << i);  // removes only this pair: other labels survive
          } else {
            n.cells[l] &= ~ctx.item_datum_mask[ctx.items[i].datum];  // all copies of the datum
          }
          detail::push(out, Step::Rule::kDel, h, l, -1, static_cast<std::int32_t>(i), -1,
                       std::move(n));
        }
      }
    } else {
      for (std::uint32_t lb = 0; lb < ctx.labels.size(); ++lb) {
        if (ctx.labels[lb].owner != h) continue;  // only the owner deletes
        for (std::uint32_t d = 0; d < nd; ++d) {
          const std::uint32_t c = ctx.cell_id(lb, d);
          if (s.cells[c] == 0) continue;  // some location holds it
          InfraState n = s;
          n.cells[c] = 0;  // the ledger deletes everywhere at once
          detail::push(out, Step::Rule::kDelAll, h, -1, -1, static_cast<std::int32_t>(c), -1,
                       std::move(n));
        }
      }
    }

    // delete-all (levels 1-3): the global-deletion counterpart of the
    // ledger's everywhere-delete.
    if (ctx.level == 1) {
      for (std::uint32_t d = 0; d < nd; ++d) {
        bool present = false;
        for (std::int32_t l = 0; l < L && !present; ++l) present = (s.cells[l] & (1u << d)) != 0;
        if (!present) continue;
        InfraState n = s;
        for (std::int32_t l = 0; l < L; ++l) n.cells[l] &= ~(1u << d);
        detail::push(out, Step::Rule::kDelAll, h, -1, -1, static_cast<std::int32_t>(d), -1,
                     std::move(n));
      }
    } else if (ctx.level == 2 || ctx.level == 3) {
      for (std::uint32_t d = 0; d < nd; ++d) {
        bool owned = false;
        for (std::int32_t l = 0; l < L && !owned; ++l) {
          std::uint32_t m = s.cells[l] & ctx.item_datum_mask[d];
          while (m && !owned) {
            const unsigned i = static_cast<unsigned>(__builtin_ctz(m));
            owned = ctx.items[i].owner == who;
            m &= m - 1;
          }
        }
        if (!owned) continue;
        InfraState n = s;
        for (std::int32_t l = 0; l < L; ++l) n.cells[l] &= ~ctx.item_datum_mask[d];
        detail::push(out, Step::Rule::kDelAll, h, -1, -1, static_cast<std::int32_t>(d), -1,
                     std::move(n));
      }
    }
  }
  return out;
}

/// Successor states only, sorted and duplicate-free.
inline std::vector<InfraState> successors(const ModelContext& ctx, const InfraState& s) {
  auto steps = enumerate_steps(ctx, s);
  std::vector<InfraState> out;
  out.reserve(steps.size());
  for (auto& st : steps) out.push_back(std::move(st.next));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Successor function closing over the context; `ctx` must outlive the result.
inline SuccessorFn<InfraState> successor_fn(const ModelContext& ctx) {
  return [&ctx](const InfraState& s) { return successors(ctx, s); };
}

}  // namespace secmc

#endif  // SECMC_SEMANTICS_HPP_

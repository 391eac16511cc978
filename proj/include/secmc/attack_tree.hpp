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

#ifndef SECMC_ATTACK_TREE_HPP_
#define SECMC_ATTACK_TREE_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "secmc/ctl.hpp"
#include "secmc/state_graph.hpp"

namespace secmc {

class AttackTreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An attack goal: a pair of state sets (start set, target set), both kept in
/// canonical sorted order.
template <class State>
struct AttackGoal {
  std::vector<State> from;
  std::vector<State> to;

  friend bool operator==(const AttackGoal& a, const AttackGoal& b) = default;
};

/// The attack-tree datatype: a base attack is a goal pair; and/or nodes carry
/// an ordered child list plus their own goal pair. `attack_of` projects the
/// goal of any node.
template <class State>
struct AttackTree {
  enum class Kind { kBase, kAnd, kOr };

  Kind kind = Kind::kBase;
  std::vector<AttackTree> children;
  AttackGoal<State> goal;

  static AttackTree base(std::vector<State> from, std::vector<State> to) {
    return make(Kind::kBase, {}, std::move(from), std::move(to));
  }
  static AttackTree and_node(std::vector<AttackTree> children, std::vector<State> from,
                             std::vector<State> to) {
    return make(Kind::kAnd, std::move(children), std::move(from), std::move(to));
  }
  static AttackTree or_node(std::vector<AttackTree> children, std::vector<State> from,
                            std::vector<State> to) {
    return make(Kind::kOr, std::move(children), std::move(from), std::move(to));
  }

 private:
  static AttackTree make(Kind k, std::vector<AttackTree> children, std::vector<State> from,
                         std::vector<State> to) {
    AttackTree t;
    t.kind = k;
    t.children = std::move(children);
    std::sort(from.begin(), from.end());
    from.erase(std::unique(from.begin(), from.end()), from.end());
    std::sort(to.begin(), to.end());
    to.erase(std::unique(to.begin(), to.end()), to.end());
    t.goal = {std::move(from), std::move(to)};
    return t;
  }
};

template <class State>
const AttackGoal<State>& attack_of(const AttackTree<State>& t) {
  return t.goal;
}

namespace detail {

template <class State>
bool subset_of(const std::vector<State>& a, const std::vector<State>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

template <class State>
std::vector<State> set_minus(const std::vector<State>& a, const std::vector<State>& b) {
  std::vector<State> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

template <class State>
bool valid_base(const AttackGoal<State>& g, const SuccessorFn<State>& succ) {
  // ∀ x ∈ fst s. ∃ y ∈ snd s. x → y   (vacuously true for an empty fst)
  for (const State& x : g.from) {
    bool hit = false;
    for (const State& y : succ(x)) {
      if (std::binary_search(g.to.begin(), g.to.end(), y)) { hit = true; break; }
    }
    if (!hit) return false;
  }
  return true;
}

template <class State>
bool valid_node(const AttackTree<State>& t, const SuccessorFn<State>& succ);

// ⊢ l ⊕∧ s, with l given as a sub-range of children (recursion rewrites the
// goal pair, so it cannot reuse the nodes' stored goals).
template <class State>
bool valid_and(const std::vector<AttackTree<State>>& l, std::size_t at, const AttackGoal<State>& s,
               const SuccessorFn<State>& succ) {
  const std::size_t n = l.size() - at;
  if (n == 0) return subset_of(s.from, s.to);
  const AttackTree<State>& a = l[at];
  if (n == 1) return valid_node(a, succ) && attack_of(a) == s;
  AttackGoal<State> rest{attack_of(a).to, s.to};
  return valid_node(a, succ) && attack_of(a).from == s.from && valid_and(l, at + 1, rest, succ);
}

// ⊢ l ⊕∨ s. Note the deliberate asymmetry between the clauses: the
// single-child case requires fst(attack a) ⊇ fst s while the cons case
// requires fst(attack a) ⊆ fst s and recurses on fst s − fst(attack a).
template <class State>
bool valid_or(const std::vector<AttackTree<State>>& l, std::size_t at, const AttackGoal<State>& s,
              const SuccessorFn<State>& succ) {
  const std::size_t n = l.size() - at;
  if (n == 0) return subset_of(s.from, s.to);
  const AttackTree<State>& a = l[at];
  if (n == 1) {
    return valid_node(a, succ) && subset_of(s.from, attack_of(a).from) &&
           subset_of(attack_of(a).to, s.to);
  }
  AttackGoal<State> rest{set_minus(s.from, attack_of(a).from), s.to};
  return valid_node(a, succ) && subset_of(attack_of(a).from, s.from) &&
         subset_of(attack_of(a).to, s.to) && valid_or(l, at + 1, rest, succ);
}

template <class State>
bool valid_node(const AttackTree<State>& t, const SuccessorFn<State>& succ) {
  switch (t.kind) {
    case AttackTree<State>::Kind::kBase:
      return valid_base(t.goal, succ);
    case AttackTree<State>::Kind::kAnd:
      return valid_and(t.children, 0, t.goal, succ);
    case AttackTree<State>::Kind::kOr:
      return valid_or(t.children, 0, t.goal, succ);
  }
  return false;
}

}  // namespace detail

/// The recursive validity predicate ⊢, decided literally clause by clause.
template <class State>
bool is_valid(const AttackTree<State>& t, const SuccessorFn<State>& succ) {
  return detail::valid_node(t, succ);
}

/// Builds a valid attack tree with goal (I, s) whenever every state of I can
/// reach s inside m, as an or-combination of per-initial-state and-chains of
/// single-step base attacks along shortest witness paths. Returns nullopt when
/// some state of I cannot reach s.
template <class State>
std::optional<AttackTree<State>> synthesize(const KripkeStructure<State>& m,
                                            const std::vector<State>& initial,
                                            const std::vector<State>& target) {
  if (initial.empty()) throw AttackTreeError("empty initial set: synthesis requires a nonempty, finite initial set");

  std::vector<State> from = initial;
  std::sort(from.begin(), from.end());
  from.erase(std::unique(from.begin(), from.end()), from.end());
  std::vector<State> to = target;
  std::sort(to.begin(), to.end());
  to.erase(std::unique(to.begin(), to.end()), to.end());

  std::vector<bool> goal_bits(m.size(), false);
  for (const State& s : to) {
    if (auto i = m.try_index_of(s)) goal_bits[*i] = true;
  }

  if (detail::subset_of(from, to)) return AttackTree<State>::and_node({}, from, to);

  std::vector<AttackTree<State>> chains;
  for (const State& x : from) {
    auto xi = m.try_index_of(x);
    if (!xi) return std::nullopt;  // initial state outside the structure: nothing to chain through
    KripkeStructure<State> from_x(m.states(), {x}, [&m](const State& s) {
      std::vector<State> out;
      for (auto j : m.successors(m.index_of(s))) out.push_back(m.state(j));
      return out;
    });
    auto path = witness_path(from_x, goal_bits);
    if (!path) return std::nullopt;
    const auto& p = *path;
    if (p.size() == 1) {
      chains.push_back(AttackTree<State>::and_node({}, {x}, to));
      continue;
    }
    std::vector<AttackTree<State>> steps;
    for (std::size_t i = 0; i + 2 < p.size(); ++i) {
      steps.push_back(AttackTree<State>::base({from_x.state(p[i])}, {from_x.state(p[i + 1])}));
    }
    steps.push_back(AttackTree<State>::base({from_x.state(p[p.size() - 2])}, to));
    chains.push_back(AttackTree<State>::and_node(std::move(steps), {x}, to));
  }

  if (chains.size() == 1) return std::move(chains.front());
  return AttackTree<State>::or_node(std::move(chains), from, to);
}

/// Replaces the base leaf at `path` (a list of child indices from the root)
/// with `replacement`, which must carry the identical goal pair; the root's
/// goal, and hence attack_of of the whole tree, is unchanged.
template <class State>
AttackTree<State> expand_leaf(AttackTree<State> t, const std::vector<std::size_t>& path,
                              AttackTree<State> replacement) {
  AttackTree<State>* node = &t;
  for (std::size_t i : path) {
    if (i >= node->children.size()) throw AttackTreeError("not a leaf: path leaves the tree");
    node = &node->children[i];
  }
  if (node->kind != AttackTree<State>::Kind::kBase)
    throw AttackTreeError("not a leaf: expansion target must be a base attack");
  if (!(attack_of(replacement) == node->goal))
    throw AttackTreeError("endpoint mismatch: replacement goal differs from the expanded leaf");
  *node = std::move(replacement);
  return t;
}

/// The correctness direction: a valid tree's goal is EF-reachable. Builds the
/// Kripke structure over the tree's start set and checks EF of the target set
/// (intersected with the explored universe).
template <class State>
bool check_at_ef(const AttackTree<State>& t, const SuccessorFn<State>& succ,
                 std::size_t cap = kDefaultStateCap) {
  if (!is_valid(t, succ)) throw AttackTreeError("tree not valid: the EF cross-check requires a valid tree");
  const auto& g = attack_of(t);
  auto m = build_kripke(g.from, succ, cap);
  std::vector<State> present;
  for (const State& s : g.to) {
    if (m.try_index_of(s)) present.push_back(s);
  }
  return sat(m, CtlFormula<State>::ef(CtlFormula<State>::atom_of(std::move(present))));
}

/// Indented deterministic rendering with N(...) / AND(...) / OR(...) markers.
template <class State>
std::string render_tree(const AttackTree<State>& t,
                        const std::function<std::string(const std::vector<State>&)>& namer,
                        std::size_t indent = 0) {
  static const char* marker[] = {"N", "AND", "OR"};
  std::string out(indent * 2, ' ');
  out += marker[static_cast<int>(t.kind)];
  out += "(" + namer(t.goal.from) + " -> " + namer(t.goal.to) + ")";
  out += "\n";
  for (const auto& c : t.children) out += render_tree(c, namer, indent + 1);
  return out;
}

}  // namespace secmc

#endif  // SECMC_ATTACK_TREE_HPP_

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

#ifndef SECMC_CTL_HPP_
#define SECMC_CTL_HPP_

#include <cstdint>
#include <deque>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "secmc/state_graph.hpp"

namespace secmc {

class CtlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// CTL state formulas over a Kripke structure, in the predicate-transformer
/// view: atoms are state sets, each operator maps sets to sets.
///
/// Only the operators the framework exercises are provided: EX, AX, EF
/// (least fixpoint), AG (greatest fixpoint) and the boolean connectives.
template <class State>
struct CtlFormula {
  enum class Kind { kAtom, kEx, kAx, kEf, kAg, kNot, kAnd, kOr };

  Kind kind = Kind::kAtom;
  std::vector<CtlFormula> children;
  // Exactly one of the two atom payloads is used for kAtom nodes.
  std::function<bool(const State&)> pred;
  std::vector<State> atom_states;
  bool atom_is_explicit = false;

  static CtlFormula atom(std::function<bool(const State&)> p) {
    CtlFormula f;
    f.pred = std::move(p);
    return f;
  }
  /// Atom given as an explicit state set; evaluation rejects states outside
  /// the structure ("foreign atom").
  static CtlFormula atom_of(std::vector<State> states) {
    CtlFormula f;
    f.atom_states = std::move(states);
    f.atom_is_explicit = true;
    return f;
  }
  static CtlFormula ex(CtlFormula f) { return unary(Kind::kEx, std::move(f)); }
  static CtlFormula ax(CtlFormula f) { return unary(Kind::kAx, std::move(f)); }
  static CtlFormula ef(CtlFormula f) { return unary(Kind::kEf, std::move(f)); }
  static CtlFormula ag(CtlFormula f) { return unary(Kind::kAg, std::move(f)); }
  static CtlFormula negation(CtlFormula f) { return unary(Kind::kNot, std::move(f)); }
  static CtlFormula conj(CtlFormula a, CtlFormula b) { return binary(Kind::kAnd, std::move(a), std::move(b)); }
  static CtlFormula disj(CtlFormula a, CtlFormula b) { return binary(Kind::kOr, std::move(a), std::move(b)); }

 private:
  static CtlFormula unary(Kind k, CtlFormula f) {
    CtlFormula r;
    r.kind = k;
    r.children.push_back(std::move(f));
    return r;
  }
  static CtlFormula binary(Kind k, CtlFormula a, CtlFormula b) {
    CtlFormula r;
    r.kind = k;
    r.children.push_back(std::move(a));
    r.children.push_back(std::move(b));
    return r;
  }
};

namespace detail {

template <class State>
std::vector<std::vector<std::uint32_t>> reverse_adjacency(const KripkeStructure<State>& m) {
  std::vector<std::vector<std::uint32_t>> radj(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (auto j : m.successors(i)) radj[j].push_back(static_cast<std::uint32_t>(i));
  }
  return radj;
}

template <class State>
std::vector<bool> eval_node(const KripkeStructure<State>& m,
                            const std::vector<std::vector<std::uint32_t>>& radj,
                            const CtlFormula<State>& f) {
  using Kind = typename CtlFormula<State>::Kind;
  const std::size_t n = m.size();
  switch (f.kind) {
    case Kind::kAtom: {
      std::vector<bool> r(n, false);
      if (f.atom_is_explicit) {
        for (const State& s : f.atom_states) {
          auto i = m.try_index_of(s);
          if (!i) throw CtlError("foreign atom: atom state set is not contained in the structure's states");
          r[*i] = true;
        }
      } else {
        for (std::size_t i = 0; i < n; ++i) r[i] = f.pred(m.state(i));
      }
      return r;
    }
    case Kind::kEx: {
      auto sub = eval_node(m, radj, f.children[0]);
      std::vector<bool> r(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        for (auto j : m.successors(i)) {
          if (sub[j]) { r[i] = true; break; }
        }
      }
      return r;
    }
    case Kind::kAx: {
      auto sub = eval_node(m, radj, f.children[0]);
      std::vector<bool> r(n, true);  // vacuously true on deadlock states
      for (std::size_t i = 0; i < n; ++i) {
        for (auto j : m.successors(i)) {
          if (!sub[j]) { r[i] = false; break; }
        }
      }
      return r;
    }
    case Kind::kEf: {
      // Least fixpoint of  R = f ∪ pre(R),  via backward closure.
      auto r = eval_node(m, radj, f.children[0]);
      std::deque<std::uint32_t> work;
      for (std::size_t i = 0; i < n; ++i) {
        if (r[i]) work.push_back(static_cast<std::uint32_t>(i));
      }
      while (!work.empty()) {
        auto x = work.front();
        work.pop_front();
        for (auto p : radj[x]) {
          if (!r[p]) { r[p] = true; work.push_back(p); }
        }
      }
      return r;
    }
    case Kind::kAg: {
      // Greatest fixpoint of  R = f ∩ pre∀(R):  start from f, delete any
      // state with a successor outside R until stable.
      auto r = eval_node(m, radj, f.children[0]);
      std::deque<std::uint32_t> out;
      for (std::size_t i = 0; i < n; ++i) {
        if (!r[i]) out.push_back(static_cast<std::uint32_t>(i));
      }
      while (!out.empty()) {
        auto x = out.front();
        out.pop_front();
        for (auto p : radj[x]) {
          if (r[p]) { r[p] = false; out.push_back(p); }
        }
      }
      return r;
    }
    case Kind::kNot: {
      auto sub = eval_node(m, radj, f.children[0]);
      for (std::size_t i = 0; i < n; ++i) sub[i] = !sub[i];
      return sub;
    }
    case Kind::kAnd: {
      auto a = eval_node(m, radj, f.children[0]);
      auto b = eval_node(m, radj, f.children[1]);
      for (std::size_t i = 0; i < n; ++i) a[i] = a[i] && b[i];
      return a;
    }
    case Kind::kOr: {
      auto a = eval_node(m, radj, f.children[0]);
      auto b = eval_node(m, radj, f.children[1]);
      for (std::size_t i = 0; i < n; ++i) a[i] = a[i] || b[i];
      return a;
    }
  }
  throw CtlError("unreachable formula kind");
}

}  // namespace detail

/// {s ∈ states(m) | s ⊨ f}, as a bit vector indexed like m's states.
template <class State>
std::vector<bool> eval_ctl(const KripkeStructure<State>& m, const CtlFormula<State>& f) {
  auto radj = detail::reverse_adjacency(m);
  return detail::eval_node(m, radj, f);
}

/// M ⊢ f  ≡  init M ⊆ {s ∈ states M. s ⊨ f}.
template <class State>
bool sat(const KripkeStructure<State>& m, const CtlFormula<State>& f) {
  auto r = eval_ctl(m, f);
  for (auto i : m.init()) {
    if (!r[i]) return false;
  }
  return true;
}

}  // namespace secmc

#endif  // SECMC_CTL_HPP_

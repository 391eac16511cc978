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

#ifndef SECMC_STATE_GRAPH_HPP_
#define SECMC_STATE_GRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace secmc {

/// Thrown when exploration exceeds the configured hard state-count cap.
class StateExplosionError : public std::runtime_error {
 public:
  explicit StateExplosionError(std::size_t cap)
      : std::runtime_error("state explosion: exploration exceeded the state cap of " +
                           std::to_string(cap) + " states"),
        cap_(cap) {}

  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

constexpr std::size_t kDefaultStateCap = 100000;

/// A transition system is any deterministic successor enumerator: equal input
/// states must yield equal successor lists, and every list must be finite.
template <class State>
using SuccessorFn = std::function<std::vector<State>(const State&)>;

template <class State>
struct ReachResult {
  std::vector<State> states;  // sorted canonically
  bool truncated = false;     // true iff a depth bound cut the closure short
};

/// Least set containing `init` and closed under `succ` (breadth-first), sorted
/// into canonical order. A depth bound truncates the closure and sets the
/// `truncated` flag; exceeding `cap` raises StateExplosionError.
template <class State>
ReachResult<State> compute_reachable(const std::vector<State>& init,
                                     const SuccessorFn<State>& succ,
                                     std::size_t cap = kDefaultStateCap,
                                     std::optional<std::size_t> depth_bound = std::nullopt) {
  ReachResult<State> result;
  std::unordered_map<State, std::size_t> seen;
  std::deque<std::pair<State, std::size_t>> frontier;  // (state, depth)

  for (const State& s : init) {
    if (seen.emplace(s, 0).second) {
      frontier.emplace_back(s, 0);
      result.states.push_back(s);
      if (result.states.size() > cap) throw StateExplosionError(cap);
    }
  }
  while (!frontier.empty()) {
    auto [s, d] = frontier.front();
    frontier.pop_front();
    if (depth_bound && d >= *depth_bound) {
      // Unexpanded state at the horizon: the closure may be incomplete.
      if (!succ(s).empty()) result.truncated = true;
      continue;
    }
    for (State& t : succ(s)) {
      if (seen.emplace(t, 0).second) {
        frontier.emplace_back(t, d + 1);
        result.states.push_back(std::move(t));
        if (result.states.size() > cap) throw StateExplosionError(cap);
      }
    }
  }
  std::sort(result.states.begin(), result.states.end());
  return result;
}

/// A finite Kripke structure: a state universe, initial states, and the
/// transition relation restricted to that universe.
///
/// States are stored sorted in canonical order and addressed by index; all
/// queries and reported counterexamples are deterministic for a fixed input.
/// Successor edges leaving the declared universe are dropped (relevant only
/// for hand-built or depth-truncated structures; build_kripke yields a closed
/// universe).
template <class State>
class KripkeStructure {
 public:
  KripkeStructure(std::vector<State> states, const std::vector<State>& init,
                  const SuccessorFn<State>& succ, bool truncated = false)
      : states_(std::move(states)), truncated_(truncated) {
    std::sort(states_.begin(), states_.end());
    states_.erase(std::unique(states_.begin(), states_.end()), states_.end());
    adj_.resize(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
      for (const State& t : succ(states_[i])) {
        if (auto j = try_index_of(t)) adj_[i].push_back(static_cast<std::uint32_t>(*j));
      }
      std::sort(adj_[i].begin(), adj_[i].end());
      adj_[i].erase(std::unique(adj_[i].begin(), adj_[i].end()), adj_[i].end());
    }
    for (const State& s : init) {
      auto i = try_index_of(s);
      if (!i) throw std::invalid_argument("initial state outside the declared state set");
      init_.push_back(static_cast<std::uint32_t>(*i));
    }
    std::sort(init_.begin(), init_.end());
    init_.erase(std::unique(init_.begin(), init_.end()), init_.end());
  }

  std::size_t size() const { return states_.size(); }
  const std::vector<State>& states() const { return states_; }
  const State& state(std::size_t i) const { return states_[i]; }
  const std::vector<std::uint32_t>& init() const { return init_; }
  const std::vector<std::uint32_t>& successors(std::size_t i) const { return adj_[i]; }
  bool truncated() const { return truncated_; }

  bool has_edge(std::size_t from, std::size_t to) const {
    const auto& row = adj_[from];
    return std::binary_search(row.begin(), row.end(), static_cast<std::uint32_t>(to));
  }

  std::optional<std::size_t> try_index_of(const State& s) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), s);
    if (it == states_.end() || !(*it == s)) return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
  }

  std::size_t index_of(const State& s) const {
    auto i = try_index_of(s);
    if (!i) throw std::invalid_argument("state not in the structure");
    return *i;
  }

  /// Indices reachable from `from` along stored edges (reflexive-transitive).
  std::vector<bool> reachable_from(const std::vector<std::uint32_t>& from) const {
    std::vector<bool> seen(states_.size(), false);
    std::deque<std::uint32_t> frontier;
    for (auto i : from) {
      if (!seen[i]) { seen[i] = true; frontier.push_back(i); }
    }
    while (!frontier.empty()) {
      auto i = frontier.front();
      frontier.pop_front();
      for (auto j : adj_[i]) {
        if (!seen[j]) { seen[j] = true; frontier.push_back(j); }
      }
    }
    return seen;
  }

 private:
  std::vector<State> states_;
  std::vector<std::uint32_t> init_;
  std::vector<std::vector<std::uint32_t>> adj_;
  bool truncated_;
};

/// Kripke structure over the closure of `init`: states = {t | ∃ i ∈ init. i →* t}.
template <class State>
KripkeStructure<State> build_kripke(const std::vector<State>& init, const SuccessorFn<State>& succ,
                                    std::size_t cap = kDefaultStateCap,
                                    std::optional<std::size_t> depth_bound = std::nullopt) {
  ReachResult<State> r = compute_reachable(init, succ, cap, depth_bound);
  return KripkeStructure<State>(std::move(r.states), init, succ, r.truncated);
}

/// Shortest path (by state indices) from an initial state to any goal state,
/// or nullopt when the goal is unreachable. Breadth-first in index order, so
/// ties resolve to the lexicographically least path.
template <class State>
std::optional<std::vector<std::uint32_t>> witness_path(const KripkeStructure<State>& m,
                                                       const std::vector<bool>& goal) {
  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> parent(m.size(), kNone);
  std::vector<bool> seen(m.size(), false);
  std::deque<std::uint32_t> frontier;
  for (auto i : m.init()) {
    if (!seen[i]) { seen[i] = true; frontier.push_back(i); }
  }
  std::optional<std::uint32_t> hit;
  for (auto i : m.init()) {
    if (goal[i]) { hit = i; break; }
  }
  while (!hit && !frontier.empty()) {
    auto i = frontier.front();
    frontier.pop_front();
    for (auto j : m.successors(i)) {
      if (seen[j]) continue;
      seen[j] = true;
      parent[j] = i;
      if (goal[j]) { hit = j; break; }
      frontier.push_back(j);
    }
  }
  if (!hit) return std::nullopt;
  std::vector<std::uint32_t> path;
  for (std::uint32_t i = *hit; i != kNone; i = parent[i]) path.push_back(i);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace secmc

#endif  // SECMC_STATE_GRAPH_HPP_

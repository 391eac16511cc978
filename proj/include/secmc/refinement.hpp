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

#ifndef SECMC_REFINEMENT_HPP_
#define SECMC_REFINEMENT_HPP_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "secmc/ctl.hpp"
#include "secmc/state_graph.hpp"

namespace secmc {

class RefinementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How a refinement check failed.
enum class RefinementFailure {
  kInitImageEscapes,   // a refined initial state maps outside the abstract initial set
  kStepNotSimulated,   // a refined step has no matching abstract step between the images
  kReachabilityLost,   // a reachable refined state's image is not abstractly reachable
};

inline const char* failure_name(RefinementFailure f) {
  switch (f) {
    case RefinementFailure::kInitImageEscapes: return "init-image-escapes";
    case RefinementFailure::kStepNotSimulated: return "step-not-simulated";
    case RefinementFailure::kReachabilityLost: return "reachability-lost";
  }
  return "unknown";
}

/// Verdict of a refinement check, with a minimal counterexample when it fails.
template <class AState, class RState>
struct RefinementVerdict {
  bool holds = true;
  std::optional<RefinementFailure> reason;
  std::optional<RState> refined_init;                    // init-image-escapes
  std::optional<std::pair<RState, RState>> refined_step; // step-not-simulated
  std::optional<std::pair<AState, AState>> abstract_images;
  std::optional<std::vector<RState>> refined_path;       // reachability-lost: init →* witness

  static RefinementVerdict ok() { return {}; }
};

template <class AState, class RState>
using RefMap = std::function<AState(const RState&)>;

namespace detail {

template <class AState, class RState>
std::vector<AState> image_of(const KripkeStructure<RState>& kr, const RefMap<AState, RState>& e,
                             std::vector<std::uint32_t> idx) {
  std::vector<AState> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(e(kr.state(i)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Shortest refined path from some initial state to `to`, for counterexample reports.
template <class State>
std::vector<State> path_to(const KripkeStructure<State>& m, std::uint32_t to) {
  std::vector<bool> goal(m.size(), false);
  goal[to] = true;
  auto p = witness_path(m, goal);
  std::vector<State> out;
  if (p) {
    out.reserve(p->size());
    for (auto i : *p) out.push_back(m.state(i));
  }
  return out;
}

}  // namespace detail

/// init_ref: the image of the refined initial set is contained in the
/// abstract initial set.
template <class AState, class RState>
RefinementVerdict<AState, RState> check_init_ref(const KripkeStructure<AState>& ka,
                                                 const KripkeStructure<RState>& kr,
                                                 const RefMap<AState, RState>& e) {
  for (auto i : kr.init()) {
    AState img = e(kr.state(i));
    auto ai = ka.try_index_of(img);
    bool ok = false;
    if (ai) {
      const auto& init = ka.init();
      ok = std::binary_search(init.begin(), init.end(), static_cast<std::uint32_t>(*ai));
    }
    if (!ok) {
      RefinementVerdict<AState, RState> v;
      v.holds = false;
      v.reason = RefinementFailure::kInitImageEscapes;
      v.refined_init = kr.state(i);
      v.abstract_images = std::make_pair(img, img);
      return v;
    }
  }
  return RefinementVerdict<AState, RState>::ok();
}

/// The defining reachability form of refinement: for every refined initial
/// state s and every s' reachable from it, E(s) is abstractly initial and
/// E(s') is reachable from E(s).
template <class AState, class RState>
RefinementVerdict<AState, RState> check_refinement_direct(const KripkeStructure<AState>& ka,
                                                          const KripkeStructure<RState>& kr,
                                                          const RefMap<AState, RState>& e) {
  for (auto s : kr.init()) {
    // s →* s holds, so the initial-image condition applies unconditionally.
    AState es = e(kr.state(s));
    auto esi = ka.try_index_of(es);
    bool init_ok = false;
    if (esi) {
      const auto& init = ka.init();
      init_ok = std::binary_search(init.begin(), init.end(), static_cast<std::uint32_t>(*esi));
    }
    if (!init_ok) {
      RefinementVerdict<AState, RState> v;
      v.holds = false;
      v.reason = RefinementFailure::kInitImageEscapes;
      v.refined_init = kr.state(s);
      v.abstract_images = std::make_pair(es, es);
      return v;
    }
    std::vector<bool> abs_reach = ka.reachable_from({static_cast<std::uint32_t>(*esi)});
    std::vector<bool> ref_reach = kr.reachable_from({s});
    for (std::uint32_t t = 0; t < kr.size(); ++t) {
      if (!ref_reach[t]) continue;
      AState et = e(kr.state(t));
      auto eti = ka.try_index_of(et);
      if (!eti || !abs_reach[*eti]) {
        RefinementVerdict<AState, RState> v;
        v.holds = false;
        v.reason = RefinementFailure::kReachabilityLost;
        v.abstract_images = std::make_pair(es, et);
        KripkeStructure<RState> from_s(kr.states(), {kr.state(s)}, [&kr](const RState& x) {
          std::vector<RState> out;
          for (auto j : kr.successors(kr.index_of(x))) out.push_back(kr.state(j));
          return out;
        });
        v.refined_path = detail::path_to(from_s, t);
        return v;
      }
    }
  }
  return RefinementVerdict<AState, RState>::ok();
}

namespace detail {

template <class AState, class RState>
RefinementVerdict<AState, RState> check_strong(const KripkeStructure<AState>& ka,
                                               const KripkeStructure<RState>& kr,
                                               const RefMap<AState, RState>& e,
                                               bool reachable_only) {
  auto init = check_init_ref(ka, kr, e);
  if (!init.holds) return init;

  std::vector<bool> consider(kr.size(), true);
  if (reachable_only) consider = kr.reachable_from(kr.init());

  // Cache abstract image indices per refined state; nullopt marks an image
  // outside the abstract state set (which can never be simulated).
  std::vector<std::optional<std::size_t>> img(kr.size());
  std::vector<bool> have(kr.size(), false);
  auto image_index = [&](std::uint32_t i) {
    if (!have[i]) {
      img[i] = ka.try_index_of(e(kr.state(i)));
      have[i] = true;
    }
    return img[i];
  };

  for (std::uint32_t s = 0; s < kr.size(); ++s) {
    if (!consider[s]) continue;
    for (auto t : kr.successors(s)) {
      auto si = image_index(s);
      auto ti = image_index(t);
      if (!si || !ti ||
          !ka.has_edge(static_cast<std::uint32_t>(*si), static_cast<std::uint32_t>(*ti))) {
        RefinementVerdict<AState, RState> v;
        v.holds = false;
        v.reason = RefinementFailure::kStepNotSimulated;
        v.refined_step = std::make_pair(kr.state(s), kr.state(t));
        v.abstract_images = std::make_pair(e(kr.state(s)), e(kr.state(t)));
        return v;
      }
    }
  }
  return RefinementVerdict<AState, RState>::ok();
}

}  // namespace detail

/// Strong one-step simulation over every declared refined step: each refined
/// edge must map to an abstract edge between the images (plus init_ref).
template <class AState, class RState>
RefinementVerdict<AState, RState> check_strong_mt(const KripkeStructure<AState>& ka,
                                                  const KripkeStructure<RState>& kr,
                                                  const RefMap<AState, RState>& e) {
  return detail::check_strong(ka, kr, e, /*reachable_only=*/false);
}

/// Strong one-step simulation restricted to steps whose source is reachable
/// from the refined initial set.
template <class AState, class RState>
RefinementVerdict<AState, RState> check_strong_mt_reachable(const KripkeStructure<AState>& ka,
                                                            const KripkeStructure<RState>& kr,
                                                            const RefMap<AState, RState>& e) {
  return detail::check_strong(ka, kr, e, /*reachable_only=*/true);
}

/// Result of transferring an EF property through a refinement.
struct TransferEf {
  bool refined_ef = false;
  bool abstract_ef = false;
};

/// Property preservation: given the refinement and initial-state coverage
/// (init K ⊆ image of init K'), an EF property of the refined structure
/// transfers to EF of its image set in the abstract structure. Both sides are
/// evaluated so callers can confirm the implication.
template <class AState, class RState>
TransferEf transfer_ef(const KripkeStructure<AState>& ka, const KripkeStructure<RState>& kr,
                       const RefMap<AState, RState>& e,
                       const std::vector<RState>& refined_target) {
  auto refinement = check_refinement_direct(ka, kr, e);
  if (!refinement.holds) throw RefinementError("refinement premise violated: the structures are not in the refinement relation");

  std::vector<AState> init_image = detail::image_of(kr, e, kr.init());
  for (auto i : ka.init()) {
    if (!std::binary_search(init_image.begin(), init_image.end(), ka.state(i)))
      throw RefinementError("initial-state coverage violated: an abstract initial state has no refined preimage");
  }

  std::vector<RState> tgt = refined_target;
  std::sort(tgt.begin(), tgt.end());
  tgt.erase(std::unique(tgt.begin(), tgt.end()), tgt.end());

  TransferEf r;
  r.refined_ef = sat(kr, CtlFormula<RState>::ef(CtlFormula<RState>::atom_of(tgt)));

  std::vector<AState> img;
  img.reserve(tgt.size());
  for (const RState& s : tgt) img.push_back(e(s));
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  r.abstract_ef = sat(ka, CtlFormula<AState>::ef(CtlFormula<AState>::atom_of(std::move(img))));
  return r;
}

}  // namespace secmc

#endif  // SECMC_REFINEMENT_HPP_

// Copyright 2026 The Reachbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reachbench/grammar/flow.h"

#include <array>
#include <deque>

namespace reachbench::grammar {
namespace {

TokenSet all_tokens() {
  TokenSet s;
  s.set();
  return s;
}

class FlowSolver {
 public:
  FlowSolver(const Grammar& g, const PredictTable& live)
      : g_(g), live_(live), n_(g.num_nonterminals()) {
    dispatch_.assign(n_, {});
    for (NonterminalId nt = 0; nt < n_; ++nt) {
      dispatch_[nt].fill(-1);
      for (RuleId id : g.rules_of(nt)) {
        if (g.is_dead_rule(id)) continue;
        for (int c = 0; c < kTokenCount; ++c) {
          if (live.predict[id].test(c) && dispatch_[nt][c] < 0) {
            dispatch_[nt][c] = static_cast<int>(id);
          }
        }
      }
    }
    ret_.assign(n_, {});
    ret_any_.assign(n_, TokenSet());
  }

  FlowResult solve() {
    solve_returns();
    FlowResult out;
    out.entry.assign(n_, TokenSet());
    out.called.assign(n_, false);
    out.arm_reachable.assign(g_.num_rules(), false);
    out.error_reachable.assign(n_, false);
    out.mismatch_in_body.assign(n_, false);
    if (!g_.start()) return out;

    std::deque<NonterminalId> work;
    std::vector<bool> queued(n_, false);
    const NonterminalId start = *g_.start();
    out.entry[start] = all_tokens();
    out.called[start] = true;
    work.push_back(start);
    queued[start] = true;
    while (!work.empty()) {
      const NonterminalId b = work.front();
      work.pop_front();
      queued[b] = false;
      for (RuleId id : g_.rules_of(b)) {
        if (g_.is_dead_rule(id)) continue;
        const TokenSet l0 = out.entry[b] & live_.predict[id];
        if (l0.none()) continue;
        out.arm_reachable[id] = true;
        bool mismatch = false;
        walk(g_.rule(id).rhs, l0, &mismatch,
             [&](NonterminalId c, const TokenSet& l) {
               const TokenSet merged = out.entry[c] | l;
               if (merged != out.entry[c] || !out.called[c]) {
                 out.entry[c] = merged;
                 out.called[c] = true;
                 if (!queued[c]) {
                   queued[c] = true;
                   work.push_back(c);
                 }
               }
             });
        if (mismatch) out.mismatch_in_body[b] = true;
      }
    }

    for (NonterminalId b = 0; b < n_; ++b) {
      if (!out.called[b]) continue;
      TokenSet covered;
      for (RuleId id : g_.rules_of(b)) {
        if (!g_.is_dead_rule(id)) covered |= live_.predict[id];
      }
      out.error_reachable[b] =
          (out.entry[b] & ~covered).any() || out.mismatch_in_body[b];
    }
    return out;
  }

 private:
  TokenSet returns_from(NonterminalId c, const TokenSet& l) const {
    if (l == all_tokens()) return ret_any_[c];
    TokenSet out;
    for (int t = 0; t < kTokenCount; ++t) {
      if (l.test(t)) out |= ret_[c][t];
    }
    return out;
  }

  template <typename OnCall>
  TokenSet walk(const std::vector<Symbol>& rhs, TokenSet l, bool* mismatch,
                OnCall&& on_call) const {
    for (const Symbol& s : rhs) {
      if (l.none()) break;
      if (s.is_epsilon()) continue;
      if (s.is_terminal()) {
        TokenSet other = l;
        other.reset(s.id);
        if (other.any() && mismatch != nullptr) *mismatch = true;
        if (l.test(s.id)) {
          l = all_tokens();
        } else {
          l.reset();
        }
        continue;
      }
      on_call(s.id, l);
      l = returns_from(s.id, l);
    }
    return l;
  }

  // Least fixpoint of ret[B][c]: lookaheads possible when B returns after
  // being entered with lookahead c.
  void solve_returns() {
    auto ignore = [](NonterminalId, const TokenSet&) {};
    for (bool changed = true; changed;) {
      changed = false;
      for (NonterminalId b = 0; b < n_; ++b) {
        for (int c = 0; c < kTokenCount; ++c) {
          const int arm = dispatch_[b][c];
          if (arm < 0) continue;
          TokenSet l;
          l.set(c);
          const TokenSet r = walk(g_.rule(arm).rhs, l, nullptr, ignore);
          const TokenSet merged = ret_[b][c] | r;
          if (merged != ret_[b][c]) {
            ret_[b][c] = merged;
            ret_any_[b] |= merged;
            changed = true;
          }
        }
      }
    }
  }

  const Grammar& g_;
  const PredictTable& live_;
  std::size_t n_;
  std::vector<std::array<int, kTokenCount>> dispatch_;
  std::vector<std::array<TokenSet, kTokenCount>> ret_;
  std::vector<TokenSet> ret_any_;
};

}  // namespace

FlowResult analyze_flow(const Grammar& grammar, const PredictTable& live) {
  return FlowSolver(grammar, live).solve();
}

FlowResult analyze_flow(const Grammar& grammar) {
  const PredictTable live = compute_first_follow(grammar, RuleScope::kLive);
  return analyze_flow(grammar, live);
}

}  // namespace reachbench::grammar

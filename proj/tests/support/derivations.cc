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

#include "support/derivations.h"

namespace reachbench::testing {
namespace {

std::vector<Derivation> expand(const grammar::Grammar& g,
                               grammar::NonterminalId nt, int depth,
                               std::size_t max_len, std::size_t cap) {
  std::vector<Derivation> out;
  if (depth <= 0) return out;
  for (grammar::RuleId rid : g.rules_of(nt)) {
    std::vector<Derivation> partial(1);
    for (const grammar::Symbol& s : g.rule(rid).rhs) {
      std::vector<Derivation> next;
      if (s.is_epsilon()) continue;
      if (s.is_terminal()) {
        for (Derivation d : partial) {
          if (d.yield.size() + 1 > max_len) continue;
          d.yield.push_back(static_cast<char>(s.id));
          next.push_back(std::move(d));
        }
      } else {
        const auto subs = expand(g, s.id, depth - 1, max_len, cap);
        for (const Derivation& d : partial) {
          for (const Derivation& sub : subs) {
            if (d.yield.size() + sub.yield.size() > max_len) continue;
            if (next.size() >= cap) break;
            Derivation c = d;
            const std::size_t off = c.yield.size();
            c.yield += sub.yield;
            for (Span sp : sub.spans) {
              sp.begin += off;
              sp.end += off;
              c.spans.push_back(sp);
            }
            c.rules.insert(c.rules.end(), sub.rules.begin(), sub.rules.end());
            next.push_back(std::move(c));
          }
        }
      }
      partial = std::move(next);
      if (partial.empty()) break;
    }
    for (Derivation& d : partial) {
      d.spans.push_back({nt, 0, d.yield.size()});
      d.rules.push_back(rid);
      out.push_back(std::move(d));
      if (out.size() >= cap) return out;
    }
  }
  return out;
}

}  // namespace

std::vector<Derivation> enumerate_derivations(const grammar::Grammar& g,
                                              grammar::NonterminalId root,
                                              int depth, std::size_t max_len,
                                              std::size_t cap) {
  return expand(g, root, depth, max_len, cap);
}

}  // namespace reachbench::testing

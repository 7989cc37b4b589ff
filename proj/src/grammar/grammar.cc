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

#include "reachbench/grammar/grammar.h"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "reachbench/util/error.h"

namespace reachbench::grammar {

NonterminalId Grammar::add_nonterminal(std::string name) {
  if (name.empty()) throw ValidationError("nonterminal name must be nonempty");
  if (by_name_.contains(name)) {
    throw ValidationError("duplicate nonterminal <" + name + ">");
  }
  const auto id = static_cast<NonterminalId>(names_.size());
  by_name_.emplace(name, id);
  names_.push_back(std::move(name));
  rules_by_lhs_.emplace_back();
  return id;
}

void Grammar::add_terminal(std::uint8_t byte) { terminals_.set(byte); }

RuleId Grammar::add_rule(NonterminalId lhs, std::vector<Symbol> rhs) {
  if (lhs >= names_.size()) {
    throw ValidationError("rule lhs " + std::to_string(lhs) +
                          " is not a declared nonterminal");
  }
  if (rhs.empty()) rhs.push_back(Symbol::epsilon());
  const auto id = static_cast<RuleId>(rules_.size());
  rules_.push_back(Rule{id, lhs, std::move(rhs)});
  rules_by_lhs_[lhs].push_back(id);
  return id;
}

void Grammar::set_rhs(RuleId rule, std::vector<Symbol> rhs) {
  if (rhs.empty()) rhs.push_back(Symbol::epsilon());
  rules_.at(rule).rhs = std::move(rhs);
}

void Grammar::set_start(NonterminalId start) {
  if (start >= names_.size()) {
    throw ValidationError("start symbol is not a declared nonterminal");
  }
  start_ = start;
}

NonterminalId Grammar::start_symbol() const {
  if (!start_) throw ValidationError("grammar has no start symbol");
  return *start_;
}

std::optional<NonterminalId> Grammar::find_nonterminal(
    std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint8_t> Grammar::terminals() const {
  std::vector<std::uint8_t> out;
  for (int b = 0; b < 256; ++b) {
    if (terminals_.test(b)) out.push_back(static_cast<std::uint8_t>(b));
  }
  return out;
}

bool Grammar::is_dead_rule(RuleId id) const {
  const auto& dead = annotations_.dead_rules;
  return std::find(dead.begin(), dead.end(), id) != dead.end();
}

void Grammar::validate() const {
  if (!start_) throw ValidationError("grammar has no start symbol");
  for (NonterminalId nt = 0; nt < names_.size(); ++nt) {
    if (rules_by_lhs_[nt].empty()) {
      throw ValidationError("nonterminal <" + names_[nt] + "> has no rules");
    }
  }
  for (const Rule& r : rules_) {
    if (r.rhs.empty()) {
      throw ValidationError("rule " + std::to_string(r.id) + " has empty rhs");
    }
    for (const Symbol& s : r.rhs) {
      switch (s.kind) {
        case SymbolKind::kTerminal:
          if (s.id > 255 || !terminals_.test(s.id)) {
            throw ValidationError("rule " + std::to_string(r.id) +
                                  " uses undeclared terminal " +
                                  token_name(static_cast<Token>(s.id)));
          }
          break;
        case SymbolKind::kNonterminal:
          if (s.id >= names_.size()) {
            throw ValidationError("rule " + std::to_string(r.id) +
                                  " uses undeclared nonterminal #" +
                                  std::to_string(s.id));
          }
          break;
        case SymbolKind::kEpsilon:
          if (r.rhs.size() != 1) {
            throw ValidationError("rule " + std::to_string(r.id) +
                                  " mixes epsilon with other symbols");
          }
          break;
        case SymbolKind::kEndOfInput:
          throw ValidationError("rule " + std::to_string(r.id) +
                                " contains the end-of-input sentinel");
      }
    }
  }
  for (NonterminalId nt : annotations_.unreachable) {
    if (nt >= names_.size()) {
      throw ValidationError("unreachable annotation names unknown nonterminal");
    }
  }
  for (RuleId id : annotations_.dead_rules) {
    if (id >= rules_.size()) {
      throw ValidationError("dead-rule annotation names unknown rule " +
                            std::to_string(id));
    }
  }
}

std::string Grammar::describe(const Symbol& symbol) const {
  switch (symbol.kind) {
    case SymbolKind::kTerminal:
      return token_name(static_cast<Token>(symbol.id));
    case SymbolKind::kNonterminal:
      return "<" + names_.at(symbol.id) + ">";
    case SymbolKind::kEpsilon:
      return "eps";
    case SymbolKind::kEndOfInput:
      return "EOI";
  }
  return "?";
}

std::string Grammar::describe(const Rule& rule) const {
  std::string out = "<" + names_.at(rule.lhs) + "> ->";
  for (const Symbol& s : rule.rhs) out += " " + describe(s);
  return out;
}

bool operator==(const Grammar& a, const Grammar& b) {
  if (a.names_ != b.names_ || a.terminals_ != b.terminals_ ||
      a.start_ != b.start_ || a.rules_.size() != b.rules_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.rules_.size(); ++i) {
    if (a.rules_[i].lhs != b.rules_[i].lhs ||
        a.rules_[i].rhs != b.rules_[i].rhs) {
      return false;
    }
  }
  return a.annotations_.unreachable == b.annotations_.unreachable &&
         a.annotations_.dead_rules == b.annotations_.dead_rules;
}

std::string token_name(Token token) {
  if (token == kEndOfInput) return "EOI";
  if (token >= 0x21 && token < 0x7f && token != '\'') {
    return std::string("'") + static_cast<char>(token) + "'";
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "0x%02x", token & 0xff);
  return buf;
}

}  // namespace reachbench::grammar

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

#ifndef REACHBENCH_GRAMMAR_GRAMMAR_H_
#define REACHBENCH_GRAMMAR_GRAMMAR_H_

#include <bitset>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace reachbench::grammar {

// Lookahead tokens are single bytes plus a distinct end-of-input sentinel.
using Token = int;
inline constexpr Token kEndOfInput = 256;
inline constexpr int kTokenCount = 257;
using TokenSet = std::bitset<kTokenCount>;

using NonterminalId = std::uint32_t;
using RuleId = std::uint32_t;

enum class SymbolKind : std::uint8_t {
  kTerminal,
  kNonterminal,
  kEpsilon,
  kEndOfInput,
};

struct Symbol {
  SymbolKind kind = SymbolKind::kEpsilon;
  // Byte value for terminals, dense index for nonterminals, 0 otherwise.
  std::uint32_t id = 0;

  static constexpr Symbol terminal(std::uint8_t byte) {
    return {SymbolKind::kTerminal, byte};
  }
  static constexpr Symbol nonterminal(NonterminalId nt) {
    return {SymbolKind::kNonterminal, nt};
  }
  static constexpr Symbol epsilon() { return {SymbolKind::kEpsilon, 0}; }
  static constexpr Symbol end_of_input() { return {SymbolKind::kEndOfInput, 0}; }

  bool is_terminal() const { return kind == SymbolKind::kTerminal; }
  bool is_nonterminal() const { return kind == SymbolKind::kNonterminal; }
  bool is_epsilon() const { return kind == SymbolKind::kEpsilon; }

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

// An epsilon rule has rhs == {Symbol::epsilon()}; epsilon never appears
// alongside other symbols.
struct Rule {
  RuleId id = 0;
  NonterminalId lhs = 0;
  std::vector<Symbol> rhs;

  bool is_epsilon() const { return rhs.size() == 1 && rhs[0].is_epsilon(); }
};

// Generator-provided labels. They never change the language; codegen lowers
// dead rules to arms behind a constant-false guard.
struct Annotations {
  std::vector<NonterminalId> unreachable;  // intended-unreachable nonterminals
  std::vector<RuleId> dead_rules;          // rules behind a dead guard
};

class Grammar {
 public:
  Grammar() = default;

  // Declares a nonterminal. Ids are dense and follow declaration order.
  NonterminalId add_nonterminal(std::string name);
  void add_terminal(std::uint8_t byte);
  // Appends a rule; an empty rhs is stored as the epsilon rule.
  RuleId add_rule(NonterminalId lhs, std::vector<Symbol> rhs);
  void set_start(NonterminalId start);

  // Replaces one rule's rhs in place (used by generator repair).
  void set_rhs(RuleId rule, std::vector<Symbol> rhs);

  std::size_t num_nonterminals() const { return names_.size(); }
  std::size_t num_rules() const { return rules_.size(); }
  const std::string& name(NonterminalId nt) const { return names_.at(nt); }
  const std::vector<std::string>& nonterminal_names() const { return names_; }
  std::optional<NonterminalId> find_nonterminal(std::string_view name) const;

  // Sorted ascending.
  std::vector<std::uint8_t> terminals() const;
  bool has_terminal(std::uint8_t byte) const { return terminals_.test(byte); }

  const std::vector<Rule>& rules() const { return rules_; }
  const Rule& rule(RuleId id) const { return rules_.at(id); }
  std::span<const RuleId> rules_of(NonterminalId nt) const {
    return rules_by_lhs_.at(nt);
  }

  std::optional<NonterminalId> start() const { return start_; }
  // Throws ValidationError when no start symbol is set.
  NonterminalId start_symbol() const;

  Annotations& annotations() { return annotations_; }
  const Annotations& annotations() const { return annotations_; }
  bool is_dead_rule(RuleId id) const;

  // Checks the structural invariants: every nonterminal defined, every rhs
  // symbol declared, epsilon only as a sole rhs element, start declared,
  // annotations in range. Throws ValidationError naming the offender.
  void validate() const;

  std::string describe(const Symbol& symbol) const;
  std::string describe(const Rule& rule) const;

  friend bool operator==(const Grammar& a, const Grammar& b);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NonterminalId> by_name_;
  std::bitset<256> terminals_;
  std::vector<Rule> rules_;
  std::vector<std::vector<RuleId>> rules_by_lhs_;
  std::optional<NonterminalId> start_;
  Annotations annotations_;
};

// Printable rendering of a token ('a', 0x07, EOI).
std::string token_name(Token token);

}  // namespace reachbench::grammar

#endif  // REACHBENCH_GRAMMAR_GRAMMAR_H_

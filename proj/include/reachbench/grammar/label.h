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

#ifndef REACHBENCH_GRAMMAR_LABEL_H_
#define REACHBENCH_GRAMMAR_LABEL_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "reachbench/grammar/grammar.h"

namespace reachbench::grammar {

using ElementId = std::uint32_t;

enum class ElementKind : std::uint8_t { kRuleArm, kErrorExit, kDeadGuard };

std::string_view element_kind_name(ElementKind kind);

struct CoverageElement {
  ElementId id = 0;
  ElementKind kind = ElementKind::kRuleArm;
  // Rule id for arms and dead guards, nonterminal id for error exits.
  std::uint32_t origin = 0;
};

// Dense element numbering derived from a grammar:
//   [0, R)            one dispatch arm per rule, id == rule id
//   [R, R + NT)       one error exit per nonterminal
//   [R + NT, ...)     one guard per dead-annotated rule, ascending rule id
class ElementLayout {
 public:
  explicit ElementLayout(const Grammar& grammar);

  ElementId arm(RuleId rule) const { return rule; }
  ElementId error_exit(NonterminalId nt) const {
    return static_cast<ElementId>(num_rules_ + nt);
  }
  std::optional<ElementId> dead_guard(RuleId rule) const;

  std::size_t size() const { return elements_.size(); }
  const std::vector<CoverageElement>& elements() const { return elements_; }
  const CoverageElement& element(ElementId id) const { return elements_.at(id); }

 private:
  std::size_t num_rules_ = 0;
  std::vector<CoverageElement> elements_;
  std::vector<std::int64_t> guard_of_rule_;
};

enum class RuleStatus : std::uint8_t { kReachable, kUnreachable, kDead };

std::string_view rule_status_name(RuleStatus status);

struct GroundTruthLabel {
  std::vector<RuleStatus> rule_status;                // indexed by rule id
  std::vector<ElementId> dead_elements;               // ascending
  std::vector<NonterminalId> error_elements_reachable;  // ascending

  // Dead rules count as unreachable; the two sets partition all rules.
  std::set<RuleId> reachable_rules() const;
  std::set<RuleId> unreachable_rules() const;

  friend bool operator==(const GroundTruthLabel&,
                         const GroundTruthLabel&) = default;
};

// Computes the label from the grammar alone (flow analysis over live rules).
GroundTruthLabel derive_label(const Grammar& grammar);

// Throws IntegrityError describing the first disagreement between `label`
// and the label derived from `grammar`.
void check_label(const Grammar& grammar, const GroundTruthLabel& label);

// Canonical JSON manifest: rule id -> status, dead elements, reachable error
// exits by nonterminal name.
std::string serialize_label(const Grammar& grammar,
                            const GroundTruthLabel& label);
GroundTruthLabel parse_label(const Grammar& grammar, std::string_view text);

}  // namespace reachbench::grammar

#endif  // REACHBENCH_GRAMMAR_LABEL_H_

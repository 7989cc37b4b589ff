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

#include "reachbench/grammar/label.h"

#include <algorithm>

#include "reachbench/grammar/flow.h"
#include "reachbench/util/error.h"
#include "reachbench/util/json.h"

namespace reachbench::grammar {

std::string_view element_kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::kRuleArm:
      return "rule-arm";
    case ElementKind::kErrorExit:
      return "error-exit";
    case ElementKind::kDeadGuard:
      return "dead-guard";
  }
  return "?";
}

std::string_view rule_status_name(RuleStatus status) {
  switch (status) {
    case RuleStatus::kReachable:
      return "reachable";
    case RuleStatus::kUnreachable:
      return "unreachable";
    case RuleStatus::kDead:
      return "dead";
  }
  return "?";
}

ElementLayout::ElementLayout(const Grammar& grammar)
    : num_rules_(grammar.num_rules()),
      guard_of_rule_(grammar.num_rules(), -1) {
  for (const Rule& r : grammar.rules()) {
    elements_.push_back({r.id, ElementKind::kRuleArm, r.id});
  }
  for (NonterminalId nt = 0; nt < grammar.num_nonterminals(); ++nt) {
    elements_.push_back({error_exit(nt), ElementKind::kErrorExit, nt});
  }
  std::vector<RuleId> dead = grammar.annotations().dead_rules;
  std::sort(dead.begin(), dead.end());
  dead.erase(std::unique(dead.begin(), dead.end()), dead.end());
  for (RuleId r : dead) {
    const auto id = static_cast<ElementId>(elements_.size());
    guard_of_rule_.at(r) = id;
    elements_.push_back({id, ElementKind::kDeadGuard, r});
  }
}

std::optional<ElementId> ElementLayout::dead_guard(RuleId rule) const {
  const std::int64_t g = guard_of_rule_.at(rule);
  if (g < 0) return std::nullopt;
  return static_cast<ElementId>(g);
}

std::set<RuleId> GroundTruthLabel::reachable_rules() const {
  std::set<RuleId> out;
  for (RuleId r = 0; r < rule_status.size(); ++r) {
    if (rule_status[r] == RuleStatus::kReachable) out.insert(r);
  }
  return out;
}

std::set<RuleId> GroundTruthLabel::unreachable_rules() const {
  std::set<RuleId> out;
  for (RuleId r = 0; r < rule_status.size(); ++r) {
    if (rule_status[r] != RuleStatus::kReachable) out.insert(r);
  }
  return out;
}

GroundTruthLabel derive_label(const Grammar& grammar) {
  const FlowResult flow = analyze_flow(grammar);
  const ElementLayout layout(grammar);
  GroundTruthLabel label;
  label.rule_status.resize(grammar.num_rules());
  for (const Rule& r : grammar.rules()) {
    if (grammar.is_dead_rule(r.id)) {
      label.rule_status[r.id] = RuleStatus::kDead;
    } else {
      label.rule_status[r.id] = flow.arm_reachable[r.id]
                                    ? RuleStatus::kReachable
                                    : RuleStatus::kUnreachable;
    }
  }
  for (const CoverageElement& e : layout.elements()) {
    if (e.kind == ElementKind::kDeadGuard) label.dead_elements.push_back(e.id);
  }
  for (NonterminalId nt = 0; nt < grammar.num_nonterminals(); ++nt) {
    if (flow.error_reachable[nt]) label.error_elements_reachable.push_back(nt);
  }
  return label;
}

void check_label(const Grammar& grammar, const GroundTruthLabel& label) {
  if (label.rule_status.size() != grammar.num_rules()) {
    throw IntegrityError("label covers " +
                         std::to_string(label.rule_status.size()) +
                         " rules but the grammar has " +
                         std::to_string(grammar.num_rules()));
  }
  const GroundTruthLabel expected = derive_label(grammar);
  for (RuleId r = 0; r < grammar.num_rules(); ++r) {
    if (label.rule_status[r] != expected.rule_status[r]) {
      throw IntegrityError(
          "label marks rule " + std::to_string(r) + " (" +
          grammar.describe(grammar.rule(r)) + ") " +
          std::string(rule_status_name(label.rule_status[r])) +
          " but analysis finds it " +
          std::string(rule_status_name(expected.rule_status[r])));
    }
  }
  if (label.dead_elements != expected.dead_elements) {
    throw IntegrityError("label dead-element set disagrees with the grammar");
  }
  if (label.error_elements_reachable != expected.error_elements_reachable) {
    throw IntegrityError(
        "label reachable error-exit set disagrees with the grammar");
  }
}

std::string serialize_label(const Grammar& grammar,
                            const GroundTruthLabel& label) {
  Json doc;
  doc["format"] = "reachbench-label";
  doc["version"] = 1;
  Json rules = Json::array();
  for (RuleId r = 0; r < label.rule_status.size(); ++r) {
    Json entry;
    entry["id"] = r;
    entry["status"] = rule_status_name(label.rule_status[r]);
    rules.push_back(entry);
  }
  doc["rules"] = rules;
  doc["dead_elements"] = label.dead_elements;
  Json errors = Json::array();
  for (NonterminalId nt : label.error_elements_reachable) {
    errors.push_back(grammar.name(nt));
  }
  doc["error_elements_reachable"] = errors;
  return dump_json(doc);
}

GroundTruthLabel parse_label(const Grammar& grammar, std::string_view text) {
  const Json doc = parse_json(text, "label");
  constexpr const char* kWhat = "label";
  if (require(doc, "format", kWhat) != "reachbench-label") {
    throw ParseError("label: unsupported format tag");
  }
  GroundTruthLabel label;
  try {
    RuleId expected = 0;
    for (const Json& entry : require(doc, "rules", kWhat)) {
      if (require(entry, "id", kWhat).get<RuleId>() != expected) {
        throw ParseError("label: rule ids must be consecutive from 0");
      }
      const std::string s = require(entry, "status", kWhat).get<std::string>();
      if (s == "reachable") {
        label.rule_status.push_back(RuleStatus::kReachable);
      } else if (s == "unreachable") {
        label.rule_status.push_back(RuleStatus::kUnreachable);
      } else if (s == "dead") {
        label.rule_status.push_back(RuleStatus::kDead);
      } else {
        throw ParseError("label: unknown rule status \"" + s + "\"");
      }
      ++expected;
    }
    for (const Json& e : require(doc, "dead_elements", kWhat)) {
      label.dead_elements.push_back(e.get<ElementId>());
    }
    for (const Json& n : require(doc, "error_elements_reachable", kWhat)) {
      auto nt = grammar.find_nonterminal(n.get<std::string>());
      if (!nt) {
        throw IntegrityError("label names unknown nonterminal <" +
                             n.get<std::string>() + ">");
      }
      label.error_elements_reachable.push_back(*nt);
    }
  } catch (const Json::type_error& e) {
    throw ParseError(std::string("label: wrong value type: ") + e.what());
  }
  std::sort(label.dead_elements.begin(), label.dead_elements.end());
  std::sort(label.error_elements_reachable.begin(),
            label.error_elements_reachable.end());
  return label;
}

}  // namespace reachbench::grammar

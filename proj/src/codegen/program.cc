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

#include "reachbench/codegen/program.h"

#include <algorithm>
#include <sstream>

#include "reachbench/grammar/flow.h"
#include "reachbench/grammar/serialize.h"
#include "reachbench/util/digest.h"
#include "reachbench/util/error.h"
#include "reachbench/util/json.h"

namespace reachbench::codegen {

using grammar::ElementKind;
using grammar::Grammar;
using grammar::RuleScope;

bool ParserProgram::in_ground_truth(ElementId id) const {
  return std::binary_search(ground_truth.begin(), ground_truth.end(), id);
}

namespace {

std::string conflict_report(const Grammar& g,
                            const grammar::Ll1Verdict& verdict) {
  std::ostringstream os;
  os << "grammar is not LL(1): " << verdict.conflicts.size() << " conflict(s)";
  for (const auto& c : verdict.conflicts) {
    os << "; <" << g.name(c.nonterminal) << "> rules " << c.first_rule
       << " and " << c.second_rule << " overlap on";
    for (int t = 0; t < grammar::kTokenCount; ++t) {
      if (c.overlap.test(t)) os << ' ' << grammar::token_name(t);
    }
  }
  return os.str();
}

std::vector<ElementId> compute_ground_truth(const Grammar& g,
                                            const grammar::PredictTable& live,
                                            const ParserProgram& program) {
  const grammar::FlowResult flow = grammar::analyze_flow(g, live);
  std::vector<ElementId> out;
  for (const auto& e : program.elements) {
    if (!program.counted[e.id]) continue;
    bool reachable = false;
    switch (e.kind) {
      case ElementKind::kRuleArm:
        reachable = !g.is_dead_rule(e.origin) && flow.arm_reachable[e.origin];
        break;
      case ElementKind::kErrorExit:
        reachable = flow.error_reachable[e.origin];
        break;
      case ElementKind::kDeadGuard:
        reachable = false;
        break;
    }
    if (reachable) out.push_back(e.id);
  }
  return out;
}

}  // namespace

ParserProgram compile_to_parser(const Grammar& grammar,
                                const grammar::GroundTruthLabel& label,
                                const CompileOptions& options) {
  const grammar::PredictTable full = grammar::compute_first_follow(grammar);
  const grammar::Ll1Verdict verdict = grammar::check_ll1(grammar, full);
  if (!verdict.ok()) {
    throw ValidationError(conflict_report(grammar, verdict));
  }
  grammar::check_label(grammar, label);
  const grammar::PredictTable live =
      grammar::compute_first_follow(grammar, RuleScope::kLive);
  const grammar::ElementLayout layout(grammar);

  ParserProgram program;
  program.options = options;
  program.start = grammar.start_symbol();
  program.elements = layout.elements();
  program.counted.assign(program.elements.size(), true);
  if (!options.count_error_exits) {
    for (const auto& e : program.elements) {
      if (e.kind == ElementKind::kErrorExit) program.counted[e.id] = false;
    }
  }
  program.source_grammar_digest =
      sha256_hex(grammar::serialize_grammar(grammar));

  program.procedures.resize(grammar.num_nonterminals());
  for (NonterminalId nt = 0; nt < grammar.num_nonterminals(); ++nt) {
    Procedure& proc = program.procedures[nt];
    proc.nonterminal = nt;
    proc.name = grammar.name(nt);
    proc.error_exit = layout.error_exit(nt);
    proc.dispatch.fill(-1);
    for (RuleId id : grammar.rules_of(nt)) {
      const grammar::Rule& rule = grammar.rule(id);
      Arm arm;
      arm.rule = id;
      arm.element = layout.arm(id);
      arm.dead = grammar.is_dead_rule(id);
      arm.guard = layout.dead_guard(id);
      arm.predict = arm.dead ? full.predict[id] : live.predict[id];
      arm.body = rule.rhs;
      const grammar::Symbol self = grammar::Symbol::nonterminal(nt);
      if (!arm.dead && arm.body.size() >= 1 && arm.body.back() == self) {
        arm.loops = true;
        arm.body.pop_back();
        proc.has_loop = true;
      }
      const auto index = static_cast<std::int16_t>(proc.arms.size());
      if (!arm.dead) {
        for (int t = 0; t < grammar::kTokenCount; ++t) {
          if (arm.predict.test(t) && proc.dispatch[t] < 0) {
            proc.dispatch[t] = index;
          }
        }
      }
      proc.arms.push_back(std::move(arm));
    }
  }
  program.ground_truth = compute_ground_truth(grammar, live, program);
  return program;
}

std::vector<ElementId> ground_truth_elements(
    const ParserProgram& program, const Grammar& grammar,
    const grammar::PredictTable& table,
    const grammar::GroundTruthLabel& label) {
  if (table.predict.size() != grammar.num_rules() ||
      table.first.size() != grammar.num_nonterminals()) {
    throw IntegrityError("PREDICT table does not belong to this grammar");
  }
  if (program.procedures.size() != grammar.num_nonterminals() ||
      program.elements.size() != grammar::ElementLayout(grammar).size()) {
    throw IntegrityError("program was not compiled from this grammar");
  }
  grammar::check_label(grammar, label);
  const grammar::PredictTable live =
      grammar::compute_first_follow(grammar, RuleScope::kLive);
  std::vector<ElementId> out = compute_ground_truth(grammar, live, program);
  for (const auto& e : program.elements) {
    if (e.kind != ElementKind::kRuleArm || !program.counted[e.id]) continue;
    const bool in_out = std::binary_search(out.begin(), out.end(), e.id);
    const bool labeled =
        label.rule_status[e.origin] == grammar::RuleStatus::kReachable;
    if (in_out != labeled) {
      throw IntegrityError("label and flow analysis disagree on rule " +
                           std::to_string(e.origin));
    }
  }
  return out;
}

int cyclomatic_complexity(const ParserProgram& program) {
  int total = 0;
  for (const Procedure& proc : program.procedures) {
    total += static_cast<int>(std::max<std::size_t>(proc.arms.size(), 1));
  }
  return total;
}

std::string program_to_json(const ParserProgram& program) {
  Json doc;
  doc["format"] = "reachbench-program";
  doc["version"] = 1;
  doc["source_grammar_digest"] = program.source_grammar_digest;
  doc["start"] = program.procedures.at(program.start).name;
  doc["count_error_exits"] = program.options.count_error_exits;
  Json procs = Json::array();
  for (const Procedure& proc : program.procedures) {
    Json p;
    p["name"] = proc.name;
    p["error_exit"] = proc.error_exit;
    p["loop"] = proc.has_loop;
    Json arms = Json::array();
    for (const Arm& arm : proc.arms) {
      Json a;
      a["rule"] = arm.rule;
      a["element"] = arm.element;
      a["dead"] = arm.dead;
      if (arm.guard) a["guard"] = *arm.guard;
      Json predict = Json::array();
      for (int t = 0; t < grammar::kTokenCount; ++t) {
        if (arm.predict.test(t)) predict.push_back(t);
      }
      a["predict"] = predict;
      Json body = Json::array();
      for (const auto& s : arm.body) {
        if (s.is_terminal()) {
          body.push_back(s.id);
        } else if (s.is_nonterminal()) {
          body.push_back(program.procedures.at(s.id).name);
        }
      }
      a["body"] = body;
      a["loops"] = arm.loops;
      arms.push_back(a);
    }
    p["arms"] = arms;
    procs.push_back(p);
  }
  doc["procedures"] = procs;
  doc["ground_truth"] = program.ground_truth;
  doc["cyclomatic_complexity"] = cyclomatic_complexity(program);
  return dump_json(doc);
}

std::string element_manifest(const ParserProgram& program,
                             const Grammar& grammar) {
  std::ostringstream os;
  os << "id\tkind\torigin\tground_truth\n";
  for (const auto& e : program.elements) {
    os << e.id << '\t' << grammar::element_kind_name(e.kind) << '\t';
    if (e.kind == ElementKind::kErrorExit) {
      os << grammar.name(e.origin);
    } else {
      os << "rule:" << e.origin;
    }
    os << '\t' << (program.in_ground_truth(e.id) ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace reachbench::codegen

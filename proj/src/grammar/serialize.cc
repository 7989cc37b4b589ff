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

#include "reachbench/grammar/serialize.h"

#include "reachbench/util/error.h"
#include "reachbench/util/json.h"

namespace reachbench::grammar {

std::string serialize_grammar(const Grammar& grammar) {
  Json doc;
  doc["format"] = "reachbench-grammar";
  doc["version"] = 1;
  Json terms = Json::array();
  for (std::uint8_t b : grammar.terminals()) terms.push_back(b);
  doc["terminals"] = terms;
  doc["nonterminals"] = grammar.nonterminal_names();
  doc["start"] = grammar.start() ? Json(grammar.name(*grammar.start()))
                                 : Json(nullptr);
  Json rules = Json::array();
  for (const Rule& r : grammar.rules()) {
    Json rhs = Json::array();
    for (const Symbol& s : r.rhs) {
      if (s.is_terminal()) {
        rhs.push_back(s.id);
      } else if (s.is_nonterminal()) {
        rhs.push_back(grammar.name(s.id));
      }
    }
    Json rule;
    rule["id"] = r.id;
    rule["lhs"] = grammar.name(r.lhs);
    rule["rhs"] = rhs;
    rules.push_back(rule);
  }
  doc["rules"] = rules;
  Json unreachable = Json::array();
  for (NonterminalId nt : grammar.annotations().unreachable) {
    unreachable.push_back(grammar.name(nt));
  }
  doc["annotations"]["unreachable"] = unreachable;
  doc["annotations"]["dead_rules"] = grammar.annotations().dead_rules;
  return dump_json(doc);
}

namespace {

NonterminalId lookup(const Grammar& g, const Json& name, const char* where) {
  if (!name.is_string()) {
    throw ParseError(std::string("grammar: ") + where +
                     " must be a nonterminal name");
  }
  auto nt = g.find_nonterminal(name.get<std::string>());
  if (!nt) {
    throw ValidationError("grammar: undeclared nonterminal <" +
                          name.get<std::string>() + "> in " + where);
  }
  return *nt;
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
  const Json doc = parse_json(text, "grammar");
  constexpr const char* kWhat = "grammar";
  if (require(doc, "format", kWhat) != "reachbench-grammar") {
    throw ParseError("grammar: unsupported format tag");
  }
  if (require(doc, "version", kWhat) != 1) {
    throw ParseError("grammar: unsupported version");
  }
  Grammar g;
  try {
    for (const Json& t : require(doc, "terminals", kWhat)) {
      const int b = t.get<int>();
      if (b < 0 || b > 255) {
        throw ParseError("grammar: terminal " + std::to_string(b) +
                         " is not a byte");
      }
      g.add_terminal(static_cast<std::uint8_t>(b));
    }
    for (const Json& n : require(doc, "nonterminals", kWhat)) {
      g.add_nonterminal(n.get<std::string>());
    }
    RuleId expected = 0;
    for (const Json& r : require(doc, "rules", kWhat)) {
      if (require(r, "id", kWhat).get<RuleId>() != expected) {
        throw ParseError("grammar: rule ids must be consecutive from 0 (at " +
                         std::to_string(expected) + ")");
      }
      const NonterminalId lhs = lookup(g, require(r, "lhs", kWhat), "lhs");
      std::vector<Symbol> rhs;
      for (const Json& s : require(r, "rhs", kWhat)) {
        if (s.is_number_integer()) {
          const int b = s.get<int>();
          if (b < 0 || b > 255) {
            throw ParseError("grammar: rule " + std::to_string(expected) +
                             " has out-of-range terminal " +
                             std::to_string(b));
          }
          rhs.push_back(Symbol::terminal(static_cast<std::uint8_t>(b)));
        } else {
          rhs.push_back(Symbol::nonterminal(lookup(g, s, "rhs")));
        }
      }
      g.add_rule(lhs, std::move(rhs));
      ++expected;
    }
    const Json& start = require(doc, "start", kWhat);
    if (!start.is_null()) g.set_start(lookup(g, start, "start"));
    const Json& ann = require(doc, "annotations", kWhat);
    for (const Json& n : require(ann, "unreachable", kWhat)) {
      g.annotations().unreachable.push_back(lookup(g, n, "annotations"));
    }
    for (const Json& id : require(ann, "dead_rules", kWhat)) {
      g.annotations().dead_rules.push_back(id.get<RuleId>());
    }
  } catch (const Json::type_error& e) {
    throw ParseError(std::string("grammar: wrong value type: ") + e.what());
  }
  g.validate();
  return g;
}

}  // namespace reachbench::grammar

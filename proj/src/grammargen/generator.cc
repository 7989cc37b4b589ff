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

#include "reachbench/grammargen/generator.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "reachbench/codegen/program.h"
#include "reachbench/grammar/analysis.h"
#include "reachbench/grammar/flow.h"
#include "reachbench/util/error.h"
#include "reachbench/util/random.h"
#include "reachbench/util/seed.h"

namespace reachbench::grammargen {

using grammar::Grammar;
using grammar::NonterminalId;
using grammar::RuleId;
using grammar::Symbol;

void GenConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (n_nonterminals < 1) fail("n_nonterminals must be >= 1");
  if (n_unreachable < 0) fail("n_unreachable must be >= 0");
  if (n_unreachable >= n_nonterminals) {
    fail("n_unreachable must be < n_nonterminals");
  }
  if (n_dead_branches < 0) fail("n_dead_branches must be >= 0");
  if (rules_per_nonterminal.min < 1 ||
      rules_per_nonterminal.min > rules_per_nonterminal.max) {
    fail("rules_per_nonterminal must be a nonempty range with min >= 1");
  }
  if (rule_length.min < 1 || rule_length.min > rule_length.max) {
    fail("rule_length must be a nonempty range with min >= 1");
  }
  if (alphabet_size < 1 || alphabet_size > 256) {
    fail("alphabet_size must be in [1, 256]");
  }
  const RecursionMix& m = recursion_mix;
  if (m.direct < 0 || m.indirect < 0 || m.linear < 0 ||
      m.direct + m.indirect + m.linear > 1.0 + 1e-12) {
    fail("recursion_mix proportions must be >= 0 and sum to <= 1");
  }
  if (epsilon_probability < 0 || epsilon_probability > 1) {
    fail("epsilon_probability must be in [0, 1]");
  }
  if (nonterminal_density < 0 || nonterminal_density > 1) {
    fail("nonterminal_density must be in [0, 1]");
  }
  if (max_attempts < 1) fail("max_attempts must be >= 1");
}

Json to_json(const GenConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["n_nonterminals"] = c.n_nonterminals;
  j["rules_per_nonterminal"] = {c.rules_per_nonterminal.min,
                                c.rules_per_nonterminal.max};
  j["rule_length"] = {c.rule_length.min, c.rule_length.max};
  j["alphabet_size"] = c.alphabet_size;
  j["recursion_mix"] = {{"direct", c.recursion_mix.direct},
                        {"indirect", c.recursion_mix.indirect},
                        {"linear", c.recursion_mix.linear}};
  j["n_unreachable"] = c.n_unreachable;
  j["n_dead_branches"] = c.n_dead_branches;
  j["allow_epsilon"] = c.allow_epsilon;
  j["epsilon_probability"] = c.epsilon_probability;
  j["nonterminal_density"] = c.nonterminal_density;
  j["max_attempts"] = c.max_attempts;
  return j;
}

namespace {

Range range_from_json(const Json& j, const char* key) {
  if (j.is_array() && j.size() == 2) {
    return {j[0].get<int>(), j[1].get<int>()};
  }
  if (j.is_number_integer()) return {j.get<int>(), j.get<int>()};
  if (j.is_object()) return {j.at("min").get<int>(), j.at("max").get<int>()};
  throw ConfigError(std::string(key) + " must be [min, max]");
}

}  // namespace

GenConfig gen_config_from_json(const Json& j) {
  GenConfig c;
  if (!j.is_object()) throw ConfigError("generation config must be an object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "seed") {
        c.seed = v.get<std::uint64_t>();
      } else if (key == "n_nonterminals") {
        c.n_nonterminals = v.get<int>();
      } else if (key == "rules_per_nonterminal") {
        c.rules_per_nonterminal = range_from_json(v, "rules_per_nonterminal");
      } else if (key == "rule_length") {
        c.rule_length = range_from_json(v, "rule_length");
      } else if (key == "alphabet_size") {
        c.alphabet_size = v.get<int>();
      } else if (key == "recursion_mix") {
        for (const auto& [k, p] : v.items()) {
          if (k == "direct") {
            c.recursion_mix.direct = p.get<double>();
          } else if (k == "indirect") {
            c.recursion_mix.indirect = p.get<double>();
          } else if (k == "linear") {
            c.recursion_mix.linear = p.get<double>();
          } else {
            throw ConfigError("unknown recursion_mix key \"" + k + "\"");
          }
        }
      } else if (key == "n_unreachable") {
        c.n_unreachable = v.get<int>();
      } else if (key == "n_dead_branches") {
        c.n_dead_branches = v.get<int>();
      } else if (key == "allow_epsilon") {
        c.allow_epsilon = v.get<bool>();
      } else if (key == "epsilon_probability") {
        c.epsilon_probability = v.get<double>();
      } else if (key == "nonterminal_density") {
        c.nonterminal_density = v.get<double>();
      } else if (key == "max_attempts") {
        c.max_attempts = v.get<int>();
      } else {
        throw ConfigError("unknown generation key \"" + key + "\"");
      }
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("generation config: ") + e.what());
  }
  c.validate();
  return c;
}

std::vector<std::uint8_t> alphabet_bytes(int alphabet_size) {
  std::vector<std::uint8_t> order;
  for (int c = 'a'; c <= 'z'; ++c) order.push_back(static_cast<std::uint8_t>(c));
  for (int c = 'A'; c <= 'Z'; ++c) order.push_back(static_cast<std::uint8_t>(c));
  for (int c = '0'; c <= '9'; ++c) order.push_back(static_cast<std::uint8_t>(c));
  std::vector<bool> used(256, false);
  for (auto b : order) used[b] = true;
  for (int b = 0; b < 256; ++b) {
    if (!used[b]) order.push_back(static_cast<std::uint8_t>(b));
  }
  order.resize(static_cast<std::size_t>(std::clamp(alphabet_size, 0, 256)));
  return order;
}

namespace {

// A rule under construction. Empty slots hold Symbol::epsilon().
struct DraftRule {
  bool epsilon = false;
  std::vector<Symbol> slots;
};

struct Draft {
  std::vector<std::vector<DraftRule>> rules;  // per local nonterminal
};

bool free_slot(const Symbol& s) { return s.is_epsilon(); }

class ComponentBuilder {
 public:
  ComponentBuilder(const GenConfig& cfg, const std::vector<std::uint8_t>& alpha,
                   Rng& rng)
      : cfg_(cfg), alpha_(alpha), rng_(rng) {}

  // One construction attempt. Returns false with `why` naming the binding
  // constraint when the draw cannot be completed.
  bool build(int n, Draft* out, std::string* why) {
    n_ = n;
    Draft d;
    d.rules.resize(n);
    parent_.assign(n, -1);
    depth_.assign(n, 0);
    for (int i = 0; i < n; ++i) draw_rules(d, i);
    for (int i = 1; i < n; ++i) {
      if (!place_child(d, i)) {
        *why = "rule_length.max=" + std::to_string(cfg_.rule_length.max) +
               " leaves no slot to connect nonterminal " + std::to_string(i);
        return false;
      }
    }
    for (int i = 0; i < n; ++i) add_recursion(d, i);
    for (int i = 0; i < n; ++i) fill(d, i);
    *out = std::move(d);
    return true;
  }

 private:
  void draw_rules(Draft& d, int i) {
    const int k = static_cast<int>(rng_.uniform_int(
        cfg_.rules_per_nonterminal.min, cfg_.rules_per_nonterminal.max));
    std::vector<std::uint8_t> leads = alpha_;
    rng_.shuffle(leads);
    for (int r = 0; r < k; ++r) {
      DraftRule rule;
      const int len = static_cast<int>(
          rng_.uniform_int(cfg_.rule_length.min, cfg_.rule_length.max));
      rule.slots.assign(static_cast<std::size_t>(len), Symbol::epsilon());
      rule.slots[0] = Symbol::terminal(leads[static_cast<std::size_t>(r)]);
      d.rules[i].push_back(std::move(rule));
    }
    if (cfg_.allow_epsilon && k >= 2 && rng_.bernoulli(cfg_.epsilon_probability)) {
      d.rules[i].back().epsilon = true;
      d.rules[i].back().slots.clear();
    }
  }

  bool place_child(Draft& d, int i) {
    struct Slot {
      int nt, rule;
      std::size_t pos;
    };
    std::vector<Slot> open;
    for (int j = 0; j < i; ++j) {
      for (int r = 0; r < static_cast<int>(d.rules[j].size()); ++r) {
        const DraftRule& rule = d.rules[j][r];
        if (rule.epsilon) continue;
        for (std::size_t p = 1; p < rule.slots.size(); ++p) {
          if (free_slot(rule.slots[p])) open.push_back({j, r, p});
        }
      }
    }
    if (open.empty()) {
      std::vector<std::pair<int, int>> growable;
      for (int j = 0; j < i; ++j) {
        for (int r = 0; r < static_cast<int>(d.rules[j].size()); ++r) {
          const DraftRule& rule = d.rules[j][r];
          if (!rule.epsilon &&
              static_cast<int>(rule.slots.size()) < cfg_.rule_length.max) {
            growable.emplace_back(j, r);
          }
        }
      }
      if (growable.empty()) return false;
      const auto [j, r] = growable[rng_.index(growable.size())];
      d.rules[j][r].slots.push_back(Symbol::epsilon());
      open.push_back({j, r, d.rules[j][r].slots.size() - 1});
    }
    const Slot s = open[rng_.index(open.size())];
    d.rules[s.nt][s.rule].slots[s.pos] =
        Symbol::nonterminal(static_cast<NonterminalId>(i));
    parent_[i] = s.nt;
    depth_[i] = depth_[s.nt] + 1;
    return true;
  }

  // Candidate non-escape, non-epsilon rules of nonterminal i.
  std::vector<int> recursive_hosts(const Draft& d, int i) const {
    std::vector<int> out;
    for (int r = 1; r < static_cast<int>(d.rules[i].size()); ++r) {
      if (!d.rules[i][r].epsilon) out.push_back(r);
    }
    return out;
  }

  bool can_grow(const DraftRule& rule) const {
    return static_cast<int>(rule.slots.size()) < cfg_.rule_length.max;
  }

  void add_recursion(Draft& d, int i) {
    const double u = rng_.uniform01();
    const RecursionMix& m = cfg_.recursion_mix;
    std::vector<int> hosts = recursive_hosts(d, i);
    if (hosts.empty()) return;
    rng_.shuffle(hosts);
    const Symbol self = Symbol::nonterminal(static_cast<NonterminalId>(i));
    if (u < m.direct) {
      // Self reference strictly before the last slot.
      for (int r : hosts) {
        DraftRule& rule = d.rules[i][r];
        std::vector<std::size_t> open;
        for (std::size_t p = 1; p + 1 < rule.slots.size(); ++p) {
          if (free_slot(rule.slots[p])) open.push_back(p);
        }
        if (!open.empty()) {
          rule.slots[open[rng_.index(open.size())]] = self;
          return;
        }
        if (rule.slots.size() >= 2 && can_grow(rule)) {
          rule.slots.insert(rule.slots.begin() + 1, self);
          return;
        }
      }
    } else if (u < m.direct + m.indirect) {
      if (parent_[i] < 0) return;
      const int hops = static_cast<int>(rng_.uniform_int(1, std::min(3, depth_[i])));
      int a = i;
      for (int h = 0; h < hops; ++h) a = parent_[a];
      const Symbol back = Symbol::nonterminal(static_cast<NonterminalId>(a));
      for (int r : hosts) {
        DraftRule& rule = d.rules[i][r];
        std::vector<std::size_t> open;
        for (std::size_t p = 1; p < rule.slots.size(); ++p) {
          if (free_slot(rule.slots[p])) open.push_back(p);
        }
        if (!open.empty()) {
          rule.slots[open[rng_.index(open.size())]] = back;
          return;
        }
        if (can_grow(rule)) {
          rule.slots.push_back(back);
          return;
        }
      }
    } else if (u < m.direct + m.indirect + m.linear) {
      // Tail self reference: A -> t beta A.
      for (int r : hosts) {
        DraftRule& rule = d.rules[i][r];
        if (rule.slots.size() >= 2 && free_slot(rule.slots.back())) {
          rule.slots.back() = self;
          return;
        }
        if (can_grow(rule)) {
          rule.slots.push_back(self);
          return;
        }
      }
    }
  }

  void fill(Draft& d, int i) {
    for (int r = 0; r < static_cast<int>(d.rules[i].size()); ++r) {
      DraftRule& rule = d.rules[i][r];
      for (Symbol& s : rule.slots) {
        if (!free_slot(s)) continue;
        if (r > 0 && i + 1 < n_ && rng_.bernoulli(cfg_.nonterminal_density)) {
          s = Symbol::nonterminal(
              static_cast<NonterminalId>(rng_.uniform_int(i + 1, n_ - 1)));
        } else {
          s = Symbol::terminal(alpha_[rng_.index(alpha_.size())]);
        }
      }
    }
  }

  const GenConfig& cfg_;
  const std::vector<std::uint8_t>& alpha_;
  Rng& rng_;
  int n_ = 0;
  std::vector<int> parent_;
  std::vector<int> depth_;
};

std::string fresh_name(const Grammar& g, const std::string& prefix, int i) {
  std::string name = prefix + std::to_string(i);
  while (g.find_nonterminal(name)) name = "_" + name;
  return name;
}

// Appends the draft to `g` under names prefix0, prefix1, ... Returns the
// global ids of the new nonterminals.
std::vector<NonterminalId> append_draft(Grammar& g, const Draft& d,
                                        const std::string& prefix,
                                        const std::vector<std::uint8_t>& alpha) {
  for (auto b : alpha) g.add_terminal(b);
  std::vector<NonterminalId> ids;
  for (int i = 0; i < static_cast<int>(d.rules.size()); ++i) {
    ids.push_back(g.add_nonterminal(fresh_name(g, prefix, i)));
  }
  for (int i = 0; i < static_cast<int>(d.rules.size()); ++i) {
    for (const DraftRule& rule : d.rules[i]) {
      std::vector<Symbol> rhs;
      if (!rule.epsilon) {
        for (Symbol s : rule.slots) {
          if (s.is_nonterminal()) s.id = ids[s.id];
          rhs.push_back(s);
        }
      }
      g.add_rule(ids[i], std::move(rhs));
    }
  }
  return ids;
}

// Redraws leading terminals that collide with FOLLOW of a nullable lhs.
// Returns false when some nonterminal has no admissible terminal left.
bool repair_epsilon_conflicts(Draft& d, const Grammar& g,
                              const std::vector<NonterminalId>& ids,
                              const std::vector<std::uint8_t>& alpha, Rng& rng,
                              const grammar::Ll1Verdict& verdict,
                              const grammar::PredictTable& table) {
  std::vector<int> local(g.num_nonterminals(), -1);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    local[ids[i]] = static_cast<int>(i);
  }
  std::set<NonterminalId> touched;
  for (const auto& c : verdict.conflicts) touched.insert(c.nonterminal);
  for (NonterminalId nt : touched) {
    const int i = local[nt];
    if (i < 0) continue;
    auto& rules = d.rules[static_cast<std::size_t>(i)];
    std::set<std::uint8_t> taken;
    for (const DraftRule& r : rules) {
      if (!r.epsilon) taken.insert(static_cast<std::uint8_t>(r.slots[0].id));
    }
    for (DraftRule& r : rules) {
      if (r.epsilon) continue;
      const auto lead = static_cast<std::uint8_t>(r.slots[0].id);
      if (!table.follow[nt].test(lead)) continue;
      std::vector<std::uint8_t> options;
      for (auto b : alpha) {
        if (!taken.count(b) && !table.follow[nt].test(b)) options.push_back(b);
      }
      if (options.empty()) return false;
      const std::uint8_t pick = options[rng.index(options.size())];
      taken.erase(lead);
      taken.insert(pick);
      r.slots[0] = Symbol::terminal(pick);
    }
  }
  return true;
}

constexpr int kRepairsPerDraft = 16;

// Builds one LL(1), productive component whose every rule is reachable from
// its first nonterminal. Throws InfeasibleError after max_attempts.
Grammar build_component(const GenConfig& cfg, int n, const std::string& prefix,
                        Rng& rng, int* attempts_used) {
  const auto alpha = alphabet_bytes(cfg.alphabet_size);
  ComponentBuilder builder(cfg, alpha, rng);
  std::string why = "unknown";
  int attempts = 0;
  while (attempts < cfg.max_attempts) {
    ++attempts;
    Draft d;
    if (!builder.build(n, &d, &why)) continue;
    int repairs = 0;
    for (;;) {
      Grammar g;
      const auto ids = append_draft(g, d, prefix, alpha);
      g.set_start(ids[0]);
      const auto table = grammar::compute_first_follow(g);
      const auto verdict = grammar::check_ll1(g, table);
      if (verdict.ok()) {
        const auto productive = grammar::productive_mask(g);
        if (std::find(productive.begin(), productive.end(), false) !=
            productive.end()) {
          why = "productivity";
          break;
        }
        const auto flow = grammar::analyze_flow(g);
        if (std::find(flow.arm_reachable.begin(), flow.arm_reachable.end(),
                      false) != flow.arm_reachable.end()) {
          why = "rule reachability";
          break;
        }
        *attempts_used += attempts;
        return g;
      }
      if (!repair_epsilon_conflicts(d, g, ids, alpha, rng, verdict, table)) {
        why = "alphabet_size=" + std::to_string(cfg.alphabet_size) +
              " leaves no leading terminal outside FOLLOW for epsilon rules";
        break;
      }
      if (++repairs > kRepairsPerDraft || ++attempts > cfg.max_attempts) {
        why = "epsilon repair did not converge (alphabet_size=" +
              std::to_string(cfg.alphabet_size) + ")";
        break;
      }
    }
  }
  throw InfeasibleError("no valid grammar within max_attempts=" +
                        std::to_string(cfg.max_attempts) +
                        "; binding constraint: " + why);
}

void check_feasible(const GenConfig& cfg) {
  if (cfg.rules_per_nonterminal.max > cfg.alphabet_size) {
    throw InfeasibleError(
        "rules_per_nonterminal.max=" +
        std::to_string(cfg.rules_per_nonterminal.max) +
        " exceeds alphabet_size=" + std::to_string(cfg.alphabet_size) +
        ": rules of one nonterminal need distinct leading terminals");
  }
  const int core = cfg.n_nonterminals - cfg.n_unreachable;
  if ((core > 1 || cfg.n_unreachable > 1) && cfg.rule_length.max < 2) {
    throw InfeasibleError(
        "rule_length.max=1 cannot connect more than one nonterminal");
  }
  if (cfg.n_dead_branches > 0 &&
      cfg.rules_per_nonterminal.min >= cfg.alphabet_size) {
    throw InfeasibleError(
        "n_dead_branches > 0 needs a spare leading terminal but "
        "rules_per_nonterminal.min >= alphabet_size");
  }
}

}  // namespace

std::pair<Grammar, grammar::GroundTruthLabel> inject_unreachable(
    const Grammar& input, const grammar::GroundTruthLabel& label,
    const GenConfig& cfg) {
  if (cfg.n_unreachable == 0 && cfg.n_dead_branches == 0) {
    return {input, label};
  }
  Grammar g = input;
  const auto alpha = alphabet_bytes(cfg.alphabet_size);
  if (cfg.n_unreachable > 0) {
    Rng rng(derive_seed(cfg.seed, "grammargen/unreachable"));
    int attempts = 0;
    const Grammar comp =
        build_component(cfg, cfg.n_unreachable, "U", rng, &attempts);
    // Re-home the component's nonterminals into g.
    std::vector<NonterminalId> ids;
    for (auto b : alpha) g.add_terminal(b);
    for (NonterminalId i = 0; i < comp.num_nonterminals(); ++i) {
      ids.push_back(g.add_nonterminal(fresh_name(g, "U", static_cast<int>(i))));
    }
    for (const grammar::Rule& r : comp.rules()) {
      std::vector<Symbol> rhs;
      if (!r.is_epsilon()) {
        for (Symbol s : r.rhs) {
          if (s.is_nonterminal()) s.id = ids[s.id];
          rhs.push_back(s);
        }
      }
      g.add_rule(ids[r.lhs], std::move(rhs));
    }
    for (NonterminalId id : ids) g.annotations().unreachable.push_back(id);
  }

  if (cfg.n_dead_branches > 0) {
    Rng rng(derive_seed(cfg.seed, "grammargen/dead"));
    for (int b = 0; b < cfg.n_dead_branches; ++b) {
      const auto live_reach = grammar::reachable_mask(g, grammar::RuleScope::kLive);
      std::vector<NonterminalId> hosts;
      for (NonterminalId nt = 0; nt < g.num_nonterminals(); ++nt) {
        if (live_reach[nt]) hosts.push_back(nt);
      }
      rng.shuffle(hosts);
      bool placed = false;
      const auto table = grammar::compute_first_follow(g);
      for (NonterminalId host : hosts) {
        std::set<std::uint8_t> taken;
        for (RuleId id : g.rules_of(host)) {
          const auto& rhs = g.rule(id).rhs;
          if (!rhs.empty() && rhs[0].is_terminal()) {
            taken.insert(static_cast<std::uint8_t>(rhs[0].id));
          }
        }
        std::vector<std::uint8_t> options;
        for (auto t : alpha) {
          if (taken.count(t)) continue;
          if (table.nullable[host] && table.follow[host].test(t)) continue;
          if (table.first[host].test(t)) continue;
          options.push_back(t);
        }
        rng.shuffle(options);
        for (auto lead : options) {
          Grammar trial = g;
          std::vector<Symbol> rhs{Symbol::terminal(lead)};
          const int len = static_cast<int>(
              rng.uniform_int(cfg.rule_length.min, cfg.rule_length.max));
          for (int k = 1; k < len; ++k) {
            rhs.push_back(Symbol::terminal(alpha[rng.index(alpha.size())]));
          }
          const RuleId id = trial.add_rule(host, rhs);
          trial.annotations().dead_rules.push_back(id);
          if (grammar::check_ll1(trial, grammar::compute_first_follow(trial))
                  .ok()) {
            g = std::move(trial);
            placed = true;
            break;
          }
        }
        if (placed) break;
      }
      if (!placed) {
        throw InfeasibleError(
            "n_dead_branches=" + std::to_string(cfg.n_dead_branches) +
            ": no reachable nonterminal has a spare leading terminal "
            "(alphabet_size=" + std::to_string(cfg.alphabet_size) + ")");
      }
    }
  }
  g.validate();
  return {g, grammar::derive_label(g)};
}

Generated generate_grammar(const GenConfig& config) {
  config.validate();
  check_feasible(config);
  Rng rng(derive_seed(config.seed, "grammargen/core"));
  Generated out;
  Grammar core = build_component(
      config, config.n_nonterminals - config.n_unreachable, "N", rng,
      &out.attempts);
  const auto label = grammar::derive_label(core);
  auto [g, l] = inject_unreachable(core, label, config);
  out.grammar = std::move(g);
  out.label = std::move(l);
  return out;
}

Json generation_metadata(const GenConfig& config, const Generated& generated) {
  const auto program =
      codegen::compile_to_parser(generated.grammar, generated.label);
  Json j;
  j["config"] = to_json(config);
  j["seed"] = config.seed;
  j["attempts"] = generated.attempts;
  j["nonterminals"] = generated.grammar.num_nonterminals();
  j["rules"] = generated.grammar.num_rules();
  j["elements"] = program.num_elements();
  j["ground_truth_size"] = program.ground_truth.size();
  j["cyclomatic_complexity"] = codegen::cyclomatic_complexity(program);
  j["grammar_sha256"] = program.source_grammar_digest;
  return j;
}

}  // namespace reachbench::grammargen

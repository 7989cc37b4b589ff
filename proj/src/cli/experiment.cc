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

#include "reachbench/cli/experiment.h"

#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <optional>

#include <spdlog/spdlog.h>

#include "reachbench/cli/records.h"
#include "reachbench/codegen/program.h"
#include "reachbench/evaluation/sensitivity.h"
#include "reachbench/fuzzer/seeds.h"
#include "reachbench/grammar/serialize.h"
#include "reachbench/incidence/incidence.h"
#include "reachbench/util/digest.h"
#include "reachbench/util/error.h"
#include "reachbench/util/parallel.h"
#include "reachbench/util/seed.h"

namespace reachbench::cli {

namespace fs = std::filesystem;

void ExperimentConfig::validate() const {
  generation.validate();
  campaign.validate();
  if (programs == 0) throw ConfigError("programs must be >= 1");
  if (trials == 0) throw ConfigError("trials must be >= 1");
  if (seed_depth < 1) throw ConfigError("seed_depth must be >= 1");
  if (!(ci_level >= 0.0 && ci_level < 1.0)) {
    throw ConfigError("ci_level must be in [0, 1)");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in (0, 1)");
  if (campaign.wall_clock_units) {
    throw ConfigError("wall-clock units are not reproducible; use the fuzz command");
  }
  const std::uint64_t t_max = campaign.budget / campaign.unit_size;
  for (auto r : unit_sizes) {
    if (r == 0 || r % campaign.unit_size != 0) {
      throw ConfigError("unit size " + std::to_string(r) +
                        " is not a multiple of campaign.unit_size " +
                        std::to_string(campaign.unit_size));
    }
    if (r / campaign.unit_size > t_max) {
      throw ConfigError("unit size " + std::to_string(r) + " exceeds the budget");
    }
  }
  for (auto t : checkpoints) {
    if (t < 2 || t > t_max) {
      throw ConfigError("checkpoint " + std::to_string(t) + " outside [2, " +
                        std::to_string(t_max) + "]");
    }
  }
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["master_seed"] = c.master_seed;
  j["programs"] = c.programs;
  j["trials"] = c.trials;
  j["generation"] = grammargen::to_json(c.generation);
  j["campaign"] = fuzzer::to_json(c.campaign);
  j["seed_inputs"] = c.seed_inputs;
  j["seed_depth"] = c.seed_depth;
  j["count_error_exits"] = c.count_error_exits;
  j["unit_sizes"] = c.unit_sizes;
  Json methods = Json::array();
  for (auto m : c.methods) methods.push_back(std::string(estimators::method_name(m)));
  j["estimators"] = methods;
  j["checkpoints"] = c.checkpoints;
  j["ci_level"] = c.ci_level;
  j["alpha"] = c.alpha;
  j["bootstrap_replicates"] = c.bootstrap_replicates;
  j["threads"] = c.threads;
  return j;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be an object");
  ExperimentConfig c;
  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "master_seed") {
        c.master_seed = v.get<std::uint64_t>();
      } else if (key == "programs") {
        c.programs = v.get<std::size_t>();
      } else if (key == "trials") {
        c.trials = v.get<std::size_t>();
      } else if (key == "generation") {
        c.generation = grammargen::gen_config_from_json(v);
      } else if (key == "campaign") {
        c.campaign = fuzzer::campaign_config_from_json(v);
      } else if (key == "seed_inputs") {
        c.seed_inputs = v.get<std::size_t>();
      } else if (key == "seed_depth") {
        c.seed_depth = v.get<int>();
      } else if (key == "count_error_exits") {
        c.count_error_exits = v.get<bool>();
      } else if (key == "unit_sizes") {
        c.unit_sizes = v.get<std::vector<std::size_t>>();
      } else if (key == "estimators") {
        if (v.is_string()) {
          c.methods = estimators::parse_method_list(v.get<std::string>());
        } else {
          c.methods.clear();
          for (const auto& name : v) {
            const auto m = estimators::parse_method(name.get<std::string>());
            if (!m) throw ConfigError("unknown estimator '" + name.get<std::string>() + "'");
            c.methods.push_back(*m);
          }
        }
      } else if (key == "checkpoints") {
        c.checkpoints = v.get<std::vector<std::size_t>>();
      } else if (key == "ci_level") {
        c.ci_level = v.get<double>();
      } else if (key == "alpha") {
        c.alpha = v.get<double>();
      } else if (key == "bootstrap_replicates") {
        c.bootstrap_replicates = v.get<std::size_t>();
      } else if (key == "threads") {
        c.threads = v.get<std::size_t>();
      } else {
        throw ConfigError("unknown experiment key '" + key + "'");
      }
    } catch (const Json::exception& e) {
      throw ConfigError("experiment key '" + key + "': " + e.what());
    }
  }
  return c;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  try {
    return experiment_config_from_json(parse_json(read_file(path), path.string()));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::uint64_t program_seed(std::uint64_t master, std::size_t program) {
  return derive_seed(master, "grammar", program);
}
std::uint64_t corpus_seed(std::uint64_t master, std::size_t program) {
  return derive_seed(master, "seeds", program);
}
std::uint64_t campaign_master_seed(std::uint64_t master, std::size_t program) {
  return derive_seed(master, "campaign", program);
}
std::uint64_t estimate_seed(std::uint64_t master, std::size_t program,
                            std::size_t trial) {
  return derive_seed(derive_seed(master, "estimate", program), "trial", trial);
}

namespace {

using Clock = std::chrono::steady_clock;
using Digests = std::map<std::string, std::string>;

std::string numbered(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03zu", prefix, i);
  return buf;
}

// Stage bookkeeping shared by all workers.
class Ledger {
 public:
  Ledger(fs::path root, Json previous_stages)
      : root_(std::move(root)), previous_(std::move(previous_stages)) {}

  const fs::path& root() const { return root_; }

  Digests digests(const std::vector<std::string>& paths) const {
    Digests d;
    for (const auto& p : paths) {
      const auto h = sha256_file(root_ / p);
      d[p] = h.value_or("");
    }
    return d;
  }

  // True when the previous run recorded this stage with identical inputs and
  // its outputs are still on disk unchanged.
  bool up_to_date(const std::string& name, const std::vector<std::string>& inputs,
                  const std::vector<std::string>& outputs) const {
    if (!previous_.contains(name)) return false;
    const Json& s = previous_.at(name);
    if (s.value("status", "") != "ok") return false;
    const auto same = [&](const char* key, const std::vector<std::string>& paths) {
      if (!s.contains(key) || s.at(key).size() != paths.size()) return false;
      for (const auto& [path, digest] : digests(paths)) {
        if (digest.empty() || !s.at(key).contains(path) ||
            s.at(key).at(path).get<std::string>() != digest) {
          return false;
        }
      }
      return true;
    };
    return same("inputs", inputs) && same("outputs", outputs);
  }

  void record(const std::string& name, const std::string& status,
              const std::vector<std::string>& inputs,
              const std::vector<std::string>& outputs, double seconds,
              const std::string& message = {}) {
    Json s;
    s["status"] = status;
    s["inputs"] = digests(inputs);
    s["outputs"] = status == "failed" ? Json::object() : Json(digests(outputs));
    s["seconds"] = seconds;
    if (!message.empty()) s["message"] = message;
    std::lock_guard<std::mutex> lock(mutex_);
    stages_[name] = s;
  }

  Json stages() const {
    std::lock_guard<std::mutex> lock(mutex_);
    Json j = Json::object();
    for (const auto& [name, s] : stages_) j[name] = s;
    return j;
  }

 private:
  fs::path root_;
  Json previous_;
  mutable std::mutex mutex_;
  std::map<std::string, Json> stages_;
};

struct ProgramState {
  std::string name;
  std::optional<grammar::Grammar> grammar;
  std::optional<grammar::GroundTruthLabel> label;
  std::optional<codegen::ParserProgram> program;
  std::vector<std::optional<incidence::IncidenceMatrix>> incidence;
  std::vector<std::optional<EstimateRecord>> estimates;
};

void write(const fs::path& root, const std::string& rel, std::string_view text) {
  fs::create_directories((root / rel).parent_path());
  write_file(root / rel, text);
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config, const fs::path& out) {
  config.validate();
  const auto started = Clock::now();
  fs::create_directories(out);
  const Json config_json = to_json(config);
  const std::string config_text = dump_json(config_json);
  const std::string config_digest = sha256_hex(config_text);

  Json previous = Json::object();
  if (fs::exists(out / "manifest.json")) {
    try {
      const Json old = parse_json(read_file(out / "manifest.json"), "manifest");
      if (old.value("config_digest", "") == config_digest && old.contains("stages")) {
        previous = old.at("stages");
      }
    } catch (const Error& e) {
      spdlog::warn("ignoring unreadable manifest: {}", e.what());
    }
  }
  write_file(out / "config.json", config_text);

  Ledger ledger(out, previous);
  ExperimentOutcome outcome;
  std::mutex outcome_mutex;
  const std::size_t threads = config.threads == 0 ? default_threads() : config.threads;
  const auto& methods =
      config.methods.empty() ? estimators::all_methods() : config.methods;

  // Runs one stage unit: skips it when up to date, otherwise calls `work`
  // and records the result. Returns false when the unit failed.
  const auto stage = [&](const std::string& name, const std::vector<std::string>& inputs,
                         const std::vector<std::string>& outputs, auto&& load,
                         auto&& work) {
    const auto t0 = Clock::now();
    try {
      if (ledger.up_to_date(name, inputs, outputs)) {
        load();
        ledger.record(name, "ok", inputs, outputs, 0.0);
        std::lock_guard<std::mutex> lock(outcome_mutex);
        ++outcome.stages_skipped;
        return true;
      }
      work();
      const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      ledger.record(name, "ok", inputs, outputs, seconds);
      std::lock_guard<std::mutex> lock(outcome_mutex);
      ++outcome.stages_run;
      return true;
    } catch (const std::exception& e) {
      const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      spdlog::error("{}: {}", name, e.what());
      ledger.record(name, "failed", inputs, outputs, seconds, e.what());
      std::lock_guard<std::mutex> lock(outcome_mutex);
      outcome.failures.push_back(name + ": " + e.what());
      return false;
    }
  };

  std::vector<ProgramState> states(config.programs);
  for (std::size_t b = 0; b < config.programs; ++b) {
    auto& st = states[b];
    st.name = numbered("p", b);
    st.incidence.resize(config.trials);
    st.estimates.resize(config.trials);
    const std::string dir = "programs/" + st.name + "/";
    const std::vector<std::string> program_files{
        dir + "grammar.txt", dir + "label.txt", dir + "metadata.json",
        dir + "program.json", dir + "elements.tsv", dir + "truth.json"};
    const auto compile = [&] {
      codegen::CompileOptions options;
      options.count_error_exits = config.count_error_exits;
      st.program = codegen::compile_to_parser(*st.grammar, *st.label, options);
    };
    stage(
        "generate/" + st.name, {}, program_files,
        [&] {
          st.grammar = grammar::parse_grammar(read_file(out / program_files[0]));
          st.label = grammar::parse_label(*st.grammar, read_file(out / program_files[1]));
          compile();
        },
        [&] {
          auto gen = config.generation;
          gen.seed = program_seed(config.master_seed, b);
          auto generated = grammargen::generate_grammar(gen);
          st.grammar = std::move(generated.grammar);
          st.label = std::move(generated.label);
          compile();
          grammargen::Generated echo{*st.grammar, *st.label, generated.attempts};
          write(out, program_files[0], grammar::serialize_grammar(*st.grammar));
          write(out, program_files[1], grammar::serialize_label(*st.grammar, *st.label));
          write(out, program_files[2], dump_json(grammargen::generation_metadata(gen, echo)));
          write(out, program_files[3], codegen::program_to_json(*st.program));
          write(out, program_files[4], codegen::element_manifest(*st.program, *st.grammar));
          Json truth;
          truth["true_s"] = st.program->ground_truth.size();
          truth["elements"] = st.program->num_elements();
          truth["grammar_sha256"] = st.program->source_grammar_digest;
          write(out, program_files[5], dump_json(truth));
        });
  }

  // Fuzzing, one unit per (program, trial).
  std::vector<fuzzer::SeedCorpus> corpora(config.programs);
  for (std::size_t b = 0; b < config.programs; ++b) {
    if (states[b].program) {
      corpora[b] = fuzzer::generate_seed_corpus(*states[b].grammar, config.seed_inputs,
                                                config.seed_depth,
                                                corpus_seed(config.master_seed, b));
    }
  }
  const std::size_t jobs = config.programs * config.trials;
  parallel_for(jobs, threads, [&](std::size_t job) {
    const std::size_t b = job / config.trials, k = job % config.trials;
    auto& st = states[b];
    if (!st.program) return;
    const std::string grammar_file = "programs/" + st.name + "/grammar.txt";
    const std::string base = "incidence/" + st.name + "/" + numbered("trial", k);
    stage(
        "fuzz/" + st.name + "/" + numbered("trial", k), {grammar_file},
        {base + ".txt", base + ".json"},
        [&] { st.incidence[k] = incidence::load_sparse(out / (base + ".txt")); },
        [&] {
          auto campaign = config.campaign;
          campaign.trial_seed =
              fuzzer::trial_seed(campaign_master_seed(config.master_seed, b), k);
          if (campaign.dictionary.empty()) campaign.dictionary = st.grammar->terminals();
          const auto log = fuzzer::run_campaign(*st.program, corpora[b], campaign);
          st.incidence[k] = incidence::build_incidence_matrix(log);
          write(out, base + ".txt", incidence::write_sparse(*st.incidence[k]));
          auto summary = fuzzer::campaign_summary(log, campaign);
          summary.erase("seconds");
          summary.erase("executions_per_second");
          write(out, base + ".json", dump_json(summary));
        });
  });

  // Checkpoint estimates, one unit per (program, trial).
  parallel_for(jobs, threads, [&](std::size_t job) {
    const std::size_t b = job / config.trials, k = job % config.trials;
    auto& st = states[b];
    if (!st.incidence[k]) return;
    const std::string input = "incidence/" + st.name + "/" + numbered("trial", k) + ".txt";
    const std::string output =
        "estimates/" + st.name + "/" + numbered("trial", k) + ".json";
    stage(
        "estimate/" + st.name + "/" + numbered("trial", k), {input}, {output},
        [&] {
          st.estimates[k] =
              estimate_record_from_json(parse_json(read_file(out / output), output));
        },
        [&] {
          estimators::EstimatorOptions options;
          options.level = config.ci_level;
          options.bootstrap_replicates = config.bootstrap_replicates;
          options.bootstrap_seed = estimate_seed(config.master_seed, b, k);
          const auto& m = *st.incidence[k];
          auto record = estimate_checkpoints(
              m, config.checkpoints.empty() ? default_checkpoints(m.units())
                                            : config.checkpoints,
              methods, options);
          record.source = input;
          record.trial = k + 1;
          st.estimates[k] = record;
          write(out, output, dump_json(to_json(record)));
        });
  });

  // Accuracy report over every program with complete estimates.
  std::vector<ReportRow> rows;
  for (const auto& st : states) {
    if (!st.program) continue;
    std::vector<EstimateRecord> records;
    for (const auto& e : st.estimates) {
      if (e) records.push_back(*e);
    }
    if (records.empty()) continue;
    auto part = accuracy_report(st.name, records,
                                static_cast<double>(st.program->ground_truth.size()));
    rows.insert(rows.end(), part.begin(), part.end());
  }
  write_file(out / "report.csv", report_csv(rows));
  write_file(out / "report.json", dump_json(report_json(rows)));

  // Sensitivity over unit sizes.
  if (config.unit_sizes.size() >= 2) {
    for (std::size_t b = 0; b < states.size(); ++b) {
      auto& st = states[b];
      std::vector<incidence::IncidenceMatrix> trials;
      std::vector<std::string> inputs;
      for (std::size_t k = 0; k < config.trials; ++k) {
        if (!st.incidence[k]) continue;
        trials.push_back(*st.incidence[k]);
        inputs.push_back("incidence/" + st.name + "/" + numbered("trial", k) + ".txt");
      }
      if (trials.empty()) continue;
      const std::string output = "sensitivity/" + st.name + ".csv";
      std::vector<std::pair<std::string, evaluation::SensitivityVerdict>> verdicts;
      stage(
          "sensitivity/" + st.name, inputs, {output}, [] {},
          [&] {
            evaluation::SensitivityConfig sc;
            sc.methods = methods;
            sc.alpha = config.alpha;
            sc.estimator.level = config.ci_level;
            sc.estimator.bootstrap_replicates = config.bootstrap_replicates;
            sc.estimator.bootstrap_seed =
                derive_seed(config.master_seed, "sensitivity", b);
            sc.threads = threads;
            const auto factors =
                evaluation::merge_factors(config.campaign.unit_size, config.unit_sizes);
            for (auto& v : evaluation::sensitivity_analysis(trials, factors, sc)) {
              verdicts.emplace_back(st.name, v);
            }
            write(out, output, verdicts_csv(verdicts));
          });
    }
    // Rebuild the combined table from the per-program files so skipped
    // stages contribute too.
    std::string combined;
    for (const auto& st : states) {
      const fs::path p = out / "sensitivity" / (st.name + ".csv");
      if (!fs::exists(p)) continue;
      const std::string text = read_file(p);
      const auto body = text.find('\n');
      if (combined.empty()) {
        combined = text;
      } else if (body != std::string::npos) {
        combined += text.substr(body + 1);
      }
    }
    if (!combined.empty()) write_file(out / "verdicts.csv", combined);
  }

  Json manifest;
  manifest["tool"] = "reachbench";
  manifest["version"] = kToolVersion;
  manifest["config"] = config_json;
  manifest["config_digest"] = config_digest;
  manifest["complete"] = outcome.complete();
  manifest["failures"] = outcome.failures;
  manifest["stages"] = ledger.stages();
  Digests artifacts;
  for (const auto& entry : fs::recursive_directory_iterator(out)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), out).generic_string();
    if (rel == "manifest.json") continue;
    artifacts[rel] = sha256_file(entry.path()).value_or("");
  }
  manifest["artifacts"] = artifacts;
  Json timings;
  timings["total_seconds"] =
      std::chrono::duration<double>(Clock::now() - started).count();
  timings["stages_run"] = outcome.stages_run;
  timings["stages_skipped"] = outcome.stages_skipped;
  manifest["timings"] = timings;
  write_file(out / "manifest.json", dump_json(manifest));
  return outcome;
}

}  // namespace reachbench::cli

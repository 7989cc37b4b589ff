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

#include "reachbench/cli/app.h"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "reachbench/cli/experiment.h"
#include "reachbench/cli/records.h"
#include "reachbench/codegen/export_c.h"
#include "reachbench/codegen/program.h"
#include "reachbench/evaluation/sensitivity.h"
#include "reachbench/fuzzer/seeds.h"
#include "reachbench/grammar/label.h"
#include "reachbench/grammar/serialize.h"
#include "reachbench/grammargen/generator.h"
#include "reachbench/incidence/incidence.h"
#include "reachbench/util/digest.h"
#include "reachbench/util/error.h"
#include "reachbench/util/parallel.h"
#include "reachbench/util/seed.h"

namespace reachbench::cli {

namespace {

namespace fs = std::filesystem;

struct Common {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string config;
  bool verbose = false;
  bool quiet = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Master seed");
  app->add_option("--out", c.out, "Output path");
  app->add_option("--config", c.config, "JSON configuration file");
  app->add_flag("-v,--verbose", c.verbose, "Debug logging");
  app->add_flag("-q,--quiet", c.quiet, "Errors only");
}

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  try {
    return parse_json(read_file(path), path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::string require_out(const Common& c, const char* what) {
  if (c.out.empty()) throw ConfigError(std::string("--out is required for ") + what);
  return c.out;
}

void write_to(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_file(path, text);
}

std::string trial_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "trial%03zu", k);
  return buf;
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw ConfigError("invalid number '" + item + "' in list '" + list + "'");
    }
  }
  return out;
}

std::pair<grammar::Grammar, grammar::GroundTruthLabel> load_grammar(
    const std::string& grammar_path, const std::string& label_path) {
  auto g = grammar::parse_grammar(read_file(grammar_path));
  auto label = label_path.empty() ? grammar::derive_label(g)
                                  : grammar::parse_label(g, read_file(label_path));
  return {std::move(g), std::move(label)};
}

std::string estimates_csv(const EstimateRecord& record) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "estimator,t,s_obs,point,ci_low,ci_high,status,ci_method\n";
  for (const auto& cp : record.checkpoints) {
    for (const auto& e : cp.estimates) {
      os << estimators::method_name(e.method) << ',' << cp.t << ',' << cp.s_obs << ','
         << e.point << ',' << e.ci_low << ',' << e.ci_high << ','
         << estimators::status_name(e.status) << ',' << e.ci_method << '\n';
    }
  }
  return os.str();
}

std::vector<fs::path> incidence_files(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".txt" || ext == ".csv")) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Subcommands. Each returns an exit code.

int cmd_gen_grammar(const Common& c) {
  const Json j = load_config(c.config);
  auto config = grammargen::gen_config_from_json(j);
  if (c.seed) config.seed = *c.seed;
  const fs::path out = require_out(c, "gen-grammar");
  const auto generated = grammargen::generate_grammar(config);
  fs::create_directories(out);
  write_file(out / "grammar.txt", grammar::serialize_grammar(generated.grammar));
  write_file(out / "label.txt",
             grammar::serialize_label(generated.grammar, generated.label));
  const Json meta = grammargen::generation_metadata(config, generated);
  write_file(out / "metadata.json", dump_json(meta));
  std::cout << "grammar: " << meta["nonterminals"] << " nonterminals, "
            << meta["rules"] << " rules, " << meta["ground_truth_size"] << " of "
            << meta["elements"] << " elements reachable\n";
  return kExitOk;
}

struct ParserArgs {
  std::string grammar;
  std::string label;
  bool no_error_exits = false;
  bool emit_c = false;
};

int cmd_gen_parser(const Common& c, const ParserArgs& a) {
  const Json j = load_config(c.config);
  codegen::CompileOptions options;
  for (const auto& [key, v] : j.items()) {
    if (key != "count_error_exits") throw ConfigError("unknown parser key '" + key + "'");
    options.count_error_exits = v.get<bool>();
  }
  if (a.no_error_exits) options.count_error_exits = false;
  const auto [g, label] = load_grammar(a.grammar, a.label);
  const auto program = codegen::compile_to_parser(g, label, options);
  const fs::path out = require_out(c, "gen-parser");
  fs::create_directories(out);
  write_file(out / "program.json", codegen::program_to_json(program));
  write_file(out / "elements.tsv", codegen::element_manifest(program, g));
  Json truth;
  truth["true_s"] = program.ground_truth.size();
  truth["elements"] = program.num_elements();
  truth["grammar_sha256"] = program.source_grammar_digest;
  write_file(out / "truth.json", dump_json(truth));
  if (a.emit_c) write_file(out / "parser.c", codegen::export_c_source(program));
  std::cout << "parser: " << program.num_elements() << " elements, "
            << program.ground_truth.size() << " reachable, cyclomatic complexity "
            << codegen::cyclomatic_complexity(program) << "\n";
  return kExitOk;
}

struct FuzzArgs {
  std::string grammar;
  std::string label;
  std::size_t trials = 1;
  std::size_t seed_inputs = 64;
  int seed_depth = 12;
  std::size_t threads = 0;
  bool no_error_exits = false;
};

int cmd_fuzz(const Common& c, const FuzzArgs& a) {
  auto campaign = fuzzer::campaign_config_from_json(load_config(c.config));
  campaign.validate();
  if (a.trials == 0) throw ConfigError("--trials must be >= 1");
  const std::uint64_t master = c.seed.value_or(1);
  const auto [g, label] = load_grammar(a.grammar, a.label);
  codegen::CompileOptions options;
  options.count_error_exits = !a.no_error_exits;
  const auto program = codegen::compile_to_parser(g, label, options);
  if (campaign.dictionary.empty()) campaign.dictionary = g.terminals();
  const auto corpus = fuzzer::generate_seed_corpus(
      g, a.seed_inputs, a.seed_depth, derive_seed(master, "seeds"));
  const fs::path out = require_out(c, "fuzz");
  fs::create_directories(out);
  std::vector<std::string> failures(a.trials);
  parallel_for(a.trials, a.threads == 0 ? default_threads() : a.threads,
               [&](std::size_t k) {
                 try {
                   auto cc = campaign;
                   cc.trial_seed = fuzzer::trial_seed(master, k);
                   const auto log = fuzzer::run_campaign(program, corpus, cc);
                   write_file(out / (trial_name(k) + ".txt"),
                              incidence::write_sparse(incidence::build_incidence_matrix(log)));
                   write_file(out / (trial_name(k) + ".json"),
                              dump_json(fuzzer::campaign_summary(log, cc)));
                 } catch (const std::exception& e) {
                   failures[k] = e.what();
                 }
               });
  std::size_t failed = 0;
  for (std::size_t k = 0; k < failures.size(); ++k) {
    if (failures[k].empty()) continue;
    ++failed;
    spdlog::error("{}: {}", trial_name(k), failures[k]);
  }
  std::cout << "fuzz: " << a.trials - failed << " of " << a.trials
            << " trials written to " << out.string() << "\n";
  if (failed == 0) return kExitOk;
  return failed == a.trials ? kExitRuntimeFailure : kExitPartial;
}

struct RebinArgs {
  std::string in;
  std::size_t factor = 0;
  std::size_t unit_size = 0;
};

int cmd_rebin(const Common& c, const RebinArgs& a) {
  const auto m = load_incidence(a.in);
  std::size_t factor = a.factor;
  if (a.unit_size != 0) {
    if (factor != 0) throw ConfigError("give either --factor or --unit-size");
    factor = evaluation::merge_factors(m.unit_size(), {a.unit_size}).front();
  }
  if (factor == 0) throw ConfigError("--factor or --unit-size is required");
  const auto merged = incidence::rebin(m, factor);
  const fs::path out = require_out(c, "rebin");
  write_to(out, out.extension() == ".csv" ? incidence::write_dense_csv(merged)
                                          : incidence::write_sparse(merged));
  std::cout << "rebin: " << m.units() << " -> " << merged.units() << " units\n";
  return kExitOk;
}

struct EstimateArgs {
  std::string in;
  std::string methods = "all";
  double level = 0.90;
  std::size_t bootstrap = 500;
  std::string checkpoints;
};

int cmd_estimate(const Common& c, EstimateArgs a) {
  const Json j = load_config(c.config);
  for (const auto& [key, v] : j.items()) {
    if (key == "estimators") {
      a.methods = v.get<std::string>();
    } else if (key == "ci_level") {
      a.level = v.get<double>();
    } else if (key == "bootstrap_replicates") {
      a.bootstrap = v.get<std::size_t>();
    } else {
      throw ConfigError("unknown estimate key '" + key + "'");
    }
  }
  if (!(a.level >= 0.0 && a.level < 1.0)) throw ConfigError("--level must be in [0, 1)");
  const auto methods = estimators::parse_method_list(a.methods);
  const auto m = load_incidence(a.in);
  estimators::EstimatorOptions options;
  options.level = a.level;
  options.bootstrap_replicates = a.bootstrap;
  options.bootstrap_seed = c.seed.value_or(1);
  const auto checkpoints = a.checkpoints.empty()
                               ? std::vector<std::size_t>{m.units()}
                               : parse_sizes(a.checkpoints);
  auto record = estimate_checkpoints(m, checkpoints, methods, options);
  record.source = a.in;
  if (c.out.empty()) {
    std::cout << estimates_csv(record);
  } else if (fs::path(c.out).extension() == ".csv") {
    write_to(c.out, estimates_csv(record));
  } else {
    write_to(c.out, dump_json(to_json(record)));
  }
  return kExitOk;
}

struct EvaluateArgs {
  std::string truth;
  std::string estimates;
  std::string program = "input";
};

int cmd_evaluate(const Common& c, const EvaluateArgs& a) {
  const double true_s = read_true_richness(a.truth);
  std::vector<EstimateRecord> records;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.estimates)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ConfigError("no estimate files in " + a.estimates);
  for (std::size_t i = 0; i < files.size(); ++i) {
    auto r = estimate_record_from_json(parse_json(read_file(files[i]), files[i].string()));
    r.trial = i + 1;
    records.push_back(std::move(r));
  }
  const auto rows = accuracy_report(a.program, records, true_s);
  const fs::path out = require_out(c, "evaluate");
  write_to(out, out.extension() == ".json" ? dump_json(report_json(rows))
                                           : report_csv(rows));
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.n_failed;
  std::cout << "evaluate: " << records.size() << " trials, " << rows.size()
            << " rows, " << failed << " failed estimates\n";
  return kExitOk;
}

struct SensitivityArgs {
  std::string logs;
  std::string unit_sizes;
  std::string methods = "all";
  double alpha = 0.05;
  double level = 0.90;
  std::size_t bootstrap = 200;
  std::size_t threads = 0;
};

int cmd_sensitivity(const Common& c, const SensitivityArgs& a) {
  std::vector<incidence::IncidenceMatrix> trials;
  for (const auto& f : incidence_files(a.logs)) trials.push_back(load_incidence(f));
  if (trials.empty()) throw ConfigError("no incidence files in " + a.logs);
  const auto sizes = parse_sizes(a.unit_sizes);
  // Without a recorded unit size the sizes are merge factors.
  const auto factors = trials.front().unit_size() == 0
                           ? sizes
                           : evaluation::merge_factors(trials.front().unit_size(), sizes);
  evaluation::SensitivityConfig config;
  config.methods = estimators::parse_method_list(a.methods);
  config.alpha = a.alpha;
  config.estimator.level = a.level;
  config.estimator.bootstrap_replicates = a.bootstrap;
  config.estimator.bootstrap_seed = c.seed.value_or(1);
  config.threads = a.threads == 0 ? default_threads() : a.threads;
  std::vector<std::pair<std::string, evaluation::SensitivityVerdict>> rows;
  std::size_t reliable = 0;
  for (const auto& v : evaluation::sensitivity_analysis(trials, factors, config)) {
    reliable += v.reliable ? 1 : 0;
    rows.emplace_back("", v);
  }
  const std::string csv = verdicts_csv(rows);
  if (c.out.empty()) {
    std::cout << csv;
  } else {
    write_to(c.out, csv);
  }
  std::cerr << "sensitivity: " << reliable << " of " << rows.size()
            << " comparisons reliable\n";
  return kExitOk;
}

struct ImportArgs {
  std::string in;
  std::string schema = "sparse";
};

int cmd_import(const Common& c, const ImportArgs& a) {
  incidence::IncidenceMatrix m;
  if (a.schema == "sparse") {
    m = incidence::load_sparse(a.in);
  } else if (a.schema == "dense-csv") {
    m = incidence::read_dense_csv(read_file(a.in));
  } else {
    throw ConfigError("unknown schema '" + a.schema + "'");
  }
  const auto counts = incidence::frequency_counts(m);
  std::cout << "units " << m.units() << ", elements " << m.num_elements()
            << ", incidences " << m.total_incidences() << ", f1 " << counts.count(1)
            << ", f2 " << counts.count(2) << "\n";
  if (!c.out.empty()) {
    const fs::path out = c.out;
    write_to(out, out.extension() == ".csv" ? incidence::write_dense_csv(m)
                                            : incidence::write_sparse(m));
  }
  return kExitOk;
}

struct RunArgs {
  std::optional<std::size_t> threads;
};

int cmd_run(const Common& c, const RunArgs& a) {
  if (c.config.empty()) throw ConfigError("run needs --config");
  auto config = load_experiment_config(c.config);
  if (c.seed) config.master_seed = *c.seed;
  if (a.threads) config.threads = *a.threads;
  const fs::path out = require_out(c, "run");
  const auto outcome = run_experiment(config, out);
  std::cout << "run: " << outcome.stages_run << " stages run, "
            << outcome.stages_skipped << " up to date, " << outcome.failures.size()
            << " failed; manifest at " << (out / "manifest.json").string() << "\n";
  if (outcome.complete()) return kExitOk;
  return outcome.stages_run + outcome.stages_skipped > 0 ? kExitPartial
                                                         : kExitRuntimeFailure;
}

struct ReportArgs {
  std::string in;
};

// Reads a CSV into rows of fields (no quoting is ever produced).
std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.push_back(field);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string markdown_table(const std::vector<std::vector<std::string>>& rows,
                           const std::vector<std::string>& columns) {
  if (rows.empty()) return "(empty)\n";
  std::vector<std::size_t> index;
  for (const auto& col : columns) {
    const auto it = std::find(rows[0].begin(), rows[0].end(), col);
    if (it == rows[0].end()) throw ParseError("missing column '" + col + "'");
    index.push_back(static_cast<std::size_t>(it - rows[0].begin()));
  }
  std::ostringstream os;
  os << '|';
  for (const auto& col : columns) os << ' ' << col << " |";
  os << "\n|";
  for (std::size_t i = 0; i < columns.size(); ++i) os << "---|";
  os << '\n';
  for (std::size_t r = 1; r < rows.size(); ++r) {
    os << '|';
    for (auto i : index) os << ' ' << (i < rows[r].size() ? rows[r][i] : "") << " |";
    os << '\n';
  }
  return os.str();
}

int cmd_report(const Common& c, const ReportArgs& a) {
  const fs::path dir = a.in;
  const Json manifest = parse_json(read_file(dir / "manifest.json"), "manifest");
  std::ostringstream os;
  os << "# reachbench run report\n\n";
  os << "- version: " << manifest.value("version", "?") << "\n";
  os << "- master seed: " << manifest["config"].value("master_seed", 0) << "\n";
  os << "- complete: " << (manifest.value("complete", false) ? "yes" : "no") << "\n";
  os << "- artifacts: " << manifest["artifacts"].size() << "\n\n";
  os << "## Accuracy\n\n"
     << markdown_table(read_csv(dir / "report.csv"),
                       {"program", "estimator", "t", "true_s", "mean_estimate",
                        "mean_bias", "imprecision", "ci_coverage", "n_failed"});
  if (fs::exists(dir / "verdicts.csv")) {
    os << "\n## Unit-size sensitivity\n\n"
       << markdown_table(read_csv(dir / "verdicts.csv"),
                         {"program", "estimator", "r_a", "r_b", "mean_a", "mean_b",
                          "test", "p_value", "ci_overlap", "reliable", "inconclusive"});
  }
  if (c.out.empty()) {
    std::cout << os.str();
  } else {
    write_to(c.out, os.str());
  }
  return manifest.value("complete", false) ? kExitOk : kExitPartial;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Reachability benchmark workbench: grammars, parsers, fuzzing "
               "campaigns and richness estimators",
               "reachbench"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Common common;
  int code = kExitOk;
  std::function<int()> action;

  auto* gen_grammar = app.add_subcommand("gen-grammar", "Generate a random LL(1) grammar");
  add_common(gen_grammar, common);
  gen_grammar->callback([&] { action = [&] { return cmd_gen_grammar(common); }; });

  ParserArgs parser_args;
  auto* gen_parser = app.add_subcommand("gen-parser", "Compile a grammar to a parser program");
  add_common(gen_parser, common);
  gen_parser->add_option("--grammar", parser_args.grammar, "Grammar file")->required();
  gen_parser->add_option("--label", parser_args.label, "Label file (derived if omitted)");
  gen_parser->add_flag("--no-error-exits", parser_args.no_error_exits,
                       "Exclude error exits from the elements");
  gen_parser->add_flag("--emit-c", parser_args.emit_c, "Also write parser.c");
  gen_parser->callback([&] { action = [&] { return cmd_gen_parser(common, parser_args); }; });

  FuzzArgs fuzz_args;
  auto* fuzz = app.add_subcommand("fuzz", "Run fuzzing campaigns and write incidence data");
  add_common(fuzz, common);
  fuzz->add_option("--grammar", fuzz_args.grammar, "Grammar file")->required();
  fuzz->add_option("--label", fuzz_args.label, "Label file (derived if omitted)");
  fuzz->add_option("--trials", fuzz_args.trials, "Independent trials");
  fuzz->add_option("--seed-inputs", fuzz_args.seed_inputs, "Seed corpus size");
  fuzz->add_option("--seed-depth", fuzz_args.seed_depth, "Seed derivation depth");
  fuzz->add_option("--threads", fuzz_args.threads, "Workers (0 = all cores)");
  fuzz->add_flag("--no-error-exits", fuzz_args.no_error_exits,
                 "Exclude error exits from the elements");
  fuzz->callback([&] { action = [&] { return cmd_fuzz(common, fuzz_args); }; });

  RebinArgs rebin_args;
  auto* rebin = app.add_subcommand("rebin", "Merge consecutive sampling units");
  add_common(rebin, common);
  rebin->add_option("--in", rebin_args.in, "Incidence file")->required();
  rebin->add_option("--factor", rebin_args.factor, "Units per merged unit");
  rebin->add_option("--unit-size", rebin_args.unit_size, "Target unit size");
  rebin->callback([&] { action = [&] { return cmd_rebin(common, rebin_args); }; });

  EstimateArgs estimate_args;
  auto* estimate = app.add_subcommand("estimate", "Estimate richness from incidence data");
  add_common(estimate, common);
  estimate->add_option("--in", estimate_args.in, "Incidence file")->required();
  estimate->add_option("--estimators", estimate_args.methods, "'all' or a comma list");
  estimate->add_option("--level", estimate_args.level, "Confidence level");
  estimate->add_option("--bootstrap", estimate_args.bootstrap, "Bootstrap replicates");
  estimate->add_option("--checkpoints", estimate_args.checkpoints,
                       "Comma list of sampling points (default: all units)");
  estimate->callback([&] { action = [&] { return cmd_estimate(common, estimate_args); }; });

  EvaluateArgs evaluate_args;
  auto* evaluate = app.add_subcommand("evaluate", "Score estimates against ground truth");
  add_common(evaluate, common);
  evaluate->add_option("--truth", evaluate_args.truth, "truth.json or elements.tsv")
      ->required();
  evaluate->add_option("--estimates", evaluate_args.estimates, "Directory of estimate files")
      ->required();
  evaluate->add_option("--program", evaluate_args.program, "Program label");
  evaluate->callback([&] { action = [&] { return cmd_evaluate(common, evaluate_args); }; });

  SensitivityArgs sensitivity_args;
  auto* sensitivity = app.add_subcommand("sensitivity", "Compare estimates across unit sizes");
  add_common(sensitivity, common);
  sensitivity->add_option("--logs", sensitivity_args.logs, "Directory of incidence files")
      ->required();
  sensitivity->add_option("--unit-sizes", sensitivity_args.unit_sizes, "Comma list")
      ->required();
  sensitivity->add_option("--estimators", sensitivity_args.methods, "'all' or a comma list");
  sensitivity->add_option("--alpha", sensitivity_args.alpha, "Test level");
  sensitivity->add_option("--level", sensitivity_args.level, "Confidence level");
  sensitivity->add_option("--bootstrap", sensitivity_args.bootstrap, "Bootstrap replicates");
  sensitivity->add_option("--threads", sensitivity_args.threads, "Workers (0 = all cores)");
  sensitivity->callback(
      [&] { action = [&] { return cmd_sensitivity(common, sensitivity_args); }; });

  ImportArgs import_args;
  auto* import = app.add_subcommand("import-incidence", "Validate external incidence data");
  add_common(import, common);
  import->add_option("--in", import_args.in, "Input file")->required();
  import->add_option("--schema", import_args.schema, "sparse or dense-csv")
      ->check(CLI::IsMember({"sparse", "dense-csv"}));
  import->callback([&] { action = [&] { return cmd_import(common, import_args); }; });

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run the full experiment pipeline");
  add_common(run, common);
  run->add_option("--threads", run_args.threads, "Workers (0 = all cores)");
  run->callback([&] { action = [&] { return cmd_run(common, run_args); }; });

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Summarize a run directory as markdown");
  add_common(report, common);
  report->add_option("--in", report_args.in, "Run directory")->required();
  report->callback([&] { action = [&] { return cmd_report(common, report_args); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }
  spdlog::set_level(common.verbose ? spdlog::level::debug
                    : common.quiet ? spdlog::level::err
                                   : spdlog::level::warn);
  try {
    code = action();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeFailure;
  }
  return code;
}

}  // namespace reachbench::cli

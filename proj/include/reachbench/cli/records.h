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

#ifndef REACHBENCH_CLI_RECORDS_H_
#define REACHBENCH_CLI_RECORDS_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "reachbench/estimators/estimators.h"
#include "reachbench/evaluation/metrics.h"
#include "reachbench/evaluation/sensitivity.h"
#include "reachbench/util/json.h"

namespace reachbench::cli {

// Estimates of one incidence matrix at one sampling point t.
struct Checkpoint {
  std::size_t t = 0;
  std::size_t s_obs = 0;
  std::vector<estimators::EstimateWithCI> estimates;
};

// Contents of one estimates file.
struct EstimateRecord {
  std::string source;  // incidence file the estimates came from
  std::size_t trial = 1;
  std::uint64_t unit_size = 0;
  std::vector<Checkpoint> checkpoints;
};

// NaN values are written as null and read back as NaN.
Json to_json(const estimators::EstimateWithCI& e);
estimators::EstimateWithCI estimate_from_json(const Json& j);
Json to_json(const EstimateRecord& record);
EstimateRecord estimate_record_from_json(const Json& j);

// Sampling points t_max/8, t_max/4, t_max/2, t_max, skipping those below 2
// and duplicates, ascending.
std::vector<std::size_t> default_checkpoints(std::size_t t_max);

// Estimates the first t units of `matrix` for each requested t.
EstimateRecord estimate_checkpoints(const incidence::IncidenceMatrix& matrix,
                                    const std::vector<std::size_t>& checkpoints,
                                    const std::vector<estimators::Method>& methods,
                                    const estimators::EstimatorOptions& options);

// One row of the accuracy report.
struct ReportRow {
  std::string program;
  estimators::Method method = estimators::Method::kChao2;
  std::size_t t = 0;
  double true_s = 0;
  std::size_t trials = 0;
  std::size_t n_failed = 0;
  double mean_estimate = estimators::kNaN;
  double mean_bias = estimators::kNaN;
  double imprecision = estimators::kNaN;  // NaN = not available (K < 2)
  double ci_coverage = estimators::kNaN;
};

// Aggregates per (method, t) over the records of one program.
std::vector<ReportRow> accuracy_report(const std::string& program,
                                       const std::vector<EstimateRecord>& records,
                                       double true_s);

std::string report_csv(const std::vector<ReportRow>& rows);
Json report_json(const std::vector<ReportRow>& rows);

// `program` labels the rows; may be empty.
std::string verdicts_csv(const std::vector<std::pair<std::string,
                             evaluation::SensitivityVerdict>>& verdicts);

// Number of ground-truth elements from a run's truth.json ({"true_s": n})
// or from an element manifest (TSV with a ground_truth column).
double read_true_richness(const std::filesystem::path& path);

// Incidence files are sparse unless the extension is .csv.
incidence::IncidenceMatrix load_incidence(const std::filesystem::path& path);

}  // namespace reachbench::cli

#endif  // REACHBENCH_CLI_RECORDS_H_

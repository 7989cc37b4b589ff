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

#include "reachbench/cli/records.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "reachbench/util/digest.h"
#include "reachbench/util/error.h"

namespace reachbench::cli {

namespace {

using estimators::EstimateWithCI;
using estimators::kNaN;

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_of(const Json& j) {
  if (j.is_null()) return kNaN;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    return kNaN;
  }
  return j.get<double>();
}

Json infinite_aware(double v) {
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  return number(v);
}

std::string cell(double v) {
  if (std::isnan(v)) return "n/a";
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

Json to_json(const EstimateWithCI& e) {
  Json j;
  j["method"] = std::string(estimators::method_name(e.method));
  j["status"] = std::string(estimators::status_name(e.status));
  j["point"] = number(e.point);
  j["ci_low"] = infinite_aware(e.ci_low);
  j["ci_high"] = infinite_aware(e.ci_high);
  j["ci_method"] = e.ci_method;
  if (!e.message.empty()) j["message"] = e.message;
  Json diag = Json::object();
  for (const auto& [key, value] : e.diagnostics) diag[key] = infinite_aware(value);
  j["diagnostics"] = diag;
  return j;
}

EstimateWithCI estimate_from_json(const Json& j) {
  EstimateWithCI e;
  const auto name = require(j, "method", "estimate").get<std::string>();
  const auto method = estimators::parse_method(name);
  if (!method) throw ParseError("unknown estimator '" + name + "'");
  e.method = *method;
  const auto status = require(j, "status", "estimate").get<std::string>();
  if (status == estimators::status_name(estimators::Status::kOk)) {
    e.status = estimators::Status::kOk;
  } else if (status == estimators::status_name(estimators::Status::kDegenerateFallback)) {
    e.status = estimators::Status::kDegenerateFallback;
  } else if (status == estimators::status_name(estimators::Status::kFailed)) {
    e.status = estimators::Status::kFailed;
  } else {
    throw ParseError("unknown estimate status '" + status + "'");
  }
  e.point = number_of(require(j, "point", "estimate"));
  e.ci_low = number_of(require(j, "ci_low", "estimate"));
  e.ci_high = number_of(require(j, "ci_high", "estimate"));
  e.ci_method = j.value("ci_method", std::string("none"));
  e.message = j.value("message", std::string());
  if (j.contains("diagnostics")) {
    for (const auto& [key, value] : j.at("diagnostics").items()) {
      e.diagnostics.emplace_back(key, number_of(value));
    }
  }
  return e;
}

Json to_json(const EstimateRecord& record) {
  Json j;
  j["source"] = record.source;
  j["trial"] = record.trial;
  j["unit_size"] = record.unit_size;
  Json cps = Json::array();
  for (const auto& cp : record.checkpoints) {
    Json c;
    c["t"] = cp.t;
    c["s_obs"] = cp.s_obs;
    Json es = Json::array();
    for (const auto& e : cp.estimates) es.push_back(to_json(e));
    c["estimates"] = es;
    cps.push_back(c);
  }
  j["checkpoints"] = cps;
  return j;
}

EstimateRecord estimate_record_from_json(const Json& j) {
  EstimateRecord r;
  r.source = j.value("source", std::string());
  r.trial = j.value("trial", std::size_t{1});
  r.unit_size = j.value("unit_size", std::uint64_t{0});
  for (const Json& c : require(j, "checkpoints", "estimates file")) {
    Checkpoint cp;
    cp.t = require(c, "t", "checkpoint").get<std::size_t>();
    cp.s_obs = c.value("s_obs", std::size_t{0});
    for (const Json& e : require(c, "estimates", "checkpoint")) {
      cp.estimates.push_back(estimate_from_json(e));
    }
    r.checkpoints.push_back(std::move(cp));
  }
  return r;
}

std::vector<std::size_t> default_checkpoints(std::size_t t_max) {
  std::vector<std::size_t> out;
  for (std::size_t d : {8, 4, 2, 1}) {
    const std::size_t t = t_max / d;
    if (t >= 2 && (out.empty() || out.back() != t)) out.push_back(t);
  }
  return out;
}

EstimateRecord estimate_checkpoints(const incidence::IncidenceMatrix& matrix,
                                    const std::vector<std::size_t>& checkpoints,
                                    const std::vector<estimators::Method>& methods,
                                    const estimators::EstimatorOptions& options) {
  EstimateRecord record;
  record.unit_size = matrix.unit_size();
  for (std::size_t t : checkpoints) {
    if (t > matrix.units()) {
      throw ConfigError("checkpoint t=" + std::to_string(t) + " exceeds " +
                        std::to_string(matrix.units()) + " units");
    }
    const auto head =
        t == matrix.units() ? matrix : incidence::first_units(matrix, t);
    Checkpoint cp;
    cp.t = t;
    cp.s_obs = head.num_elements();
    cp.estimates = estimators::estimate_all(head, methods, options);
    record.checkpoints.push_back(std::move(cp));
  }
  return record;
}

std::vector<ReportRow> accuracy_report(const std::string& program,
                                       const std::vector<EstimateRecord>& records,
                                       double true_s) {
  std::map<std::pair<std::size_t, std::size_t>,
           std::vector<evaluation::TrialResult>> groups;  // (t, method index)
  std::map<std::pair<std::size_t, std::size_t>, estimators::Method> methods;
  for (const auto& record : records) {
    for (const auto& cp : record.checkpoints) {
      for (std::size_t q = 0; q < cp.estimates.size(); ++q) {
        const auto& e = cp.estimates[q];
        const std::pair key{cp.t, static_cast<std::size_t>(e.method)};
        groups[key].push_back(
            evaluation::TrialResult::from_estimate(record.trial, cp.t, e, true_s));
        methods[key] = e.method;
      }
    }
  }
  std::vector<ReportRow> rows;
  for (const auto& [key, results] : groups) {
    ReportRow row;
    row.program = program;
    row.method = methods[key];
    row.t = key.first;
    row.true_s = true_s;
    row.trials = results.size();
    row.n_failed = evaluation::count_failed(results);
    const std::size_t usable = row.trials - row.n_failed;
    if (usable > 0) {
      double sum = 0;
      for (const auto& r : results) sum += r.failed() ? 0.0 : r.point;
      row.mean_estimate = sum / static_cast<double>(usable);
      if (true_s > 0) row.mean_bias = evaluation::mean_bias(results, true_s);
    }
    if (usable >= 2 && true_s > 0) {
      row.imprecision = evaluation::imprecision(results, true_s);
    }
    row.ci_coverage = evaluation::ci_coverage(results, true_s).proportion;
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::pair{static_cast<int>(a.method), a.t} <
           std::pair{static_cast<int>(b.method), b.t};
  });
  return rows;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "program,estimator,t,true_s,trials,mean_estimate,mean_bias,imprecision,"
        "ci_coverage,n_failed\n";
  for (const auto& r : rows) {
    os << r.program << ',' << estimators::method_name(r.method) << ',' << r.t << ','
       << cell(r.true_s) << ',' << r.trials << ',' << cell(r.mean_estimate) << ','
       << cell(r.mean_bias) << ',' << cell(r.imprecision) << ','
       << cell(r.ci_coverage) << ',' << r.n_failed << '\n';
  }
  return os.str();
}

Json report_json(const std::vector<ReportRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["program"] = r.program;
    j["estimator"] = std::string(estimators::method_name(r.method));
    j["t"] = r.t;
    j["true_s"] = r.true_s;
    j["trials"] = r.trials;
    j["mean_estimate"] = number(r.mean_estimate);
    j["mean_bias"] = number(r.mean_bias);
    j["imprecision"] = std::isnan(r.imprecision) ? Json("n/a") : Json(r.imprecision);
    j["ci_coverage"] = number(r.ci_coverage);
    j["n_failed"] = r.n_failed;
    out.push_back(j);
  }
  return out;
}

std::string verdicts_csv(
    const std::vector<std::pair<std::string, evaluation::SensitivityVerdict>>& verdicts) {
  std::ostringstream os;
  os << "program,estimator,r_a,r_b,mean_a,ci_low_a,ci_high_a,mean_b,ci_low_b,"
        "ci_high_b,failed_a,failed_b,test,statistic,p_value,ci_overlap,"
        "intervals_intersect,reliable,inconclusive\n";
  for (const auto& [program, v] : verdicts) {
    const auto r = [](const evaluation::BinningSummary& s) {
      return s.unit_size != 0 ? s.unit_size : s.merge_factor;
    };
    os << program << ',' << estimators::method_name(v.method) << ',' << r(v.a)
       << ',' << r(v.b) << ',' << cell(v.a.mean) << ',' << cell(v.a.mean_ci_low)
       << ',' << cell(v.a.mean_ci_high) << ',' << cell(v.b.mean) << ','
       << cell(v.b.mean_ci_low) << ',' << cell(v.b.mean_ci_high) << ','
       << v.a.failed << ',' << v.b.failed << ',' << evaluation::test_name(v.test)
       << ',' << cell(v.statistic) << ',' << cell(v.p_value) << ','
       << flag(v.ci_overlap) << ',' << flag(v.intervals_intersect) << ','
       << flag(v.reliable) << ',' << flag(v.inconclusive) << '\n';
  }
  return os.str();
}

double read_true_richness(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return require(parse_json(text, path.string()), "true_s", path.string())
        .get<double>();
  }
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty truth manifest");
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string field;
    while (std::getline(h, field, '\t')) header.push_back(field);
  }
  const auto column = std::find(header.begin(), header.end(), "ground_truth");
  if (column == header.end()) {
    throw ParseError("truth manifest has no ground_truth column", 1);
  }
  const auto index = static_cast<std::size_t>(column - header.begin());
  double count = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    for (std::size_t i = 0; i <= index; ++i) {
      if (!std::getline(row, field, '\t')) {
        throw ParseError("missing ground_truth field", line_no);
      }
    }
    if (field == "1") {
      count += 1;
    } else if (field != "0") {
      throw ParseError("ground_truth must be 0 or 1", line_no);
    }
  }
  return count;
}

incidence::IncidenceMatrix load_incidence(const std::filesystem::path& path) {
  if (path.extension() == ".csv") return incidence::read_dense_csv(read_file(path));
  return incidence::load_sparse(path);
}

}  // namespace reachbench::cli

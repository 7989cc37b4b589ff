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

#ifndef REACHBENCH_INCIDENCE_INCIDENCE_H_
#define REACHBENCH_INCIDENCE_INCIDENCE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "reachbench/fuzzer/campaign.h"

namespace reachbench::incidence {

using ElementId = std::uint32_t;

// Sparse binary element-by-unit matrix. Rows are kept in ascending element
// id order and hold the ascending unit indices where the element occurs.
class IncidenceMatrix {
 public:
  IncidenceMatrix() = default;
  // Builds from unit columns; ids inside a unit may repeat or be unsorted.
  explicit IncidenceMatrix(const std::vector<std::vector<ElementId>>& units,
                           std::uint64_t unit_size = 0);

  std::size_t units() const { return t_; }
  // Executions per unit, 0 when unknown (imported data).
  std::uint64_t unit_size() const { return unit_size_; }
  std::size_t num_elements() const { return ids_.size(); }
  const std::vector<ElementId>& element_ids() const { return ids_; }
  const std::vector<std::uint32_t>& row(std::size_t i) const { return rows_[i]; }
  bool at(std::size_t i, std::size_t j) const;
  std::uint64_t total_incidences() const;
  std::vector<std::vector<ElementId>> columns() const;

  friend bool operator==(const IncidenceMatrix&, const IncidenceMatrix&) = default;

 private:
  std::size_t t_ = 0;
  std::uint64_t unit_size_ = 0;
  std::vector<ElementId> ids_;
  std::vector<std::vector<std::uint32_t>> rows_;
};

struct FrequencyCounts {
  std::size_t t = 0;
  std::vector<std::uint64_t> f;  // f[k] for k = 0..t; f[0] is always 0
  std::uint64_t s_obs = 0;
  std::vector<std::uint32_t> y;  // incidence frequency per observed element
  // Per-unit statistics, empty when built from frequencies alone: the number
  // of singleton elements in each unit and the smallest Y_i among the unit's
  // elements (0 for an empty unit).
  std::vector<std::uint32_t> unit_singletons;
  std::vector<std::uint32_t> unit_min_y;

  std::uint64_t count(std::size_t k) const { return k < f.size() ? f[k] : 0; }
  // Builds counts from f_1..f_t given as f_k at index k - 1.
  static FrequencyCounts from_frequencies(std::size_t t,
                                          const std::vector<std::uint64_t>& f);
};

// Throws ConfigError on an empty log.
IncidenceMatrix build_incidence_matrix(const fuzzer::CampaignLog& log);
FrequencyCounts frequency_counts(const IncidenceMatrix& matrix);
// ORs consecutive blocks of m units. Trailing units that do not fill a block
// are dropped with a warning. Throws ConfigError for m == 0 or m > t.
IncidenceMatrix rebin(const IncidenceMatrix& matrix, std::size_t m);
// The first t units. Throws ConfigError for t == 0 or t > units().
IncidenceMatrix first_units(const IncidenceMatrix& matrix, std::size_t t);
std::uint64_t observed_richness(const FrequencyCounts& counts);
// True iff f_2 >= f_1.
bool saturation_indicator(const FrequencyCounts& counts);

// Sparse text format: a "reachbench-incidence v1" header, "units <t>", an
// optional "unit-size <r>", then one "<unit> <id>..." record per unit.
// Records for empty units may be omitted on input; '#' starts a comment.
std::string write_sparse(const IncidenceMatrix& matrix);
IncidenceMatrix read_sparse(std::string_view text);
IncidenceMatrix load_sparse(const std::filesystem::path& path);

// Dense CSV: header "element,0,1,...", one row per element.
std::string write_dense_csv(const IncidenceMatrix& matrix);
IncidenceMatrix read_dense_csv(std::string_view text);

}  // namespace reachbench::incidence

#endif  // REACHBENCH_INCIDENCE_INCIDENCE_H_

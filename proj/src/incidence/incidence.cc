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

#include "reachbench/incidence/incidence.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

#include <spdlog/spdlog.h>

#include "reachbench/util/digest.h"
#include "reachbench/util/error.h"

namespace reachbench::incidence {
namespace {

constexpr std::string_view kSparseHeader = "reachbench-incidence v1";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  if (sep == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      if (j > i) out.push_back(line.substr(i, j - i));
      i = j;
    }
    return out;
  }
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = line.find(sep, start);
    out.push_back(line.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

std::uint64_t parse_uint(std::string_view s, std::size_t line,
                         std::string_view what) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("expected a non-negative integer for " + std::string(what) +
                         ", got '" + std::string(s) + "'",
                     line);
  }
  return v;
}

std::vector<std::pair<std::size_t, std::string_view>> lines_of(
    std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t n = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++n;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.emplace_back(n, line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

IncidenceMatrix::IncidenceMatrix(
    const std::vector<std::vector<ElementId>>& units, std::uint64_t unit_size)
    : t_(units.size()), unit_size_(unit_size) {
  std::map<ElementId, std::vector<std::uint32_t>> rows;
  for (std::size_t j = 0; j < units.size(); ++j) {
    for (ElementId id : units[j]) {
      auto& r = rows[id];
      if (r.empty() || r.back() != j) r.push_back(static_cast<std::uint32_t>(j));
    }
  }
  ids_.reserve(rows.size());
  rows_.reserve(rows.size());
  for (auto& [id, r] : rows) {
    ids_.push_back(id);
    rows_.push_back(std::move(r));
  }
}

bool IncidenceMatrix::at(std::size_t i, std::size_t j) const {
  const auto& r = rows_.at(i);
  return std::binary_search(r.begin(), r.end(), static_cast<std::uint32_t>(j));
}

std::uint64_t IncidenceMatrix::total_incidences() const {
  std::uint64_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::vector<std::vector<ElementId>> IncidenceMatrix::columns() const {
  std::vector<std::vector<ElementId>> cols(t_);
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    for (auto j : rows_[i]) cols[j].push_back(ids_[i]);
  }
  return cols;
}

FrequencyCounts FrequencyCounts::from_frequencies(
    std::size_t t, const std::vector<std::uint64_t>& f) {
  if (f.size() > t) {
    throw ConfigError("frequency counts beyond k = t were given");
  }
  FrequencyCounts c;
  c.t = t;
  c.f.assign(t + 1, 0);
  for (std::size_t k = 1; k <= f.size(); ++k) {
    c.f[k] = f[k - 1];
    c.s_obs += f[k - 1];
    c.y.insert(c.y.end(), f[k - 1], static_cast<std::uint32_t>(k));
  }
  return c;
}

IncidenceMatrix build_incidence_matrix(const fuzzer::CampaignLog& log) {
  if (log.unit_coverage.empty()) {
    throw ConfigError("campaign log has no sampling units");
  }
  return IncidenceMatrix(log.unit_coverage, log.unit_size);
}

FrequencyCounts frequency_counts(const IncidenceMatrix& m) {
  FrequencyCounts c;
  c.t = m.units();
  c.f.assign(c.t + 1, 0);
  c.y.reserve(m.num_elements());
  for (std::size_t i = 0; i < m.num_elements(); ++i) {
    const auto y = static_cast<std::uint32_t>(m.row(i).size());
    c.y.push_back(y);
    ++c.f[y];
    ++c.s_obs;
  }
  c.unit_singletons.assign(c.t, 0);
  c.unit_min_y.assign(c.t, 0);
  for (std::size_t i = 0; i < m.num_elements(); ++i) {
    const auto y = c.y[i];
    for (auto j : m.row(i)) {
      if (y == 1) ++c.unit_singletons[j];
      if (c.unit_min_y[j] == 0 || y < c.unit_min_y[j]) c.unit_min_y[j] = y;
    }
  }
  return c;
}

IncidenceMatrix rebin(const IncidenceMatrix& m, std::size_t factor) {
  if (factor == 0) throw ConfigError("merge factor must be >= 1");
  if (factor > m.units()) {
    throw ConfigError("merge factor " + std::to_string(factor) +
                      " exceeds unit count " + std::to_string(m.units()));
  }
  const std::size_t t = m.units() / factor;
  if (m.units() % factor != 0) {
    spdlog::warn("rebin by {} drops {} trailing unit(s) of {}", factor,
                 m.units() % factor, m.units());
  }
  std::vector<std::vector<ElementId>> units(t);
  for (std::size_t i = 0; i < m.num_elements(); ++i) {
    for (auto j : m.row(i)) {
      const std::size_t merged = j / factor;
      if (merged >= t) break;
      auto& u = units[merged];
      if (u.empty() || u.back() != m.element_ids()[i]) {
        u.push_back(m.element_ids()[i]);
      }
    }
  }
  return IncidenceMatrix(units, m.unit_size() * factor);
}

IncidenceMatrix first_units(const IncidenceMatrix& m, std::size_t t) {
  if (t == 0 || t > m.units()) {
    throw ConfigError("cannot take " + std::to_string(t) + " of " +
                      std::to_string(m.units()) + " units");
  }
  std::vector<std::vector<ElementId>> units(t);
  for (std::size_t i = 0; i < m.num_elements(); ++i) {
    for (auto j : m.row(i)) {
      if (j >= t) break;
      units[j].push_back(m.element_ids()[i]);
    }
  }
  return IncidenceMatrix(units, m.unit_size());
}

std::uint64_t observed_richness(const FrequencyCounts& counts) {
  std::uint64_t s = 0;
  for (std::size_t k = 1; k < counts.f.size(); ++k) s += counts.f[k];
  return s;
}

bool saturation_indicator(const FrequencyCounts& counts) {
  return counts.count(2) >= counts.count(1);
}

std::string write_sparse(const IncidenceMatrix& m) {
  std::ostringstream out;
  out << kSparseHeader << "\nunits " << m.units() << "\n";
  if (m.unit_size() != 0) out << "unit-size " << m.unit_size() << "\n";
  const auto cols = m.columns();
  for (std::size_t j = 0; j < cols.size(); ++j) {
    out << j;
    for (auto id : cols[j]) out << ' ' << id;
    out << '\n';
  }
  return out.str();
}

IncidenceMatrix read_sparse(std::string_view text) {
  std::size_t t = 0;
  bool have_units = false;
  bool have_header = false;
  std::uint64_t unit_size = 0;
  std::vector<std::vector<ElementId>> units;
  std::int64_t last_unit = -1;
  for (const auto& [n, raw] : lines_of(text)) {
    std::string_view line = raw.substr(0, raw.find('#'));
    const auto fields = split(line, ' ');
    if (fields.empty()) continue;
    if (!have_header) {
      if (fields.size() != 2 || fields[0] != "reachbench-incidence" ||
          fields[1] != "v1") {
        throw ParseError("expected header '" + std::string(kSparseHeader) + "'",
                         n);
      }
      have_header = true;
      continue;
    }
    if (fields[0] == "units") {
      if (have_units || fields.size() != 2) {
        throw ParseError("malformed 'units' line", n);
      }
      t = parse_uint(fields[1], n, "units");
      if (t == 0) throw ParseError("units must be positive", n);
      units.assign(t, {});
      have_units = true;
      continue;
    }
    if (fields[0] == "unit-size") {
      if (!have_units || fields.size() != 2 || last_unit >= 0) {
        throw ParseError("'unit-size' must follow 'units' and precede records",
                         n);
      }
      unit_size = parse_uint(fields[1], n, "unit-size");
      continue;
    }
    if (!have_units) throw ParseError("record before 'units' line", n);
    const std::uint64_t j = parse_uint(fields[0], n, "unit index");
    if (j >= t) {
      throw ParseError("unit index " + std::to_string(j) + " out of range", n);
    }
    if (static_cast<std::int64_t>(j) <= last_unit) {
      throw ParseError("unit indices must be strictly increasing", n);
    }
    last_unit = static_cast<std::int64_t>(j);
    auto& u = units[j];
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const std::uint64_t id = parse_uint(fields[k], n, "element id");
      if (id > UINT32_MAX) throw ParseError("element id out of range", n);
      u.push_back(static_cast<ElementId>(id));
    }
    std::sort(u.begin(), u.end());
    if (std::adjacent_find(u.begin(), u.end()) != u.end()) {
      throw ParseError("duplicate element id in unit record", n);
    }
  }
  if (!have_header) throw ParseError("empty incidence file");
  if (!have_units) throw ParseError("missing 'units' line");
  return IncidenceMatrix(units, unit_size);
}

IncidenceMatrix load_sparse(const std::filesystem::path& path) {
  try {
    return read_sparse(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string write_dense_csv(const IncidenceMatrix& m) {
  std::string out = "element";
  for (std::size_t j = 0; j < m.units(); ++j) out += "," + std::to_string(j);
  out += '\n';
  std::string row;
  for (std::size_t i = 0; i < m.num_elements(); ++i) {
    row.assign(std::to_string(m.element_ids()[i]));
    std::vector<char> bits(m.units(), '0');
    for (auto j : m.row(i)) bits[j] = '1';
    for (char b : bits) {
      row += ',';
      row += b;
    }
    out += row;
    out += '\n';
  }
  return out;
}

IncidenceMatrix read_dense_csv(std::string_view text) {
  std::size_t t = 0;
  bool header = false;
  std::vector<std::vector<ElementId>> units;
  std::vector<ElementId> seen;
  for (const auto& [n, line] : lines_of(text)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (!header) {
      if (cells.empty() || cells[0] != "element") {
        throw ParseError("expected header starting with 'element'", n);
      }
      t = cells.size() - 1;
      for (std::size_t j = 0; j < t; ++j) {
        if (parse_uint(cells[j + 1], n, "unit header") != j) {
          throw ParseError("unit headers must be 0, 1, ...", n);
        }
      }
      units.assign(t, {});
      header = true;
      continue;
    }
    if (cells.size() != t + 1) {
      throw ParseError("expected " + std::to_string(t + 1) + " cells", n);
    }
    const std::uint64_t id = parse_uint(cells[0], n, "element id");
    if (id > UINT32_MAX) throw ParseError("element id out of range", n);
    seen.push_back(static_cast<ElementId>(id));
    for (std::size_t j = 0; j < t; ++j) {
      const std::uint64_t v = parse_uint(cells[j + 1], n, "incidence");
      if (v > 1) throw ParseError("incidence entries must be 0 or 1", n, j + 2);
      if (v == 1) units[j].push_back(static_cast<ElementId>(id));
    }
  }
  if (!header) throw ParseError("empty incidence csv");
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw ParseError("duplicate element id in csv");
  }
  return IncidenceMatrix(units);
}

}  // namespace reachbench::incidence

// Copyright 2026 The mrref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mrref/scorer.h"

#include <set>
#include <unordered_map>
#include <unordered_set>

#include "mrref/errors.h"
#include "text_util.h"

namespace mrref {

namespace {

// Cell index per element, with elements of `other` that `cells` lacks added
// as singletons.
std::unordered_map<std::string, std::size_t> CellIndex(
    const std::vector<std::vector<std::string>> &cells,
    const std::vector<std::vector<std::string>> &other) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (const std::string &id : cells[c]) index.emplace(id, c);
  }
  std::size_t next = cells.size();
  for (const auto &cell : other) {
    for (const std::string &id : cell) {
      if (index.emplace(id, next).second) ++next;
    }
  }
  return index;
}

struct LinkCount {
  std::size_t links = 0;      // sum |S| - 1
  std::size_t recovered = 0;  // sum |S| - |p(S)|
};

// Links of `cells` and how many survive the cut by `other_index`.
LinkCount CountLinks(
    const std::vector<std::vector<std::string>> &cells,
    const std::unordered_map<std::string, std::size_t> &other_index) {
  LinkCount count;
  for (const auto &cell : cells) {
    std::unordered_set<std::size_t> parts;
    for (const std::string &id : cell) parts.insert(other_index.at(id));
    count.links += cell.size() - 1;
    count.recovered += cell.size() - parts.size();
  }
  return count;
}

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ScoreReport MucScore(const Partition &key, const Partition &response) {
  const auto &k = key.cells();
  const auto &r = response.cells();
  auto key_index = CellIndex(k, r);
  auto response_index = CellIndex(r, k);

  // Elements absent from a side count as singletons there, which add no
  // links, so only the original cells need to be walked.
  LinkCount key_side = CountLinks(k, response_index);
  LinkCount response_side = CountLinks(r, key_index);

  ScoreReport report;
  report.key_links = key_side.links;
  report.response_links = response_side.links;
  report.missing_links = key_side.links - key_side.recovered;
  report.wrong_links = response_side.links - response_side.recovered;
  report.recall = Ratio(key_side.recovered, key_side.links);
  report.precision = Ratio(response_side.recovered, response_side.links);
  double sum = report.recall + report.precision;
  report.f1 = sum == 0 ? 0.0 : 2 * report.recall * report.precision / sum;
  return report;
}

ScoreReport MucScore(const std::vector<std::vector<std::string>> &key,
                     const std::vector<std::vector<std::string>> &response) {
  return MucScore(Partition(key), Partition(response));
}

const std::vector<Metric> &BuiltinMetrics() {
  static const std::vector<Metric> metrics = {
      {"muc", [](const Partition &k, const Partition &r) { return MucScore(k, r); }}};
  return metrics;
}

const Metric &FindMetric(std::string_view name) {
  for (const Metric &m : BuiltinMetrics()) {
    if (m.name == name) return m;
  }
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

std::string ReportCsv(
    const std::vector<std::pair<std::string, ScoreReport>> &reports) {
  std::string out = "label,recall,precision,f1\n";
  std::set<std::string> seen;
  for (const auto &[label, r] : reports) {
    if (label.empty() || label.find_first_of(",\n\"") != std::string::npos) {
      throw ValidationError("bad report label '" + label + "'");
    }
    if (!seen.insert(label).second) {
      throw ValidationError("duplicate report label '" + label + "'");
    }
    out += label + "," + text::FormatFixed2(r.recall) + "," +
           text::FormatFixed2(r.precision) + "," + text::FormatFixed2(r.f1) +
           "\n";
  }
  return out;
}

CsvTable ParseCsv(std::string_view text) {
  CsvTable table;
  std::size_t line_no = 0;
  bool header = true;
  while (!text.empty()) {
    std::size_t nl = text.find('\n');
    if (nl == std::string_view::npos) {
      throw ParseError(line_no + 1, "missing final newline");
    }
    std::string_view line = text.substr(0, nl);
    text = text.substr(nl + 1);
    ++line_no;
    if (line.find('"') != std::string_view::npos ||
        line.find('\r') != std::string_view::npos) {
      throw ParseError(line_no, "quotes and carriage returns are not allowed");
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      fields.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (header) {
      table.header = std::move(fields);
      header = false;
    } else {
      if (fields.size() != table.header.size()) {
        throw ParseError(line_no, "row width differs from header");
      }
      table.rows.push_back(std::move(fields));
    }
  }
  if (header) throw ParseError(0, "empty CSV");
  return table;
}

}  // namespace mrref

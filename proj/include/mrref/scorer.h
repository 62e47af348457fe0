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

// Link-based (MUC) scoring of a response partition against a key.

#ifndef MRREF_SCORER_H_
#define MRREF_SCORER_H_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrref/partition.h"

namespace mrref {

struct ScoreReport {
  double recall = 1.0;
  double precision = 1.0;
  double f1 = 1.0;
  std::size_t key_links = 0;       // sum over key cells of |S| - 1
  std::size_t response_links = 0;  // same over response cells
  std::size_t missing_links = 0;   // key links absent from the response
  std::size_t wrong_links = 0;     // response links absent from the key

  bool operator==(const ScoreReport &) const = default;
};

// Recall is sum(|S| - |p(S)|) / sum(|S| - 1) over key cells S, where p(S) is
// S cut by the response cells; precision swaps key and response. Elements
// missing from one side are added to it as singletons, and a zero
// denominator scores 1.0. Throws ValidationError if either partition has
// overlapping cells.
ScoreReport MucScore(const Partition &key, const Partition &response);

// Same, over raw cells (validated first).
ScoreReport MucScore(const std::vector<std::vector<std::string>> &key,
                     const std::vector<std::vector<std::string>> &response);

// A named scoring function; MUC is the only built-in one.
struct Metric {
  std::string name;
  std::function<ScoreReport(const Partition &, const Partition &)> score;
};

const std::vector<Metric> &BuiltinMetrics();
// Throws ConfigError for an unknown name.
const Metric &FindMetric(std::string_view name);

// CSV with header `label,recall,precision,f1`, scores to two decimals.
// Throws ValidationError on duplicate labels.
std::string ReportCsv(const std::vector<std::pair<std::string, ScoreReport>> &reports);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Strict reader for the CSV files this library writes: no quoting, every row
// as wide as the header. Throws ParseError otherwise.
CsvTable ParseCsv(std::string_view text);

}  // namespace mrref

#endif  // MRREF_SCORER_H_

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

#include "mrref/partition.h"

#include <unordered_set>
#include <utility>

#include "mrref/errors.h"

namespace mrref {

Partition::Partition(std::vector<std::vector<std::string>> cells)
    : cells_(std::move(cells)) {
  std::unordered_set<std::string> seen;
  for (const auto &cell : cells_) {
    if (cell.empty()) throw ValidationError("partition has an empty cell");
    for (const std::string &id : cell) {
      if (!seen.insert(id).second) {
        throw ValidationError("element " + id + " is in more than one cell");
      }
    }
  }
}

Partition Partition::FromKey(const KeyPartition &key, const Document *doc) {
  std::vector<std::vector<std::string>> cells;
  for (auto &[label, ids] : key.Cells(doc)) cells.push_back(std::move(ids));
  return Partition(std::move(cells));
}

Partition Partition::FromKeyCells(const std::vector<KeyCell> &cells) {
  std::vector<std::vector<std::string>> out;
  out.reserve(cells.size());
  for (const KeyCell &cell : cells) out.push_back(cell.ids);
  return Partition(std::move(out));
}

std::vector<KeyCell> Partition::ToKeyCells(std::string_view prefix) const {
  std::vector<KeyCell> out;
  out.reserve(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    out.push_back({std::string(prefix) + std::to_string(i + 1), cells_[i]});
  }
  return out;
}

std::size_t Partition::element_count() const {
  std::size_t n = 0;
  for (const auto &cell : cells_) n += cell.size();
  return n;
}

}  // namespace mrref

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

#ifndef MRREF_PARTITION_H_
#define MRREF_PARTITION_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mrref/corpus.h"

namespace mrref {

// A set of disjoint, non-empty cells of RE ids. Cell order and order within a
// cell carry no meaning for scoring but are preserved for output.
class Partition {
 public:
  Partition() = default;

  // Throws ValidationError on an empty cell or an id in two cells.
  explicit Partition(std::vector<std::vector<std::string>> cells);

  // Cells of a gold key, ids in document order when `doc` is given.
  static Partition FromKey(const KeyPartition &key,
                           const Document *doc = nullptr);
  static Partition FromKeyCells(const std::vector<KeyCell> &cells);

  // Labels each cell `<prefix><index>`, index starting at 1.
  std::vector<KeyCell> ToKeyCells(std::string_view prefix) const;

  const std::vector<std::vector<std::string>> &cells() const { return cells_; }
  std::size_t element_count() const;

  bool operator==(const Partition &) const = default;

 private:
  std::vector<std::vector<std::string>> cells_;
};

}  // namespace mrref

#endif  // MRREF_PARTITION_H_

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

#ifndef MRREF_CONFIG_H_
#define MRREF_CONFIG_H_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mrref/corpus.h"

namespace mrref {

// Activation model: every MR starts at `initial_activation`, gains
// `type_boost[t] + function_boost[f]` for each RE attached to it, and is
// multiplied by `sentence_decay` at every sentence boundary.
struct SalienceParams {
  double initial_activation = 0.0;
  double sentence_decay = 0.5;
  std::array<double, 5> type_boost = {80, 50, 30, 40, 20};  // by ReType
  std::array<double, 5> function_boost = {80, 50, 30, 20, 0};  // by GramFunction

  double TypeBoost(ReType t) const {
    return type_boost[static_cast<std::size_t>(t)];
  }
  double FunctionBoost(GramFunction f) const {
    return function_boost[static_cast<std::size_t>(f)];
  }
  double Boost(const RefExpr &re) const {
    return TypeBoost(re.re_type) + FunctionBoost(re.gram_function);
  }

  // Throws ConfigError unless the decay is in (0,1] and every other value is
  // finite and non-negative.
  void Validate() const;

  // Named access used by config files and the tuner: `initial_activation`,
  // `sentence_decay`, `type_boost.<type>`, `function_boost.<func>`.
  static const std::vector<std::string> &ParameterNames();
  double Get(std::string_view name) const;  // ConfigError if unknown
  void Set(std::string_view name, double value);

  bool operator==(const SalienceParams &) const = default;
};

// Selection heuristic deciding whether an RE may refer to an MR:
//   kFirst  (H1) compatible with the MR's first nominal RE
//   kAll    (H2) compatible with every nominal RE
//   kOne    (H3) compatible with at least one nominal RE
//   kRatio  (H4) compatible with at least `percent`% of the nominal REs
struct Heuristic {
  enum class Kind { kFirst, kAll, kOne, kRatio };

  Kind kind = Kind::kOne;
  double percent = 0.0;

  static Heuristic First() { return {Kind::kFirst, 0}; }
  static Heuristic All() { return {Kind::kAll, 0}; }
  static Heuristic One() { return {Kind::kOne, 0}; }
  static Heuristic Ratio(double percent) { return {Kind::kRatio, percent}; }

  // `h1`, `h2`, `h3` or `h4:<X>`; throws ConfigError otherwise.
  static Heuristic Parse(std::string_view text);
  std::string ToString() const;

  bool operator==(const Heuristic &) const = default;
};

struct ResolverConfig {
  Heuristic heuristic;
  std::size_t quota = 20;
  SalienceParams salience;
  bool indefinite_creates_new = true;

  void Validate() const;

  bool operator==(const ResolverConfig &) const = default;
};

// Layered `key=value` config text. Keys: heuristic, quota,
// indefinite_creates_new, plus every SalienceParams parameter name. Values
// present in `text` override those in `base`.
ResolverConfig ParseConfig(std::string_view text,
                           const ResolverConfig &base = ResolverConfig());
std::string SerializeConfig(const ResolverConfig &cfg);

}  // namespace mrref

#endif  // MRREF_CONFIG_H_

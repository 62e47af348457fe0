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

// Coordinate-wise local search over salience parameters, maximizing
// recall + precision of the resolver on an annotated document.

#ifndef MRREF_TUNER_H_
#define MRREF_TUNER_H_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mrref/config.h"
#include "mrref/corpus.h"
#include "mrref/lexicon.h"

namespace mrref {

struct TunedParameter {
  std::string name;  // a SalienceParams parameter name
  double lower = 0;
  double upper = 0;
  double step = 1;

  bool operator==(const TunedParameter &) const = default;
};

struct TuningSpec {
  std::vector<TunedParameter> parameters;  // searched in this order
  std::size_t max_sweeps = 10;

  // Throws ConfigError for unknown names, lower > upper, step <= 0, or bounds
  // that admit invalid salience values.
  void Validate() const;
};

// Text form:
//   max_sweeps=<n>
//   param=<name>,<lower>,<upper>,<step>     (repeatable)
TuningSpec ParseTuningSpec(std::string_view text);

struct TuningStep {
  std::size_t sweep = 0;   // 0 for the starting point
  std::string parameter;   // empty for the starting point
  double value = 0;
  SalienceParams params;
  double objective = 0;
};

struct TuningTrace {
  std::vector<TuningStep> iterations;  // starting point, then accepted moves
  double improvement = 0;              // final - initial objective
};

struct TuningResult {
  SalienceParams params;
  TuningTrace trace;
};

// Resolves `doc` under `cfg` and returns MUC recall + precision against
// `key`, in [0, 2].
double Objective(const Document &doc, const KeyPartition &key,
                 const ResolverConfig &cfg, const Lexicon &lex);

// Called for every parameter vector the search evaluates.
using EvaluationObserver =
    std::function<void(const SalienceParams &params, double objective)>;

// Each sweep visits the parameters in order; for each it evaluates the
// current value minus and plus one step (clamped to the bounds) and moves to
// the better of the two if it strictly improves the objective (minus wins
// ties). Stops after `max_sweeps` sweeps or a sweep without improvement.
// Throws ConfigError if the spec is invalid or the starting value of a tuned
// parameter lies outside its bounds.
TuningResult TuneParams(const Document &doc, const KeyPartition &key,
                        const ResolverConfig &cfg, const Lexicon &lex,
                        const TuningSpec &spec,
                        const EvaluationObserver &observer = {});

// `sweep,param,value,objective`; the starting point is row 0 with `-` for the
// parameter and value.
std::string TuningTraceCsv(const TuningTrace &trace);

}  // namespace mrref

#endif  // MRREF_TUNER_H_

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

#include "mrref/tuner.h"

#include <algorithm>
#include <cmath>

#include "mrref/errors.h"
#include "mrref/partition.h"
#include "mrref/resolver.h"
#include "mrref/scorer.h"
#include "text_util.h"

namespace mrref {

void TuningSpec::Validate() const {
  for (const TunedParameter &p : parameters) {
    SalienceParams probe;
    probe.Get(p.name);  // throws on unknown names
    if (!std::isfinite(p.lower) || !std::isfinite(p.upper) || p.lower > p.upper) {
      throw ConfigError("bounds of " + p.name + " are invalid");
    }
    if (!(p.step > 0) || !std::isfinite(p.step)) {
      throw ConfigError("step of " + p.name + " must be positive");
    }
    if (p.lower < 0) throw ConfigError(p.name + " cannot go below 0");
    if (p.name == "sentence_decay" && (p.lower <= 0 || p.upper > 1)) {
      throw ConfigError("sentence_decay bounds must lie in (0,1]");
    }
  }
}

TuningSpec ParseTuningSpec(std::string_view text) {
  TuningSpec spec;
  text::ForEachRecord(text, [&](std::size_t line_no, std::string_view line) {
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    std::string_view key = text::Trim(line.substr(0, eq));
    std::string_view value = text::Trim(line.substr(eq + 1));
    if (key == "max_sweeps") {
      auto n = text::ParseSize(value);
      if (!n) throw ParseError(line_no, "max_sweeps must be an integer");
      spec.max_sweeps = *n;
    } else if (key == "param") {
      auto parts = text::Split(value, ',');
      if (parts.size() != 4) {
        throw ParseError(line_no, "param=<name>,<lower>,<upper>,<step>");
      }
      auto lo = text::ParseDouble(parts[1]);
      auto hi = text::ParseDouble(parts[2]);
      auto step = text::ParseDouble(parts[3]);
      if (!lo || !hi || !step) throw ParseError(line_no, "bad number in param");
      spec.parameters.push_back({parts[0], *lo, *hi, *step});
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
  });
  spec.Validate();
  return spec;
}

double Objective(const Document &doc, const KeyPartition &key,
                 const ResolverConfig &cfg, const Lexicon &lex) {
  CheckKeyCoverage(doc, key);
  Resolution res = ResolveDocument(doc, cfg, lex);
  ScoreReport score = MucScore(Partition::FromKey(key, &doc), res.response);
  return score.recall + score.precision;
}

TuningResult TuneParams(const Document &doc, const KeyPartition &key,
                        const ResolverConfig &cfg, const Lexicon &lex,
                        const TuningSpec &spec,
                        const EvaluationObserver &observer) {
  spec.Validate();
  cfg.Validate();
  for (const TunedParameter &p : spec.parameters) {
    double v = cfg.salience.Get(p.name);
    if (v < p.lower || v > p.upper) {
      throw ConfigError("starting value of " + p.name + " is outside its bounds");
    }
  }

  ResolverConfig current = cfg;
  auto evaluate = [&](const SalienceParams &params) {
    ResolverConfig trial = current;
    trial.salience = params;
    double value = Objective(doc, key, trial, lex);
    if (observer) observer(params, value);
    return value;
  };

  TuningResult result;
  double best = evaluate(current.salience);
  result.trace.iterations.push_back({0, "", 0, current.salience, best});

  for (std::size_t sweep = 1; sweep <= spec.max_sweeps; ++sweep) {
    bool improved = false;
    for (const TunedParameter &p : spec.parameters) {
      double value = current.salience.Get(p.name);
      double chosen_value = value;
      double chosen_objective = best;
      for (double candidate : {std::max(p.lower, value - p.step),
                               std::min(p.upper, value + p.step)}) {
        if (candidate == value) continue;
        SalienceParams trial = current.salience;
        trial.Set(p.name, candidate);
        double objective = evaluate(trial);
        if (objective > chosen_objective) {
          chosen_objective = objective;
          chosen_value = candidate;
        }
      }
      if (chosen_value != value) {
        current.salience.Set(p.name, chosen_value);
        best = chosen_objective;
        improved = true;
        result.trace.iterations.push_back(
            {sweep, p.name, chosen_value, current.salience, best});
      }
    }
    if (!improved) break;
  }

  result.params = current.salience;
  result.trace.improvement = best - result.trace.iterations.front().objective;
  return result;
}

std::string TuningTraceCsv(const TuningTrace &trace) {
  std::string out = "sweep,param,value,objective\n";
  for (const TuningStep &step : trace.iterations) {
    out += std::to_string(step.sweep) + ",";
    if (step.parameter.empty()) {
      out += "-,-,";
    } else {
      out += step.parameter + "," + text::FormatDouble(step.value) + ",";
    }
    out += text::FormatDouble(step.objective) + "\n";
  }
  return out;
}

}  // namespace mrref

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

#include "mrref/config.h"

#include <cmath>
#include <sstream>

#include "mrref/errors.h"
#include "text_util.h"

namespace mrref {

namespace {

constexpr std::string_view kTypePrefix = "type_boost.";
constexpr std::string_view kFunctionPrefix = "function_boost.";

double *Slot(SalienceParams &p, std::string_view name) {
  if (name == "initial_activation") return &p.initial_activation;
  if (name == "sentence_decay") return &p.sentence_decay;
  if (name.substr(0, kTypePrefix.size()) == kTypePrefix) {
    if (auto t = ParseReType(name.substr(kTypePrefix.size()))) {
      return &p.type_boost[static_cast<std::size_t>(*t)];
    }
  }
  if (name.substr(0, kFunctionPrefix.size()) == kFunctionPrefix) {
    if (auto f = ParseGramFunction(name.substr(kFunctionPrefix.size()))) {
      return &p.function_boost[static_cast<std::size_t>(*f)];
    }
  }
  return nullptr;
}

bool ParseBool(std::string_view s, bool *out) {
  if (s == "true" || s == "1" || s == "yes") {
    *out = true;
  } else if (s == "false" || s == "0" || s == "no") {
    *out = false;
  } else {
    return false;
  }
  return true;
}

}  // namespace

void SalienceParams::Validate() const {
  for (const std::string &name : ParameterNames()) {
    double v = Get(name);
    if (!std::isfinite(v) || v < 0) {
      throw ConfigError(name + " must be finite and non-negative");
    }
  }
  if (!(sentence_decay > 0 && sentence_decay <= 1)) {
    throw ConfigError("sentence_decay must be in (0,1]");
  }
}

const std::vector<std::string> &SalienceParams::ParameterNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = {"initial_activation", "sentence_decay"};
    for (ReType t : kAllReTypes) {
      n.push_back(std::string(kTypePrefix) + std::string(ToCode(t)));
    }
    for (GramFunction f : kAllGramFunctions) {
      n.push_back(std::string(kFunctionPrefix) + std::string(ToCode(f)));
    }
    return n;
  }();
  return names;
}

double SalienceParams::Get(std::string_view name) const {
  double *slot = Slot(const_cast<SalienceParams &>(*this), name);
  if (slot == nullptr) {
    throw ConfigError("unknown salience parameter '" + std::string(name) + "'");
  }
  return *slot;
}

void SalienceParams::Set(std::string_view name, double value) {
  double *slot = Slot(*this, name);
  if (slot == nullptr) {
    throw ConfigError("unknown salience parameter '" + std::string(name) + "'");
  }
  *slot = value;
}

Heuristic Heuristic::Parse(std::string_view text) {
  if (text == "h1") return First();
  if (text == "h2") return All();
  if (text == "h3") return One();
  if (text.substr(0, 3) == "h4:") {
    auto x = text::ParseDouble(text.substr(3));
    if (x && *x >= 0 && *x <= 100) return Ratio(*x);
    throw ConfigError("h4 threshold must be a percentage in [0,100]");
  }
  throw ConfigError("unknown heuristic '" + std::string(text) + "'");
}

std::string Heuristic::ToString() const {
  switch (kind) {
    case Kind::kFirst: return "h1";
    case Kind::kAll: return "h2";
    case Kind::kOne: return "h3";
    case Kind::kRatio: return "h4:" + text::FormatDouble(percent);
  }
  return "?";
}

void ResolverConfig::Validate() const {
  if (quota < 1) throw ConfigError("quota must be at least 1");
  if (heuristic.kind == Heuristic::Kind::kRatio &&
      !(heuristic.percent >= 0 && heuristic.percent <= 100)) {
    throw ConfigError("h4 threshold must be in [0,100]");
  }
  salience.Validate();
}

ResolverConfig ParseConfig(std::string_view text, const ResolverConfig &base) {
  ResolverConfig cfg = base;
  text::ForEachRecord(text, [&](std::size_t line_no, std::string_view line) {
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "expected key=value");
    }
    std::string key(text::Trim(line.substr(0, eq)));
    std::string_view value = text::Trim(line.substr(eq + 1));
    try {
      if (key == "heuristic") {
        cfg.heuristic = Heuristic::Parse(value);
      } else if (key == "quota") {
        auto n = text::ParseSize(value);
        if (!n) throw ParseError(line_no, "quota must be an integer");
        cfg.quota = *n;
      } else if (key == "indefinite_creates_new") {
        if (!ParseBool(value, &cfg.indefinite_creates_new)) {
          throw ParseError(line_no, "expected true or false");
        }
      } else {
        auto v = text::ParseDouble(value);
        if (!v) throw ParseError(line_no, "expected a number for " + key);
        cfg.salience.Set(key, *v);
      }
    } catch (const ConfigError &e) {
      throw ParseError(line_no, e.what());
    }
  });
  cfg.Validate();
  return cfg;
}

std::string SerializeConfig(const ResolverConfig &cfg) {
  std::ostringstream out;
  out << "heuristic=" << cfg.heuristic.ToString() << "\n";
  out << "quota=" << cfg.quota << "\n";
  out << "indefinite_creates_new="
      << (cfg.indefinite_creates_new ? "true" : "false") << "\n";
  for (const std::string &name : SalienceParams::ParameterNames()) {
    out << name << "=" << text::FormatDouble(cfg.salience.Get(name)) << "\n";
  }
  return out.str();
}

}  // namespace mrref

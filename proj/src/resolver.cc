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

#include "mrref/resolver.h"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

#include "mrref/errors.h"

namespace mrref {

namespace {

Gender EffectiveGender(const Lexicon &lex, const RefExpr &re) {
  if (re.gender != Gender::kUnknown || re.unparsed || re.head_lemma.empty()) {
    return re.gender;
  }
  return lex.DefaultGender(re.head_lemma).value_or(Gender::kUnknown);
}

bool GenderAgrees(Gender a, Gender b) {
  return a == Gender::kUnknown || b == Gender::kUnknown || a == b;
}

bool NumberAgrees(Number a, Number b) {
  return a == Number::kUnknown || b == Number::kUnknown || a == b;
}

bool Agrees(const Lexicon &lex, const RefExpr &a, const RefExpr &b) {
  return GenderAgrees(EffectiveGender(lex, a), EffectiveGender(lex, b)) &&
         NumberAgrees(a.number, b.number);
}

// Head of `re`, or one of its descriptors, is compatible with `lemma`.
bool MatchesLemma(const Lexicon &lex, const RefExpr &re,
                  const std::string &lemma) {
  if (lex.SemanticallyCompatible(re.head_lemma, lemma)) return true;
  return std::any_of(re.descriptors.begin(), re.descriptors.end(),
                     [&](const std::string &d) {
                       return lex.SemanticallyCompatible(d, lemma);
                     });
}

bool ProvisionalPass(const Lexicon &lex, const MentalRep &mr,
                     const RefExpr &re) {
  if (!NumberAgrees(re.number, mr.synthetic_number)) return false;
  if (re.is_pronoun() || re.unparsed || re.head_lemma.empty() ||
      mr.synthetic_lemmas.empty()) {
    return true;
  }
  return std::any_of(mr.synthetic_lemmas.begin(), mr.synthetic_lemmas.end(),
                     [&](const std::string &l) { return MatchesLemma(lex, re, l); });
}

}  // namespace

bool AgreementCompatible(const RefExpr &a, const RefExpr &b) {
  return GenderAgrees(a.gender, b.gender) && NumberAgrees(a.number, b.number);
}

bool ReCompatible(const Lexicon &lex, const RefExpr &a, const RefExpr &b) {
  if (a.is_pronoun() || b.is_pronoun()) {
    throw ContractViolation("pronouns are excluded from the RE compatibility test");
  }
  if (!Agrees(lex, a, b)) return false;
  if (a.unparsed || b.unparsed || a.head_lemma.empty() || b.head_lemma.empty()) {
    return true;
  }
  if (lex.SemanticallyCompatible(a.head_lemma, b.head_lemma)) return true;
  for (const std::string &d : b.descriptors) {
    if (lex.SemanticallyCompatible(a.head_lemma, d)) return true;
  }
  for (const std::string &d : a.descriptors) {
    if (lex.SemanticallyCompatible(b.head_lemma, d)) return true;
  }
  return false;
}

bool SelectionPass(const Heuristic &heuristic, const Lexicon &lex,
                   const MentalRep &mr, const RefExpr &re) {
  if (mr.archived) throw ContractViolation("selection on an archived MR");
  if (mr.provisional()) return ProvisionalPass(lex, mr, re);
  if (re.is_pronoun()) return Agrees(lex, re, mr.mentions.back());

  std::size_t nominal = 0;
  for (const RefExpr &m : mr.mentions) nominal += m.is_pronoun() ? 0 : 1;
  if (nominal == 0) return Agrees(lex, re, mr.mentions.back());

  auto compatible = [&](const RefExpr &m) {
    return !m.is_pronoun() && ReCompatible(lex, m, re);
  };
  switch (heuristic.kind) {
    case Heuristic::Kind::kFirst: {
      auto first = std::find_if(mr.mentions.begin(), mr.mentions.end(),
                                [](const RefExpr &m) { return !m.is_pronoun(); });
      return ReCompatible(lex, *first, re);
    }
    case Heuristic::Kind::kAll:
      return std::all_of(mr.mentions.begin(), mr.mentions.end(),
                         [&](const RefExpr &m) {
                           return m.is_pronoun() || ReCompatible(lex, m, re);
                         });
    case Heuristic::Kind::kOne:
      return std::any_of(mr.mentions.begin(), mr.mentions.end(), compatible);
    case Heuristic::Kind::kRatio: {
      auto hits = static_cast<std::size_t>(
          std::count_if(mr.mentions.begin(), mr.mentions.end(), compatible));
      if (hits == 0) return false;
      // hits / nominal >= percent / 100, kept in exact integer-valued doubles.
      return static_cast<double>(hits) * 100.0 >=
             heuristic.percent * static_cast<double>(nominal);
    }
  }
  return false;
}

Resolver::Resolver(const ResolverConfig &cfg, const Lexicon &lex)
    : cfg_(cfg), lex_(lex), memory_(cfg.quota) {
  cfg_.Validate();
}

std::optional<MrId> Resolver::SelectReferent(const RefExpr &re) const {
  std::optional<MrId> best;
  double best_activation = -std::numeric_limits<double>::infinity();
  for (const auto &[id, mr] : memory_.mrs()) {
    if (mr.archived || !SelectionPass(cfg_.heuristic, lex_, mr, re)) continue;
    // Ids ascend, so `>=` lets the most recent MR win ties.
    if (mr.activation >= best_activation) {
      best = id;
      best_activation = mr.activation;
    }
  }
  return best;
}

MrId Resolver::Resolve(const RefExpr &re) {
  std::size_t sentence = re.position.sentence;
  if (last_sentence_ && sentence > *last_sentence_) {
    memory_.ApplyDecay(cfg_.salience, sentence - *last_sentence_);
  }
  if (!last_sentence_ || sentence > *last_sentence_) last_sentence_ = sentence;

  MrId id;
  std::optional<MrId> target;
  if (!(re.re_type == ReType::kIndefinite && cfg_.indefinite_creates_new)) {
    target = SelectReferent(re);
  }
  if (target) {
    memory_.Attach(*target, re, cfg_.salience);
    id = *target;
  } else {
    id = memory_.Create(re, cfg_.salience);
  }
  memory_.EnforceQuota();
  return id;
}

Resolution Resolver::Finish() const {
  Resolution out;
  std::vector<const MentalRep *> filled;
  for (const auto &[id, mr] : memory_.mrs()) {
    out.mrs.push_back(mr);
    if (!mr.provisional()) filled.push_back(&mr);
  }
  auto first_ordinal = [](const MentalRep *mr) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const RefExpr &re : mr->mentions) {
      best = std::min(best, re.position.ordinal);
    }
    return best;
  };
  std::sort(filled.begin(), filled.end(),
            [&](const MentalRep *a, const MentalRep *b) {
              return first_ordinal(a) < first_ordinal(b);
            });
  std::vector<std::vector<std::string>> cells;
  cells.reserve(filled.size());
  for (const MentalRep *mr : filled) {
    std::vector<const RefExpr *> ordered;
    for (const RefExpr &re : mr->mentions) ordered.push_back(&re);
    std::sort(ordered.begin(), ordered.end(), [](const RefExpr *a, const RefExpr *b) {
      return a->position.ordinal < b->position.ordinal;
    });
    std::vector<std::string> cell;
    for (const RefExpr *re : ordered) cell.push_back(re->id);
    cells.push_back(std::move(cell));
  }
  out.response = Partition(std::move(cells));
  out.trace = memory_.trace();
  return out;
}

Resolution ResolveDocument(const Document &doc, const ResolverConfig &cfg,
                           const Lexicon &lex) {
  Resolver resolver(cfg, lex);
  for (const RefExpr &re : doc.res) resolver.Resolve(re);
  return resolver.Finish();
}

WorkingMemory ReplayTrace(const Document &doc,
                          const std::vector<TraceEvent> &trace,
                          const ResolverConfig &cfg) {
  cfg.Validate();
  std::unordered_map<std::string, const RefExpr *> by_id;
  for (const RefExpr &re : doc.res) by_id.emplace(re.id, &re);

  WorkingMemory memory(cfg.quota);
  const SalienceParams &params = cfg.salience;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceEvent &e = trace[i];
    auto fail = [&](const std::string &why) {
      throw ValidationError("trace event " + std::to_string(i) + " (" +
                            std::string(ToCode(e.kind)) + "): " + why);
    };
    auto expect_mr = [&](MrId got) {
      if (!e.mr || *e.mr != got) fail("MR id mismatch");
      if (memory.at(got).activation != e.activation) fail("activation mismatch");
    };
    auto operands = [&](std::size_t n) {
      if (e.operands.size() != n) fail("wrong operand count");
    };
    try {
      switch (e.kind) {
        case TraceEvent::Kind::kCreate:
        case TraceEvent::Kind::kAttach: {
          auto it = by_id.find(e.re_id);
          if (it == by_id.end()) fail("unknown RE " + e.re_id);
          if (e.kind == TraceEvent::Kind::kCreate) {
            expect_mr(memory.Create(*it->second, params));
          } else {
            if (!e.mr) fail("attach without MR");
            memory.Attach(*e.mr, *it->second, params);
            expect_mr(*e.mr);
          }
          break;
        }
        case TraceEvent::Kind::kArchive:
          if (!e.mr) fail("archive without MR");
          expect_mr(*e.mr);
          memory.Archive(*e.mr);
          break;
        case TraceEvent::Kind::kDecay:
          memory.ScaleActive(e.activation);
          break;
        case TraceEvent::Kind::kFuse:
          operands(2);
          expect_mr(memory.Fuse(e.operands[0], e.operands[1]));
          break;
        case TraceEvent::Kind::kGroup:
          operands(2);
          if (e.activation != params.initial_activation) fail("activation mismatch");
          expect_mr(memory.GroupAt(e.operands[0], e.operands[1], e.activation));
          break;
        case TraceEvent::Kind::kPartition: {
          if (!e.mr || e.operands.empty()) fail("partition without operands");
          if (e.activation != params.initial_activation) fail("activation mismatch");
          auto members = memory.PartitionInto(
              *e.mr, e.lemma, static_cast<int>(e.operands.size()), e.activation);
          if (members != e.operands) fail("member ids mismatch");
          break;
        }
      }
    } catch (const ValidationError &) {
      throw;
    } catch (const Error &err) {
      fail(err.what());
    }
  }
  return memory;
}

}  // namespace mrref

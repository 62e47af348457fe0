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

#include "mrref/memory.h"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <sstream>
#include <utility>

#include "mrref/errors.h"
#include "text_util.h"

namespace mrref {

namespace {

constexpr std::pair<TraceEvent::Kind, std::string_view> kEventCodes[] = {
    {TraceEvent::Kind::kCreate, "create"},
    {TraceEvent::Kind::kAttach, "attach"},
    {TraceEvent::Kind::kArchive, "archive"},
    {TraceEvent::Kind::kDecay, "decay"},
    {TraceEvent::Kind::kFuse, "fuse"},
    {TraceEvent::Kind::kPartition, "partition"},
    {TraceEvent::Kind::kGroup, "group"}};

std::string JoinIds(const std::vector<MrId> &ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ",";
    out += ToString(ids[i]);
  }
  return out;
}

void AddRelation(MentalRep &mr, MrRelation rel) {
  if (rel.target == mr.id) return;
  if (std::find(mr.relations.begin(), mr.relations.end(), rel) ==
      mr.relations.end()) {
    mr.relations.push_back(rel);
  }
}

}  // namespace

std::string ToString(MrId id) { return "mr" + std::to_string(Index(id)); }

std::optional<MrId> ParseMrId(std::string_view text) {
  if (text.substr(0, 2) != "mr") return std::nullopt;
  auto n = text::ParseSize(text.substr(2));
  if (!n || *n > UINT32_MAX) return std::nullopt;
  return MrId{static_cast<std::uint32_t>(*n)};
}

std::vector<std::string> MentalRep::re_list() const {
  std::vector<std::string> ids;
  ids.reserve(mentions.size());
  for (const RefExpr &re : mentions) ids.push_back(re.id);
  return ids;
}

std::string_view ToCode(TraceEvent::Kind kind) {
  for (const auto &[k, code] : kEventCodes) {
    if (k == kind) return code;
  }
  return "?";
}

std::string FormatTrace(const std::vector<TraceEvent> &events) {
  std::ostringstream out;
  for (const TraceEvent &e : events) {
    out << "EVENT " << ToCode(e.kind) << " re=" << (e.re_id.empty() ? "-" : e.re_id)
        << " mr=" << (e.mr ? ToString(*e.mr) : "-")
        << " act=" << text::FormatDouble(e.activation);
    switch (e.kind) {
      case TraceEvent::Kind::kFuse:
      case TraceEvent::Kind::kGroup:
        out << " from=" << JoinIds(e.operands);
        break;
      case TraceEvent::Kind::kPartition:
        out << " members=" << JoinIds(e.operands) << " lemma=" << e.lemma;
        break;
      default:
        break;
    }
    out << "\n";
  }
  return out.str();
}

std::vector<TraceEvent> ParseTrace(std::string_view text) {
  std::vector<TraceEvent> events;
  text::ForEachRecord(text, [&](std::size_t line_no, std::string_view line) {
    auto fields = text::SplitFields(line);
    if (!fields || fields->size() < 5 || (*fields)[0] != "EVENT") {
      throw ParseError(line_no, "expected an EVENT record");
    }
    TraceEvent e;
    bool known = false;
    for (const auto &[k, code] : kEventCodes) {
      if (code == (*fields)[1]) {
        e.kind = k;
        known = true;
      }
    }
    if (!known) throw ParseError(line_no, "unknown event kind");
    auto ids = [&](std::string_view list) {
      std::vector<MrId> out;
      for (const std::string &s : text::Split(list, ',')) {
        auto id = ParseMrId(s);
        if (!id) throw ParseError(line_no, "bad MR id '" + s + "'");
        out.push_back(*id);
      }
      return out;
    };
    for (std::size_t i = 2; i < fields->size(); ++i) {
      std::string_view f = (*fields)[i];
      std::size_t eq = f.find('=');
      if (eq == std::string_view::npos) throw ParseError(line_no, "bad field");
      std::string_view key = f.substr(0, eq), value = f.substr(eq + 1);
      if (key == "re") {
        if (value != "-") e.re_id = std::string(value);
      } else if (key == "mr") {
        if (value != "-") {
          e.mr = ParseMrId(value);
          if (!e.mr) throw ParseError(line_no, "bad MR id");
        }
      } else if (key == "act") {
        auto v = text::ParseDouble(value);
        if (!v) throw ParseError(line_no, "bad activation");
        e.activation = *v;
      } else if (key == "from" || key == "members") {
        e.operands = ids(value);
      } else if (key == "lemma") {
        e.lemma = std::string(value);
      } else {
        throw ParseError(line_no, "unknown field '" + std::string(key) + "'");
      }
    }
    events.push_back(std::move(e));
  });
  return events;
}

WorkingMemory::WorkingMemory(std::size_t quota) : quota_(quota) {
  if (quota < 1) throw ConfigError("working memory quota must be at least 1");
}

std::vector<MrId> WorkingMemory::active_ids() const {
  std::vector<MrId> ids;
  for (const auto &[id, mr] : mrs_) {
    if (!mr.archived) ids.push_back(id);
  }
  return ids;
}

std::vector<MrId> WorkingMemory::archived_ids() const {
  std::vector<MrId> ids;
  for (const auto &[id, mr] : mrs_) {
    if (mr.archived) ids.push_back(id);
  }
  return ids;
}

const MentalRep &WorkingMemory::at(MrId id) const {
  auto it = mrs_.find(id);
  if (it == mrs_.end()) throw ContractViolation("unknown MR " + ToString(id));
  return it->second;
}

MentalRep &WorkingMemory::Mutable(MrId id) {
  return const_cast<MentalRep &>(at(id));
}

MentalRep &WorkingMemory::MutableActive(MrId id, const char *op) {
  MentalRep &mr = Mutable(id);
  if (mr.archived) {
    throw ContractViolation(std::string(op) + ": MR " + ToString(id) +
                            " is archived");
  }
  return mr;
}

MrId WorkingMemory::Create(const RefExpr &re, const SalienceParams &params) {
  if (!resolved_.insert(re.id).second) {
    throw ContractViolation("RE " + re.id + " is already resolved");
  }
  MentalRep mr;
  mr.id = NextId();
  mr.activation = params.initial_activation + params.Boost(re);
  if (!re.is_pronoun() && !re.head_lemma.empty()) {
    mr.lemma_summary.insert(re.head_lemma);
  }
  mr.mentions.push_back(re);
  trace_.push_back({TraceEvent::Kind::kCreate, re.id, mr.id, mr.activation, {}, {}});
  MrId id = mr.id;
  mrs_.emplace(id, std::move(mr));
  ++active_count_;
  return id;
}

const MentalRep &WorkingMemory::Attach(MrId id, const RefExpr &re,
                                       const SalienceParams &params) {
  MentalRep &mr = MutableActive(id, "attach");
  if (!resolved_.insert(re.id).second) {
    throw ContractViolation("RE " + re.id + " is already resolved");
  }
  mr.mentions.push_back(re);
  if (!re.is_pronoun() && !re.head_lemma.empty()) {
    mr.lemma_summary.insert(re.head_lemma);
  }
  mr.activation += params.Boost(re);
  trace_.push_back({TraceEvent::Kind::kAttach, re.id, id, mr.activation, {}, {}});
  return mr;
}

MrId WorkingMemory::Fuse(MrId a, MrId b) {
  if (a == b) throw ContractViolation("fuse: an MR cannot be fused with itself");
  MentalRep &ma = MutableActive(a, "fuse");
  MentalRep &mb = MutableActive(b, "fuse");

  MentalRep fused;
  fused.id = NextId();
  std::merge(ma.mentions.begin(), ma.mentions.end(), mb.mentions.begin(),
             mb.mentions.end(), std::back_inserter(fused.mentions),
             [](const RefExpr &x, const RefExpr &y) {
               return x.position.ordinal < y.position.ordinal;
             });
  fused.lemma_summary = ma.lemma_summary;
  fused.lemma_summary.insert(mb.lemma_summary.begin(), mb.lemma_summary.end());
  fused.activation = std::max(ma.activation, mb.activation);
  for (const MentalRep *src : {&ma, &mb}) {
    for (MrRelation rel : src->relations) {
      if (rel.target == a || rel.target == b) continue;
      AddRelation(fused, rel);
    }
  }
  fused.member = ma.member ? ma.member : mb.member;
  fused.synthetic_lemmas = ma.synthetic_lemmas;
  fused.synthetic_lemmas.insert(mb.synthetic_lemmas.begin(),
                                mb.synthetic_lemmas.end());
  fused.synthetic_number = ma.synthetic_number == mb.synthetic_number
                               ? ma.synthetic_number
                               : Number::kUnknown;

  MrId id = fused.id;
  trace_.push_back({TraceEvent::Kind::kFuse, {}, id, fused.activation, {a, b}, {}});
  mrs_.erase(a);
  mrs_.erase(b);
  --active_count_;
  for (auto &[other_id, other] : mrs_) {
    std::vector<MrRelation> rels;
    rels.swap(other.relations);
    for (MrRelation rel : rels) {
      if (rel.target == a || rel.target == b) rel.target = id;
      AddRelation(other, rel);
    }
  }
  mrs_.emplace(id, std::move(fused));
  return id;
}

std::vector<MrId> WorkingMemory::Partition(MrId id, const Lexicon &lex,
                                           const SalienceParams &params) {
  const MentalRep &mr = at(id);
  for (const RefExpr &re : mr.mentions) {
    if (re.is_pronoun() || re.head_lemma.empty()) continue;
    auto entry = lex.CollectiveMembers(re.head_lemma);
    if (!entry) continue;
    if (!entry->count) {
      throw NotApplicable("collective '" + re.head_lemma +
                          "' has no known member count");
    }
    return PartitionInto(id, entry->member_lemma, *entry->count,
                         params.initial_activation);
  }
  throw NotApplicable("MR " + ToString(id) + " has no collective head");
}

std::vector<MrId> WorkingMemory::PartitionInto(MrId id,
                                               const std::string &member_lemma,
                                               int count, double activation) {
  MutableActive(id, "partition");
  if (count < 1) throw NotApplicable("partition needs a positive count");
  std::vector<MrId> members;
  for (int i = 1; i <= count; ++i) {
    MentalRep m;
    m.id = NextId();
    m.activation = activation;
    m.relations.push_back({RelationKind::kPartOf, id});
    m.member = MemberDescriptor{member_lemma, i};
    m.synthetic_lemmas.insert(member_lemma);
    m.synthetic_number = Number::kSingular;
    members.push_back(m.id);
    mrs_.emplace(m.id, std::move(m));
    ++active_count_;
  }
  MentalRep &whole = Mutable(id);
  for (MrId m : members) AddRelation(whole, {RelationKind::kComposedOf, m});
  trace_.push_back(
      {TraceEvent::Kind::kPartition, {}, id, activation, members, member_lemma});
  return members;
}

MrId WorkingMemory::Group(MrId a, MrId b, const SalienceParams &params) {
  return GroupAt(a, b, params.initial_activation);
}

MrId WorkingMemory::GroupAt(MrId a, MrId b, double activation) {
  if (a == b) throw ContractViolation("group: an MR cannot be grouped with itself");
  const MentalRep &ma = MutableActive(a, "group");
  const MentalRep &mb = MutableActive(b, "group");
  MentalRep g;
  g.id = NextId();
  g.activation = activation;
  g.relations = {{RelationKind::kComposedOf, a}, {RelationKind::kComposedOf, b}};
  g.synthetic_number = Number::kPlural;
  for (const MentalRep *src : {&ma, &mb}) {
    g.synthetic_lemmas.insert(src->lemma_summary.begin(), src->lemma_summary.end());
    g.synthetic_lemmas.insert(src->synthetic_lemmas.begin(),
                              src->synthetic_lemmas.end());
  }
  MrId id = g.id;
  trace_.push_back({TraceEvent::Kind::kGroup, {}, id, activation, {a, b}, {}});
  mrs_.emplace(id, std::move(g));
  ++active_count_;
  return id;
}

void WorkingMemory::ApplyDecay(const SalienceParams &params,
                               std::size_t n_boundaries) {
  if (n_boundaries == 0) return;
  ScaleActive(std::pow(params.sentence_decay, static_cast<double>(n_boundaries)));
}

void WorkingMemory::ScaleActive(double factor) {
  for (auto &[id, mr] : mrs_) {
    if (!mr.archived) mr.activation *= factor;
  }
  trace_.push_back({TraceEvent::Kind::kDecay, {}, std::nullopt, factor, {}, {}});
}

void WorkingMemory::EnforceQuota() {
  while (active_count_ > quota_) {
    const MentalRep *weakest = nullptr;
    for (const auto &[id, mr] : mrs_) {
      if (mr.archived) continue;
      if (weakest == nullptr || mr.activation < weakest->activation) {
        weakest = &mr;
      }
    }
    Archive(weakest->id);
  }
}

void WorkingMemory::Archive(MrId id) {
  MentalRep &mr = MutableActive(id, "archive");
  mr.archived = true;
  --active_count_;
  trace_.push_back({TraceEvent::Kind::kArchive, {}, id, mr.activation, {}, {}});
}

}  // namespace mrref

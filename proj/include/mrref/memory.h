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

// Mental representations (MRs) and the quota-bounded working memory holding
// them. Every mutation of the memory is recorded as a TraceEvent, so a run
// can be replayed from its trace alone.

#ifndef MRREF_MEMORY_H_
#define MRREF_MEMORY_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mrref/config.h"
#include "mrref/corpus.h"
#include "mrref/lexicon.h"

namespace mrref {

// MR identifiers are allocated in creation order; a larger id is a more
// recent MR.
enum class MrId : std::uint32_t {};

inline std::uint32_t Index(MrId id) { return static_cast<std::uint32_t>(id); }
std::string ToString(MrId id);  // "mr<n>"
std::optional<MrId> ParseMrId(std::string_view text);

struct MrRelation {
  RelationKind kind;
  MrId target;

  bool operator==(const MrRelation &) const = default;
};

// Synthetic description of a member MR created by partition.
struct MemberDescriptor {
  std::string lemma;
  int index = 0;  // 1-based

  bool operator==(const MemberDescriptor &) const = default;
};

struct MentalRep {
  MrId id{};
  std::vector<RefExpr> mentions;  // attachment order
  std::set<std::string> lemma_summary;  // heads of attached nominal REs
  double activation = 0.0;
  std::vector<MrRelation> relations;
  bool archived = false;

  // MRs created by partition or grouping have no RE until one attaches; until
  // then selection uses these synthetic features.
  std::optional<MemberDescriptor> member;
  std::set<std::string> synthetic_lemmas;
  Number synthetic_number = Number::kUnknown;

  bool provisional() const { return mentions.empty(); }
  std::vector<std::string> re_list() const;

  bool operator==(const MentalRep &) const = default;
};

struct TraceEvent {
  enum class Kind { kCreate, kAttach, kArchive, kDecay, kFuse, kPartition, kGroup };

  Kind kind = Kind::kCreate;
  std::string re_id;       // create, attach
  std::optional<MrId> mr;  // subject MR (new MR for fuse/group)
  // Activation of `mr` after the event; the multiplier for decay; the
  // members' starting activation for partition.
  double activation = 0.0;
  std::vector<MrId> operands;  // fuse/group inputs, partition members
  std::string lemma;           // partition member lemma

  bool operator==(const TraceEvent &) const = default;
};

std::string_view ToCode(TraceEvent::Kind kind);

// One `EVENT <kind> re=<id> mr=<id> act=<float> ...` line per event.
// Activations are written in shortest round-trip form.
std::string FormatTrace(const std::vector<TraceEvent> &events);
std::vector<TraceEvent> ParseTrace(std::string_view text);

class WorkingMemory {
 public:
  // Throws ConfigError when quota < 1.
  explicit WorkingMemory(std::size_t quota);

  std::size_t quota() const { return quota_; }
  const std::map<MrId, MentalRep> &mrs() const { return mrs_; }
  const std::vector<TraceEvent> &trace() const { return trace_; }
  std::size_t active_count() const { return active_count_; }
  std::vector<MrId> active_ids() const;
  std::vector<MrId> archived_ids() const;

  bool contains(MrId id) const { return mrs_.count(id) > 0; }
  // Throws ContractViolation for an unknown id.
  const MentalRep &at(MrId id) const;

  // New MR holding `re`, activation initial + boosts. Enters active memory.
  // Create and Attach throw ContractViolation for an RE already resolved.
  MrId Create(const RefExpr &re, const SalienceParams &params);

  // Appends `re`; throws ContractViolation if the MR is archived or unknown.
  const MentalRep &Attach(MrId id, const RefExpr &re,
                          const SalienceParams &params);

  // Merges two active MRs into a new one (mentions in ordinal order,
  // activation = max, relations united). Both inputs leave the store and
  // relations pointing at them are redirected.
  MrId Fuse(MrId a, MrId b);

  // Creates one provisional member MR per element of the collective named by
  // the MR's first nominal head with a lexicon entry. Throws NotApplicable
  // without an entry or with an unknown count.
  std::vector<MrId> Partition(MrId id, const Lexicon &lex,
                              const SalienceParams &params);
  std::vector<MrId> PartitionInto(MrId id, const std::string &member_lemma,
                                  int count, double activation);

  // New plural MR composed of `a` and `b`, which stay unchanged.
  MrId Group(MrId a, MrId b, const SalienceParams &params);
  MrId GroupAt(MrId a, MrId b, double activation);

  // Multiplies every active MR's activation by decay^n_boundaries.
  void ApplyDecay(const SalienceParams &params, std::size_t n_boundaries);
  void ScaleActive(double factor);

  // Archives the least active MRs (older id first on ties) until at most
  // `quota` remain active.
  void EnforceQuota();
  void Archive(MrId id);

 private:
  MentalRep &Mutable(MrId id);
  MentalRep &MutableActive(MrId id, const char *op);
  MrId NextId() { return MrId{next_id_++}; }

  std::size_t quota_;
  std::uint32_t next_id_ = 0;
  std::size_t active_count_ = 0;
  std::map<MrId, MentalRep> mrs_;
  std::vector<TraceEvent> trace_;
  std::set<std::string> resolved_;
};

}  // namespace mrref

#endif  // MRREF_MEMORY_H_

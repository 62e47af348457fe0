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

// Incremental reference resolution: each RE is attached to the most active
// MR that passes the selection heuristic, or starts a new MR.

#ifndef MRREF_RESOLVER_H_
#define MRREF_RESOLVER_H_

#include <optional>
#include <vector>

#include "mrref/config.h"
#include "mrref/corpus.h"
#include "mrref/lexicon.h"
#include "mrref/memory.h"
#include "mrref/partition.h"

namespace mrref {

// Gender and number agreement; `unknown` agrees with anything.
bool AgreementCompatible(const RefExpr &a, const RefExpr &b);

// Pairwise coreference test between two nominal REs: agreement (with the
// lexicon's default genders filling unknown values) plus semantic
// compatibility of the heads, or of one head with a descriptor of the other.
// Unparsed REs are tested on agreement only. Throws ContractViolation if
// either RE is a pronoun.
bool ReCompatible(const Lexicon &lex, const RefExpr &a, const RefExpr &b);

// Whether `mr` may be the referent of `re` under `heuristic`. Pronouns and
// MRs without nominal REs fall back to agreement with the most recent RE;
// provisional MRs are tested against their synthetic features.
bool SelectionPass(const Heuristic &heuristic, const Lexicon &lex,
                   const MentalRep &mr, const RefExpr &re);

struct Resolution {
  std::vector<MentalRep> mrs;  // by id, active and archived
  Partition response;          // cells in order of first RE
  std::vector<TraceEvent> trace;
};

// Drives a WorkingMemory over a stream of REs in text order.
class Resolver {
 public:
  // Throws ConfigError on an invalid configuration.
  Resolver(const ResolverConfig &cfg, const Lexicon &lex);

  // Resolves one RE: applies decay for the sentence boundaries crossed since
  // the previous RE, then attaches or creates, then enforces the quota.
  MrId Resolve(const RefExpr &re);

  WorkingMemory &memory() { return memory_; }
  const WorkingMemory &memory() const { return memory_; }

  Resolution Finish() const;

 private:
  std::optional<MrId> SelectReferent(const RefExpr &re) const;

  ResolverConfig cfg_;
  const Lexicon &lex_;
  WorkingMemory memory_;
  std::optional<std::size_t> last_sentence_;
};

Resolution ResolveDocument(const Document &doc, const ResolverConfig &cfg,
                           const Lexicon &lex);

// Rebuilds a memory by re-applying `trace` to the REs of `doc`. Every
// activation snapshot in the trace is checked against the recomputed value;
// throws ValidationError on any mismatch or inconsistent event.
WorkingMemory ReplayTrace(const Document &doc,
                          const std::vector<TraceEvent> &trace,
                          const ResolverConfig &cfg);

}  // namespace mrref

#endif  // MRREF_RESOLVER_H_

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

#ifndef MRREF_LEXICON_H_
#define MRREF_LEXICON_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mrref/corpus.h"

namespace mrref {

struct CollectiveEntry {
  std::string member_lemma;
  std::optional<int> count;  // absent when the file says `u`

  bool operator==(const CollectiveEntry &) const = default;
};

// Semantic knowledge used by the resolver: synonym classes, a hyperonym
// hierarchy and collective nouns. Text format, one record per line:
//
//   SYN l1,l2,...           synonym class
//   HYP child parent        hyperonym edge
//   COL collective member count|u
//   GEN lemma m|f|n         default gender for a head lemma
//
// Lemmas are compared through their synonym-class representative, so an edge
// declared on any member of a class applies to the whole class. Every
// mutator validates and keeps the invariants (disjoint classes, acyclic
// hierarchy); const members are safe to call concurrently.
class Lexicon {
 public:
  Lexicon() = default;

  // Throws ValidationError if a lemma is already in another class or the
  // merged class would close a hyperonym cycle.
  void AddSynonyms(const std::vector<std::string> &lemmas);

  // Throws ValidationError on a cycle (including child == parent up to
  // synonymy).
  void AddHyperonym(const std::string &child, const std::string &parent);

  void AddCollective(const std::string &lemma, CollectiveEntry entry);
  void SetDefaultGender(const std::string &lemma, Gender gender);

  // True iff equal, synonyms, or one is a transitive hyperonym of the other.
  bool SemanticallyCompatible(std::string_view a, std::string_view b) const;

  std::optional<CollectiveEntry> CollectiveMembers(std::string_view lemma) const;
  std::optional<Gender> DefaultGender(std::string_view lemma) const;

  const std::vector<std::set<std::string>> &synonym_classes() const {
    return classes_;
  }
  const std::vector<std::pair<std::string, std::string>> &hyperonym_edges()
      const {
    return edges_;
  }
  const std::map<std::string, CollectiveEntry, std::less<>> &collectives()
      const {
    return collectives_;
  }

  const std::map<std::string, Gender, std::less<>> &default_genders() const {
    return genders_;
  }

 private:
  void Rebuild();

  std::vector<std::set<std::string>> classes_;
  std::map<std::string, std::size_t, std::less<>> class_of_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::map<std::string, CollectiveEntry, std::less<>> collectives_;
  std::map<std::string, Gender, std::less<>> genders_;

  // Representative -> all transitive hyperonym representatives.
  std::map<std::string, std::set<std::string, std::less<>>, std::less<>>
      ancestors_;
};

// Throws ParseError on malformed lines and ValidationError on invariant
// violations.
Lexicon LoadLexicon(std::string_view text);

std::string SerializeLexicon(const Lexicon &lex);

}  // namespace mrref

#endif  // MRREF_LEXICON_H_

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

// Documents, referring expressions and gold keys, plus the line-oriented
// annotation format they are read from:
//
//   DOC <doc_id> words=<n> sentences=<n> paragraphs=<n>
//   RE id=<id> par=<p> sent=<s> tok=<a>-<b> type=<t> gender=<g> number=<n>
//      func=<f> head=<lemma> [desc=<l,l,...>] [unparsed] surface="<text>"
//   KEY <label>: <id>,<id>,...
//   REL <label> <part-of|composed-of|grouped-from> <label>
//
// Records appear in DOC, RE*, KEY*, REL* order; `#` starts a comment line.

#ifndef MRREF_CORPUS_H_
#define MRREF_CORPUS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mrref {

enum class Gender { kMasculine, kFeminine, kNeuter, kUnknown };
enum class Number { kSingular, kPlural, kUnknown };
enum class ReType { kProper, kDefinite, kIndefinite, kDemonstrative, kPronoun };
enum class GramFunction { kSubject, kObject, kOblique, kOther, kUnknown };
enum class RelationKind { kPartOf, kComposedOf, kGroupedFrom };

// Short annotation codes ("m", "subj", "part-of", ...).
std::string_view ToCode(Gender g);
std::string_view ToCode(Number n);
std::string_view ToCode(ReType t);
std::string_view ToCode(GramFunction f);
std::string_view ToCode(RelationKind k);

std::optional<Gender> ParseGender(std::string_view code);
std::optional<Number> ParseNumber(std::string_view code);
std::optional<ReType> ParseReType(std::string_view code);
std::optional<GramFunction> ParseGramFunction(std::string_view code);
std::optional<RelationKind> ParseRelationKind(std::string_view code);

inline constexpr ReType kAllReTypes[] = {
    ReType::kProper, ReType::kDefinite, ReType::kIndefinite,
    ReType::kDemonstrative, ReType::kPronoun};
inline constexpr GramFunction kAllGramFunctions[] = {
    GramFunction::kSubject, GramFunction::kObject, GramFunction::kOblique,
    GramFunction::kOther, GramFunction::kUnknown};

struct Position {
  std::size_t paragraph = 0;
  std::size_t sentence = 0;  // global sentence index
  std::size_t start_token = 0;
  std::size_t end_token = 0;  // inclusive
  std::size_t ordinal = 0;    // document-wide RE sequence number

  bool operator==(const Position &) const = default;
};

struct RefExpr {
  std::string id;
  Position position;
  std::string surface;
  std::string head_lemma;  // may be empty for pronouns and unparsed REs
  Gender gender = Gender::kUnknown;
  Number number = Number::kUnknown;
  ReType re_type = ReType::kDefinite;
  GramFunction gram_function = GramFunction::kUnknown;
  std::set<std::string> descriptors;
  bool unparsed = false;

  bool is_pronoun() const { return re_type == ReType::kPronoun; }

  bool operator==(const RefExpr &) const = default;
};

struct Document {
  std::string doc_id;
  std::size_t word_count = 0;
  std::size_t sentence_count = 0;
  std::size_t paragraph_count = 0;
  std::vector<RefExpr> res;  // sorted by ordinal

  bool operator==(const Document &) const = default;
};

struct KeyRelation {
  std::string from;
  RelationKind kind = RelationKind::kPartOf;
  std::string to;

  bool operator==(const KeyRelation &) const = default;
};

struct KeyPartition {
  std::map<std::string, std::string> assignment;  // RE id -> key-MR label
  std::vector<KeyRelation> relations;

  // Labels and their RE ids, ids in document order when `doc` is given.
  std::map<std::string, std::vector<std::string>> Cells(
      const Document *doc = nullptr) const;

  bool operator==(const KeyPartition &) const = default;
};

struct AnnotatedDocument {
  Document document;
  KeyPartition key;
};

struct CorpusStats {
  std::size_t words = 0;
  std::size_t res = 0;
  std::size_t mrs_key = 0;
  std::size_t nominal_res = 0;
  std::size_t pronoun_res = 0;
  std::size_t unparsed_res = 0;
  // res / mrs_key; absent when the key has no MR.
  std::optional<double> re_per_mr;

  // Ratio rendered to two decimals, or "-" when undefined.
  std::string RatioText() const;

  bool operator==(const CorpusStats &) const = default;
};

// One `KEY` record: a label and its RE ids in listed order.
struct KeyCell {
  std::string label;
  std::vector<std::string> ids;

  bool operator==(const KeyCell &) const = default;
};

// Reads a file holding only `KEY` records and comments (a response or key
// partition). Throws ParseError on any other record.
std::vector<KeyCell> ParseKeyRecords(std::string_view text);
std::string FormatKeyRecords(const std::vector<KeyCell> &cells);

// Parses one annotated document. Throws ParseError (with line number) for
// malformed records and ValidationError for invariant violations.
AnnotatedDocument ParseDocument(std::string_view text);

// Inverse of ParseDocument; ParseDocument(SerializeDocument(d, k)) == {d, k}.
std::string SerializeDocument(const Document &doc, const KeyPartition &key);

// Throws CoverageError unless every RE of `doc` has exactly one key label and
// the key names no other RE.
void CheckKeyCoverage(const Document &doc, const KeyPartition &key);

CorpusStats ComputeCorpusStats(const Document &doc, const KeyPartition &key);

}  // namespace mrref

#endif  // MRREF_CORPUS_H_

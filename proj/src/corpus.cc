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

#include "mrref/corpus.h"

#include <algorithm>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "mrref/errors.h"
#include "text_util.h"

namespace mrref {

namespace {

template <typename E, std::size_t N>
std::optional<E> FromCode(std::string_view code,
                          const std::pair<E, std::string_view> (&table)[N]) {
  for (const auto &[value, name] : table) {
    if (name == code) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view ToCodeIn(E value,
                          const std::pair<E, std::string_view> (&table)[N]) {
  for (const auto &[v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::pair<Gender, std::string_view> kGenderCodes[] = {
    {Gender::kMasculine, "m"}, {Gender::kFeminine, "f"},
    {Gender::kNeuter, "n"}, {Gender::kUnknown, "u"}};
constexpr std::pair<Number, std::string_view> kNumberCodes[] = {
    {Number::kSingular, "s"}, {Number::kPlural, "p"}, {Number::kUnknown, "u"}};
constexpr std::pair<ReType, std::string_view> kReTypeCodes[] = {
    {ReType::kProper, "proper"},
    {ReType::kDefinite, "definite"},
    {ReType::kIndefinite, "indefinite"},
    {ReType::kDemonstrative, "demonstrative"},
    {ReType::kPronoun, "pronoun"}};
constexpr std::pair<GramFunction, std::string_view> kFunctionCodes[] = {
    {GramFunction::kSubject, "subj"},
    {GramFunction::kObject, "obj"},
    {GramFunction::kOblique, "obl"},
    {GramFunction::kOther, "other"},
    {GramFunction::kUnknown, "u"}};
constexpr std::pair<RelationKind, std::string_view> kRelationCodes[] = {
    {RelationKind::kPartOf, "part-of"},
    {RelationKind::kComposedOf, "composed-of"},
    {RelationKind::kGroupedFrom, "grouped-from"}};

bool IsValidId(std::string_view id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == ',' || c == ':' || c == '=' || c == '"' || c == ' ' ||
           c == '\t';
  });
}

// `key=value` fields of a record, in order, after the record tag.
using FieldMap = std::unordered_map<std::string, std::string>;

class RecordParser {
 public:
  AnnotatedDocument Parse(std::string_view text) {
    text::ForEachRecord(text, [&](std::size_t line_no, std::string_view line) {
      line_ = line_no;
      auto fields = text::SplitFields(line);
      if (!fields) Fail("unterminated quote");
      if (fields->empty()) return;
      const std::string &tag = fields->front();
      if (tag == "DOC") {
        OnDoc(*fields);
      } else if (tag == "RE") {
        Expect(Stage::kRes, "RE");
        OnRe(*fields);
      } else if (tag == "KEY") {
        Expect(Stage::kKeys, "KEY");
        OnKey(line);
      } else if (tag == "REL") {
        Expect(Stage::kRels, "REL");
        OnRel(*fields);
      } else {
        Fail("unknown record '" + tag + "'");
      }
    });
    if (stage_ == Stage::kStart) throw ParseError(line_, "missing DOC record");
    if (!result_.key.assignment.empty()) {
      CheckKeyCoverage(result_.document, result_.key);
    }
    return std::move(result_);
  }

 private:
  enum class Stage { kStart, kRes, kKeys, kRels };

  [[noreturn]] void Fail(const std::string &message) const {
    throw ParseError(line_, message);
  }
  [[noreturn]] void Invalid(const std::string &message) const {
    throw ValidationError("line " + std::to_string(line_) + ": " + message);
  }

  void Expect(Stage stage, const char *tag) {
    if (stage_ == Stage::kStart) Fail(std::string(tag) + " before DOC");
    if (stage_ > stage) Fail(std::string(tag) + " record out of order");
    stage_ = stage;
  }

  FieldMap Fields(const std::vector<std::string> &fields, std::size_t from,
                  std::vector<std::string> *flags) const {
    FieldMap map;
    for (std::size_t i = from; i < fields.size(); ++i) {
      const std::string &f = fields[i];
      std::size_t eq = f.find('=');
      if (eq == std::string::npos) {
        if (flags == nullptr) Fail("expected key=value, got '" + f + "'");
        flags->push_back(f);
        continue;
      }
      std::string key = f.substr(0, eq);
      if (!map.emplace(key, f.substr(eq + 1)).second) {
        Fail("duplicate field '" + key + "'");
      }
    }
    return map;
  }

  std::string Take(FieldMap &map, const std::string &key) const {
    auto it = map.find(key);
    if (it == map.end()) Fail("missing field '" + key + "'");
    std::string value = std::move(it->second);
    map.erase(it);
    return value;
  }

  std::size_t TakeSize(FieldMap &map, const std::string &key) const {
    std::string value = Take(map, key);
    auto n = text::ParseSize(value);
    if (!n) Fail("field '" + key + "' is not a non-negative integer");
    return *n;
  }

  template <typename E>
  E TakeEnum(FieldMap &map, const std::string &key,
             std::optional<E> (*parse)(std::string_view)) const {
    std::string value = Take(map, key);
    auto e = parse(value);
    if (!e) Fail("bad value '" + value + "' for field '" + key + "'");
    return *e;
  }

  void RejectExtra(const FieldMap &map) const {
    if (!map.empty()) Fail("unknown field '" + map.begin()->first + "'");
  }

  void OnDoc(const std::vector<std::string> &fields) {
    if (stage_ != Stage::kStart) Fail("more than one DOC record");
    if (fields.size() < 2 || fields[1].find('=') != std::string::npos) {
      Fail("DOC record needs a document id");
    }
    Document &doc = result_.document;
    doc.doc_id = fields[1];
    FieldMap map = Fields(fields, 2, nullptr);
    doc.word_count = TakeSize(map, "words");
    doc.sentence_count = TakeSize(map, "sentences");
    doc.paragraph_count = TakeSize(map, "paragraphs");
    RejectExtra(map);
    stage_ = Stage::kRes;
  }

  void OnRe(const std::vector<std::string> &fields) {
    std::vector<std::string> flags;
    FieldMap map = Fields(fields, 1, &flags);
    RefExpr re;
    re.id = Take(map, "id");
    if (!IsValidId(re.id)) Fail("bad RE id '" + re.id + "'");
    re.position.paragraph = TakeSize(map, "par");
    re.position.sentence = TakeSize(map, "sent");
    std::string tok = Take(map, "tok");
    std::size_t dash = tok.find('-');
    auto a = text::ParseSize(std::string_view(tok).substr(0, dash));
    auto b = dash == std::string::npos
                 ? std::nullopt
                 : text::ParseSize(std::string_view(tok).substr(dash + 1));
    if (!a || !b) Fail("bad token span '" + tok + "'");
    if (*a > *b) Fail("token span " + tok + " starts after it ends");
    re.position.start_token = *a;
    re.position.end_token = *b;
    re.re_type = TakeEnum(map, "type", &ParseReType);
    re.gender = TakeEnum(map, "gender", &ParseGender);
    re.number = TakeEnum(map, "number", &ParseNumber);
    re.gram_function = TakeEnum(map, "func", &ParseGramFunction);
    for (const std::string &flag : flags) {
      if (flag != "unparsed") Fail("unknown flag '" + flag + "'");
      re.unparsed = true;
    }
    if (map.count("head")) re.head_lemma = Take(map, "head");
    if (map.count("desc")) {
      for (std::string &d : text::Split(Take(map, "desc"), ',')) {
        if (d.empty()) Fail("empty descriptor");
        re.descriptors.insert(std::move(d));
      }
    }
    re.surface = Take(map, "surface");
    RejectExtra(map);

    if (re.surface.empty()) Invalid("RE " + re.id + " has an empty surface");
    if (re.head_lemma.empty() && !re.is_pronoun() && !re.unparsed) {
      Invalid("RE " + re.id + " needs a head lemma");
    }
    const Document &doc = result_.document;
    if (re.position.sentence >= doc.sentence_count) {
      Invalid("RE " + re.id + " sentence out of range");
    }
    if (re.position.paragraph >= doc.paragraph_count) {
      Invalid("RE " + re.id + " paragraph out of range");
    }
    if (!doc.res.empty()) {
      const Position &prev = doc.res.back().position;
      const Position &cur = re.position;
      if (std::tie(cur.sentence, cur.start_token) <
              std::tie(prev.sentence, prev.start_token) ||
          cur.paragraph < prev.paragraph) {
        Invalid("RE " + re.id + " is out of text order");
      }
    }
    if (!re_ids_.insert(re.id).second) Invalid("duplicate RE id " + re.id);
    re.position.ordinal = doc.res.size();
    result_.document.res.push_back(std::move(re));
  }

  void OnKey(std::string_view line) {
    std::string_view rest = text::Trim(line.substr(3));
    std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) Fail("KEY record needs 'label:'");
    std::string label(text::Trim(rest.substr(0, colon)));
    if (!IsValidId(label)) Fail("bad key label '" + label + "'");
    std::vector<std::string> ids = text::Split(rest.substr(colon + 1), ',');
    if (ids.empty()) Fail("KEY " + label + " lists no RE");
    if (!labels_.insert(label).second) Invalid("duplicate key label " + label);
    for (std::string &id : ids) {
      if (!re_ids_.count(id)) {
        Invalid("KEY " + label + " references unknown RE " + id);
      }
      if (!result_.key.assignment.emplace(id, label).second) {
        Invalid("RE " + id + " appears in more than one key cell");
      }
    }
  }

  void OnRel(const std::vector<std::string> &fields) {
    if (fields.size() != 4) Fail("REL record needs <label> <kind> <label>");
    auto kind = ParseRelationKind(fields[2]);
    if (!kind) Fail("unknown relation kind '" + fields[2] + "'");
    for (const std::string *label : {&fields[1], &fields[3]}) {
      if (!labels_.count(*label)) Invalid("REL references unknown label " + *label);
    }
    result_.key.relations.push_back({fields[1], *kind, fields[3]});
  }

  AnnotatedDocument result_;
  Stage stage_ = Stage::kStart;
  std::size_t line_ = 0;
  std::unordered_set<std::string> re_ids_;
  std::unordered_set<std::string> labels_;
};

}  // namespace

std::string_view ToCode(Gender g) { return ToCodeIn(g, kGenderCodes); }
std::string_view ToCode(Number n) { return ToCodeIn(n, kNumberCodes); }
std::string_view ToCode(ReType t) { return ToCodeIn(t, kReTypeCodes); }
std::string_view ToCode(GramFunction f) { return ToCodeIn(f, kFunctionCodes); }
std::string_view ToCode(RelationKind k) { return ToCodeIn(k, kRelationCodes); }

std::optional<Gender> ParseGender(std::string_view code) {
  return FromCode(code, kGenderCodes);
}
std::optional<Number> ParseNumber(std::string_view code) {
  return FromCode(code, kNumberCodes);
}
std::optional<ReType> ParseReType(std::string_view code) {
  return FromCode(code, kReTypeCodes);
}
std::optional<GramFunction> ParseGramFunction(std::string_view code) {
  return FromCode(code, kFunctionCodes);
}
std::optional<RelationKind> ParseRelationKind(std::string_view code) {
  return FromCode(code, kRelationCodes);
}

std::map<std::string, std::vector<std::string>> KeyPartition::Cells(
    const Document *doc) const {
  std::map<std::string, std::vector<std::string>> cells;
  if (doc != nullptr) {
    for (const RefExpr &re : doc->res) {
      auto it = assignment.find(re.id);
      if (it != assignment.end()) cells[it->second].push_back(re.id);
    }
  } else {
    for (const auto &[id, label] : assignment) cells[label].push_back(id);
  }
  return cells;
}

std::string CorpusStats::RatioText() const {
  return re_per_mr ? text::FormatFixed2(*re_per_mr) : "-";
}

std::vector<KeyCell> ParseKeyRecords(std::string_view text) {
  std::vector<KeyCell> cells;
  std::unordered_set<std::string> labels;
  std::unordered_set<std::string> ids;
  text::ForEachRecord(text, [&](std::size_t line_no, std::string_view line) {
    if (line.substr(0, 4) != "KEY " && line.substr(0, 4) != "KEY\t") {
      throw ParseError(line_no, "expected a KEY record");
    }
    std::string_view rest = text::Trim(line.substr(4));
    std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, "KEY record needs 'label:'");
    }
    KeyCell cell;
    cell.label = std::string(text::Trim(rest.substr(0, colon)));
    if (!IsValidId(cell.label)) throw ParseError(line_no, "bad key label");
    cell.ids = text::Split(rest.substr(colon + 1), ',');
    if (cell.ids.empty()) throw ParseError(line_no, "KEY lists no RE");
    if (!labels.insert(cell.label).second) {
      throw ValidationError("duplicate key label " + cell.label);
    }
    for (const std::string &id : cell.ids) {
      if (!IsValidId(id)) throw ParseError(line_no, "bad RE id '" + id + "'");
      if (!ids.insert(id).second) {
        throw ValidationError("RE " + id + " appears in more than one cell");
      }
    }
    cells.push_back(std::move(cell));
  });
  return cells;
}

std::string FormatKeyRecords(const std::vector<KeyCell> &cells) {
  std::string out;
  for (const KeyCell &cell : cells) {
    out += "KEY " + cell.label + ":";
    for (std::size_t i = 0; i < cell.ids.size(); ++i) {
      out += (i == 0 ? " " : ",") + cell.ids[i];
    }
    out += "\n";
  }
  return out;
}

AnnotatedDocument ParseDocument(std::string_view text) {
  return RecordParser().Parse(text);
}

std::string SerializeDocument(const Document &doc, const KeyPartition &key) {
  std::ostringstream out;
  out << "DOC " << doc.doc_id << " words=" << doc.word_count
      << " sentences=" << doc.sentence_count
      << " paragraphs=" << doc.paragraph_count << "\n";
  for (const RefExpr &re : doc.res) {
    const Position &p = re.position;
    out << "RE id=" << re.id << " par=" << p.paragraph << " sent=" << p.sentence
        << " tok=" << p.start_token << "-" << p.end_token
        << " type=" << ToCode(re.re_type) << " gender=" << ToCode(re.gender)
        << " number=" << ToCode(re.number)
        << " func=" << ToCode(re.gram_function);
    if (!re.head_lemma.empty()) out << " head=" << re.head_lemma;
    if (!re.descriptors.empty()) {
      out << " desc=";
      bool first = true;
      for (const std::string &d : re.descriptors) {
        out << (first ? "" : ",") << d;
        first = false;
      }
    }
    if (re.unparsed) out << " unparsed";
    out << " surface=" << text::Quote(re.surface) << "\n";
  }
  // Cells in order of their first RE, so output is stable.
  std::vector<KeyCell> cells;
  std::unordered_map<std::string, std::size_t> index;
  for (const RefExpr &re : doc.res) {
    auto it = key.assignment.find(re.id);
    if (it == key.assignment.end()) continue;
    auto [slot, added] = index.emplace(it->second, cells.size());
    if (added) cells.push_back({it->second, {}});
    cells[slot->second].ids.push_back(re.id);
  }
  out << FormatKeyRecords(cells);
  for (const KeyRelation &rel : key.relations) {
    out << "REL " << rel.from << " " << ToCode(rel.kind) << " " << rel.to
        << "\n";
  }
  return out.str();
}

void CheckKeyCoverage(const Document &doc, const KeyPartition &key) {
  std::size_t covered = 0;
  for (const RefExpr &re : doc.res) {
    if (!key.assignment.count(re.id)) {
      throw CoverageError("key does not cover RE " + re.id);
    }
    ++covered;
  }
  if (covered != key.assignment.size()) {
    throw CoverageError("key names REs absent from document " + doc.doc_id);
  }
}

CorpusStats ComputeCorpusStats(const Document &doc, const KeyPartition &key) {
  CheckKeyCoverage(doc, key);
  CorpusStats stats;
  stats.words = doc.word_count;
  stats.res = doc.res.size();
  std::unordered_set<std::string> labels;
  for (const auto &[id, label] : key.assignment) labels.insert(label);
  stats.mrs_key = labels.size();
  for (const RefExpr &re : doc.res) {
    if (re.unparsed) {
      ++stats.unparsed_res;
    } else if (re.is_pronoun()) {
      ++stats.pronoun_res;
    } else {
      ++stats.nominal_res;
    }
  }
  if (stats.mrs_key > 0) {
    stats.re_per_mr =
        static_cast<double>(stats.res) / static_cast<double>(stats.mrs_key);
  }
  return stats;
}

}  // namespace mrref

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

#include "mrref/lexicon.h"

#include <functional>
#include <sstream>

#include "mrref/errors.h"
#include "text_util.h"

namespace mrref {

namespace {

// Computes each node's set of transitive parents; throws on a cycle.
std::map<std::string, std::set<std::string, std::less<>>, std::less<>>
CloseHierarchy(const std::map<std::string, std::set<std::string>> &parents) {
  std::map<std::string, std::set<std::string, std::less<>>, std::less<>> closure;
  enum class Mark { kVisiting, kDone };
  std::map<std::string, Mark> marks;
  std::function<void(const std::string &)> visit = [&](const std::string &node) {
    auto [it, fresh] = marks.emplace(node, Mark::kVisiting);
    if (!fresh) {
      if (it->second == Mark::kVisiting) {
        throw ValidationError("hyperonym cycle through '" + node + "'");
      }
      return;
    }
    auto &mine = closure[node];
    auto p = parents.find(node);
    if (p != parents.end()) {
      for (const std::string &parent : p->second) {
        visit(parent);
        mine.insert(parent);
        const auto &theirs = closure[parent];
        mine.insert(theirs.begin(), theirs.end());
      }
    }
    it->second = Mark::kDone;
  };
  for (const auto &[node, ps] : parents) visit(node);
  return closure;
}

}  // namespace

void Lexicon::Rebuild() {
  std::map<std::string, std::set<std::string>> parents;
  for (const auto &[child, parent] : edges_) {
    auto rep = [&](const std::string &l) -> std::string {
      auto it = class_of_.find(l);
      return it == class_of_.end() ? l : *classes_[it->second].begin();
    };
    std::string c = rep(child), p = rep(parent);
    if (c == p) {
      throw ValidationError("'" + child + "' would be its own hyperonym");
    }
    parents[c].insert(p);
  }
  ancestors_ = CloseHierarchy(parents);
}

void Lexicon::AddSynonyms(const std::vector<std::string> &lemmas) {
  std::set<std::string> cls;
  for (const std::string &l : lemmas) {
    if (l.empty()) throw ValidationError("empty lemma in synonym class");
    if (class_of_.count(l)) {
      throw ValidationError("lemma '" + l + "' is in two synonym classes");
    }
    cls.insert(l);
  }
  if (cls.empty()) return;
  auto saved_classes = classes_;
  auto saved_index = class_of_;
  std::size_t index = classes_.size();
  for (const std::string &l : cls) class_of_.emplace(l, index);
  classes_.push_back(std::move(cls));
  try {
    Rebuild();
  } catch (...) {
    classes_ = std::move(saved_classes);
    class_of_ = std::move(saved_index);
    Rebuild();
    throw;
  }
}

void Lexicon::AddHyperonym(const std::string &child, const std::string &parent) {
  if (child.empty() || parent.empty()) {
    throw ValidationError("empty lemma in hyperonym edge");
  }
  edges_.emplace_back(child, parent);
  try {
    Rebuild();
  } catch (...) {
    edges_.pop_back();
    Rebuild();
    throw;
  }
}

void Lexicon::AddCollective(const std::string &lemma, CollectiveEntry entry) {
  if (lemma.empty() || entry.member_lemma.empty()) {
    throw ValidationError("empty lemma in collective entry");
  }
  if (entry.count && *entry.count <= 0) {
    throw ValidationError("collective count for '" + lemma + "' must be positive");
  }
  collectives_[lemma] = std::move(entry);
}

void Lexicon::SetDefaultGender(const std::string &lemma, Gender gender) {
  genders_[lemma] = gender;
}

bool Lexicon::SemanticallyCompatible(std::string_view a,
                                     std::string_view b) const {
  if (a == b) return true;
  auto rep = [&](std::string_view l) -> std::string_view {
    auto it = class_of_.find(l);
    return it == class_of_.end() ? l : std::string_view(*classes_[it->second].begin());
  };
  std::string_view ra = rep(a), rb = rep(b);
  if (ra == rb) return true;
  auto above = [&](std::string_view lower, std::string_view upper) {
    auto it = ancestors_.find(lower);
    return it != ancestors_.end() && it->second.count(upper) > 0;
  };
  return above(ra, rb) || above(rb, ra);
}

std::optional<CollectiveEntry> Lexicon::CollectiveMembers(
    std::string_view lemma) const {
  auto it = collectives_.find(lemma);
  if (it == collectives_.end()) return std::nullopt;
  return it->second;
}

std::optional<Gender> Lexicon::DefaultGender(std::string_view lemma) const {
  auto it = genders_.find(lemma);
  if (it == genders_.end()) return std::nullopt;
  return it->second;
}

Lexicon LoadLexicon(std::string_view text) {
  Lexicon lex;
  text::ForEachRecord(text, [&](std::size_t line_no, std::string_view line) {
    auto fields = text::SplitFields(line);
    if (!fields || fields->empty()) throw ParseError(line_no, "bad record");
    const std::string &tag = fields->front();
    auto arity = [&](std::size_t n) {
      if (fields->size() != n + 1) {
        throw ParseError(line_no, tag + " expects " + std::to_string(n) +
                                      " argument(s)");
      }
    };
    try {
      if (tag == "SYN") {
        arity(1);
        std::vector<std::string> lemmas = text::Split((*fields)[1], ',');
        for (const std::string &l : lemmas) {
          if (l.empty()) throw ParseError(line_no, "empty lemma");
        }
        lex.AddSynonyms(lemmas);
      } else if (tag == "HYP") {
        arity(2);
        lex.AddHyperonym((*fields)[1], (*fields)[2]);
      } else if (tag == "COL") {
        arity(3);
        CollectiveEntry entry{(*fields)[2], std::nullopt};
        if ((*fields)[3] != "u") {
          auto n = text::ParseSize((*fields)[3]);
          if (!n || *n == 0 || *n > 1000000) {
            throw ParseError(line_no, "collective count must be a positive "
                                      "integer or 'u'");
          }
          entry.count = static_cast<int>(*n);
        }
        lex.AddCollective((*fields)[1], std::move(entry));
      } else if (tag == "GEN") {
        arity(2);
        auto g = ParseGender((*fields)[2]);
        if (!g || *g == Gender::kUnknown) {
          throw ParseError(line_no, "GEN expects m, f or n");
        }
        lex.SetDefaultGender((*fields)[1], *g);
      } else {
        throw ParseError(line_no, "unknown record '" + tag + "'");
      }
    } catch (const ParseError &) {
      throw;
    } catch (const ValidationError &e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
  });
  return lex;
}

std::string SerializeLexicon(const Lexicon &lex) {
  std::ostringstream out;
  for (const auto &cls : lex.synonym_classes()) {
    out << "SYN ";
    bool first = true;
    for (const std::string &l : cls) {
      out << (first ? "" : ",") << l;
      first = false;
    }
    out << "\n";
  }
  for (const auto &[child, parent] : lex.hyperonym_edges()) {
    out << "HYP " << child << " " << parent << "\n";
  }
  for (const auto &[lemma, entry] : lex.collectives()) {
    out << "COL " << lemma << " " << entry.member_lemma << " "
        << (entry.count ? std::to_string(*entry.count) : "u") << "\n";
  }
  for (const auto &[lemma, gender] : lex.default_genders()) {
    out << "GEN " << lemma << " " << ToCode(gender) << "\n";
  }
  return out.str();
}

}  // namespace mrref

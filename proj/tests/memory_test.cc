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

#include <gtest/gtest.h>

#include "mrref/errors.h"

namespace mrref {
namespace {

RefExpr Re(const std::string &id, std::size_t ordinal, ReType type,
           GramFunction func, const std::string &head = "x",
           Number number = Number::kSingular) {
  RefExpr re;
  re.id = id;
  re.position.ordinal = ordinal;
  re.position.sentence = ordinal;
  re.re_type = type;
  re.gram_function = func;
  re.number = number;
  if (type != ReType::kPronoun) re.head_lemma = head;
  re.surface = id;
  return re;
}

TEST(CreateMrTest, ActivationFromDefaultTable) {
  WorkingMemory memory(20);
  SalienceParams params;
  MrId a = memory.Create(Re("r1", 0, ReType::kProper, GramFunction::kSubject), params);
  EXPECT_EQ(memory.at(a).activation, 160);
  MrId b = memory.Create(Re("r2", 1, ReType::kPronoun, GramFunction::kOther), params);
  EXPECT_EQ(memory.at(b).activation, 40);
  EXPECT_NE(a, b);
  EXPECT_EQ(memory.active_count(), 2u);
  EXPECT_EQ(memory.at(a).re_list(), std::vector<std::string>{"r1"});
}

TEST(CreateMrTest, ResolvedReIsRejected) {
  WorkingMemory memory(20);
  SalienceParams params;
  RefExpr re = Re("r1", 0, ReType::kProper, GramFunction::kSubject);
  MrId a = memory.Create(re, params);
  EXPECT_THROW(memory.Create(re, params), ContractViolation);
  EXPECT_THROW(memory.Attach(a, re, params), ContractViolation);
}

TEST(AttachReTest, AddsBoostsAndLemmas) {
  WorkingMemory memory(20);
  SalienceParams params;
  params.initial_activation = 50;
  params.type_boost.fill(0);
  params.function_boost.fill(0);
  MrId a = memory.Create(Re("r1", 0, ReType::kProper, GramFunction::kUnknown, "anna"), params);
  EXPECT_EQ(memory.at(a).activation, 50);
  params = SalienceParams();
  memory.Attach(a, Re("r2", 1, ReType::kDefinite, GramFunction::kSubject, "woman"), params);
  EXPECT_EQ(memory.at(a).activation, 180);
  EXPECT_EQ(memory.at(a).lemma_summary, (std::set<std::string>{"anna", "woman"}));
  memory.Attach(a, Re("r3", 2, ReType::kPronoun, GramFunction::kObject), params);
  EXPECT_EQ(memory.at(a).lemma_summary, (std::set<std::string>{"anna", "woman"}));
  EXPECT_EQ(memory.at(a).re_list(), (std::vector<std::string>{"r1", "r2", "r3"}));
}

TEST(AttachReTest, ArchivedMrIsInaccessible) {
  WorkingMemory memory(1);
  SalienceParams params;
  MrId a = memory.Create(Re("r1", 0, ReType::kPronoun, GramFunction::kOther), params);
  memory.Create(Re("r2", 1, ReType::kProper, GramFunction::kSubject), params);
  memory.EnforceQuota();
  ASSERT_TRUE(memory.at(a).archived);
  EXPECT_THROW(memory.Attach(a, Re("r3", 2, ReType::kProper, GramFunction::kSubject), params),
               ContractViolation);
}

TEST(FuseMrsTest, MergesInOrdinalOrderWithMaxActivation) {
  WorkingMemory memory(20);
  SalienceParams params;
  params.type_boost.fill(0);
  params.function_boost.fill(0);
  params.initial_activation = 10;
  MrId a = memory.Create(Re("r1", 0, ReType::kProper, GramFunction::kSubject, "a"), params);
  params.initial_activation = 30;
  MrId b = memory.Create(Re("r2", 1, ReType::kProper, GramFunction::kSubject, "b"), params);
  memory.Attach(a, Re("r3", 2, ReType::kDefinite, GramFunction::kObject, "c"), params);
  MrId f = memory.Fuse(a, b);
  EXPECT_EQ(memory.at(f).re_list(), (std::vector<std::string>{"r1", "r2", "r3"}));
  EXPECT_EQ(memory.at(f).activation, 30);
  EXPECT_EQ(memory.at(f).lemma_summary, (std::set<std::string>{"a", "b", "c"}));
  EXPECT_FALSE(memory.contains(a));
  EXPECT_FALSE(memory.contains(b));
  EXPECT_EQ(memory.active_count(), 1u);
  EXPECT_THROW(memory.Fuse(f, f), ContractViolation);
}

TEST(FuseMrsTest, RelationsAreRedirected) {
  WorkingMemory memory(20);
  SalienceParams params;
  MrId a = memory.Create(Re("r1", 0, ReType::kProper, GramFunction::kSubject, "a"), params);
  MrId b = memory.Create(Re("r2", 1, ReType::kProper, GramFunction::kSubject, "b"), params);
  MrId c = memory.Create(Re("r3", 2, ReType::kProper, GramFunction::kSubject, "c"), params);
  MrId g = memory.Group(a, c, params);
  MrId g2 = memory.Group(a, b, params);
  MrId f = memory.Fuse(a, b);
  // g pointed at a: now at f. g2 pointed at a and b: now once at f.
  EXPECT_EQ(memory.at(g).relations,
            (std::vector<MrRelation>{{RelationKind::kComposedOf, f},
                                     {RelationKind::kComposedOf, c}}));
  EXPECT_EQ(memory.at(g2).relations,
            (std::vector<MrRelation>{{RelationKind::kComposedOf, f}}));
  for (const auto &[id, mr] : memory.mrs()) {
    for (const MrRelation &rel : mr.relations) EXPECT_NE(rel.target, id);
  }
}

TEST(PartitionMrTest, CreatesMembers) {
  WorkingMemory memory(50);
  SalienceParams params;
  Lexicon lex = LoadLexicon("COL team player 11\nCOL crowd person u\n");
  MrId team = memory.Create(Re("r1", 0, ReType::kDefinite, GramFunction::kSubject, "team"), params);
  auto members = memory.Partition(team, lex, params);
  ASSERT_EQ(members.size(), 11u);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const MentalRep &m = memory.at(members[i]);
    EXPECT_TRUE(m.provisional());
    EXPECT_EQ(m.relations, (std::vector<MrRelation>{{RelationKind::kPartOf, team}}));
    ASSERT_TRUE(m.member.has_value());
    EXPECT_EQ(m.member->lemma, "player");
    EXPECT_EQ(m.member->index, static_cast<int>(i + 1));
    EXPECT_EQ(m.activation, params.initial_activation);
  }
  EXPECT_EQ(memory.at(team).relations.size(), 11u);
  EXPECT_EQ(memory.at(team).re_list(), std::vector<std::string>{"r1"});

  MrId crowd = memory.Create(Re("r2", 1, ReType::kDefinite, GramFunction::kSubject, "crowd"), params);
  EXPECT_THROW(memory.Partition(crowd, lex, params), NotApplicable);
  MrId dog = memory.Create(Re("r3", 2, ReType::kDefinite, GramFunction::kSubject, "dog"), params);
  EXPECT_THROW(memory.Partition(dog, lex, params), NotApplicable);
}

TEST(GroupMrsTest, AddsOnePluralMr) {
  WorkingMemory memory(20);
  SalienceParams params;
  MrId a = memory.Create(Re("r1", 0, ReType::kProper, GramFunction::kSubject, "missx"), params);
  MrId b = memory.Create(Re("r2", 1, ReType::kProper, GramFunction::kObject, "mrsy"), params);
  MentalRep before_a = memory.at(a), before_b = memory.at(b);
  std::size_t size = memory.mrs().size();
  MrId g = memory.Group(a, b, params);
  EXPECT_EQ(memory.mrs().size(), size + 1);
  EXPECT_EQ(memory.at(a), before_a);
  EXPECT_EQ(memory.at(b), before_b);
  EXPECT_EQ(memory.at(g).synthetic_number, Number::kPlural);
  EXPECT_EQ(memory.at(g).activation, params.initial_activation);
  EXPECT_EQ(memory.at(g).relations,
            (std::vector<MrRelation>{{RelationKind::kComposedOf, a},
                                     {RelationKind::kComposedOf, b}}));
  EXPECT_THROW(memory.Group(a, a, params), ContractViolation);
}

TEST(ApplyDecayTest, Arithmetic) {
  SalienceParams params;
  params.type_boost.fill(0);
  params.function_boost.fill(0);
  params.initial_activation = 10;
  for (auto [decay, n, expected] : {std::tuple{0.5, 1u, 5.0}, std::tuple{0.5, 2u, 2.5},
                                    std::tuple{1.0, 3u, 10.0}, std::tuple{0.5, 0u, 10.0}}) {
    WorkingMemory memory(5);
    params.sentence_decay = decay;
    MrId a = memory.Create(Re("r1", 0, ReType::kProper, GramFunction::kSubject), params);
    memory.ApplyDecay(params, n);
    EXPECT_EQ(memory.at(a).activation, expected);
  }
}

TEST(ApplyDecayTest, ArchivedMrsAreFrozen) {
  SalienceParams params;
  WorkingMemory memory(1);
  MrId a = memory.Create(Re("r1", 0, ReType::kPronoun, GramFunction::kOther), params);
  memory.Create(Re("r2", 1, ReType::kProper, GramFunction::kSubject), params);
  memory.EnforceQuota();
  memory.ApplyDecay(params, 3);
  EXPECT_EQ(memory.at(a).activation, 40);
}

TEST(EnforceQuotaTest, ArchivesLeastActive) {
  SalienceParams params;
  params.type_boost.fill(0);
  params.function_boost.fill(0);
  WorkingMemory memory(20);
  std::vector<MrId> ids;
  for (int i = 0; i < 21; ++i) {
    params.initial_activation = 100 - i == 90 ? 1 : 100 - i;  // r11 is weakest
    ids.push_back(memory.Create(Re("r" + std::to_string(i), i, ReType::kProper,
                                   GramFunction::kSubject),
                                params));
  }
  memory.EnforceQuota();
  EXPECT_EQ(memory.active_count(), 20u);
  EXPECT_EQ(memory.archived_ids(), std::vector<MrId>{ids[10]});
}

TEST(EnforceQuotaTest, TieArchivesOlderId) {
  SalienceParams params;
  WorkingMemory memory(2);
  MrId a = memory.Create(Re("r1", 0, ReType::kProper, GramFunction::kSubject), params);
  MrId b = memory.Create(Re("r2", 1, ReType::kDefinite, GramFunction::kSubject), params);
  MrId c = memory.Create(Re("r3", 2, ReType::kDefinite, GramFunction::kSubject), params);
  memory.EnforceQuota();
  EXPECT_FALSE(memory.at(a).archived);
  EXPECT_TRUE(memory.at(b).archived);
  EXPECT_FALSE(memory.at(c).archived);
}

TEST(EnforceQuotaTest, UnderQuotaIsNoOp) {
  SalienceParams params;
  WorkingMemory memory(3);
  memory.Create(Re("r1", 0, ReType::kProper, GramFunction::kSubject), params);
  std::size_t events = memory.trace().size();
  memory.EnforceQuota();
  EXPECT_EQ(memory.trace().size(), events);
  EXPECT_THROW(WorkingMemory(0), ConfigError);
}

TEST(TraceTest, FormatParseRoundTrip) {
  SalienceParams params;
  params.sentence_decay = 0.3;
  Lexicon lex = LoadLexicon("COL team player 2\n");
  WorkingMemory memory(3);
  MrId a = memory.Create(Re("r1", 0, ReType::kDefinite, GramFunction::kSubject, "team"), params);
  MrId b = memory.Create(Re("r2", 1, ReType::kProper, GramFunction::kObject), params);
  memory.ApplyDecay(params, 1);
  memory.Attach(b, Re("r3", 2, ReType::kPronoun, GramFunction::kOblique), params);
  memory.Partition(a, lex, params);
  memory.Group(a, b, params);
  memory.EnforceQuota();
  memory.Fuse(a, b);
  std::string text = FormatTrace(memory.trace());
  EXPECT_EQ(ParseTrace(text), memory.trace());
  EXPECT_NE(text.find("EVENT create re=r1 mr=mr0 act=130\n"), std::string::npos);
  EXPECT_NE(text.find("EVENT partition re=- mr=mr0 act=0 members=mr2,mr3 lemma=player\n"),
            std::string::npos);
  EXPECT_THROW(ParseTrace("EVENT jump re=- mr=- act=0\n"), ParseError);
}

}  // namespace
}  // namespace mrref

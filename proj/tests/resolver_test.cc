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

#include <gtest/gtest.h>

#include <random>

#include "mrref/errors.h"
#include "mrref/scorer.h"
#include "synthetic.h"
#include "test_data.h"

namespace mrref {
namespace {

using testing::ReadData;

RefExpr Nominal(const std::string &id, const std::string &head,
                Gender g = Gender::kUnknown, Number n = Number::kUnknown,
                ReType type = ReType::kDefinite) {
  RefExpr re;
  re.id = id;
  re.head_lemma = head;
  re.surface = "the " + head;
  re.gender = g;
  re.number = n;
  re.re_type = type;
  return re;
}

RefExpr Pronoun(const std::string &id, Gender g, Number n) {
  RefExpr re;
  re.id = id;
  re.surface = "it";
  re.gender = g;
  re.number = n;
  re.re_type = ReType::kPronoun;
  return re;
}

MentalRep BuildMr(const std::vector<RefExpr> &res) {
  WorkingMemory memory(1);
  SalienceParams params;
  MrId id = memory.Create(res.front(), params);
  for (std::size_t i = 1; i < res.size(); ++i) memory.Attach(id, res[i], params);
  return memory.at(id);
}

TEST(AgreementTest, Cases) {
  using G = Gender;
  using N = Number;
  EXPECT_TRUE(AgreementCompatible(Nominal("a", "x", G::kMasculine, N::kSingular),
                                  Nominal("b", "y", G::kMasculine, N::kSingular)));
  EXPECT_FALSE(AgreementCompatible(Nominal("a", "x", G::kMasculine, N::kSingular),
                                   Nominal("b", "y", G::kFeminine, N::kSingular)));
  EXPECT_TRUE(AgreementCompatible(Nominal("a", "x", G::kUnknown, N::kPlural),
                                  Nominal("b", "y", G::kFeminine, N::kPlural)));
  EXPECT_FALSE(AgreementCompatible(Nominal("a", "x", G::kNeuter, N::kPlural),
                                   Nominal("b", "y", G::kNeuter, N::kSingular)));
}

TEST(ReCompatibleTest, Cases) {
  Lexicon lex = LoadLexicon("HYP car vehicle\n");
  RefExpr car = Nominal("a", "car", Gender::kMasculine, Number::kSingular);
  EXPECT_TRUE(ReCompatible(lex, car, car));
  EXPECT_TRUE(ReCompatible(lex, car, Nominal("b", "vehicle", Gender::kMasculine, Number::kSingular)));
  EXPECT_FALSE(ReCompatible(lex, car, Nominal("c", "house", Gender::kFeminine, Number::kSingular)));
  // Agreement holds but semantics fail.
  EXPECT_FALSE(ReCompatible(lex, car, Nominal("d", "house", Gender::kMasculine, Number::kSingular)));
  EXPECT_THROW(ReCompatible(lex, car, Pronoun("p", Gender::kMasculine, Number::kSingular)),
               ContractViolation);
}

TEST(ReCompatibleTest, DescriptorsUnparsedAndDefaultGender) {
  Lexicon lex = LoadLexicon("GEN duchess f\n");
  RefExpr widow = Nominal("a", "widow");
  widow.descriptors = {"duchess"};
  EXPECT_TRUE(ReCompatible(lex, widow, Nominal("b", "duchess")));
  EXPECT_TRUE(ReCompatible(lex, Nominal("b", "duchess"), widow));

  RefExpr odd = Nominal("c", "");
  odd.unparsed = true;
  EXPECT_TRUE(ReCompatible(lex, odd, Nominal("d", "anything")));

  // The lexicon's default gender fills an unknown gender.
  EXPECT_FALSE(ReCompatible(lex, Nominal("e", "duchess"),
                            Nominal("f", "duchess", Gender::kMasculine)));
}

class SelectionTest : public ::testing::Test {
 protected:
  Lexicon lex_ = LoadLexicon("HYP vittoria woman\n");
  RefExpr re_ = Nominal("q", "vittoria", Gender::kFeminine, Number::kSingular);
  MentalRep mixed_ = BuildMr({Nominal("a", "woman", Gender::kFeminine, Number::kSingular),
                              Pronoun("b", Gender::kFeminine, Number::kSingular),
                              Nominal("c", "lawyer", Gender::kFeminine, Number::kSingular)});
};

TEST_F(SelectionTest, AllVersusOne) {
  EXPECT_TRUE(SelectionPass(Heuristic::One(), lex_, mixed_, re_));
  EXPECT_FALSE(SelectionPass(Heuristic::All(), lex_, mixed_, re_));
  EXPECT_TRUE(SelectionPass(Heuristic::First(), lex_, mixed_, re_));
}

TEST_F(SelectionTest, RatioThreshold) {
  EXPECT_TRUE(SelectionPass(Heuristic::Ratio(50), lex_, mixed_, re_));
  EXPECT_FALSE(SelectionPass(Heuristic::Ratio(60), lex_, mixed_, re_));
  EXPECT_TRUE(SelectionPass(Heuristic::Ratio(0), lex_, mixed_, re_));
  EXPECT_FALSE(SelectionPass(Heuristic::Ratio(100), lex_, mixed_, re_));
}

TEST_F(SelectionTest, SingleReCollapsesHeuristics) {
  MentalRep single = BuildMr({Nominal("a", "woman", Gender::kFeminine, Number::kSingular)});
  for (Heuristic h : {Heuristic::First(), Heuristic::All(), Heuristic::One()}) {
    EXPECT_TRUE(SelectionPass(h, lex_, single, re_));
  }
}

TEST_F(SelectionTest, FirstSkipsLeadingPronoun) {
  MentalRep mr = BuildMr({Pronoun("a", Gender::kFeminine, Number::kSingular),
                          Nominal("b", "lawyer", Gender::kFeminine, Number::kSingular),
                          Nominal("c", "woman", Gender::kFeminine, Number::kSingular)});
  EXPECT_FALSE(SelectionPass(Heuristic::First(), lex_, mr, re_));
  EXPECT_TRUE(SelectionPass(Heuristic::One(), lex_, mr, re_));
}

TEST_F(SelectionTest, PronounOnlyMrUsesAgreement) {
  MentalRep mr = BuildMr({Pronoun("a", Gender::kFeminine, Number::kSingular)});
  for (Heuristic h : {Heuristic::First(), Heuristic::All(), Heuristic::One(), Heuristic::Ratio(50)}) {
    EXPECT_TRUE(SelectionPass(h, lex_, mr, re_));
    EXPECT_FALSE(SelectionPass(h, lex_, mr, Nominal("m", "duke", Gender::kMasculine)));
  }
}

TEST_F(SelectionTest, PronounAgreesWithMostRecentRe) {
  MentalRep mr = BuildMr({Nominal("a", "woman", Gender::kFeminine, Number::kSingular),
                          Nominal("b", "crew", Gender::kUnknown, Number::kPlural)});
  EXPECT_TRUE(SelectionPass(Heuristic::All(), lex_, mr, Pronoun("p", Gender::kMasculine, Number::kPlural)));
  EXPECT_FALSE(SelectionPass(Heuristic::All(), lex_, mr, Pronoun("p", Gender::kFeminine, Number::kSingular)));
}

// H2 => H4(X) => H3, with H4(0) = H3 and H4(100) = H2.
TEST(SelectionLawsTest, RandomInstances) {
  std::mt19937 rng(2024);
  const std::vector<std::string> lemmas = {"a", "b", "c", "d", "e", "f"};
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    Lexicon lex = testing::RandomLexicon(lemmas, rng);
    MentalRep mr = testing::RandomMr(size(rng), lemmas, rng);
    RefExpr re = testing::RandomRe("q", 99, lemmas, 0.0, rng);
    bool all = SelectionPass(Heuristic::All(), lex, mr, re);
    bool one = SelectionPass(Heuristic::One(), lex, mr, re);
    EXPECT_EQ(SelectionPass(Heuristic::Ratio(0), lex, mr, re), one);
    EXPECT_EQ(SelectionPass(Heuristic::Ratio(100), lex, mr, re), all);
    for (double x : {10.0, 25.0, 50.0, 75.0, 90.0}) {
      bool ratio = SelectionPass(Heuristic::Ratio(x), lex, mr, re);
      if (all) EXPECT_TRUE(ratio);
      if (ratio) EXPECT_TRUE(one);
    }
  }
}

TEST(ResolveDocumentTest, EmptyAndSingle) {
  Lexicon lex;
  ResolverConfig cfg;
  Document empty;
  EXPECT_TRUE(ResolveDocument(empty, cfg, lex).response.cells().empty());

  Document one;
  one.sentence_count = one.paragraph_count = 1;
  one.res.push_back(Nominal("r1", "x"));
  Resolution res = ResolveDocument(one, cfg, lex);
  ASSERT_EQ(res.mrs.size(), 1u);
  EXPECT_EQ(res.response.cells(), (std::vector<std::vector<std::string>>{{"r1"}}));
}

TEST(ResolveDocumentTest, Sample01WithOracleLexiconMatchesKey) {
  AnnotatedDocument ad = ParseDocument(ReadData("sample01.ann"));
  Lexicon lex = LoadLexicon(ReadData("sample01_oracle.lex"));
  for (std::size_t quota : {3u, 4u, 20u, 60u}) {
    ResolverConfig cfg;
    cfg.quota = quota;
    Resolution res = ResolveDocument(ad.document, cfg, lex);
    ScoreReport s = MucScore(Partition::FromKey(ad.key, &ad.document), res.response);
    EXPECT_EQ(s.recall, 1.0) << quota;
    EXPECT_EQ(s.precision, 1.0) << quota;
    EXPECT_EQ(res.response.cells(),
              (std::vector<std::vector<std::string>>{{"r1", "r3", "r5", "r7"}, {"r2", "r6"}, {"r4"}}));
  }
}

TEST(ResolveDocumentTest, IndefinitePolicy) {
  Document doc;
  doc.sentence_count = doc.paragraph_count = 1;
  doc.res = {Nominal("r1", "man", Gender::kMasculine, Number::kSingular, ReType::kProper),
             Nominal("r2", "man", Gender::kMasculine, Number::kSingular, ReType::kIndefinite)};
  doc.res[1].position.ordinal = 1;
  Lexicon lex;
  ResolverConfig cfg;
  EXPECT_EQ(ResolveDocument(doc, cfg, lex).response.cells().size(), 2u);
  cfg.indefinite_creates_new = false;
  EXPECT_EQ(ResolveDocument(doc, cfg, lex).response.cells().size(), 1u);
}

TEST(ResolveDocumentTest, EqualActivationPrefersMostRecentMr) {
  Document doc;
  doc.sentence_count = doc.paragraph_count = 1;
  doc.res = {Nominal("r1", "ann", Gender::kFeminine, Number::kSingular, ReType::kProper),
             Nominal("r2", "bea", Gender::kFeminine, Number::kSingular, ReType::kProper),
             Pronoun("r3", Gender::kFeminine, Number::kSingular)};
  for (std::size_t i = 0; i < 3; ++i) doc.res[i].position.ordinal = i;
  Resolution res = ResolveDocument(doc, ResolverConfig(), Lexicon());
  EXPECT_EQ(res.response.cells(),
            (std::vector<std::vector<std::string>>{{"r1"}, {"r2", "r3"}}));
}

TEST(ResolveDocumentTest, DecayAtSentenceBoundaries) {
  Document doc;
  doc.sentence_count = 4;
  doc.paragraph_count = 1;
  doc.res = {Nominal("r1", "ann", Gender::kFeminine, Number::kSingular, ReType::kProper),
             Nominal("r2", "bea", Gender::kFeminine, Number::kSingular, ReType::kProper)};
  doc.res[1].position.ordinal = 1;
  doc.res[1].position.sentence = 3;
  ResolverConfig cfg;
  Resolution res = ResolveDocument(doc, cfg, Lexicon());
  // 80 (proper) + 0 (unknown function), halved across three boundaries.
  EXPECT_EQ(res.mrs[0].activation, 10);
  EXPECT_EQ(res.mrs[1].activation, 80);
  int decays = 0;
  for (const TraceEvent &e : res.trace) decays += e.kind == TraceEvent::Kind::kDecay;
  EXPECT_EQ(decays, 1);
}

TEST(ResolverTest, GroupedMrReceivesPluralRe) {
  Lexicon lex = LoadLexicon("HYP missx woman\nHYP mrsy woman\n");
  ResolverConfig cfg;
  Resolver resolver(cfg, lex);
  RefExpr x = Nominal("r1", "missx", Gender::kFeminine, Number::kSingular, ReType::kProper);
  RefExpr y = Nominal("r2", "mrsy", Gender::kFeminine, Number::kSingular, ReType::kProper);
  y.position.ordinal = 1;
  MrId a = resolver.Resolve(x);
  MrId b = resolver.Resolve(y);
  ASSERT_NE(a, b);
  MrId group = resolver.memory().Group(a, b, cfg.salience);
  RefExpr women = Nominal("r3", "woman", Gender::kFeminine, Number::kPlural);
  women.position.ordinal = 2;
  EXPECT_EQ(resolver.Resolve(women), group);
  EXPECT_FALSE(resolver.memory().at(group).provisional());
  Resolution res = resolver.Finish();
  EXPECT_EQ(res.response.cells().size(), 3u);
}

TEST(ResolverTest, PartitionMembersReceiveMemberRe) {
  Lexicon lex = LoadLexicon("COL team player 11\n");
  ResolverConfig cfg;
  cfg.quota = 20;
  Resolver resolver(cfg, lex);
  MrId team = resolver.Resolve(Nominal("r1", "team", Gender::kNeuter, Number::kSingular));
  auto members = resolver.memory().Partition(team, lex, cfg.salience);
  RefExpr player = Nominal("r2", "player", Gender::kMasculine, Number::kSingular);
  player.position.ordinal = 1;
  MrId got = resolver.Resolve(player);
  EXPECT_NE(std::find(members.begin(), members.end(), got), members.end());
  const MentalRep &m = resolver.memory().at(got);
  EXPECT_EQ(m.relations, (std::vector<MrRelation>{{RelationKind::kPartOf, team}}));
  EXPECT_EQ(m.re_list(), std::vector<std::string>{"r2"});
  // Provisional members stay out of the response partition.
  EXPECT_EQ(resolver.Finish().response.cells().size(), 2u);
}

class ResolutionPropertiesTest : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(ResolutionPropertiesTest, InvariantsHold) {
  auto corpus = testing::MakeSyntheticCorpus(150, 12, GetParam());
  const Document &doc = corpus.doc.document;
  std::mt19937 rng(GetParam());
  ResolverConfig cfg;
  cfg.quota = 1 + rng() % 10;
  const Heuristic hs[] = {Heuristic::First(), Heuristic::All(), Heuristic::One(),
                          Heuristic::Ratio(40)};
  cfg.heuristic = hs[rng() % 4];
  cfg.salience.sentence_decay = 0.3 + 0.1 * (rng() % 7);

  Resolver resolver(cfg, corpus.lexicon);
  std::set<MrId> archived;
  std::size_t seen_events = 0;
  for (const RefExpr &re : doc.res) {
    resolver.Resolve(re);
    const WorkingMemory &mem = resolver.memory();
    EXPECT_LE(mem.active_count(), cfg.quota);
    for (const auto &[id, mr] : mem.mrs()) {
      EXPECT_GE(mr.activation, 0.0);
      if (archived.count(id)) EXPECT_TRUE(mr.archived);
    }
    for (; seen_events < mem.trace().size(); ++seen_events) {
      const TraceEvent &e = mem.trace()[seen_events];
      if (e.mr) EXPECT_FALSE(archived.count(*e.mr)) << "event on archived MR";
      if (e.kind == TraceEvent::Kind::kArchive) archived.insert(*e.mr);
    }
  }
  Resolution res = resolver.Finish();

  // Totality: every RE in exactly one cell.
  std::multiset<std::string> ids;
  for (const auto &cell : res.response.cells()) ids.insert(cell.begin(), cell.end());
  EXPECT_EQ(ids.size(), doc.res.size());
  for (const RefExpr &re : doc.res) EXPECT_EQ(ids.count(re.id), 1u);

  // Determinism.
  Resolution again = ResolveDocument(doc, cfg, corpus.lexicon);
  EXPECT_EQ(again.trace, res.trace);
  EXPECT_EQ(again.response, res.response);

  // Replay, from memory and from the text log.
  WorkingMemory replayed = ReplayTrace(doc, ParseTrace(FormatTrace(res.trace)), cfg);
  EXPECT_EQ(replayed.mrs(), resolver.memory().mrs());
  EXPECT_EQ(replayed.trace(), res.trace);
}

INSTANTIATE_TEST_SUITE_P(Seeds, ResolutionPropertiesTest, ::testing::Range(0u, 20u));

TEST(ReplayTraceTest, DetectsTampering) {
  AnnotatedDocument ad = ParseDocument(ReadData("sample01.ann"));
  Lexicon lex = LoadLexicon(ReadData("sample01_oracle.lex"));
  ResolverConfig cfg;
  cfg.quota = 2;
  Resolution res = ResolveDocument(ad.document, cfg, lex);
  EXPECT_NO_THROW(ReplayTrace(ad.document, res.trace, cfg));

  auto tampered = res.trace;
  tampered[1].activation += 1;
  EXPECT_THROW(ReplayTrace(ad.document, tampered, cfg), ValidationError);

  // Attaching to an MR after it was archived.
  auto late = res.trace;
  for (const TraceEvent &e : res.trace) {
    if (e.kind == TraceEvent::Kind::kArchive) {
      late.push_back({TraceEvent::Kind::kAttach, "r7", e.mr, 0, {}, {}});
      break;
    }
  }
  EXPECT_THROW(ReplayTrace(ad.document, late, cfg), ValidationError);
}

TEST(ReplayTraceTest, StoreOperationsReplay) {
  Lexicon lex = LoadLexicon("COL couple person 2\n");
  ResolverConfig cfg;
  cfg.quota = 4;
  Document doc;
  doc.sentence_count = 2;
  doc.paragraph_count = 1;
  doc.res = {Nominal("r1", "couple", Gender::kUnknown, Number::kSingular),
             Nominal("r2", "ann", Gender::kFeminine, Number::kSingular, ReType::kProper),
             Nominal("r3", "person", Gender::kFeminine, Number::kSingular)};
  for (std::size_t i = 0; i < 3; ++i) doc.res[i].position.ordinal = i;
  doc.res[2].position.sentence = 1;
  Resolver resolver(cfg, lex);
  MrId couple = resolver.Resolve(doc.res[0]);
  MrId ann = resolver.Resolve(doc.res[1]);
  resolver.memory().Partition(couple, lex, cfg.salience);
  resolver.memory().Group(couple, ann, cfg.salience);
  resolver.memory().EnforceQuota();
  resolver.Resolve(doc.res[2]);
  WorkingMemory replayed = ReplayTrace(doc, resolver.memory().trace(), cfg);
  EXPECT_EQ(replayed.mrs(), resolver.memory().mrs());
}

}  // namespace
}  // namespace mrref

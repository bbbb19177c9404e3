#include <gtest/gtest.h>

#include "convert.hpp"
#include "hl/hl.hpp"
#include "oracles.hpp"
#include "seed.hpp"

using namespace hl;
using K = FrameCondition::Kind;

namespace {

bool oracleRefutable(const Formula& phi, int maxSize) {
  const auto f = oracle::fromLibrary(phi);
  for (int n = 1; n <= maxSize; ++n)
    for (const auto& pr : oracle::allPairs(n, oracle::isStoFrame))
      if (!oracle::frameValid(n, pr.r1, pr.r2, f, oracle::upsets(pr.r1), false).valid) return true;
  return false;
}

}  // namespace

TEST(Search, SoundAxiomsHaveNoCountermodel) {
  for (const char* a : {"Ka", "Di", "Tr"}) {
    const auto r = countermodelSearch({}, axiom(a), 3);
    ASSERT_FALSE(isRefuted(r)) << a;
    EXPECT_EQ(std::get<NoCountermodelUpTo>(r).maxSize, 3);
  }
}

TEST(Search, AtomOnPoint) {
  const auto r = countermodelSearch({}, parseSto("p"), 1);
  ASSERT_TRUE(isRefuted(r));
  const auto& hit = std::get<Refuted<StoModel>>(r);
  EXPECT_EQ(hit.size, 1);
  EXPECT_EQ(hit.model.frame().preceq(), fixtures::point().preceq());
  EXPECT_EQ(hit.model.frame().sqsubset(), fixtures::point().sqsubset());
  EXPECT_TRUE(hit.model.valuation().at("p").empty());
}

TEST(Search, BoxOverSaIrNeedsThreeWorlds) {
  const auto two = countermodelSearch({axiom("Sa"), axiom("IR")}, axiom("Box"), 2);
  EXPECT_FALSE(isRefuted(two));
  const auto r = countermodelSearch({axiom("Sa"), axiom("IR")}, axiom("Box"), 4);
  ASSERT_TRUE(isRefuted(r));
  const auto& hit = std::get<Refuted<StoModel>>(r);
  EXPECT_EQ(hit.size, 3);
  const auto& f = hit.model.frame();
  EXPECT_TRUE(frameValid(f, axiom("Sa")));
  EXPECT_TRUE(frameValid(f, axiom("IR")));
  EXPECT_FALSE(truthSet(hit.model, axiom("Box")).contains(hit.world));
}

TEST(Search, InvalidBound) { EXPECT_THROW(countermodelSearch({}, parseSto("p"), 0), Error); }

TEST(Search, AgreesWithOracle) {
  const auto formulas = formulaSet(testing_support::seed(), 60);
  for (const auto& phi : formulas) ASSERT_EQ(isRefuted(countermodelSearch({}, phi, 2)), oracleRefutable(phi, 2)) << toString(phi);
}

TEST(Search, ParallelMatchesSequential) {
  const auto formulas = formulaSet(testing_support::seed() + 1, 20);
  SearchOptions par;
  par.jobs = 4;
  for (const auto& phi : formulas) {
    const auto a = countermodelSearch({axiom("Sa")}, phi, 3);
    const auto b = countermodelSearch({axiom("Sa")}, phi, 3, par);
    ASSERT_EQ(isRefuted(a), isRefuted(b));
    if (isRefuted(a)) {
      const auto& x = std::get<Refuted<StoModel>>(a);
      const auto& y = std::get<Refuted<StoModel>>(b);
      ASSERT_EQ(x.size, y.size);
      ASSERT_EQ(x.world, y.world);
      ASSERT_EQ(x.model.valuation(), y.model.valuation());
      ASSERT_EQ(x.model.frame().sqsubset(), y.model.frame().sqsubset());
    }
  }
}

TEST(Search, Monotone) {
  const auto formulas = formulaSet(testing_support::seed() + 2, 40);
  int refuted = 0;
  for (const auto& phi : formulas) {
    const auto small = countermodelSearch({}, phi, 2);
    if (!isRefuted(small)) continue;
    ++refuted;
    const auto big = countermodelSearch({}, phi, 3);
    ASSERT_TRUE(isRefuted(big));
    ASSERT_EQ(std::get<Refuted<StoModel>>(big).size, std::get<Refuted<StoModel>>(small).size);
  }
  EXPECT_GT(refuted, 0);
}

TEST(Correspondence, Verified) {
  EXPECT_TRUE(correspondenceCheck(axiom("Sa"), FrameCondition::of(K::SubPrec), 2));
  EXPECT_TRUE(correspondenceCheck(axiom("IR"), FrameCondition::of(K::IrSucc), 2));
  EXPECT_TRUE(correspondenceCheck(axiom("P"), FrameCondition::of(K::PTrans), 2));
  EXPECT_TRUE(correspondenceCheck(biAxiom("BHL"), FrameCondition::of(K::Bhl), 2));
}

TEST(Correspondence, CountsFrames) {
  const auto r = correspondenceCheck(axiom("Sa"), FrameCondition::of(K::SubPrec), 3);
  EXPECT_EQ(r.framesChecked, 2 + 34 + 2942);
}

TEST(Correspondence, WrongConditionGivesCounterexample) {
  const auto r = correspondenceCheck(axiom("Sa"), FrameCondition::of(K::IrSucc), 2);
  ASSERT_FALSE(r);
  ASSERT_TRUE(r.frame.has_value());
}

TEST(Correspondence, KindMismatch) {
  try {
    correspondenceCheck(axiom("Sa"), FrameCondition::of(K::Bhl), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::KindMismatch);
  }
}

TEST(Bridge, Examples) {
  const auto ka = deriveViaTranslation({}, axiom("Ka"), 2);
  EXPECT_TRUE(ka.agree());
  EXPECT_FALSE(isRefuted(ka.sto));
  const auto bot = deriveViaTranslation({}, Formula::bot(), 1);
  EXPECT_TRUE(bot.agree());
  EXPECT_TRUE(isRefuted(bot.sto) && isRefuted(bot.bimodal));
  const auto box = deriveViaTranslation({axiom("Sa"), axiom("IR")}, axiom("Box"), 4);
  EXPECT_TRUE(box.agree());
  ASSERT_TRUE(isRefuted(box.bimodal));
  EXPECT_EQ(box.witnessTransfers, std::optional<bool>(true));
}

TEST(Bridge, AgreementOnRandomGoals) {
  const auto formulas = formulaSet(testing_support::seed() + 3, 25);
  for (const auto& phi : formulas) {
    ASSERT_TRUE(deriveViaTranslation({}, phi, 2).agree()) << toString(phi);
    ASSERT_TRUE(deriveViaTranslation({axiom("Sa")}, phi, 2).agree()) << toString(phi);
  }
}

TEST(AxiomList, Parsing) {
  const auto xs = parseAxiomList("# comment\n@Sa\n\n  p -> q   # trailing\n@IR\n");
  EXPECT_EQ(xs, (std::vector<Formula>{axiom("Sa"), parseSto("p -> q"), axiom("IR")}));
  try {
    parseAxiomList("p\np &\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parseAxiomList("@BHL\n"), Error);
}

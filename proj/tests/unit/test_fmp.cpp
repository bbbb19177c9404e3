#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "convert.hpp"
#include "hl/hl.hpp"
#include "hl/json_io.hpp"
#include "oracles.hpp"
#include "seed.hpp"

using namespace hl;

namespace {

BiModel ieleS4KModel() {
  std::ifstream in(std::string(HL_DATA_DIR) + "/iele_s4k_model.json");
  const auto raw = io::rawModelFromJson(io::json::parse(in));
  return BiModel(validateS4K(raw.frame), raw.valuation);
}

S4KFrame frame(int n, std::initializer_list<std::pair<int, int>> ri, std::initializer_list<std::pair<int, int>> rm) {
  return S4KFrame::validate(defaultWorldNames(n), Relation::fromPairs(n, ri).reflexiveClosure(), Relation::fromPairs(n, rm));
}

// Partition computed from oracle truth sets of every subformula.
std::vector<int> oraclePartition(const BiModel& m, const BiFormula& phi) {
  const auto om = convert::model(m);
  std::vector<oracle::Set> truth;
  for (const auto& s : subformulas(phi)) truth.push_back(oracle::truthSet(om, oracle::fromLibrary(s), true));
  const int n = m.frame().size();
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    for (int y = x; y < n; ++y) {
      bool same = true;
      for (const auto& t : truth) same = same && t[x] == t[y];
      if (same && cls[y] < 0) cls[y] = next;
    }
    ++next;
  }
  return cls;
}

// A random transitive-R_m BHL model together with a formula it refutes.
struct Case {
  BiModel model;
  BiFormula phi;
};

std::optional<Case> refutingCase(Rng& rng, int maxWorlds) {
  const auto f = randomTransitiveBhlFrame(rng, 1 + rng.below(maxWorlds));
  const BiModel m(f, randomValuation(rng, f.size()));
  for (int tries = 0; tries < 10; ++tries) {
    const auto phi = randomBiFormula(rng, 4);
    if (truthSetBi(m, phi) != f.all()) return Case{m, phi};
  }
  return std::nullopt;
}

}  // namespace

TEST(Partition, Examples) {
  const auto pt = BiModel(frame(1, {}, {}), {});
  EXPECT_EQ(phiPartition(pt, parseBi("p")).classCount, 1);
  const auto two = BiModel(frame(2, {}, {}), {{"p", WorldSet::singleton(0)}});
  const auto p = phiPartition(two, parseBi("p"));
  EXPECT_EQ(p.classCount, 2);
  EXPECT_EQ(p.classOf, (std::vector<int>{0, 1}));
}

TEST(Partition, IeleTranslatedBox) {
  const auto m = ieleS4KModel();
  const auto phi = gmt(axiom("Box"));
  const auto p = phiPartition(m, phi);
  EXPECT_EQ(p.classOf, oraclePartition(m, phi));
  EXPECT_TRUE(p.equivalent(0, 1));  // w and x agree on every subformula
  EXPECT_FALSE(p.equivalent(0, 3));
}

TEST(Partition, AgreesWithOracle) {
  Rng rng(testing_support::seed());
  for (int i = 0; i < 300; ++i) {
    const auto f = randomTransitiveBhlFrame(rng, 1 + rng.below(5));
    const BiModel m(f, randomValuation(rng, f.size()));
    const auto phi = randomBiFormula(rng, 4);
    const auto p = phiPartition(m, phi);
    ASSERT_EQ(p.classOf, oraclePartition(m, phi)) << toString(phi);
    ASSERT_LE(std::log2(p.classCount), static_cast<double>(subformulas(phi).size()));
  }
}

TEST(Maximal, Examples) {
  const auto anti = BiModel(frame(3, {}, {}), {{"p", WorldSet::singleton(1)}});
  EXPECT_EQ(maximalStates(anti, parseBi("p"), Modality::I), WorldSet::full(3));
  const auto chain = BiModel(frame(2, {{0, 1}}, {}), {});
  EXPECT_EQ(maximalStates(chain, parseBi("p"), Modality::I), WorldSet::singleton(1));
  const auto cluster = BiModel(frame(2, {{0, 1}, {1, 0}}, {}), {});
  EXPECT_EQ(maximalStates(cluster, parseBi("p"), Modality::I), WorldSet{});
}

TEST(Maximal, RequiresTransitiveRm) {
  const auto m = BiModel(frame(3, {}, {{0, 1}, {1, 2}}), {});
  try {
    maximalStates(m, parseBi("p"), Modality::M);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RmNotTransitive);
  }
  EXPECT_THROW(buildXOmega(m, parseBi("p")), Error);
}

TEST(Maximal, MatchesDefinition) {
  Rng rng(testing_support::seed() + 1);
  for (int i = 0; i < 200; ++i) {
    const auto f = randomTransitiveBhlFrame(rng, 1 + rng.below(5));
    const BiModel m(f, randomValuation(rng, f.size()));
    const auto phi = randomBiFormula(rng, 3);
    const auto cls = oraclePartition(m, phi);
    for (Modality r : {Modality::I, Modality::M}) {
      const auto got = maximalStates(m, phi, r);
      const auto& rel = relationOf(f, r);
      for (int x = 0; x < f.size(); ++x) {
        bool want = true;
        for (int y = 0; y < f.size(); ++y)
          if (y != x && rel.holds(x, y) && cls[x] == cls[y]) want = false;
        ASSERT_EQ(got.contains(x), want);
      }
    }
  }
}

TEST(XOmega, IsolatedPoint) {
  const auto m = BiModel(frame(1, {}, {}), {});
  const auto x = buildXOmega(m, parseBi("p"));
  EXPECT_EQ(x.states, WorldSet::singleton(0));
  EXPECT_EQ(x.root, 0);
}

TEST(XOmega, NotRefuted) {
  try {
    buildXOmega(ieleS4KModel(), gmt(axiom("Box")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotRefuted);
  }
}

TEST(XOmega, HugOnIele) {
  const auto f = fixtures::iele();
  const auto cv = frameValid(f, axiom("Hug"));
  ASSERT_FALSE(cv.valid);
  const BiModel m(asS4K(f), cv.counterValuation);
  const auto phi = gmt(axiom("Hug"));
  const auto x = buildXOmega(m, phi);
  EXPECT_TRUE(verifySubmodelTruth(m, x.states, phi).ok());
  const auto sub = restrictModel(m, x.states);
  const auto rootPos = std::find(sub.original.begin(), sub.original.end(), x.root) - sub.original.begin();
  EXPECT_FALSE(truthSetBi(sub.model, phi).contains(static_cast<int>(rootPos)));
  const auto c = cofinalExtension(m, phi, x);
  EXPECT_TRUE(isRmCofinal(m.frame(), c.states));
  EXPECT_TRUE(verifySubmodelTruth(m, c.states, phi).ok());
}

TEST(Cofinal, SingleFinalClusterNeedsOneRepresentative) {
  // r sees the cluster {a, b} along R_m; p is false everywhere.
  const auto f = frame(3, {}, {{0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 1}, {2, 2}});
  const BiModel m(f, {});
  const auto phi = parseBi("p");
  const auto x = buildXOmega(m, phi);
  EXPECT_EQ(x.states, WorldSet::of(std::vector{0, 1}));
  const auto c = cofinalExtension(m, phi, x);
  ASSERT_EQ(c.clusters.size(), 1u);
  EXPECT_EQ(c.clusters[0].cluster, WorldSet::of(std::vector{1, 2}));
  EXPECT_EQ(c.clusters[0].levels.front().size(), 1);
  EXPECT_EQ(c.states, x.states);
}

TEST(Submodel, Examples) {
  const auto m = BiModel(frame(2, {{0, 1}}, {}), {{"p", WorldSet::singleton(1)}});
  const auto phi = parseBi("p");
  EXPECT_TRUE(verifySubmodelTruth(m, WorldSet::full(2), phi).ok());
  const auto r = verifySubmodelTruth(m, WorldSet::singleton(0), phi);
  ASSERT_EQ(r.preconditionFailures.size(), 1u);
  EXPECT_EQ(r.preconditionFailures[0].y, 0);
  EXPECT_EQ(r.preconditionFailures[0].x, 1);
  EXPECT_EQ(r.preconditionFailures[0].rel, Modality::I);
}

TEST(Submodel, DroppingAWitnessBreaksTruth) {
  // [i]p fails at 0 only because of 1; without 1 it holds.
  const auto m = BiModel(frame(2, {{0, 1}}, {}), {{"p", WorldSet::singleton(0)}});
  const auto r = verifySubmodelTruth(m, WorldSet::singleton(0), parseBi("[i]p"));
  EXPECT_FALSE(r.preconditionHolds());
  EXPECT_FALSE(r.agreementHolds());
}

TEST(Properties, WholeModelAlwaysPasses) {
  Rng rng(testing_support::seed() + 2);
  for (int i = 0; i < 200; ++i) {
    const auto f = randomTransitiveBhlFrame(rng, 1 + rng.below(5));
    const BiModel m(f, randomValuation(rng, f.size()));
    ASSERT_TRUE(verifySubmodelTruth(m, f.all(), randomBiFormula(rng, 4)).ok());
  }
}

TEST(Properties, ConstructionRefutesOnCofinalSubmodel) {
  Rng rng(testing_support::seed() + 3);
  int runs = 0;
  while (runs < 200) {
    const auto c = refutingCase(rng, 5);
    if (!c) continue;
    ++runs;
    const auto& [m, phi] = *c;
    const auto x = buildXOmega(m, phi);
    ASSERT_FALSE(truthSetBi(m, phi).contains(x.root));
    const auto ext = cofinalExtension(m, phi, x);
    ASSERT_TRUE(x.states.subsetOf(ext.states));
    ASSERT_TRUE(isRmCofinal(m.frame(), ext.states)) << toString(phi);
    const auto rep = verifySubmodelTruth(m, ext.states, phi);
    ASSERT_TRUE(rep.ok()) << toString(phi);
    const auto sub = restrictModel(m, ext.states);
    ASSERT_NE(truthSetBi(sub.model, phi), sub.model.frame().all());
    const double bound = std::pow(ext.classCount, ext.classCount + 1);
    for (const auto& fc : ext.clusters) ASSERT_LE(fc.states().size(), bound);
  }
}

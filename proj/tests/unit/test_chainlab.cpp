#include <doctest.h>

#include <set>
#include <string>
#include <tuple>

#include "skein/chainlab.hpp"

using namespace skein;

namespace {

int trunc(int a, int b) { return defaultTruncation(a, b); }

// (k, odd set) of every object in the filtered complex.
std::pair<int, std::vector<int>> position(const FilteredComplex& f, int i) {
  return {f.blocks[i].k, f.zeta.objects[i].odd};
}

using Arrow = std::pair<std::pair<int, std::vector<int>>, std::pair<int, std::vector<int>>>;

std::set<Arrow> arrows(const FilteredComplex& f, const ComplexMap& m) {
  std::set<Arrow> out;
  for (const auto& [k, g] : m.parts) out.insert({position(f, k.first), position(f, k.second)});
  return out;
}

Arrow arrow(int k1, std::vector<int> j1, int k2, std::vector<int> j2) { return {{k1, j1}, {k2, j2}}; }

Web dividedF(int a, int b, int r) { return Web::split(2, {a, b}, r, b - r).then(Web::merge(1, {a, r, b - r})); }

}  // namespace

TEST_CASE("complex maps compose, add and restrict") {
  const ChainComplex x = rickard(1, 1, true, trunc(1, 1));
  REQUIRE(x.size() == 2);
  const ComplexMap id = identityMap(x);
  CHECK(compose(id, x.differential) == x.differential);
  CHECK(compose(x.differential, id) == x.differential);
  CHECK((x.differential - x.differential).isZero());
  CHECK(x.differential.scaled(0).isZero());
  CHECK(id.restricted({0}).parts.size() == 1);
  CHECK(compose(x.differential, x.differential).isZero());
  const ComplexMap twice = x.differential + x.differential;
  CHECK(twice == x.differential.scaled(2));
}

TEST_CASE("rickard complexes have the expected shifts and d^2 = 0") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (bool positive : {true, false}) {
        const ChainComplex x = rickard(a, b, positive, trunc(a, b));
        validate(x);
        CHECK(x.size() == std::min(a, b) + 1);
        CHECK_FALSE(dSquaredWitness(x));
        CHECK(eulerCharacteristic(x) == eulerCrossing(a, b, positive));
      }
  const ChainComplex x = rickard(2, 1, true, trunc(2, 1));
  CHECK(x.objects[1].shift == GradingShift{-1, 1});
}

TEST_CASE("shifted rickard complexes") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int ell = 0; ell <= 2; ++ell) {
        // c - d = ell on the same total color.
        const int total = a + b;
        if ((total + ell) % 2) continue;
        const int c = (total + ell) / 2, d = total - c;
        if (d < 0) continue;
        const ChainComplex x = shiftedRickard(c, d, a, b, trunc(a, b));
        validate(x);
        CHECK_FALSE(dSquaredWitness(x));
      }
  CHECK_THROWS(shiftedRickard(1, 1, 1, 2, 10));
  const ChainComplex mcs = shiftedRickard(2, 2, 2, 2, trunc(2, 2));
  CHECK(mcs.objects[2].shift == GradingShift{-2, 2});
}

TEST_CASE("koszul complexes") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      const ChainComplex mcs = shiftedRickard(a, b, a, b, trunc(a, b));
      const ChainComplex x = kmcs(a, b, trunc(a, b));
      validate(x);
      CHECK(x.size() == mcs.size() * (1 << b));
      CHECK_FALSE(dSquaredWitness(x));
      // The exterior factor contributes prod_i (1 - q^{2i}).
      Laurent factor = Laurent::monomial(0);
      for (int i = 1; i <= b; ++i) factor *= Laurent::monomial(0) - Laurent::monomial(2 * i);
      CHECK(eulerCharacteristic(x) == factor * eulerCharacteristic(mcs));
    }
  CHECK_THROWS(koszul(rickard(1, 1, true, 10), 2));
  const ChainComplex x = rickard(1, 1, true, 10);
  CHECK(koszul(x, 0).size() == x.size());
}

TEST_CASE("zeta transform is invertible and block triangular") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      const FilteredComplex f = zetaTransform(kmcs(a, b, trunc(a, b)), a, b);
      CHECK(compose(f.fromXi, f.toXi) == identityMap(f.xi));
      CHECK(compose(f.toXi, f.fromXi) == identityMap(f.xi));
      validate(f.zeta);
      CHECK_FALSE(dSquaredWitness(f.zeta));
      CHECK(f.dv + f.dh + f.dc == f.zeta.differential);
      const PatternReport pattern = zetaPattern(f);
      CAPTURE(pattern.witness);
      CHECK(pattern.triangular);
      CHECK(pattern.acrossPattern);
      CHECK(pattern.verticalEntries);
    }
}

TEST_CASE("zeta pattern detects a tampered differential") {
  FilteredComplex f = zetaTransform(kmcs(2, 2, trunc(2, 2)), 2, 2);
  REQUIRE(zetaPattern(f).pass());
  // Moving a horizontal component into the connecting part breaks triangularity.
  const auto first = *f.dh.parts.begin();
  f.dh.parts.erase(first.first);
  f.dc.parts.insert(first);
  CHECK_FALSE(zetaPattern(f).triangular);
  // Doubling one vertical component keeps proportionality; adding an identity breaks it.
  FilteredComplex g = zetaTransform(kmcs(2, 2, trunc(2, 2)), 2, 2);
  auto& entry = g.dv.parts.begin()->second;
  entry = entry.scaled(2);
  CHECK(zetaPattern(g).verticalEntries);
  const ChainObject& src = g.zeta.objects[g.dv.parts.begin()->first.first];
  const BimodulePtr& B = src.bimodule;
  entry = entry + multiplicationMap(B, B->elementary(entry.qdegree / 2, B->alphabet("X1")));
  CHECK_FALSE(zetaPattern(g).verticalEntries);
}

TEST_CASE("the (2,2) filtered complex matches the worked example") {
  const FilteredComplex f = zetaTransform(kmcs(2, 2, trunc(2, 2)), 2, 2);
  const std::set<Arrow> vertical{
      arrow(2, {1, 2}, 2, {1}), arrow(2, {1, 2}, 2, {2}), arrow(2, {2}, 2, {}),
      arrow(2, {1}, 2, {}),     arrow(1, {1, 2}, 1, {2}), arrow(1, {1}, 1, {})};
  const std::set<Arrow> horizontal{
      arrow(2, {2}, 1, {1}), arrow(1, {2}, 0, {1}), arrow(1, {2}, 0, {2}),
      arrow(2, {1}, 1, {1}), arrow(2, {}, 1, {}),   arrow(1, {}, 0, {})};
  const std::set<Arrow> connecting{arrow(2, {1, 2}, 1, {1, 2}), arrow(1, {1, 2}, 0, {1, 2}), arrow(2, {2}, 1, {2}),
                                   arrow(1, {1}, 0, {1})};
  CHECK(arrows(f, f.dv) == vertical);
  CHECK(arrows(f, f.dh) == horizontal);
  CHECK(arrows(f, f.dc) == connecting);
  // Shifts of the objects without zeta generators.
  for (int i = 0; i < f.zeta.size(); ++i)
    if (f.zeta.objects[i].odd.empty()) CHECK(f.zeta.objects[i].shift.q == -2 - (2 - f.blocks[i].k));
}

TEST_CASE("theta commutes with the block differential up to h_r") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) {
      const FilteredComplex f = zetaTransform(kmcs(a, b, trunc(a, b)), a, b);
      for (int s = 0; s <= b; ++s)
        for (int r = 1; r <= b; ++r) {
          const ThetaReport rep = thetaCheck(f, s, r);
          CAPTURE(a);
          CAPTURE(b);
          CAPTURE(s);
          CAPTURE(r);
          CAPTURE(rep.witness);
          CHECK(rep.splitClean);
          CHECK(rep.pass);
        }
    }
}

TEST_CASE("mccs blocks and the full twist") {
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      const FilteredComplex f = zetaTransform(kmcs(a, b, trunc(a, b)), a, b);
      for (int s = 0; s <= b; ++s) {
        const ChainComplex m = mccs(f, s);
        validate(m);
        CHECK_FALSE(dSquaredWitness(m));
      }
      const StructureReport st = verifyMainStructure(f);
      CAPTURE(st.witness);
      CHECK(st.objects);
      CHECK(st.blocks);
      CHECK(st.triangular);
    }
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}}) {
    const FilteredComplex f = zetaTransform(kmcs(a, b, trunc(a, b)), a, b);
    const ColoredBraidWord twist{{a, b}, {{1, 1}, {1, 1}}};
    CHECK(eulerCharacteristic(mccs(f, 0)) == cable(twist));
  }
}

TEST_CASE("rows of the s = 0 block") {
  const int a = 2, b = 1;
  const FilteredComplex f = zetaTransform(kmcs(a, b, trunc(a, b)), a, b);
  for (int l = 0; l <= b; ++l) {
    const ChainComplex r = row(f, l);
    CHECK_FALSE(dSquaredWitness(r));
    const Laurent scale = Laurent::monomial(-(b - l), 0, (b - l) % 2 ? -1 : 1);
    const AlgebroidMorphism expected =
        scale * (webClass(Ladder{b, a, l, a - b + l}.web()) * eulerCrossing(a, b, true));
    CHECK(eulerCharacteristic(r) == expected);
  }
}

TEST_CASE("dot sliding is null-homotopic") {
  for (auto [c, d, a, b] : std::vector<std::array<int, 4>>{{1, 1, 1, 1}, {2, 2, 2, 2}, {3, 1, 2, 2}})
    for (int r : {0, 1}) {
      const ChainComplex x = shiftedRickard(c, d, a, b, trunc(a, b));
      const int degree = a - d + r + 1;
      const ComplexMap f = centralAction(
          x, [degree](const GradedBimodule& B) { return B.complete(degree, B.alphabet("X2") - B.alphabet("X1'")); });
      REQUIRE_FALSE(f.isZero());
      const HomotopyResult h = nullHomotopy(x, f, trunc(a, b));
      REQUIRE(h.homotopy);
      CHECK(h.stabilized);
      CHECK(commutator(x, x, *h.homotopy) == f);
    }
}

TEST_CASE("null homotopies: trivial and impossible cases") {
  const ChainComplex x = shiftedRickard(1, 1, 1, 1, 10);
  const HomotopyResult zero = nullHomotopy(x, ComplexMap{0, 0, {}}, 10);
  REQUIRE(zero.homotopy);
  CHECK(zero.homotopy->isZero());

  ChainComplex single;
  single.add({GradedBimodule::of(Ladder{1, 1, 0, 0}.web()), {}, "W0", 0, {}});
  const ComplexMap e1 = centralAction(single, [](const GradedBimodule& B) { return B.elementary(1, B.alphabet("X1")); });
  CHECK_FALSE(nullHomotopy(single, e1, 10).homotopy);
}

TEST_CASE("equivalence certificates") {
  const ChainComplex x = rickard(1, 1, true, 10);
  const EquivalenceResult self = equivalenceCertificate(x, x, 10);
  REQUIRE(self.certificate);

  const ChainComplex model = fullTwistModel(12);
  validate(model);
  CHECK_FALSE(dSquaredWitness(model));
  const FilteredComplex f = zetaTransform(kmcs(1, 1, 12), 1, 1);
  const ChainComplex twist = mccs(f, 0);
  const EquivalenceResult cert = equivalenceCertificate(twist, model, 12);
  REQUIRE(cert.certificate);
  CHECK(cert.stabilized);
  const auto& c = *cert.certificate;
  CHECK(compose(c.g, c.f) - identityMap(twist) == commutator(twist, twist, c.hA));
  CHECK(compose(c.f, c.g) - identityMap(model) == commutator(model, model, c.hB));

  // A one-term complex is not equivalent to zero.
  ChainComplex single;
  single.add({GradedBimodule::of(Web::identity({1, 1})), {}, "id", 0, {}});
  CHECK_FALSE(equivalenceCertificate(single, ChainComplex{}, 10).certificate);
}

TEST_CASE("shifted rickard with a < d is contractible") {
  const ChainComplex x = shiftedRickard(3, 2, 1, 4, trunc(1, 4));
  const EquivalenceResult e = equivalenceCertificate(x, ChainComplex{}, trunc(1, 4));
  REQUIRE(e.certificate);
  CHECK(e.stabilized);
}

TEST_CASE("thick digon") {
  for (int r = 0; r <= 3; ++r)
    for (int s = 0; r + s <= 3; ++s)
      for (int a = 0; a <= 1; ++a) {
        const int b = r + s;
        const Web twoStep = dividedF(a, b, r).then(dividedF(a + r, b - r, s));
        Laurent expected;
        for (const auto& alpha : partitionsInBox(r, s))
          expected += Laurent::monomial(2 * alpha.size() - r * s);
        expected *= GradedBimodule::of(dividedF(a, b, r + s))->generatorSeries();
        CAPTURE(r);
        CAPTURE(s);
        CHECK(GradedBimodule::of(twoStep)->generatorSeries() == expected);
      }
}

TEST_CASE("induction along a split-off strand") {
  const ChainComplex x = mccs(zetaTransform(kmcs(2, 1, trunc(2, 1)), 2, 1), 0);
  CHECK(inducedI(0, x).size() == x.size());
  const ChainComplex wrapped = inducedI(1, x);
  validate(wrapped);
  CHECK_FALSE(dSquaredWitness(wrapped));
  CHECK(wrapped.objects[0].bimodule->source() == ColorSeq{2, 2});

  const DigonRemoval dr = digonRemoval(2, 2, 1, 1);
  REQUIRE(dr.subsets.size() == 1);
  CHECK(dr.forward[0].target->web() == Ladder{2, 2, 1, 1}.web());
  CHECK(dr.forward[0].commutesWithActions());
  CHECK(dr.backward[0].commutesWithActions());

  for (auto [a, b, s] : std::vector<std::array<int, 3>>{{1, 1, 1}, {2, 1, 1}, {2, 2, 1}, {2, 2, 2}}) {
    const InducedReport rep = verifyInduced(a, b, s, trunc(a, b));
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(s);
    CAPTURE(rep.witness);
    CHECK(rep.inverses);
    CHECK(rep.intertwines);
  }
}

TEST_CASE("labels and subsets") {
  const auto subsets = subsetsBySize(2);
  REQUIRE(subsets.size() == 4);
  CHECK(subsets[0].empty());
  CHECK(subsets[1] == std::vector<int>{1});
  CHECK(subsets[3] == std::vector<int>{1, 2});
  CHECK(oddLabel("xi", {1, 3}) == "xi1xi3");
}

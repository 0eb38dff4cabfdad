#include <random>
#include <set>

#include "doctest.h"
#include "skein/symalg.hpp"

using namespace skein;

namespace {

AlphabetExpr X(const std::string& name, int size) { return AlphabetExpr::alphabet(name, size); }

Poly gen(const SymExpr& s, const std::string& alph, int i) { return Poly::var(s.ambient->variable(alph, i)); }

// Substitutes concrete variables for each alphabet of an ambient, one
// disjoint block per alphabet in ambient order.
Poly toVariables(const Ambient& amb, const Poly& f) {
  std::vector<Poly> images;
  int offset = 0;
  for (const auto& [name, size] : amb.alphabets()) {
    auto e = elementaryInVariables(size, offset);
    images.insert(images.end(), e.begin(), e.end());
    offset += size;
  }
  return f.substitute(images);
}

Poly randomPoly(std::mt19937& rng, int vars, int maxDeg) {
  std::uniform_int_distribution<int> coeff(-3, 3), deg(0, maxDeg), var(0, vars - 1);
  Poly f;
  for (int t = 0; t < 5; ++t) {
    Mono m;
    int d = deg(rng);
    for (int j = 0; j < d; ++j) {
      int v = var(rng);
      m.setExp(v, m.exp(v) + 1);
    }
    f.addTerm(m, coeff(rng));
  }
  return f;
}

}  // namespace

TEST_CASE("partition basics") {
  Partition a({2, 1});
  CHECK(a.str() == "(2,1)");
  CHECK(Partition().str() == "()");
  CHECK(a.conjugate() == Partition({2, 1}));
  CHECK(Partition({3, 1}).conjugate() == Partition({2, 1, 1}));
  CHECK_THROWS(Partition({1, 2}));
  CHECK(partitionsInBox(2, 2).size() == 6);
  CHECK(partitionsInBox(3, 2).size() == 10);
}

TEST_CASE("dual complement") {
  CHECK(dualComplement(Partition(), 1, 1) == Partition({1}));
  CHECK(dualComplement(Partition({1}), 2, 1) == Partition({1}));
  CHECK(dualComplement(Partition({3, 3}), 2, 3) == Partition());
  CHECK_THROWS(dualComplement(Partition({2}), 2, 1));
  for (int r = 0; r <= 3; ++r)
    for (int s = 0; s <= 3; ++s)
      for (const auto& a : partitionsInBox(r, s)) {
        Partition d = dualComplement(a, r, s);
        CHECK(d.fitsInBox(s, r));
        CHECK(a.size() + d.size() == r * s);
        CHECK(dualComplement(d, s, r) == a);
      }
}

TEST_CASE("zeta partition examples and bijection") {
  CHECK(zetaPartition({1, 0}) == Partition());
  CHECK(zetaPartition({0, 1}) == Partition({1}));
  for (int n = 0; n <= 6; ++n)
    for (int s = 0; s <= n; ++s) {
      const int r = n - s;
      std::set<Partition> seen;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != s) continue;
        std::vector<int> eps(n);
        int degree = 0;  // q-degree of the product of zeta_j over the ones
        for (int j = 0; j < n; ++j) {
          eps[j] = (mask >> j) & 1u;
          if (eps[j]) degree += 2 * (j + 1);
        }
        Partition a = zetaPartition(eps);
        CHECK(a.fitsInBox(s, r));
        CHECK(degree == 2 * a.size() + s * (s + 1));
        seen.insert(a);
      }
      CHECK(seen.size() == partitionsInBox(s, r).size());
    }
}

TEST_CASE("horizontal strips") {
  // (2,2)/(2) is the second row, two boxes in different columns.
  CHECK(isHorizontalStrip(Partition({2, 2}), Partition({2})));
  CHECK_FALSE(isHorizontalStrip(Partition({2, 2}), Partition({1, 1})));
  CHECK(isHorizontalStrip(Partition({2, 1}), Partition({1, 1})));
  CHECK(isHorizontalStrip(Partition({3, 1}), Partition({1})));
  CHECK_FALSE(isHorizontalStrip(Partition({1}), Partition({2})));
}

TEST_CASE("branching rule over horizontal strips") {
  // s_alpha(X + z) = sum over horizontal strips alpha/lambda of s_lambda(X) z^{|alpha|-|lambda|}
  Ambient amb({{"X", 2}, {"Z", 1}});
  AlphabetCombination xz{{1, amb.generators("X")}, {1, amb.generators("Z")}};
  AlphabetCombination x{{1, amb.generators("X")}};
  Poly z = Poly::var(amb.variable("Z", 1));
  for (const auto& alpha : partitionsInBox(3, 3)) {
    Poly rhs;
    for (const auto& lambda : partitionsInBox(3, 3))
      if (isHorizontalStrip(alpha, lambda)) rhs += schurPoly(lambda, x) * z.pow(alpha.size() - lambda.size());
    CHECK(schurPoly(alpha, xz) == rhs);
  }
}

TEST_CASE("elementary, complete and power sums on alphabet combinations") {
  SymExpr e0 = evalE(0, X("A", 2));
  CHECK(e0.poly == Poly(1));

  auto x = X("X", 2), xp = X("X'", 2);
  SymExpr h1 = evalH(1, x - xp);
  CHECK(h1.poly == gen(h1, "X", 1) - gen(h1, "X'", 1));

  SymExpr h2 = evalH(2, -x);
  CHECK(h2.poly == gen(h2, "X", 2));

  SymExpr half = evalH(2, Rational(1, 2) * X("X", 1));
  CHECK(half.poly == gen(half, "X", 1).pow(2) * Rational(3, 8));

  auto x1 = X("X1", 2), x2 = X("X2", 2);
  SymExpr e2 = evalE(2, x1 + x2);
  CHECK(e2.poly == gen(e2, "X1", 2) + gen(e2, "X1", 1) * gen(e2, "X2", 1) + gen(e2, "X2", 2));

  SymExpr p2 = evalP(2, x1 - x2);
  auto p2of = [&](const std::string& a) { return gen(p2, a, 1).pow(2) - gen(p2, a, 2) * Rational(2); };
  CHECK(p2.poly == p2of("X1") - p2of("X2"));
  CHECK_THROWS(evalP(0, x1));
  CHECK((x1 + x2 - Rational(2) * X("Y", 1)).str() == "X1 + X2 - 2*Y");
}

TEST_CASE("generating-function route agrees with the Newton route") {
  Ambient amb({{"A", 2}, {"B", 3}, {"C", 1}});
  for (const auto& coeffs : std::vector<std::vector<Rational>>{
           {1, 1, 1}, {1, -1, 0}, {Rational(1, 2), 0, 0}, {Rational(-2, 3), 3, Rational(5, 4)}}) {
    AlphabetCombination c{{coeffs[0], amb.generators("A")}, {coeffs[1], amb.generators("B")}, {coeffs[2], amb.generators("C")}};
    auto e = elementarySeries(c, 6), en = elementarySeriesNewton(c, 6);
    auto h = completeSeries(c, 6), hn = completeSeriesNewton(c, 6);
    for (int k = 0; k <= 6; ++k) {
      CHECK(e[k] == en[k]);
      CHECK(h[k] == hn[k]);
    }
  }
}

TEST_CASE("alphabet sum equals union, differences cancel") {
  // Oracle: substitute concrete disjoint variable sets for each alphabet.
  auto x1 = X("X1", 2), x2 = X("X2", 1), x0 = X("X0", 2);
  for (int r = 1; r <= 5; ++r) {
    for (auto f : {evalE, evalH, evalP}) {
      SymExpr sum = f(r, x1 + x2);
      Poly lhs = toVariables(*sum.ambient, sum.poly);
      // X1 occupies variables 0,1 and X2 variable 2 in ambient order.
      Ambient unionAmb({{"U", 3}});
      SymExpr onUnion = f(r, X("U", 3));
      CHECK(lhs == toVariables(unionAmb, onUnion.poly));
    }
  }
  SymExpr s21 = schur(Partition({2, 1}), x1 + x2);
  CHECK(toVariables(*s21.ambient, s21.poly) == toVariables(Ambient({{"U", 3}}), schur(Partition({2, 1}), X("U", 3)).poly));

  // f((X1 u X0) - (X2 u X0)) = f(X1 - X2): X0 and U's extra block cancel.
  for (int r = 1; r <= 5; ++r) {
    SymExpr withCommon = evalH(r, x1 + x0 - x2 - x0);
    SymExpr plain = evalH(r, x1 - x2);
    Poly a = toVariables(*withCommon.ambient, withCommon.poly);
    Poly b = toVariables(*plain.ambient, plain.poly);
    // In withCommon, X0 comes first (variables 0,1), so shift plain by 2.
    CHECK(a == b.shiftVariables(2));
  }
}

TEST_CASE("schur polynomials") {
  auto x = X("X", 3);
  SymExpr s1 = schur(Partition({1}), x);
  CHECK(s1.poly == gen(s1, "X", 1));
  SymExpr s11 = schur(Partition({1, 1}), x);
  CHECK(s11.poly == gen(s11, "X", 2));
  SymExpr sd = schur(Partition({1}), X("X1", 1) - X("X2'", 1));
  CHECK(sd.poly == gen(sd, "X1", 1) - gen(sd, "X2'", 1));
  SymExpr s22 = schur(Partition({2, 2}), x);
  CHECK(s22.degree() == 8);
  // s_(2,1)(x1,x2) = x1^2 x2 + x1 x2^2
  Poly concrete = toVariables(Ambient({{"X", 2}}), schur(Partition({2, 1}), X("X", 2)).poly);
  Poly a = Poly::var(0), b = Poly::var(1);
  CHECK(concrete == a * a * b + a * b * b);
}

TEST_CASE("symmetric function identities") {
  CHECK(checkIdentity(Identity::HE, {3, 2, 0}));
  CHECK(checkIdentity(Identity::HE, {0, 2, 0}));
  CHECK(checkIdentity(Identity::SomeRel1a, {2, 2, 2}));
  for (int sx = 0; sx <= 3; ++sx)
    for (int sy = 0; sy <= 3; ++sy)
      for (int r = 0; r <= 6; ++r) {
        CHECK(checkIdentity(Identity::HE2, {r, sx, sy}));
        CHECK(checkIdentity(Identity::SomeRel1a, {r, sx, sy}));
        CHECK(checkIdentity(Identity::SomeRel1b, {r, sx, sy}));
        CHECK(checkIdentity(Identity::Newton, {r, sx, sy}));
      }
  for (int k = 0; k <= 10; ++k) CHECK(checkIdentity(Identity::HE, {k, 3, 0}));
}

TEST_CASE("demazure and sylvester operators") {
  Poly x1 = Poly::var(0), x2 = Poly::var(1);
  CHECK(demazure(1, x1) == Poly(1));
  CHECK(demazure(1, x1 * x1) == x1 + x2);
  CHECK(demazure(1, x1 * x2).isZero());
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    Poly f = randomPoly(rng, 4, 6);
    CHECK(demazure(1, demazure(1, f)).isZero());
    CHECK(demazure(1, demazure(2, demazure(1, f))) == demazure(2, demazure(1, demazure(2, f))));
    CHECK(demazure(2, demazure(3, demazure(2, f))) == demazure(3, demazure(2, demazure(3, f))));
    CHECK(sylvester(1, 1, f) == demazure(1, f));
    CHECK(sylvester(1, 2, f) == demazure(2, demazure(1, f)));
    CHECK(sylvester(2, 1, f) == demazure(1, demazure(2, f)));
  }
  // On polynomials symmetric in the first block the result is symmetric.
  Poly g = Poly::var(0, 3) * Poly::var(1) + Poly::var(0) * Poly::var(1, 3) + Poly::var(2, 2);
  Poly s = sylvester(2, 1, g);
  CHECK(s == s.swapVariables(0, 1));
  CHECK(s == s.swapVariables(1, 2));
  Poly inE = symmetricToElementary(s, 3);
  CHECK(inE.substitute(elementaryInVariables(3)) == s);
  CHECK_THROWS(symmetricToElementary(x1, 2));
}

#include "doctest.h"
#include "skein/gradearith.hpp"
#include "skein/poly.hpp"

using namespace skein;

namespace {
Laurent q(int e) { return Laurent::monomial(e); }

// Ordinary binomial via Pascal's triangle, independent of the q-version.
long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
}  // namespace

TEST_CASE("quantum integers") {
  CHECK(qint(0).isZero());
  CHECK(qint(1) == Laurent(1));
  CHECK(qint(2) == q(1) + q(-1));
  CHECK(qint(3) == q(2) + Laurent(1) + q(-2));
  CHECK(qint(2).str() == "q^-1 + q");
}

TEST_CASE("quantum integer addition rule") {
  for (int m = 0; m <= 12; ++m)
    for (int n = 0; n <= 12; ++n) CHECK(qint(m + n) == q(m) * qint(n) + q(-n) * qint(m));
}

TEST_CASE("quantum binomials") {
  CHECK(qbinom(2, 1) == qint(2));
  CHECK(qbinom(4, 2) == q(4) + q(2) + Laurent(2) + q(-2) + q(-4));
  CHECK(qbinom(3, 0) == Laurent(1));
  for (int n = 0; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      Laurent b = qbinom(n, k);
      CHECK(b == qbinom(n, n - k));
      CHECK(b.bar() == b);
      CHECK(b.atQEqualsOne() == Laurent(binomial(n, k)));
    }
}

TEST_CASE("quantum binomial equals factorial quotient") {
  for (int n = 0; n <= 7; ++n)
    for (int k = 0; k <= n; ++k) CHECK(qbinom(n, k) * qfactorial(k) * qfactorial(n - k) == qfactorial(n));
}

TEST_CASE("skein scalar") {
  CHECK(skeinScalar(1, 1) == q(1) - q(-1));
  CHECK(skeinScalar(1, 1).str() == "-q^-1 + q");
  CHECK(skeinScalar(2, 0) == Laurent(1));
  CHECK(skeinScalar(2, 2) == q(-2) * (Laurent(1) - q(2)) * (Laurent(1) - q(4)));
  CHECK_THROWS(skeinScalar(1, 2));
}

TEST_CASE("laurent rendering and specializations") {
  Laurent x = Laurent::monomial(2, -1, 2) - Laurent::monomial(-1, 0) + Laurent::monomial(0, 1, Rational(1, 2));
  CHECK(x.str() == "-q^-1 + 1/2*t + 2*q^2*t^-1");
  CHECK(x.atTEqualsMinusOne() == -q(-1) - Laurent(Rational(1, 2)) - q(2) * Laurent(2));
  CHECK(x.truncatedAbove(0) == -q(-1) + Laurent::monomial(0, 1, Rational(1, 2)));
  CHECK(Laurent().str() == "0");
}

TEST_CASE("polynomial arithmetic") {
  Poly x = Poly::var(0), y = Poly::var(1);
  Poly f = (x + y).pow(3);
  CHECK(f.size() == 4);
  CHECK(f.coefficient(Mono::var(0, 2) * Mono::var(1)) == 3);
  CHECK(f.substitute({y, x}) == f);
  CHECK((x - y) * (x + y) == x.pow(2) - y.pow(2));
  CHECK(f.homogeneousDegree({1, 1}) == 3);
  CHECK_THROWS((x + Poly(1)).homogeneousDegree({1}));
  CHECK(x.shiftVariables(3) == Poly::var(3));
  CHECK((x * Rational(-2) + y).str() == "-2*v0 + v1");
}

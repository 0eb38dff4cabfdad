#include "doctest.h"
#include "skein/linalg.hpp"

using namespace skein;

TEST_CASE("row echelon rank and nullspace") {
  RowEchelon e(4);
  CHECK(e.insert({{0, 1}, {1, 2}, {3, 1}}));
  CHECK(e.insert({{1, 1}, {2, 1}}));
  CHECK_FALSE(e.insert({{0, 1}, {1, 3}, {2, 1}, {3, 1}}));  // sum of the first two
  CHECK(e.rank() == 2);
  auto ns = e.nullspace();
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) {
    CHECK(v.front().second == 1);
    std::vector<Rational> x(4);
    for (const auto& [c, val] : v) x[c] = val;
    CHECK(x[0] + 2 * x[1] + x[3] == 0);
    CHECK(x[1] + x[2] == 0);
  }
}

TEST_CASE("sparse solve") {
  std::vector<SparseVector> rows{{{0, 2}, {1, 1}}, {{1, 3}}};
  auto x = solveLinear(rows, {5, 3}, 2);
  REQUIRE(x);
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 1);
  CHECK_FALSE(solveLinear({{{0, 1}}, {{0, 2}}}, {1, 1}, 1));
  auto z = solveLinear({{{0, 1}, {1, -1}}}, {0}, 2);
  REQUIRE(z);
  CHECK((*z)[0] == (*z)[1]);
}

TEST_CASE("dense inverse") {
  DenseMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 3;
  m.at(1, 1) = 4;
  auto inv = m.inverse();
  REQUIRE(inv);
  CHECK(m * *inv == DenseMatrix::identity(2));
  CHECK(m.rank() == 2);
  DenseMatrix s(2, 2);
  s.at(0, 0) = 1;
  s.at(1, 0) = 2;
  CHECK_FALSE(s.inverse());
  CHECK(s.rank() == 1);
  CHECK(inv->str() == "[[-2,1],[3/2,-1/2]]");
}

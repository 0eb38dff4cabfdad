#include <random>

#include "doctest.h"
#include "skein/weblang.hpp"

using namespace skein;

namespace {

// Random well-typed web with positive colors, built one layer at a time.
Web randomWeb(std::mt19937& rng, int maxLayers, int maxColor) {
  std::uniform_int_distribution<int> len(1, 3), col(1, maxColor), layers(0, maxLayers), kind(0, 3);
  ColorSeq src;
  for (int i = len(rng); i > 0; --i) src.push_back(col(rng));
  Web w = Web::identity(src);
  for (int n = layers(rng); n > 0; --n) {
    const ColorSeq& c = w.target();
    const int m = static_cast<int>(c.size());
    int k = kind(rng);
    if (k == 0 && m >= 2) {
      int p = std::uniform_int_distribution<int>(1, m - 1)(rng);
      w = w.then(Web::merge(p, c));
    } else if (k == 1) {
      std::vector<int> splittable;
      for (int i = 0; i < m; ++i)
        if (c[i] >= 2) splittable.push_back(i + 1);
      if (splittable.empty()) continue;
      int p = splittable[std::uniform_int_distribution<int>(0, splittable.size() - 1)(rng)];
      int first = std::uniform_int_distribution<int>(1, c[p - 1] - 1)(rng);
      w = w.then(Web::split(p, c, first, c[p - 1] - first));
    } else if (m >= 2) {
      int p = std::uniform_int_distribution<int>(1, m - 1)(rng);
      w = w.then(Web::crossing(p, c, k == 2));
    }
  }
  return w;
}

}  // namespace

TEST_CASE("parse generators") {
  Web m = parseWeb("merge(1; 1,1)");
  REQUIRE(m.layers().size() == 1);
  CHECK(m.layers()[0].kind == LayerKind::Merge);
  CHECK(m.source() == ColorSeq{1, 1});
  CHECK(m.target() == ColorSeq{2});

  Web digon = parseWeb("split(1; 2) . merge(1; 1,1)");
  CHECK(digon.source() == ColorSeq{1, 1});
  CHECK(digon.target() == ColorSeq{1, 1});
  CHECK(digon.layers()[0].kind == LayerKind::Merge);
  CHECK(digon.layers()[1].kind == LayerKind::Split);

  Web x = parseWeb("x+(1; 2,1)");
  CHECK(x.layers()[0].kind == LayerKind::XingPos);
  CHECK(x.target() == ColorSeq{1, 2});

  Web s = parseWeb("split(1; 3; 2,1)");
  CHECK(s.target() == ColorSeq{2, 1});
}

TEST_CASE("composition and tensor") {
  Web w = parseWeb("merge(1; 1,2)");
  CHECK(compose(Web::identity({3}), w) == w);
  CHECK(compose(w, Web::identity({1, 2})) == w);
  CHECK_THROWS_AS(compose(w, Web::identity({2, 2})), WebError);

  Web t = tensor(Web::identity({1}), parseWeb("merge(1; 1,1)"));
  REQUIRE(t.layers().size() == 1);
  CHECK(t.layers()[0].position == 2);
  CHECK(t.source() == ColorSeq{1, 1, 1});
  CHECK(t == parseWeb("merge(2; 1,1,1)"));
  CHECK(t == parseWeb("id(1) @ merge(1; 1,1)"));

  // Merge on top, split below: source (1,1,2), target (2,1,1).
  Web ms = tensor(parseWeb("merge(1; 1,1)"), parseWeb("split(1; 2)"));
  CHECK(ms.source() == ColorSeq{1, 1, 2});
  CHECK(ms.target() == ColorSeq{2, 1, 1});
}

TEST_CASE("parse errors carry positions") {
  try {
    parseWeb("merge(1; 1,1) . merge(1; 1,1)");
    FAIL("expected a color mismatch");
  } catch (const ParseError& e) {
    CHECK(e.token() == 1);
    CHECK(e.offset() == 0);
  }
  try {
    parseWeb("merge(1; 1,1");
    FAIL("expected a missing paren");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 12);
  }
  try {
    parseWeb("id(1) $");
    FAIL("expected a lexing error");
  } catch (const ParseError& e) {
    CHECK(e.token() == 5);
    CHECK(e.offset() == 6);
  }
  CHECK_THROWS_AS(parseWeb("id(0)"), ParseError);
  CHECK_THROWS_AS(parseWeb("merge(2; 1,1)"), ParseError);
  CHECK_THROWS_AS(parseWeb("split(1; 1)"), ParseError);
  CHECK_THROWS_AS(parseWeb("split(1; 3; 2,2)"), ParseError);
  CHECK_THROWS_AS(parseWeb("frob(1; 1)"), ParseError);
}

TEST_CASE("render round trip on a random corpus") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 200; ++i) {
    Web w = randomWeb(rng, 8, 4);
    std::string text = render(w);
    Web back = parseWeb(text);
    CHECK(back == w);
    CHECK(render(back) == text);
    CHECK(colorSum(w.source()) == colorSum(w.target()));
  }
}

TEST_CASE("colored braid words") {
  ColoredBraidWord b = parseBraid("x+(2; 3,1,2) . x-(1; 1,3,2)");
  CHECK(b.source == ColorSeq{1, 3, 2});
  CHECK(b.word == std::vector<std::pair<int, int>>{{1, -1}, {2, 1}});
  ColorSeq t = b.target();
  CHECK(t == ColorSeq{3, 2, 1});
  auto perm = b.strandPermutation();
  for (std::size_t i = 0; i < perm.size(); ++i) CHECK(t[perm[i]] == b.source[i]);
  CHECK(b.toWeb() == parseBraid(render(b.toWeb())).toWeb());
  CHECK_THROWS(parseBraid("merge(1; 1,1)"));

  std::mt19937 rng(5);
  for (int n = 0; n < 50; ++n) {
    ColoredBraidWord w{{1, 2, 3, 4}, {}};
    for (int j = 0; j < 6; ++j) w.word.emplace_back(std::uniform_int_distribution<int>(1, 3)(rng), j % 2 ? 1 : -1);
    auto p = w.strandPermutation();
    auto tt = w.target();
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(tt[p[i]] == w.source[i]);
  }
}

TEST_CASE("edge rings") {
  EdgeRing id = edgeRing(Web::identity({2, 1}));
  CHECK(id.ambient->alphabets() == std::vector<std::pair<std::string, int>>{{"X1", 2}, {"X2", 1}});
  CHECK(id.relations.empty());

  EdgeRing m = edgeRing(parseWeb("merge(1; 1,2)"));
  CHECK(m.ambient->alphabets().size() == 3);
  CHECK(m.relations.size() == 3);
  // e_1 relation: e1(X1') + e1(X2') - e1(X1)
  const auto& amb = *m.ambient;
  Poly expected = Poly::var(amb.variable("X1'", 1)) + Poly::var(amb.variable("X2'", 1)) - Poly::var(amb.variable("X1", 1));
  CHECK(m.relations[0].value.poly == expected);
}

TEST_CASE("ladders and rickard shapes") {
  Ladder w1{2, 2, 1, 1};
  EdgeGraph g = w1.edges();
  std::vector<std::pair<std::string, int>> expected{{"X1'", 2}, {"X2'", 2}, {"M'", 1}, {"B", 1},
                                                    {"F", 3},   {"X1", 2},  {"M", 1},  {"X2", 2}};
  REQUIRE(g.edges.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(g.edges[i].name == expected[i].first);
    CHECK(g.edges[i].size == expected[i].second);
  }
  // The vertex relations are X2' = M' + B, F = X1' + M', F = X1 + M, X2 = M + B.
  REQUIRE(g.vertices.size() == 4);
  CHECK(g.vertices[0].whole == g.find("X2'"));
  CHECK(g.vertices[1].whole == g.find("F"));
  CHECK(g.vertices[2].whole == g.find("F"));
  CHECK(g.vertices[3].whole == g.find("X2"));

  auto shape = rickardShape(1, 1);
  REQUIRE(shape.size() == 2);
  CHECK(shape[0].f == 1);
  CHECK(shape[0].e == 1);
  CHECK(shape[1].f == 0);
  CHECK(shape[1].e == 0);
  CHECK(rickardShape(2, 2).size() == 3);
  CHECK(rickardShape(3, 0).size() == 1);
  for (const auto& l : rickardShape(3, 2)) CHECK(l.target() == ColorSeq{2, 3});
}

TEST_CASE("skein webs have the right boundaries") {
  for (int a = 1; a <= 3; ++a)
    for (int b = 0; b <= a; ++b) {
      for (int s = 0; s <= b; ++s) {
        CHECK(threadedDigon(a, b, s).target() == ColorSeq{a, b});
        CHECK(skeinLeftTerm(a, b, s).target() == ColorSeq{b, a});
      }
      CHECK(twistedDigon(a, b).target() == ColorSeq{a, b});
      CHECK(skeinRightWeb(a, b).target() == ColorSeq{b, a});
    }
}

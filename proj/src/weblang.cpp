#include "skein/weblang.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace skein {

std::string colorsToString(const ColorSeq& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s;
}

int colorSum(const ColorSeq& c) { return std::accumulate(c.begin(), c.end(), 0); }

namespace {

void checkColors(const ColorSeq& c) {
  for (int x : c)
    if (x < 0) throw WebError("negative color");
}

void checkPosition(int position, const ColorSeq& c, int width) {
  if (position < 1 || position + width - 1 > static_cast<int>(c.size()))
    throw WebError("position " + std::to_string(position) + " out of range for (" + colorsToString(c) + ")");
}

bool isCrossing(LayerKind k) { return k == LayerKind::XingPos || k == LayerKind::XingNeg; }

}  // namespace

Web Web::identity(ColorSeq colors) {
  checkColors(colors);
  Web w;
  w.source_ = colors;
  w.target_ = std::move(colors);
  return w;
}

Web Web::merge(int position, ColorSeq source) {
  checkColors(source);
  checkPosition(position, source, 2);
  ColorSeq out = source;
  out[position - 1] += out[position];
  out.erase(out.begin() + position);
  Web w;
  w.layers_.push_back({LayerKind::Merge, position, source, out});
  w.source_ = std::move(source);
  w.target_ = std::move(out);
  return w;
}

Web Web::split(int position, ColorSeq source, int first, int second) {
  checkColors(source);
  checkPosition(position, source, 1);
  if (first < 0 || second < 0 || first + second != source[position - 1])
    throw WebError("split parts do not add up to color " + std::to_string(source[position - 1]));
  ColorSeq out = source;
  out[position - 1] = first;
  out.insert(out.begin() + position, second);
  Web w;
  w.layers_.push_back({LayerKind::Split, position, source, out});
  w.source_ = std::move(source);
  w.target_ = std::move(out);
  return w;
}

Web Web::crossing(int position, ColorSeq source, bool positive) {
  checkColors(source);
  checkPosition(position, source, 2);
  ColorSeq out = source;
  std::swap(out[position - 1], out[position]);
  Web w;
  w.layers_.push_back({positive ? LayerKind::XingPos : LayerKind::XingNeg, position, source, out});
  w.source_ = std::move(source);
  w.target_ = std::move(out);
  return w;
}

bool Web::hasCrossings() const {
  return std::any_of(layers_.begin(), layers_.end(), [](const WebLayer& l) { return isCrossing(l.kind); });
}

Web Web::then(const Web& next) const { return compose(next, *this); }

Web compose(const Web& f, const Web& g) {
  if (g.target() != f.source())
    throw WebError("cannot compose: target (" + colorsToString(g.target()) + ") differs from source (" +
                   colorsToString(f.source()) + ")");
  Web r = g;
  r.layers_.insert(r.layers_.end(), f.layers_.begin(), f.layers_.end());
  r.target_ = f.target_;
  return r;
}

Web tensor(const Web& f, const Web& g) {
  Web r;
  r.source_ = f.source_;
  r.source_.insert(r.source_.end(), g.source_.begin(), g.source_.end());
  for (WebLayer l : f.layers_) {
    l.in.insert(l.in.end(), g.source_.begin(), g.source_.end());
    l.out.insert(l.out.end(), g.source_.begin(), g.source_.end());
    r.layers_.push_back(std::move(l));
  }
  const int shift = static_cast<int>(f.target_.size());
  for (WebLayer l : g.layers_) {
    l.position += shift;
    l.in.insert(l.in.begin(), f.target_.begin(), f.target_.end());
    l.out.insert(l.out.begin(), f.target_.begin(), f.target_.end());
    r.layers_.push_back(std::move(l));
  }
  r.target_ = f.target_;
  r.target_.insert(r.target_.end(), g.target_.begin(), g.target_.end());
  return r;
}

// ---------------------------------------------------------------------------
// DSL

ParseError::ParseError(const std::string& msg, int token, std::size_t offset)
    : std::runtime_error("token " + std::to_string(token) + " (byte " + std::to_string(offset) + "): " + msg),
      token_(token),
      offset_(offset) {}

namespace {

enum class Tok { Id, Merge, Split, XPos, XNeg, LParen, RParen, Semi, Comma, Dot, At, Int, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
  int index;  // 1-based
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t start, std::size_t len) {
    out.push_back({k, s.substr(start, len), start, static_cast<int>(out.size()) + 1});
  };
  while (i < s.size()) {
    unsigned char c = s[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      push(Tok::Int, start, i - start);
      continue;
    }
    if (std::isalpha(c)) {
      while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
      std::string word = s.substr(start, i - start);
      if (word == "x" && i < s.size() && (s[i] == '+' || s[i] == '-')) {
        ++i;
        push(s[i - 1] == '+' ? Tok::XPos : Tok::XNeg, start, 2);
      } else if (word == "id") {
        push(Tok::Id, start, i - start);
      } else if (word == "merge") {
        push(Tok::Merge, start, i - start);
      } else if (word == "split") {
        push(Tok::Split, start, i - start);
      } else {
        throw ParseError("unknown word '" + word + "'", static_cast<int>(out.size()) + 1, start);
      }
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case ';': k = Tok::Semi; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      case '@': k = Tok::At; break;
      default: throw ParseError(std::string("unexpected character '") + s[i] + "'", static_cast<int>(out.size()) + 1, start);
    }
    ++i;
    push(k, start, 1);
  }
  out.push_back({Tok::End, "", s.size(), static_cast<int>(out.size()) + 1});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Web parse() {
    Web w = expr();
    if (peek().kind != Tok::End) fail("unexpected trailing input");
    return w;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().index, peek().offset); }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return toks_[pos_++];
  }

  Web expr() {
    // Terms are written left to right but applied right to left.
    std::vector<std::pair<Web, const Token*>> terms;
    terms.emplace_back(term(), &toks_[pos_]);
    while (peek().kind == Tok::Dot) {
      ++pos_;
      const Token* at = &toks_[pos_];
      terms.emplace_back(term(), at);
    }
    Web w = terms.back().first;
    for (int i = static_cast<int>(terms.size()) - 2; i >= 0; --i) {
      const Web& f = terms[i].first;
      if (f.source() != w.target())
        throw ParseError("color mismatch: (" + colorsToString(w.target()) + ") does not match source (" +
                             colorsToString(f.source()) + ")",
                         terms[i].second->index, terms[i].second->offset);
      w = compose(f, w);
    }
    return w;
  }

  Web term() {
    Web w = factor();
    while (peek().kind == Tok::At) {
      ++pos_;
      w = tensor(w, factor());
    }
    return w;
  }

  int integer(bool allowZero = false) {
    const Token& t = expect(Tok::Int, "an integer");
    if (t.text.size() > 6) throw ParseError("integer too large", t.index, t.offset);
    int v = std::stoi(t.text);
    if (!allowZero && v == 0) throw ParseError("colors and positions must be positive", t.index, t.offset);
    return v;
  }

  ColorSeq colors() {
    ColorSeq c{integer()};
    while (peek().kind == Tok::Comma) {
      ++pos_;
      c.push_back(integer());
    }
    return c;
  }

  Web factor() {
    const Token& head = peek();
    if (head.kind == Tok::LParen) {
      ++pos_;
      Web w = expr();
      expect(Tok::RParen, "')'");
      return w;
    }
    if (head.kind == Tok::Id) {
      ++pos_;
      expect(Tok::LParen, "'('");
      ColorSeq c = colors();
      expect(Tok::RParen, "')'");
      return Web::identity(c);
    }
    if (head.kind != Tok::Merge && head.kind != Tok::Split && head.kind != Tok::XPos && head.kind != Tok::XNeg)
      fail("expected id, merge, split, x+, x- or '('");
    ++pos_;
    expect(Tok::LParen, "'('");
    const Token& posTok = peek();
    int position = integer();
    expect(Tok::Semi, "';'");
    ColorSeq c = colors();
    int first = -1, second = -1;
    const Token* partsTok = nullptr;
    if (head.kind == Tok::Split && peek().kind == Tok::Semi) {
      ++pos_;
      partsTok = &peek();
      first = integer();
      expect(Tok::Comma, "','");
      second = integer();
    }
    expect(Tok::RParen, "')'");
    try {
      switch (head.kind) {
        case Tok::Merge: return Web::merge(position, c);
        case Tok::XPos: return Web::crossing(position, c, true);
        case Tok::XNeg: return Web::crossing(position, c, false);
        default: break;
      }
      if (position < 1 || position > static_cast<int>(c.size())) throw WebError("position out of range");
      if (first < 0) {
        first = 1;
        second = c[position - 1] - 1;
        if (second < 1) throw WebError("cannot split a strand of color 1");
      }
      return Web::split(position, c, first, second);
    } catch (const WebError& e) {
      const Token& t = partsTok ? *partsTok : posTok;
      throw ParseError(e.what(), t.index, t.offset);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string renderLayer(const WebLayer& l) {
  std::string args = std::to_string(l.position) + "; " + colorsToString(l.in);
  switch (l.kind) {
    case LayerKind::Merge: return "merge(" + args + ")";
    case LayerKind::XingPos: return "x+(" + args + ")";
    case LayerKind::XingNeg: return "x-(" + args + ")";
    case LayerKind::Split: {
      int first = l.out[l.position - 1], second = l.out[l.position];
      if (first != 1) args += "; " + std::to_string(first) + "," + std::to_string(second);
      return "split(" + args + ")";
    }
  }
  return "";
}

}  // namespace

Web parseWeb(const std::string& text) { return Parser(text).parse(); }

std::string render(const Web& w) {
  if (w.layers().empty()) return "id(" + colorsToString(w.source()) + ")";
  std::string s;
  for (auto it = w.layers().rbegin(); it != w.layers().rend(); ++it) {
    if (!s.empty()) s += " . ";
    s += renderLayer(*it);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Colored braids

ColorSeq ColoredBraidWord::target() const {
  ColorSeq c = source;
  for (const auto& [i, sign] : word) {
    if (i < 1 || i >= static_cast<int>(c.size())) throw WebError("braid index out of range");
    std::swap(c[i - 1], c[i]);
  }
  return c;
}

std::vector<int> ColoredBraidWord::strandPermutation() const {
  std::vector<int> atPosition(source.size());
  std::iota(atPosition.begin(), atPosition.end(), 0);
  for (const auto& [i, sign] : word) std::swap(atPosition[i - 1], atPosition[i]);
  std::vector<int> perm(source.size());
  for (std::size_t p = 0; p < atPosition.size(); ++p) perm[atPosition[p]] = static_cast<int>(p);
  return perm;
}

Web ColoredBraidWord::toWeb() const {
  Web w = Web::identity(source);
  for (const auto& [i, sign] : word) w = compose(Web::crossing(i, w.target(), sign > 0), w);
  return w;
}

ColoredBraidWord ColoredBraidWord::fromWeb(const Web& w) {
  ColoredBraidWord b{w.source(), {}};
  for (const auto& l : w.layers()) {
    if (!isCrossing(l.kind)) throw WebError("braid words contain only crossings");
    b.word.emplace_back(l.position, l.kind == LayerKind::XingPos ? 1 : -1);
  }
  return b;
}

ColoredBraidWord parseBraid(const std::string& text) { return ColoredBraidWord::fromWeb(parseWeb(text)); }

// ---------------------------------------------------------------------------
// Edge graphs

int EdgeGraph::find(const std::string& name) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].name == name) return static_cast<int>(i);
  return -1;
}

EdgeGraph edgeGraph(const Web& w) {
  if (w.hasCrossings()) throw WebError("edge graphs need a web without crossings");
  EdgeGraph g;
  std::vector<int> strands;
  for (std::size_t i = 0; i < w.source().size(); ++i) {
    g.edges.push_back({w.source()[i], ""});
    strands.push_back(static_cast<int>(i));
  }
  g.incoming = strands;
  for (const auto& l : w.layers()) {
    const int p = l.position - 1;
    if (l.kind == LayerKind::Merge) {
      int whole = static_cast<int>(g.edges.size());
      g.edges.push_back({l.out[p], ""});
      g.vertices.push_back({EdgeGraph::VertexKind::Merge, whole, strands[p], strands[p + 1]});
      strands[p] = whole;
      strands.erase(strands.begin() + p + 1);
    } else {
      int first = static_cast<int>(g.edges.size());
      g.edges.push_back({l.out[p], ""});
      g.edges.push_back({l.out[p + 1], ""});
      g.vertices.push_back({EdgeGraph::VertexKind::Split, strands[p], first, first + 1});
      strands[p] = first;
      strands.insert(strands.begin() + p + 1, first + 1);
    }
  }
  g.outgoing = strands;
  for (std::size_t i = 0; i < g.incoming.size(); ++i) g.edges[g.incoming[i]].name = "X" + std::to_string(i + 1) + "'";
  for (std::size_t i = 0; i < g.outgoing.size(); ++i) g.edges[g.outgoing[i]].name = "X" + std::to_string(i + 1);
  int internal = 0;
  for (auto& e : g.edges)
    if (e.name.empty()) e.name = "E" + std::to_string(++internal);
  return g;
}

EdgeRing edgeRing(const Web& w, int degreeBound) {
  EdgeGraph g = edgeGraph(w);
  std::vector<std::pair<std::string, int>> alphabets;
  for (const auto& e : g.edges) alphabets.emplace_back(e.name, e.size);
  EdgeRing ring{std::make_shared<const Ambient>(alphabets), {}};
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const auto& vx = g.vertices[v];
    AlphabetCombination comb{{1, ring.ambient->generators(g.edges[vx.first].name)},
                             {1, ring.ambient->generators(g.edges[vx.second].name)},
                             {-1, ring.ambient->generators(g.edges[vx.whole].name)}};
    int bound = degreeBound < 0 ? g.edges[vx.whole].size : degreeBound;
    auto series = elementarySeries(comb, bound);
    for (int i = 1; i <= bound; ++i) ring.relations.push_back({static_cast<int>(v), i, {ring.ambient, series[i]}});
  }
  return ring;
}

Web Ladder::web() const {
  if (a < 0 || b < 0 || e < 0 || f < 0 || e > b || f > a + e) throw WebError("ladder rungs out of range");
  Web w = Web::split(2, {a, b}, e, b - e);
  w = w.then(Web::merge(1, w.target()));
  w = w.then(Web::split(1, w.target(), a + e - f, f));
  w = w.then(Web::merge(2, w.target()));
  return w;
}

EdgeGraph Ladder::edges() const {
  EdgeGraph g = edgeGraph(web());
  // Creation order: X1', X2', then M', B, F, X1, M, X2.
  const char* names[] = {"X1'", "X2'", "M'", "B", "F", "X1", "M", "X2"};
  for (std::size_t i = 0; i < g.edges.size(); ++i) g.edges[i].name = names[i];
  return g;
}

std::vector<Ladder> rickardShape(int a, int b) {
  if (a < 0 || b < 0) throw WebError("negative colors");
  std::vector<Ladder> out;
  for (int k = 0; k <= std::min(a, b); ++k) out.push_back({a, b, a - k, b - k});
  return out;
}

Web threadedDigon(int a, int b, int s) {
  if (s < 0 || s > b) throw WebError("threadedDigon: need 0 <= s <= b");
  Web w = Web::split(2, {a, b}, b - s, s);
  w = w.then(Web::crossing(1, w.target(), true));
  w = w.then(Web::crossing(1, w.target(), true));
  return w.then(Web::merge(2, w.target()));
}

Web twistedDigon(int a, int b) {
  if (b < 0 || b > a) throw WebError("twistedDigon: need 0 <= b <= a");
  Web w = Web::split(1, {a, b}, a - b, b);
  w = w.then(Web::crossing(2, w.target(), true));
  return w.then(Web::merge(1, w.target()));
}

Web skeinLeftTerm(int a, int b, int s) {
  if (s < 0 || s > b) throw WebError("skeinLeftTerm: need 0 <= s <= b");
  Web w = Web::split(2, {a, b}, b - s, s);
  w = w.then(Web::crossing(1, w.target(), true));
  w = w.then(Web::crossing(2, w.target(), false));
  return w.then(Web::merge(1, w.target()));
}

Web skeinRightWeb(int a, int b) {
  if (b < 0 || b > a) throw WebError("skeinRightWeb: need 0 <= b <= a");
  Web w = Web::split(1, {a, b}, b, a - b);
  return w.then(Web::merge(2, w.target()));
}

}  // namespace skein

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "skein/symalg.hpp"

namespace skein {

using ColorSeq = std::vector<int>;

std::string colorsToString(const ColorSeq& c);
int colorSum(const ColorSeq& c);

enum class LayerKind { Merge, Split, XingPos, XingNeg };

// One generator acting at strands (position, position+1), 1-based.
// A merge joins two strands into one at `position`; a split is its reverse.
struct WebLayer {
  LayerKind kind;
  int position;
  ColorSeq in;
  ColorSeq out;

  bool operator==(const WebLayer&) const = default;
};

// Layers are stored in application order: layers()[0] acts first on the
// source. In pictures and in the DSL this is the rightmost generator.
class Web {
 public:
  Web() = default;
  static Web identity(ColorSeq colors);
  static Web merge(int position, ColorSeq source);
  // Splits strand `position` into (first, second); first stays at `position`.
  static Web split(int position, ColorSeq source, int first, int second);
  static Web crossing(int position, ColorSeq source, bool positive);

  const ColorSeq& source() const { return source_; }
  const ColorSeq& target() const { return target_; }
  const std::vector<WebLayer>& layers() const { return layers_; }
  bool hasCrossings() const;

  // Applies `next` after this web.
  Web then(const Web& next) const;
  bool operator==(const Web&) const = default;

  friend Web compose(const Web& f, const Web& g);
  friend Web tensor(const Web& f, const Web& g);

 private:
  ColorSeq source_, target_;
  std::vector<WebLayer> layers_;
};

class WebError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// f * g: apply g first, then f. Requires target(g) = source(f).
Web compose(const Web& f, const Web& g);
// f on the top strands, g below.
Web tensor(const Web& f, const Web& g);

// ---------------------------------------------------------------------------
// DSL

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int token, std::size_t offset);
  int token() const { return token_; }           // 1-based token index
  std::size_t offset() const { return offset_; }  // byte offset into the input

 private:
  int token_;
  std::size_t offset_;
};

Web parseWeb(const std::string& text);
std::string render(const Web& w);

// ---------------------------------------------------------------------------
// Colored braids

struct ColoredBraidWord {
  ColorSeq source;
  std::vector<std::pair<int, int>> word;  // (1-based index, sign +-1), applied left to right

  ColorSeq target() const;
  // perm[i] = final position (0-based) of the strand starting at i.
  std::vector<int> strandPermutation() const;
  Web toWeb() const;
  static ColoredBraidWord fromWeb(const Web& w);  // rejects merges and splits
};

ColoredBraidWord parseBraid(const std::string& text);

// ---------------------------------------------------------------------------
// Edge graphs

struct EdgeGraph {
  struct Edge {
    int size;
    std::string name;
  };
  enum class VertexKind { Merge, Split };
  // The `whole` edge carries first + second.
  struct Vertex {
    VertexKind kind;
    int whole;
    int first;
    int second;
  };

  std::vector<Edge> edges;
  std::vector<Vertex> vertices;  // in application order
  std::vector<int> incoming;     // edge per source strand
  std::vector<int> outgoing;     // edge per target strand

  int find(const std::string& name) const;  // -1 if absent
};

// Outgoing edges are named X1, X2, ..., incoming ones X1', X2', ...; a strand
// running straight through keeps its outgoing name. Internal edges are E1,
// E2, ... in creation order. Crossing layers are rejected.
EdgeGraph edgeGraph(const Web& w);

struct EdgeRelation {
  int vertex;
  int degree;
  SymExpr value;  // e_degree(first + second - whole)
};

struct EdgeRing {
  std::shared_ptr<const Ambient> ambient;
  std::vector<EdgeRelation> relations;
};

// degreeBound < 0 means "up to the size of the whole edge at each vertex".
EdgeRing edgeRing(const Web& w, int degreeBound = -1);

// The two-rung ladder F^(f) E^(e) on (a, b): first e moves from strand 2
// to strand 1, then f moves back. Rungs of size zero are kept as zero-size
// strands so that edge names are stable.
struct Ladder {
  int a, b, f, e;

  ColorSeq target() const { return {a + e - f, b - e + f}; }
  Web web() const;
  // Edges named X1', X2', M', B, F, X1, M, X2 as in the usual picture.
  EdgeGraph edges() const;
};

// Ladders C^k = F^(a-k) E^(b-k) on (a, b) for k = 0..min(a, b).
std::vector<Ladder> rickardShape(int a, int b);

// ---------------------------------------------------------------------------
// Webs in the colored skein relation.

// Digon on (a,b) threaded through the strand a, with s the thin rung.
Web threadedDigon(int a, int b, int s);
// Twisted digon (a,b) -> (a,b): split a, cross the b strands, merge.
Web twistedDigon(int a, int b);
// Terms of the other skein identity, (a,b) -> (b,a).
Web skeinLeftTerm(int a, int b, int s);
Web skeinRightWeb(int a, int b);

}  // namespace skein

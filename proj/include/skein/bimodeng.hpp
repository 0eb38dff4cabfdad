#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "skein/linalg.hpp"
#include "skein/poly.hpp"
#include "skein/symalg.hpp"
#include "skein/weblang.hpp"

namespace skein {

// An element of a bimodule, written in its right basis: coordinate j is the
// coefficient of generator m_j, a polynomial in the incoming boundary ring.
using Element = std::vector<Poly>;

bool isZero(const Element& x);
Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator*(const Rational& c, const Element& x);
// Right action of the incoming ring.
Element operator*(const Element& x, const Poly& r);

// Singular Bott-Samelson bimodule of a web built from merges and splits.
//
// Level 0 carries the source colors and level L the target colors; level l
// sits just after the l-th layer. The ring of a level is the polynomial ring
// in e_i of each strand, with strand j using variables offset_j .. offset_j+c_j-1.
// Each layer is free as a right module over the ring below it:
//   merge (a,b) -> a+b: basis {1} in degree -ab,
//   split c -> (a,b):   basis s_lambda(A) for lambda in the a x b box, degree 2|lambda|.
// The bimodule is the tensor product of its layers, free over the incoming
// ring on the products m_J of layer basis elements. J is a mixed-radix index
// whose least significant digit belongs to the first layer.
class GradedBimodule {
 public:
  static std::shared_ptr<const GradedBimodule> of(const Web& w);

  const Web& web() const { return web_; }
  const ColorSeq& source() const { return web_.source(); }
  const ColorSeq& target() const { return web_.target(); }
  int levels() const { return static_cast<int>(levels_.size()) - 1; }
  const ColorSeq& levelColors(int level) const { return levels_[level].colors; }
  // Variable index of e_i (1-based i) of strand `strand` (0-based) at a level.
  int levelVariable(int level, int strand, int i) const { return levels_[level].offsets[strand] + i - 1; }
  const std::vector<int>& levelWeights(int level) const { return levels_[level].weights; }

  int rank() const { return rank_; }
  int generatorDegree(int j) const { return genDegree_[j]; }
  int minGeneratorDegree() const;
  // Total degree contributed by merge layers, sum of -ab.
  int shift() const { return shift_; }
  std::string generatorLabel(int j) const;

  Element zero() const { return Element(rank_); }
  Element basisElement(int j, const Poly& coeff = Poly(1)) const;
  Element unit() const { return basisElement(0); }

  // Multiplication by r, a polynomial in the variables of `level`, inserted
  // at that level. Level L is the left action, level 0 the right action.
  Element act(int level, const Poly& r, const Element& x) const;
  Element leftAct(const Poly& r, const Element& x) const { return act(levels(), r, x); }

  // Edges of the web and the ambient ring of all edge alphabets.
  const EdgeGraph& graph() const { return graph_; }
  const std::shared_ptr<const Ambient>& edgeAmbient() const { return ambient_; }
  // Resolves generic edge names; "Xi'" also names a strand that runs
  // straight through (whose edge is called Xi).
  int edge(const std::string& name) const;
  AlphabetExpr alphabet(const std::string& name) const;
  AlphabetExpr alphabet(int edge) const;
  SymExpr elementary(int r, const AlphabetExpr& a) const;
  SymExpr complete(int r, const AlphabetExpr& a) const;
  SymExpr schur(const Partition& alpha, const AlphabetExpr& a) const;
  // Multiplication by a polynomial in the edge alphabets.
  Element multiply(const SymExpr& f, const Element& x) const;

  // Degree of a homogeneous element; throws if x is not homogeneous and
  // returns INT_MIN for zero.
  int degree(const Element& x) const;

  // The degree-d piece has basis (j, monomial of the incoming ring) with
  // deg m_j + deg(monomial) = d, ordered by j then by monomial.
  std::vector<std::pair<int, Mono>> gradedPiece(int d) const;
  long pieceDimension(int d) const;
  std::vector<Rational> coordinates(const Element& x, int d) const;
  // sum_j q^{deg m_j}; the Hilbert series is this times that of the incoming ring.
  Laurent generatorSeries() const;
  // Hilbert series expanded up to q^maxDegree.
  Laurent hilbertSeries(int maxDegree) const;

  std::string str(const Element& x) const;
  // Human-readable description: generators, shifts, left action images and
  // per-degree dimensions up to maxDegree. Stable across runs.
  std::string dump(int maxDegree) const;

  explicit GradedBimodule(const Web& w);

 private:
  struct Level {
    ColorSeq colors;
    std::vector<int> offsets;
    std::vector<int> weights;
  };
  struct Layer {
    LayerKind kind;
    int strand;  // 0-based strand index in the level below
    int a, b;    // parts of the merged or split strand
    int offset;  // variable offset of that strand
    std::vector<Partition> box;     // split basis
    std::vector<Poly> boxSchur;     // s_lambda(A) in local variables
    std::vector<Poly> mergeImages;  // substitution for merge layers
    int radix = 1;
  };
  using Expansion = std::vector<std::pair<int, Poly>>;
  struct CacheKey {
    int level;
    Mono mono;
    int index;
    bool operator==(const CacheKey&) const = default;
  };
  struct CacheKeyHash {
    std::size_t operator()(const CacheKey& k) const {
      return MonoHash()(k.mono) * 31u + static_cast<std::size_t>(k.level) * 1000003u + static_cast<std::size_t>(k.index);
    }
  };

  Expansion layerAct(int layer, const Mono& mono, int j) const;
  const Expansion& lowerAct(int level, const Mono& mono, int index) const;
  Element actMono(int level, const Mono& mono, const Element& x) const;

  Web web_;
  std::vector<Level> levels_;
  std::vector<Layer> layers_;
  std::vector<int> stride_;  // stride_[l] = product of radices of layers 1..l
  int rank_ = 1;
  int shift_ = 0;
  std::vector<int> genDegree_;
  EdgeGraph graph_;
  std::shared_ptr<const Ambient> ambient_;
  std::vector<std::pair<int, int>> edgeHome_;  // (level, strand)
  std::vector<std::pair<int, int>> varHome_;   // edge variable -> (level, level variable)

  mutable std::mutex mu_;
  mutable std::unordered_map<CacheKey, Expansion, CacheKeyHash> layerCache_;
  mutable std::unordered_map<CacheKey, Expansion, CacheKeyHash> lowerCache_;
};

using BimodulePtr = std::shared_ptr<const GradedBimodule>;

// Bimodule map of q-degree `qdegree`, stored by the images of the source's
// right basis. Right linearity makes this determine the map completely.
struct BimoduleMap {
  BimodulePtr source;
  BimodulePtr target;
  int qdegree = 0;
  std::vector<Element> images;

  static BimoduleMap zero(BimodulePtr source, BimodulePtr target, int qdegree);
  static BimoduleMap identity(BimodulePtr b);

  Element apply(const Element& x) const;
  bool isZero() const;
  BimoduleMap operator+(const BimoduleMap& o) const;
  BimoduleMap operator-(const BimoduleMap& o) const;
  BimoduleMap scaled(const Rational& c) const;
  bool operator==(const BimoduleMap& o) const;

  // Matrix from the source piece of degree d to the target piece of degree
  // d + qdegree, against the gradedPiece bases.
  DenseMatrix matrix(int d) const;
  // Exact check that the map commutes with the left action generators.
  bool commutesWithActions() const;
  std::string str() const;
};

// g after f.
BimoduleMap compose(const BimoduleMap& g, const BimoduleMap& f);

// Central multiplication by a polynomial in the edge alphabets of b.
BimoduleMap multiplicationMap(const BimodulePtr& b, const SymExpr& f);

// Space of bimodule maps B1 -> B2 of a given q-degree. Constraints of
// degree above the truncation are dropped, so the dimension can only be
// overestimated; solving again at D+2 certifies stabilization.
struct HomSpace {
  std::vector<BimoduleMap> basis;
  int truncation = 0;
  int dimension = 0;
  int dimensionNext = 0;
  bool stabilized() const { return dimension == dimensionNext; }
};

int defaultTruncation(int a, int b);
HomSpace homSolve(const BimodulePtr& b1, const BimodulePtr& b2, int qdegree, int truncation);
// Thrown when a hom dimension differs between D and D+2.
struct NotStabilizedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unique map of lowest degree (uniqueness is checked), normalized so that
// its first nonzero coordinate is +1.
BimoduleMap uniqueMap(const BimodulePtr& b1, const BimodulePtr& b2, int qdegree, int truncation);

// The four elementary foams on a strand or pair of strands.
//   Unzip:    S.M on (a,b) -> id(a,b),  f (x) g -> fg
//   Zip:      id(a,b) -> S.M on (a,b),  1 -> s_{b^a}(X1 - X2')
//   Collapse: M.S on a+b -> id(a+b),    f -> Sylvester operator of f
//   Create:   id(a+b) -> M.S on a+b,    1 -> 1
enum class FoamKind { Unzip, Zip, Collapse, Create };
BimoduleMap foamGenerator(FoamKind kind, int a, int b);

// Places f on a larger set of strands: `before` strands in front of it and
// `after` strands behind.
BimoduleMap tensorIdentity(const BimoduleMap& f, const ColorSeq& before, const ColorSeq& after);
// id_top * f * id_bottom, where bottom acts first.
BimoduleMap whisker(const Web& top, const BimoduleMap& f, const Web& bottom);

// Map induced by a ring homomorphism between edge rings: every split
// generator s_lambda(A) is sent to s_lambda(image of A). Edges without an
// explicit image keep their name in the target. The caller is responsible
// for the assignment respecting the vertex relations; commutesWithActions()
// checks it.
BimoduleMap edgeRingMap(const BimodulePtr& source, const BimodulePtr& target,
                        const std::map<std::string, AlphabetExpr>& images, int qdegree);

// Decomposition of the digon M.S on r+s with parts (r, s) into shifted
// copies of the identity, one per partition in the r x s box.
struct DigonDecomposition {
  int r = 0, s = 0;
  std::vector<Partition> labels;
  std::vector<BimoduleMap> forward;   // digon -> identity
  std::vector<BimoduleMap> backward;  // identity -> digon
};
DigonDecomposition digonDecomposition(int r, int s);

}  // namespace skein

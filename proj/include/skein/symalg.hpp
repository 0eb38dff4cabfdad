#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "skein/gradearith.hpp"
#include "skein/poly.hpp"

namespace skein {

// ---------------------------------------------------------------------------
// Partitions

struct Partition {
  std::vector<int> parts;  // weakly decreasing, positive

  Partition() = default;
  explicit Partition(std::vector<int> p);  // drops trailing zeros, validates order

  int size() const;  // |alpha|
  int length() const { return static_cast<int>(parts.size()); }
  int part(int i) const { return i < length() ? parts[i] : 0; }  // 0-based
  Partition conjugate() const;
  bool fitsInBox(int rows, int cols) const;
  bool contains(const Partition& o) const;
  std::string str() const;  // "(2,1)", empty partition is "()"
  bool operator==(const Partition&) const = default;
  bool operator<(const Partition& o) const { return parts < o.parts; }
};

// All partitions with at most `rows` parts, each at most `cols`, in
// decreasing lexicographic order.
std::vector<Partition> partitionsInBox(int rows, int cols);

// Complement of alpha inside the rows x cols box, then transposed.
// alpha must fit in the box; the result fits in the cols x rows box.
Partition dualComplement(const Partition& alpha, int rows, int cols);

// For a 0/1 sequence: the m-th part counts the zeros strictly before the
// m-th one, sorted decreasingly. With r zeros and s ones the result has at
// most s parts, each at most r.
Partition zetaPartition(const std::vector<int>& epsilon);

// True iff lambda is contained in alpha and alpha/lambda has at most one
// box in every column.
bool isHorizontalStrip(const Partition& alpha, const Partition& lambda);

// ---------------------------------------------------------------------------
// Symmetric functions evaluated on linear combinations of alphabets.
//
// An alphabet is described by the values of its elementary symmetric
// functions, e[i] = e_{i+1}, as polynomials in some ambient ring. This lets
// the same routines work for abstract generators e_i(A) and for the edge
// alphabets of a bimodule.

struct AlphabetValue {
  Rational coeff;
  std::vector<Poly> e;
};
using AlphabetCombination = std::vector<AlphabetValue>;

// Truncated generating series: result[k] for 0 <= k <= degree.
std::vector<Poly> elementarySeries(const AlphabetCombination& a, int degree);
std::vector<Poly> completeSeries(const AlphabetCombination& a, int degree);
// result[0] is zero (p_0 is undefined).
std::vector<Poly> powerSumSeries(const AlphabetCombination& a, int degree);

// Independent route through power sums and the Newton recurrences; used as
// an oracle for the generating-function route above.
std::vector<Poly> elementarySeriesNewton(const AlphabetCombination& a, int degree);
std::vector<Poly> completeSeriesNewton(const AlphabetCombination& a, int degree);

// Jacobi-Trudi determinant det(h_{alpha_i - i + j}).
Poly schurPoly(const Partition& alpha, const AlphabetCombination& a);

// e_1..e_n of the concrete variables offset..offset+n-1.
std::vector<Poly> elementaryInVariables(int n, int offset = 0);

// Writes a polynomial symmetric in variables offset..offset+n-1 (and free
// of other variables) in terms of e_1..e_n, returned as a polynomial in
// variables 0..n-1 standing for e_1..e_n. Throws if f is not symmetric.
Poly symmetricToElementary(const Poly& f, int n, int offset = 0);

// Demazure operator on variables i-1, i (1-based i as in x_i, x_{i+1}).
Poly demazure(int i, const Poly& f);
// Sylvester composite on the block of a+b variables starting at offset:
// (d_b...d_1)(d_{b+1}...d_2)...(d_{a+b-1}...d_a), rightmost factor first.
Poly sylvester(int a, int b, const Poly& f, int offset = 0);

// ---------------------------------------------------------------------------
// Named alphabets.

class AlphabetExpr {
 public:
  AlphabetExpr() = default;
  static AlphabetExpr alphabet(const std::string& name, int size, const Rational& coeff = 1);

  const std::map<std::string, Rational>& terms() const { return terms_; }
  const std::map<std::string, int>& sizes() const { return sizes_; }

  AlphabetExpr& operator+=(const AlphabetExpr& o);
  AlphabetExpr operator-() const;
  friend AlphabetExpr operator+(AlphabetExpr a, const AlphabetExpr& b) { return a += b; }
  friend AlphabetExpr operator-(AlphabetExpr a, const AlphabetExpr& b) { return a += -b; }
  friend AlphabetExpr operator*(const Rational& c, const AlphabetExpr& a);

  std::string str() const;  // "X1 + X2 - 2*Y"

 private:
  std::map<std::string, Rational> terms_;
  std::map<std::string, int> sizes_;
};

// Ordered list of alphabets whose elementary functions generate a ring.
class Ambient {
 public:
  explicit Ambient(std::vector<std::pair<std::string, int>> alphabets);
  static std::shared_ptr<const Ambient> of(const AlphabetExpr& a);

  const std::vector<std::pair<std::string, int>>& alphabets() const { return alphabets_; }
  int variableCount() const { return static_cast<int>(names_.size()); }
  int variable(const std::string& alphabet, int i) const;  // index of e_i(alphabet)
  const std::vector<int>& weights() const { return weights_; }  // deg e_i = 2i
  std::vector<Poly> generators(const std::string& alphabet) const;
  AlphabetCombination combination(const AlphabetExpr& a) const;
  const std::string& variableName(int v) const { return names_[v]; }

 private:
  std::vector<std::pair<std::string, int>> alphabets_;
  std::map<std::string, int> offsets_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

struct SymExpr {
  std::shared_ptr<const Ambient> ambient;
  Poly poly;

  int degree() const { return poly.homogeneousDegree(ambient->weights()); }
  std::string str() const;
};

SymExpr evalE(int r, const AlphabetExpr& a);
SymExpr evalH(int r, const AlphabetExpr& a);
SymExpr evalP(int r, const AlphabetExpr& a);
SymExpr schur(const Partition& alpha, const AlphabetExpr& a);

enum class Identity { HE, Newton, HE2, SomeRel1a, SomeRel1b };

struct IdentityParams {
  int degree = 1;      // k or r in the identity
  int sizeX = 2;       // |X|
  int sizeXPrime = 2;  // |X'|
};

// Expands both sides in the e-generators of X and X' and compares exactly.
bool checkIdentity(Identity id, const IdentityParams& params);

}  // namespace skein

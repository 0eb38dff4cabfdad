#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skein/gradearith.hpp"
#include "skein/weblang.hpp"

namespace skein {

// Laurent polynomial in q with integer coefficients, stored densely.
class ZLaurent {
 public:
  ZLaurent() = default;
  ZLaurent(long c);  // NOLINT(google-explicit-constructor)
  static ZLaurent monomial(int e, const Integer& c = 1);
  static ZLaurent fromLaurent(const Laurent& l);  // requires integer coefficients, t-free

  bool isZero() const { return c_.empty(); }
  Integer coefficient(int e) const;
  int low() const { return lo_; }
  int high() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  Laurent toLaurent() const;

  ZLaurent& operator+=(const ZLaurent& o);
  ZLaurent& operator-=(const ZLaurent& o);
  ZLaurent operator-() const;
  friend ZLaurent operator+(ZLaurent a, const ZLaurent& b) { return a += b; }
  friend ZLaurent operator-(ZLaurent a, const ZLaurent& b) { return a -= b; }
  friend ZLaurent operator*(const ZLaurent& a, const ZLaurent& b);
  bool operator==(const ZLaurent& o) const { return lo_ == o.lo_ && c_ == o.c_; }
  ZLaurent shifted(int e) const;
  // this += c * other
  void addMul(const ZLaurent& c, const ZLaurent& other);
  // Exact quotient by a divisor whose leading coefficient is +-1, if any.
  std::optional<ZLaurent> dividedExactly(const ZLaurent& d) const;

 private:
  void trim();
  int lo_ = 0;
  std::vector<Integer> c_;
};

// Permutation tables for the symmetric group on n letters.
class SymmetricGroup {
 public:
  static std::shared_ptr<const SymmetricGroup> get(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(perms_.size()); }
  int identity() const { return 0; }
  const std::vector<int>& oneLine(int w) const { return perms_[w]; }
  int length(int w) const { return length_[w]; }
  // Index of w * s_i (i is 1-based), i.e. positions i and i+1 swapped.
  int rightMul(int w, int i) const { return right_[w][i - 1]; }
  int index(const std::vector<int>& oneLine) const;
  // Elements of the parabolic subgroup for the block composition `blocks`.
  std::vector<int> parabolic(const ColorSeq& blocks) const;

 private:
  explicit SymmetricGroup(int n);
  int n_;
  std::vector<std::vector<int>> perms_;
  std::vector<int> length_;
  std::vector<std::vector<int>> right_;
};

// Element of the Hecke algebra H_n over Q(q), written as
// (sum_w num[w] T_w) / den with T_i^2 = 1 + (q - q^-1) T_i.
class HeckeElement {
 public:
  explicit HeckeElement(int n);
  static HeckeElement one(int n);
  static HeckeElement generator(int n, int i);         // T_i
  static HeckeElement generatorInverse(int n, int i);  // T_i^-1 = T_i - (q - q^-1)
  static HeckeElement basis(int n, int w);             // T_w

  int n() const { return group_->n(); }
  const SymmetricGroup& group() const { return *group_; }
  const ZLaurent& numerator(int w) const { return num_[w]; }
  const ZLaurent& denominator() const { return den_; }
  bool isZero() const;

  HeckeElement operator+(const HeckeElement& o) const;
  HeckeElement operator-(const HeckeElement& o) const;
  HeckeElement operator*(const HeckeElement& o) const;
  HeckeElement scaled(const Laurent& c) const;     // c must have integer coefficients
  HeckeElement dividedBy(const Laurent& c) const;  // c must be nonzero with integer coefficients
  HeckeElement rightMulGenerator(int i) const;
  // Cancels cyclotomic factors shared by the denominator and all numerators.
  HeckeElement& reduce();
  bool operator==(const HeckeElement& o) const;
  bool operator!=(const HeckeElement& o) const { return !(*this == o); }

  // Coefficient of T_w as an exact quotient "num / den" rendering.
  std::string str() const;

 private:
  std::shared_ptr<const SymmetricGroup> group_;
  std::vector<ZLaurent> num_;
  ZLaurent den_{1};
};

// Parabolic idempotent with T_i e = q e for every T_i inside a block.
HeckeElement idempotent(const ColorSeq& blocks);

// A morphism aa -> bb of the Hecke algebroid, e_bb * value * e_aa = value.
struct AlgebroidMorphism {
  ColorSeq source;
  ColorSeq target;
  HeckeElement value;

  bool operator==(const AlgebroidMorphism& o) const {
    return source == o.source && target == o.target && value == o.value;
  }
};

AlgebroidMorphism operator*(const AlgebroidMorphism& f, const AlgebroidMorphism& g);  // f after g
AlgebroidMorphism operator+(const AlgebroidMorphism& f, const AlgebroidMorphism& g);
AlgebroidMorphism operator*(const Laurent& c, const AlgebroidMorphism& f);
AlgebroidMorphism identityMorphism(const ColorSeq& colors);

// Generator word of a colored crossing at `position`: for colors (a, b) it
// is the concatenation over i = 1..a of s_{i+b-1} ... s_i, offset by the
// colors of the strands before `position`. Its product T_w satisfies
// T_w e_{(a,b)} = e_{(b,a)} T_w.
std::vector<int> cableWord(const ColorSeq& colors, int position);

AlgebroidMorphism cable(const ColoredBraidWord& beta);
AlgebroidMorphism webClass(const Web& w);
AlgebroidMorphism layerClass(const WebLayer& layer);

// sum_k (-1)^k q^{-+k} [C^k_{a,b}] over the ladders of the 2-strand complex.
AlgebroidMorphism eulerCrossing(int a, int b, bool positive);

struct SkeinReport {
  int a = 0, b = 0;
  bool digonIdentity = false;   // sum_s (-q^{b-1})^s [digon_s] = scalar * [twisted digon]
  bool crossingIdentity = false;  // the identity with the (-1)^b q^{-b} prod coefficient
  std::string digonWitness;     // difference element when the identity fails
  std::string crossingWitness;
  bool pass() const { return digonIdentity && crossingIdentity; }
};

SkeinReport verifySkein(int a, int b);

}  // namespace skein

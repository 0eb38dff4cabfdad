#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>

namespace skein {

using Rational = mpq_class;
using Integer = mpz_class;

std::string toString(const Rational& r);

// A q/t bidegree shift; shifts compose additively.
struct GradingShift {
  int q = 0;
  int t = 0;

  GradingShift operator+(const GradingShift& o) const { return {q + o.q, t + o.t}; }
  GradingShift operator-() const { return {-q, -t}; }
  bool operator==(const GradingShift&) const = default;
};

// Exact Laurent polynomial in q and t with rational coefficients.
// Used for quantum numbers, grading weights, Euler characteristics and
// truncated Hilbert series.
class Laurent {
 public:
  using Key = std::pair<int, int>;  // (q exponent, t exponent)

  Laurent() = default;
  Laurent(const Rational& c);  // NOLINT(google-explicit-constructor)
  Laurent(long c) : Laurent(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Laurent monomial(int qexp, int texp = 0, const Rational& c = 1);
  static Laurent fromShift(const GradingShift& s) { return monomial(s.q, s.t); }

  const std::map<Key, Rational>& terms() const { return c_; }
  bool isZero() const { return c_.empty(); }
  Rational coefficient(int qexp, int texp = 0) const;
  int minQ() const;
  int maxQ() const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const Laurent& o);
  Laurent operator-() const;
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  bool operator==(const Laurent& o) const { return c_ == o.c_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  Laurent pow(unsigned n) const;
  Laurent shifted(int dq, int dt = 0) const;
  Laurent shifted(const GradingShift& s) const { return shifted(s.q, s.t); }
  // q -> q^{-1}
  Laurent bar() const;
  // Specializations that collapse one variable.
  Laurent atQEqualsOne() const;
  Laurent atTEqualsMinusOne() const;
  // Keep only terms with q exponent <= bound.
  Laurent truncatedAbove(int qbound) const;

  // Canonical rendering, ascending in q then t, e.g. "-q^-1 + q".
  std::string str() const;

 private:
  void addTerm(const Key& k, const Rational& c);
  std::map<Key, Rational> c_;
};

// Balanced quantum integer [n] = (q^n - q^-n)/(q - q^-1).
Laurent qint(int n);
Laurent qfactorial(int n);
Laurent qbinom(int n, int k);
// (-1)^b q^{b(a-b-1)} prod_{i=1}^b (1 - q^{2i}).
Laurent skeinScalar(int a, int b);
// prod_{i=1}^b (1 - q^{2i}).
Laurent qPochhammerEven(int b);

}  // namespace skein

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "skein/gradearith.hpp"

namespace skein {

// Exponent vector for up to 32 variables, one byte per variable.
// Variable 0 sits in the most significant byte of the first word, so the
// word-wise comparison is lexicographic order with variable 0 dominant.
struct Mono {
  static constexpr int kMaxVars = 32;
  std::array<std::uint64_t, 4> w{};

  int exp(int i) const { return static_cast<int>((w[i >> 3] >> shiftOf(i)) & 0xffu); }
  void setExp(int i, int e);
  int totalDegree() const;
  int weightedDegree(const std::vector<int>& weights) const;
  int maxVar() const;  // largest variable with nonzero exponent, or -1
  bool divides(const Mono& o) const;

  Mono operator*(const Mono& o) const;
  Mono operator/(const Mono& o) const;
  bool operator<(const Mono& o) const { return w < o.w; }
  bool operator==(const Mono& o) const { return w == o.w; }

  static Mono var(int i, int e = 1) {
    Mono m;
    m.setExp(i, e);
    return m;
  }

 private:
  static int shiftOf(int i) { return 8 * (7 - (i & 7)); }
};

struct MonoHash {
  std::size_t operator()(const Mono& m) const {
    std::size_t h = 0;
    for (auto x : m.w) h = h * 1000003u ^ std::hash<std::uint64_t>()(x);
    return h;
  }
};

// Sparse multivariate polynomial with rational coefficients.
class Poly {
 public:
  using Terms = std::map<Mono, Rational>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly var(int i, int e = 1) { return monomial(Mono::var(i, e), 1); }
  static Poly monomial(const Mono& m, const Rational& c);

  const Terms& terms() const { return t_; }
  bool isZero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  Rational coefficient(const Mono& m) const;
  int maxVar() const;
  // -1 for the zero polynomial; otherwise the common weighted degree,
  // or throws if the polynomial is not homogeneous.
  int homogeneousDegree(const std::vector<int>& weights) const;

  void addTerm(const Mono& m, const Rational& c);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(unsigned n) const;
  // Substitute variable i by images[i]; variables beyond images.size() are
  // kept as they are.
  Poly substitute(const std::vector<Poly>& images) const;
  // Rename variable i to i + offset.
  Poly shiftVariables(int offset) const;
  // Swap two variables.
  Poly swapVariables(int i, int j) const;

  std::string str(const std::function<std::string(int)>& varName) const;
  std::string str() const;

 private:
  Terms t_;
};

// All monomials in variables 0..weights.size()-1 of the given weighted
// degree, in increasing Mono order.
std::vector<Mono> monomialsOfDegree(const std::vector<int>& weights, int degree);

}  // namespace skein

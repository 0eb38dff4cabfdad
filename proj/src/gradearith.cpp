#include "skein/gradearith.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace skein {

std::string toString(const Rational& r) { return r.get_str(); }

Laurent::Laurent(const Rational& c) {
  if (c != 0) c_[{0, 0}] = c;
}

Laurent Laurent::monomial(int qexp, int texp, const Rational& c) {
  Laurent l;
  if (c != 0) l.c_[{qexp, texp}] = c;
  return l;
}

void Laurent::addTerm(const Key& k, const Rational& c) {
  if (c == 0) return;
  auto it = c_.find(k);
  if (it == c_.end()) {
    c_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second == 0) c_.erase(it);
}

Rational Laurent::coefficient(int qexp, int texp) const {
  auto it = c_.find({qexp, texp});
  return it == c_.end() ? Rational(0) : it->second;
}

int Laurent::minQ() const {
  int m = std::numeric_limits<int>::max();
  for (const auto& [k, v] : c_) m = std::min(m, k.first);
  return m;
}

int Laurent::maxQ() const {
  int m = std::numeric_limits<int>::min();
  for (const auto& [k, v] : c_) m = std::max(m, k.first);
  return m;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [k, v] : o.c_) addTerm(k, v);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [k, v] : o.c_) addTerm(k, -v);
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [ka, va] : a.c_)
    for (const auto& [kb, vb] : b.c_) r.addTerm({ka.first + kb.first, ka.second + kb.second}, va * vb);
  return r;
}

Laurent& Laurent::operator*=(const Laurent& o) {
  *this = *this * o;
  return *this;
}

Laurent Laurent::operator-() const {
  Laurent r;
  for (const auto& [k, v] : c_) r.c_.emplace(k, -v);
  return r;
}

Laurent Laurent::pow(unsigned n) const {
  Laurent r(1), base = *this;
  while (n) {
    if (n & 1u) r *= base;
    base *= base;
    n >>= 1u;
  }
  return r;
}

Laurent Laurent::shifted(int dq, int dt) const {
  Laurent r;
  for (const auto& [k, v] : c_) r.c_.emplace(Key{k.first + dq, k.second + dt}, v);
  return r;
}

Laurent Laurent::bar() const {
  Laurent r;
  for (const auto& [k, v] : c_) r.c_.emplace(Key{-k.first, k.second}, v);
  return r;
}

Laurent Laurent::atQEqualsOne() const {
  Laurent r;
  for (const auto& [k, v] : c_) r.addTerm({0, k.second}, v);
  return r;
}

Laurent Laurent::atTEqualsMinusOne() const {
  Laurent r;
  for (const auto& [k, v] : c_) r.addTerm({k.first, 0}, (k.second % 2 == 0) ? v : Rational(-v));
  return r;
}

Laurent Laurent::truncatedAbove(int qbound) const {
  Laurent r;
  for (const auto& [k, v] : c_)
    if (k.first <= qbound) r.c_.emplace(k, v);
  return r;
}

namespace {

std::string variablePart(const char* name, int e) {
  if (e == 0) return "";
  if (e == 1) return name;
  return std::string(name) + "^" + std::to_string(e);
}

}  // namespace

std::string Laurent::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : c_) {
    std::string vars = variablePart("q", k.first);
    std::string tv = variablePart("t", k.second);
    if (!vars.empty() && !tv.empty()) vars += "*";
    vars += tv;
    Rational mag = abs(v);
    bool neg = v < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (vars.empty()) {
      os << mag.get_str();
    } else if (mag == 1) {
      os << vars;
    } else {
      os << mag.get_str() << "*" << vars;
    }
  }
  return os.str();
}

Laurent qint(int n) {
  if (n < 0) throw std::invalid_argument("qint: n must be nonnegative");
  Laurent r;
  for (int j = 0; j < n; ++j) r += Laurent::monomial(n - 1 - 2 * j);
  return r;
}

Laurent qfactorial(int n) {
  Laurent r(1);
  for (int j = 2; j <= n; ++j) r *= qint(j);
  return r;
}

Laurent qbinom(int n, int k) {
  if (k < 0 || n < 0 || k > n) throw std::invalid_argument("qbinom: need 0 <= k <= n");
  // Balanced q-Pascal rule: [n,k] = q^{k}[n-1,k] + q^{-(n-k)}[n-1,k-1].
  if (k == 0 || k == n) return Laurent(1);
  return qbinom(n - 1, k).shifted(k) + qbinom(n - 1, k - 1).shifted(-(n - k));
}

Laurent qPochhammerEven(int b) {
  Laurent r(1);
  for (int i = 1; i <= b; ++i) r *= Laurent(1) - Laurent::monomial(2 * i);
  return r;
}

Laurent skeinScalar(int a, int b) {
  if (b < 0 || a < b) throw std::invalid_argument("skeinScalar: need a >= b >= 0");
  Laurent r = qPochhammerEven(b).shifted(b * (a - b - 1));
  return (b % 2 == 0) ? r : -r;
}

}  // namespace skein

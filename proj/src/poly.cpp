#include "skein/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace skein {

void Mono::setExp(int i, int e) {
  if (i < 0 || i >= kMaxVars) throw std::out_of_range("Mono: variable index out of range");
  if (e < 0 || e > 255) throw std::overflow_error("Mono: exponent out of range");
  std::uint64_t mask = std::uint64_t(0xff) << shiftOf(i);
  w[i >> 3] = (w[i >> 3] & ~mask) | (std::uint64_t(e) << shiftOf(i));
}

int Mono::totalDegree() const {
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) d += exp(i);
  return d;
}

int Mono::weightedDegree(const std::vector<int>& weights) const {
  int d = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = exp(i);
    if (e == 0) continue;
    if (i >= static_cast<int>(weights.size())) throw std::out_of_range("Mono: missing weight");
    d += e * weights[i];
  }
  return d;
}

int Mono::maxVar() const {
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (exp(i)) return i;
  return -1;
}

bool Mono::divides(const Mono& o) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (exp(i) > o.exp(i)) return false;
  return true;
}

Mono Mono::operator*(const Mono& o) const {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = exp(i) + o.exp(i);
    if (e) r.setExp(i, e);
  }
  return r;
}

Mono Mono::operator/(const Mono& o) const {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) {
    int e = exp(i) - o.exp(i);
    if (e < 0) throw std::domain_error("Mono: division is not exact");
    if (e) r.setExp(i, e);
  }
  return r;
}

Poly::Poly(const Rational& c) {
  if (c != 0) t_.emplace(Mono{}, c);
}

Poly Poly::monomial(const Mono& m, const Rational& c) {
  Poly p;
  if (c != 0) p.t_.emplace(m, c);
  return p;
}

Rational Poly::coefficient(const Mono& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Rational(0) : it->second;
}

int Poly::maxVar() const {
  int v = -1;
  for (const auto& [m, c] : t_) v = std::max(v, m.maxVar());
  return v;
}

int Poly::homogeneousDegree(const std::vector<int>& weights) const {
  int d = -1;
  for (const auto& [m, c] : t_) {
    int e = m.weightedDegree(weights);
    if (d >= 0 && e != d) throw std::domain_error("Poly: not homogeneous");
    d = e;
  }
  return d;
}

void Poly::addTerm(const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) t_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.t_) addTerm(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.t_) addTerm(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [m, v] : t_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, v] : r.t_) v = -v;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) r.addTerm(ma * mb, ca * cb);
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly r(1), base = *this;
  while (n) {
    if (n & 1u) r = r * base;
    n >>= 1u;
    if (n) base = base * base;
  }
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  // Cache powers of each image as they are needed.
  std::vector<std::vector<Poly>> powers(images.size());
  auto powerOf = [&](int v, int e) -> const Poly& {
    auto& tab = powers[v];
    if (tab.empty()) tab.push_back(Poly(1));
    while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * images[v]);
    return tab[e];
  };
  Poly r;
  for (const auto& [m, c] : t_) {
    Poly term(c);
    Mono kept;
    for (int i = 0; i <= m.maxVar(); ++i) {
      int e = m.exp(i);
      if (!e) continue;
      if (i < static_cast<int>(images.size())) {
        term = term * powerOf(i, e);
      } else {
        kept.setExp(i, e);
      }
    }
    if (!(kept == Mono{})) term = term * Poly::monomial(kept, 1);
    r += term;
  }
  return r;
}

Poly Poly::shiftVariables(int offset) const {
  Poly r;
  for (const auto& [m, c] : t_) {
    Mono n;
    for (int i = 0; i <= m.maxVar(); ++i)
      if (m.exp(i)) n.setExp(i + offset, m.exp(i));
    r.addTerm(n, c);
  }
  return r;
}

Poly Poly::swapVariables(int i, int j) const {
  Poly r;
  for (const auto& [m, c] : t_) {
    Mono n = m;
    n.setExp(i, m.exp(j));
    n.setExp(j, m.exp(i));
    r.addTerm(n, c);
  }
  return r;
}

std::string Poly::str(const std::function<std::string(int)>& varName) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print in descending monomial order so leading terms come first.
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string vars;
    for (int i = 0; i <= m.maxVar(); ++i) {
      int e = m.exp(i);
      if (!e) continue;
      if (!vars.empty()) vars += "*";
      vars += varName(i);
      if (e > 1) vars += "^" + std::to_string(e);
    }
    Rational mag = abs(c);
    bool neg = c < 0;
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

std::string Poly::str() const {
  return str([](int i) { return "v" + std::to_string(i); });
}

std::vector<Mono> monomialsOfDegree(const std::vector<int>& weights, int degree) {
  std::vector<Mono> out;
  if (degree < 0) return out;
  const int n = static_cast<int>(weights.size());
  Mono m;
  // Depth-first over variables, filling the remaining degree.
  auto rec = [&](auto&& self, int v, int left) -> void {
    if (v == n) {
      if (left == 0) out.push_back(m);
      return;
    }
    if (weights[v] <= 0) throw std::invalid_argument("monomialsOfDegree: weights must be positive");
    for (int e = 0; e * weights[v] <= left; ++e) {
      m.setExp(v, e);
      self(self, v + 1, left - e * weights[v]);
    }
    m.setExp(v, 0);
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace skein

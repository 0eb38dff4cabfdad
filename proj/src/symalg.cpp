#include "skein/symalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace skein {

// ---------------------------------------------------------------------------
// Partitions

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  while (!parts.empty() && parts.back() == 0) parts.pop_back();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1]) throw std::invalid_argument("Partition: parts must decrease");
  }
}

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Partition Partition::conjugate() const {
  std::vector<int> c(parts.empty() ? 0 : parts.front(), 0);
  for (int p : parts)
    for (int j = 0; j < p; ++j) ++c[j];
  return Partition(std::move(c));
}

bool Partition::fitsInBox(int rows, int cols) const {
  return length() <= rows && (parts.empty() || parts.front() <= cols);
}

bool Partition::contains(const Partition& o) const {
  if (o.length() > length()) return false;
  for (int i = 0; i < o.length(); ++i)
    if (o.parts[i] > parts[i]) return false;
  return true;
}

std::string Partition::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  return s + ")";
}

namespace {

void boxRec(int rows, int maxPart, std::vector<int>& cur, std::vector<Partition>& out) {
  out.emplace_back(cur);
  if (static_cast<int>(cur.size()) == rows) return;
  for (int p = maxPart; p >= 1; --p) {
    cur.push_back(p);
    boxRec(rows, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitionsInBox(int rows, int cols) {
  std::vector<Partition> out;
  std::vector<int> cur;
  boxRec(std::max(rows, 0), std::max(cols, 0), cur, out);
  std::sort(out.begin(), out.end(), [](const Partition& a, const Partition& b) { return b < a; });
  return out;
}

Partition dualComplement(const Partition& alpha, int rows, int cols) {
  if (!alpha.fitsInBox(rows, cols)) throw std::invalid_argument("dualComplement: partition outside the box");
  std::vector<int> comp(rows);
  for (int i = 0; i < rows; ++i) comp[i] = cols - alpha.part(rows - 1 - i);
  return Partition(std::move(comp)).conjugate();
}

Partition zetaPartition(const std::vector<int>& epsilon) {
  std::vector<int> parts;
  int zeros = 0;
  for (int e : epsilon) {
    if (e == 0) {
      ++zeros;
    } else if (e == 1) {
      parts.push_back(zeros);
    } else {
      throw std::invalid_argument("zetaPartition: entries must be 0 or 1");
    }
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return Partition(std::move(parts));
}

bool isHorizontalStrip(const Partition& alpha, const Partition& lambda) {
  if (!alpha.contains(lambda)) return false;
  // Interlacing alpha_1 >= lambda_1 >= alpha_2 >= lambda_2 >= ...
  for (int i = 0; i + 1 < alpha.length(); ++i)
    if (lambda.part(i) < alpha.part(i + 1)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Truncated series helpers

namespace {

using Series = std::vector<Poly>;

Series mulSeries(const Series& a, const Series& b, int degree) {
  Series r(degree + 1);
  for (int i = 0; i <= degree && i < static_cast<int>(a.size()); ++i) {
    if (a[i].isZero()) continue;
    for (int j = 0; i + j <= degree && j < static_cast<int>(b.size()); ++j) {
      if (b[j].isZero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

// Inverse of a series with constant term 1.
Series invSeries(const Series& a, int degree) {
  Series r(degree + 1);
  r[0] = Poly(1);
  for (int k = 1; k <= degree; ++k) {
    Poly acc;
    for (int i = 1; i <= k && i < static_cast<int>(a.size()); ++i)
      if (!a[i].isZero() && !r[k - i].isZero()) acc += a[i] * r[k - i];
    r[k] = -acc;
  }
  return r;
}

Series ownSeries(const std::vector<Poly>& e, int degree) {
  Series r(degree + 1);
  r[0] = Poly(1);
  for (int i = 1; i <= degree && i <= static_cast<int>(e.size()); ++i) r[i] = e[i - 1];
  return r;
}

// (1 + u)^c for a series with constant term 1, c rational.
Series powSeries(const Series& s, const Rational& c, int degree) {
  if (c.get_den() == 1 && c >= 0) {
    Series r(degree + 1);
    r[0] = Poly(1);
    for (long k = 0; k < c.get_num().get_si(); ++k) r = mulSeries(r, s, degree);
    return r;
  }
  if (c.get_den() == 1) return powSeries(invSeries(s, degree), -c, degree);
  // Generalized binomial series in u = s - 1.
  Series u = s;
  u[0] = Poly();
  Series r(degree + 1), upow(degree + 1);
  r[0] = Poly(1);
  upow[0] = Poly(1);
  Rational binom = 1;
  for (int k = 1; k <= degree; ++k) {
    upow = mulSeries(upow, u, degree);
    binom = binom * (c - (k - 1)) / k;
    for (int i = 0; i <= degree; ++i)
      if (!upow[i].isZero()) r[i] += upow[i] * binom;
  }
  return r;
}

Series alternate(Series s) {
  for (std::size_t i = 1; i < s.size(); i += 2) s[i] = -s[i];
  return s;
}

// p_1..p_degree of a single alphabet from its elementary functions.
Series powerSumsOf(const std::vector<Poly>& e, int degree) {
  Series p(degree + 1);
  auto ei = [&](int i) -> Poly { return i <= static_cast<int>(e.size()) ? e[i - 1] : Poly(); };
  for (int k = 1; k <= degree; ++k) {
    Poly acc = ei(k) * Rational(k);
    if (k % 2 == 0) acc = -acc;
    for (int i = 1; i < k; ++i) {
      Poly ee = ei(i);
      if (ee.isZero()) continue;
      Poly term = ee * p[k - i];
      if (i % 2 == 0) term = -term;
      acc += term;
    }
    p[k] = acc;
  }
  return p;
}

}  // namespace

std::vector<Poly> elementarySeries(const AlphabetCombination& a, int degree) {
  Series r(degree + 1);
  r[0] = Poly(1);
  for (const auto& part : a) {
    if (part.coeff == 0) continue;
    r = mulSeries(r, powSeries(ownSeries(part.e, degree), part.coeff, degree), degree);
  }
  return r;
}

std::vector<Poly> completeSeries(const AlphabetCombination& a, int degree) {
  // H(A, t) = 1 / E(A, -t).
  return invSeries(alternate(elementarySeries(a, degree)), degree);
}

std::vector<Poly> powerSumSeries(const AlphabetCombination& a, int degree) {
  Series p(degree + 1);
  for (const auto& part : a) {
    if (part.coeff == 0) continue;
    Series q = powerSumsOf(part.e, degree);
    for (int k = 1; k <= degree; ++k) p[k] += q[k] * part.coeff;
  }
  return p;
}

std::vector<Poly> elementarySeriesNewton(const AlphabetCombination& a, int degree) {
  Series p = powerSumSeries(a, degree);
  Series e(degree + 1);
  e[0] = Poly(1);
  for (int k = 1; k <= degree; ++k) {
    Poly acc;
    for (int i = 1; i <= k; ++i) {
      Poly term = p[i] * e[k - i];
      if (i % 2 == 0) term = -term;
      acc += term;
    }
    e[k] = acc * Rational(1, k);
  }
  return e;
}

std::vector<Poly> completeSeriesNewton(const AlphabetCombination& a, int degree) {
  Series p = powerSumSeries(a, degree);
  Series h(degree + 1);
  h[0] = Poly(1);
  for (int k = 1; k <= degree; ++k) {
    Poly acc;
    for (int i = 1; i <= k; ++i) acc += p[i] * h[k - i];
    h[k] = acc * Rational(1, k);
  }
  return h;
}

namespace {

Poly determinant(std::vector<std::vector<Poly>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return Poly(1);
  if (n == 1) return m[0][0];
  Poly det;
  for (int j = 0; j < n; ++j) {
    if (m[0][j].isZero()) continue;
    std::vector<std::vector<Poly>> minor(n - 1);
    for (int i = 1; i < n; ++i)
      for (int c = 0; c < n; ++c)
        if (c != j) minor[i - 1].push_back(m[i][c]);
    Poly term = m[0][j] * determinant(std::move(minor));
    if (j % 2) term = -term;
    det += term;
  }
  return det;
}

}  // namespace

Poly schurPoly(const Partition& alpha, const AlphabetCombination& a) {
  const int n = alpha.length();
  if (n == 0) return Poly(1);
  int maxIndex = alpha.parts.front() + n - 1;
  Series h = completeSeries(a, maxIndex);
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int idx = alpha.parts[i] - i + j;
      if (idx >= 0) m[i][j] = h[idx];
    }
  return determinant(std::move(m));
}

std::vector<Poly> elementaryInVariables(int n, int offset) {
  // Build prod (1 + x_i t) coefficient by coefficient.
  std::vector<Poly> e(n + 1);
  e[0] = Poly(1);
  for (int v = 0; v < n; ++v)
    for (int k = v + 1; k >= 1; --k) e[k] += e[k - 1] * Poly::var(offset + v);
  e.erase(e.begin());
  return e;
}

Poly symmetricToElementary(const Poly& f, int n, int offset) {
  std::vector<Poly> e = elementaryInVariables(n, offset);
  std::vector<std::vector<Poly>> powers(n);
  Poly rest = f, result;
  while (!rest.isZero()) {
    const auto& [lead, c] = *rest.terms().rbegin();
    std::vector<int> lam(n);
    for (int i = 0; i < n; ++i) lam[i] = lead.exp(offset + i);
    if (lead.maxVar() >= offset + n || (lead.maxVar() >= 0 && [&] {
          for (int v = 0; v < offset; ++v)
            if (lead.exp(v)) return true;
          return false;
        }()))
      throw std::invalid_argument("symmetricToElementary: polynomial uses other variables");
    for (int i = 0; i + 1 < n; ++i)
      if (lam[i] < lam[i + 1]) throw std::invalid_argument("symmetricToElementary: polynomial is not symmetric");
    Poly term(c);
    Mono inE;
    for (int i = 0; i < n; ++i) {
      int mult = lam[i] - (i + 1 < n ? lam[i + 1] : 0);
      if (!mult) continue;
      inE.setExp(i, mult);
      auto& tab = powers[i];
      if (tab.empty()) tab.push_back(Poly(1));
      while (static_cast<int>(tab.size()) <= mult) tab.push_back(tab.back() * e[i]);
      term = term * tab[mult];
    }
    result.addTerm(inE, c);
    rest -= term;
  }
  return result;
}

Poly demazure(int i, const Poly& f) {
  if (i < 1) throw std::invalid_argument("demazure: index must be positive");
  const int u = i - 1, v = i;
  Poly r;
  for (const auto& [m, c] : f.terms()) {
    int a = m.exp(u), b = m.exp(v);
    if (a == b) continue;
    Mono base = m;
    int lo = std::min(a, b), d = std::abs(a - b);
    base.setExp(u, lo);
    base.setExp(v, lo);
    Rational sign = a > b ? Rational(1) : Rational(-1);
    // (x_u^d - x_v^d)/(x_u - x_v) = sum_j x_u^{d-1-j} x_v^j
    for (int j = 0; j < d; ++j) {
      Mono t = base;
      t.setExp(u, lo + d - 1 - j);
      t.setExp(v, lo + j);
      r.addTerm(t, c * sign);
    }
  }
  return r;
}

Poly sylvester(int a, int b, const Poly& f, int offset) {
  Poly r = f;
  // Factors are applied right to left, so start with j = a.
  for (int j = a; j >= 1; --j) {
    // Factor d_{b+j-1} ... d_j: apply d_j first.
    for (int i = j; i <= b + j - 1; ++i) r = demazure(offset + i, r);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Named alphabets

AlphabetExpr AlphabetExpr::alphabet(const std::string& name, int size, const Rational& coeff) {
  if (size < 0) throw std::invalid_argument("AlphabetExpr: negative size");
  AlphabetExpr a;
  a.sizes_[name] = size;
  if (coeff != 0) a.terms_[name] = coeff;
  return a;
}

AlphabetExpr& AlphabetExpr::operator+=(const AlphabetExpr& o) {
  for (const auto& [n, s] : o.sizes_) {
    auto [it, inserted] = sizes_.emplace(n, s);
    if (!inserted && it->second != s) throw std::invalid_argument("AlphabetExpr: size mismatch for " + n);
  }
  for (const auto& [n, c] : o.terms_) {
    Rational v = terms_[n] + c;
    if (v == 0) {
      terms_.erase(n);
    } else {
      terms_[n] = v;
    }
  }
  return *this;
}

AlphabetExpr AlphabetExpr::operator-() const { return Rational(-1) * *this; }

AlphabetExpr operator*(const Rational& c, const AlphabetExpr& a) {
  AlphabetExpr r;
  r.sizes_ = a.sizes_;
  if (c == 0) return r;
  for (const auto& [n, v] : a.terms_) r.terms_[n] = v * c;
  return r;
}

std::string AlphabetExpr::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [n, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (mag != 1) s += mag.get_str() + "*";
    s += n;
  }
  return s;
}

Ambient::Ambient(std::vector<std::pair<std::string, int>> alphabets) : alphabets_(std::move(alphabets)) {
  for (const auto& [name, size] : alphabets_) {
    if (!offsets_.emplace(name, variableCount()).second) throw std::invalid_argument("Ambient: duplicate alphabet " + name);
    for (int i = 1; i <= size; ++i) {
      names_.push_back("e" + std::to_string(i) + "(" + name + ")");
      weights_.push_back(2 * i);
    }
  }
  if (variableCount() > Mono::kMaxVars) throw std::length_error("Ambient: too many generators");
}

std::shared_ptr<const Ambient> Ambient::of(const AlphabetExpr& a) {
  std::vector<std::pair<std::string, int>> list(a.sizes().begin(), a.sizes().end());
  return std::make_shared<const Ambient>(std::move(list));
}

int Ambient::variable(const std::string& alphabet, int i) const {
  auto it = offsets_.find(alphabet);
  if (it == offsets_.end()) throw std::out_of_range("Ambient: unknown alphabet " + alphabet);
  return it->second + i - 1;
}

std::vector<Poly> Ambient::generators(const std::string& alphabet) const {
  for (const auto& [name, size] : alphabets_) {
    if (name != alphabet) continue;
    std::vector<Poly> e;
    for (int i = 1; i <= size; ++i) e.push_back(Poly::var(variable(name, i)));
    return e;
  }
  throw std::out_of_range("Ambient: unknown alphabet " + alphabet);
}

AlphabetCombination Ambient::combination(const AlphabetExpr& a) const {
  AlphabetCombination c;
  for (const auto& [name, coeff] : a.terms()) c.push_back({coeff, generators(name)});
  return c;
}

std::string SymExpr::str() const {
  return poly.str([this](int v) { return ambient->variableName(v); });
}

SymExpr evalE(int r, const AlphabetExpr& a) {
  if (r < 0) throw std::invalid_argument("evalE: negative degree");
  auto amb = Ambient::of(a);
  return {amb, elementarySeries(amb->combination(a), r)[r]};
}

SymExpr evalH(int r, const AlphabetExpr& a) {
  if (r < 0) throw std::invalid_argument("evalH: negative degree");
  auto amb = Ambient::of(a);
  return {amb, completeSeries(amb->combination(a), r)[r]};
}

SymExpr evalP(int r, const AlphabetExpr& a) {
  if (r < 1) throw std::invalid_argument("evalP: p_0 is undefined");
  auto amb = Ambient::of(a);
  return {amb, powerSumSeries(amb->combination(a), r)[r]};
}

SymExpr schur(const Partition& alpha, const AlphabetExpr& a) {
  auto amb = Ambient::of(a);
  return {amb, schurPoly(alpha, amb->combination(a))};
}

bool checkIdentity(Identity id, const IdentityParams& params) {
  const int r = params.degree;
  Ambient amb({{"X", params.sizeX}, {"X'", params.sizeXPrime}});
  AlphabetValue x{1, amb.generators("X")}, xp{1, amb.generators("X'")};
  AlphabetValue minusXp{-1, xp.e};
  const int deg = std::max(r, 0);

  switch (id) {
    case Identity::HE: {
      if (r < 1) return true;
      Series h = completeSeries({x}, deg), e = elementarySeries({x}, deg);
      Poly sum;
      for (int j = 0; j <= r; ++j) sum += (j % 2 ? -h[r - j] : h[r - j]) * e[j];
      return sum.isZero();
    }
    case Identity::Newton: {
      // k h_k = sum_{i=1}^k p_i h_{k-i}, with p computed from the e's of
      // each alphabet and h from the generating function of X - X'.
      AlphabetCombination diff{x, minusXp};
      Series h = completeSeries(diff, deg), p = powerSumSeries(diff, deg);
      for (int k = 1; k <= r; ++k) {
        Poly rhs;
        for (int i = 1; i <= k; ++i) rhs += p[i] * h[k - i];
        if (h[k] * Rational(k) != rhs) return false;
      }
      return true;
    }
    case Identity::HE2: {
      Series lhs = completeSeries({x, minusXp}, deg);
      Series h = completeSeries({x}, deg), e = elementarySeries({xp}, deg);
      Poly sum;
      for (int j = 0; j <= r; ++j) sum += (j % 2 ? -h[r - j] : h[r - j]) * e[j];
      return lhs[r] == sum;
    }
    case Identity::SomeRel1a: {
      if (r < 1) return true;
      Series ex = elementarySeries({x}, deg), exp = elementarySeries({xp}, deg);
      Series hd = completeSeries({x, minusXp}, deg);
      Poly sum;
      for (int j = 1; j <= r; ++j) sum += (j % 2 ? ex[r - j] : -ex[r - j]) * hd[j];
      return ex[r] - exp[r] == sum;
    }
    case Identity::SomeRel1b: {
      if (r < 1) return true;
      Series hx = completeSeries({x}, deg), hd = completeSeries({x, minusXp}, deg);
      Series ex = elementarySeries({x}, deg), exp = elementarySeries({xp}, deg);
      Poly sum;
      for (int j = 1; j <= r; ++j) sum += (j % 2 ? hx[r - j] : -hx[r - j]) * (ex[j] - exp[j]);
      return hd[r] == sum;
    }
  }
  return false;
}

}  // namespace skein

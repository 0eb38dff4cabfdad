#include "skein/heckecore.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace skein {

// ---------------------------------------------------------------------------
// ZLaurent

ZLaurent::ZLaurent(long c) {
  if (c != 0) c_.push_back(c);
}

ZLaurent ZLaurent::monomial(int e, const Integer& c) {
  ZLaurent r;
  if (c != 0) {
    r.lo_ = e;
    r.c_.push_back(c);
  }
  return r;
}

ZLaurent ZLaurent::fromLaurent(const Laurent& l) {
  ZLaurent r;
  for (const auto& [k, v] : l.terms()) {
    if (k.second != 0) throw std::invalid_argument("ZLaurent: t-dependent coefficient");
    if (v.get_den() != 1) throw std::invalid_argument("ZLaurent: non-integer coefficient");
    r += monomial(k.first, v.get_num());
  }
  return r;
}

Integer ZLaurent::coefficient(int e) const {
  if (c_.empty() || e < lo_ || e > high()) return 0;
  return c_[e - lo_];
}

Laurent ZLaurent::toLaurent() const {
  Laurent r;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) r += Laurent::monomial(lo_ + static_cast<int>(i), 0, Rational(c_[i]));
  return r;
}

void ZLaurent::trim() {
  std::size_t first = 0;
  while (first < c_.size() && c_[first] == 0) ++first;
  if (first == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  while (c_.back() == 0) c_.pop_back();
  if (first) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(first));
    lo_ += static_cast<int>(first);
  }
}

ZLaurent& ZLaurent::operator+=(const ZLaurent& o) {
  if (o.c_.empty()) return *this;
  if (c_.empty()) return *this = o;
  int lo = std::min(lo_, o.lo_), hi = std::max(high(), o.high());
  if (lo < lo_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - lo), Integer(0));
    lo_ = lo;
  }
  if (hi > high()) c_.resize(static_cast<std::size_t>(hi - lo_ + 1), Integer(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[o.lo_ - lo_ + i] += o.c_[i];
  trim();
  return *this;
}

ZLaurent& ZLaurent::operator-=(const ZLaurent& o) { return *this += -o; }

ZLaurent ZLaurent::operator-() const {
  ZLaurent r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

ZLaurent operator*(const ZLaurent& a, const ZLaurent& b) {
  ZLaurent r;
  r.addMul(a, b);
  return r;
}

void ZLaurent::addMul(const ZLaurent& a, const ZLaurent& b) {
  if (a.c_.empty() || b.c_.empty()) return;
  int lo = a.lo_ + b.lo_, hi = a.high() + b.high();
  if (c_.empty()) {
    lo_ = lo;
    c_.assign(static_cast<std::size_t>(hi - lo + 1), Integer(0));
  } else {
    if (lo < lo_) {
      c_.insert(c_.begin(), static_cast<std::size_t>(lo_ - lo), Integer(0));
      lo_ = lo;
    }
    if (hi > high()) c_.resize(static_cast<std::size_t>(hi - lo_ + 1), Integer(0));
  }
  const std::size_t base = static_cast<std::size_t>(lo - lo_);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      mpz_addmul(c_[base + i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
  }
  trim();
}

std::optional<ZLaurent> ZLaurent::dividedExactly(const ZLaurent& d) const {
  if (d.isZero()) throw std::domain_error("ZLaurent: division by zero");
  const Integer& lead = d.c_.back();
  if (lead != 1 && lead != -1) throw std::invalid_argument("ZLaurent: divisor must have unit leading coefficient");
  if (isZero()) return ZLaurent();
  if (c_.size() < d.c_.size()) return std::nullopt;
  std::vector<Integer> rem = c_;
  const std::size_t qlen = c_.size() - d.c_.size() + 1;
  std::vector<Integer> quot(qlen);
  for (std::size_t k = qlen; k-- > 0;) {
    Integer f = rem[k + d.c_.size() - 1] * lead;
    quot[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= f * d.c_[j];
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  ZLaurent out;
  out.lo_ = lo_ - d.lo_;
  out.c_ = std::move(quot);
  out.trim();
  return out;
}

ZLaurent ZLaurent::shifted(int e) const {
  ZLaurent r = *this;
  if (!r.c_.empty()) r.lo_ += e;
  return r;
}

// ---------------------------------------------------------------------------
// Symmetric group tables

SymmetricGroup::SymmetricGroup(int n) : n_(n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 1);
  do {
    perms_.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  length_.resize(perms_.size());
  right_.assign(perms_.size(), std::vector<int>(std::max(n - 1, 0)));
  for (std::size_t w = 0; w < perms_.size(); ++w) {
    const auto& x = perms_[w];
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (x[i] > x[j]) ++inv;
    length_[w] = inv;
    for (int i = 1; i < n; ++i) {
      auto y = x;
      std::swap(y[i - 1], y[i]);
      right_[w][i - 1] = index(y);
    }
  }
}

int SymmetricGroup::index(const std::vector<int>& oneLine) const {
  // Lexicographic rank, matching the next_permutation enumeration order.
  int rank = 0;
  std::vector<bool> used(n_ + 1, false);
  std::vector<int> fact(n_ + 1, 1);
  for (int i = 1; i <= n_; ++i) fact[i] = fact[i - 1] * i;
  for (int i = 0; i < n_; ++i) {
    int smaller = 0;
    for (int v = 1; v < oneLine[i]; ++v)
      if (!used[v]) ++smaller;
    rank += smaller * fact[n_ - 1 - i];
    used[oneLine[i]] = true;
  }
  return rank;
}

std::shared_ptr<const SymmetricGroup> SymmetricGroup::get(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const SymmetricGroup>> cache;
  if (n < 0 || n > 8) throw std::out_of_range("SymmetricGroup: n out of range");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot.reset(new SymmetricGroup(n));
  return slot;
}

std::vector<int> SymmetricGroup::parabolic(const ColorSeq& blocks) const {
  if (colorSum(blocks) != n_) throw std::invalid_argument("parabolic: block sizes do not sum to n");
  std::vector<int> blockOf(n_ + 1);
  int pos = 1;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int j = 0; j < blocks[b]; ++j) blockOf[pos++] = static_cast<int>(b);
  std::vector<int> out;
  for (int w = 0; w < size(); ++w) {
    bool ok = true;
    for (int i = 0; i < n_ && ok; ++i) ok = blockOf[perms_[w][i]] == blockOf[i + 1];
    if (ok) out.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hecke elements

namespace {

// Cyclotomic polynomial Phi_k(q), built in order of k and cached.
const ZLaurent& cyclotomic(int k) {
  static std::mutex mu;
  static std::deque<ZLaurent> table;
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table.size()) < k) {
    const int m = static_cast<int>(table.size()) + 1;
    ZLaurent p = ZLaurent::monomial(m) - ZLaurent(1);
    for (int d = 1; d < m; ++d)
      if (m % d == 0) p = *p.dividedExactly(table[d - 1]);
    table.push_back(p);
  }
  return table[k - 1];
}

const ZLaurent& qMinusQInverse() {
  static const ZLaurent v = ZLaurent::monomial(1) - ZLaurent::monomial(-1);
  return v;
}

}  // namespace

HeckeElement::HeckeElement(int n) : group_(SymmetricGroup::get(n)), num_(group_->size()) {}

HeckeElement HeckeElement::one(int n) { return basis(n, 0); }

HeckeElement HeckeElement::basis(int n, int w) {
  HeckeElement e(n);
  e.num_.at(w) = ZLaurent(1);
  return e;
}

HeckeElement HeckeElement::generator(int n, int i) { return one(n).rightMulGenerator(i); }

HeckeElement HeckeElement::generatorInverse(int n, int i) {
  return generator(n, i) - one(n).scaled(Laurent::monomial(1) - Laurent::monomial(-1));
}

bool HeckeElement::isZero() const {
  return std::all_of(num_.begin(), num_.end(), [](const ZLaurent& c) { return c.isZero(); });
}

HeckeElement HeckeElement::rightMulGenerator(int i) const {
  if (i < 1 || i >= n()) throw std::out_of_range("rightMulGenerator: index out of range");
  HeckeElement r(n());
  r.den_ = den_;
  const auto& G = *group_;
  for (int w = 0; w < G.size(); ++w) {
    if (num_[w].isZero()) continue;
    int ws = G.rightMul(w, i);
    r.num_[ws] += num_[w];
    if (G.length(ws) < G.length(w)) r.num_[w].addMul(qMinusQInverse(), num_[w]);
  }
  return r;
}

HeckeElement HeckeElement::operator+(const HeckeElement& o) const {
  if (n() != o.n()) throw std::invalid_argument("HeckeElement: size mismatch");
  HeckeElement r(n());
  if (den_ == o.den_) {
    r.den_ = den_;
    for (std::size_t w = 0; w < num_.size(); ++w) r.num_[w] = num_[w] + o.num_[w];
  } else {
    r.den_ = den_ * o.den_;
    for (std::size_t w = 0; w < num_.size(); ++w) {
      r.num_[w].addMul(num_[w], o.den_);
      r.num_[w].addMul(o.num_[w], den_);
    }
    r.reduce();
  }
  return r;
}

HeckeElement HeckeElement::operator-(const HeckeElement& o) const { return *this + o.scaled(Laurent(-1)); }

HeckeElement HeckeElement::operator*(const HeckeElement& o) const {
  if (n() != o.n()) throw std::invalid_argument("HeckeElement: size mismatch");
  const auto& G = *group_;
  // X T_v for every v, built along reduced words in order of length.
  std::vector<int> order(G.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return G.length(x) < G.length(y); });
  std::vector<std::vector<ZLaurent>> xt(G.size());
  std::vector<bool> needed(G.size(), false);
  // Mark every prefix of a needed element as needed.
  for (int v = 0; v < G.size(); ++v) {
    if (o.num_[v].isZero()) continue;
    int u = v;
    while (!needed[u]) {
      needed[u] = true;
      if (u == 0) break;
      const auto& p = G.oneLine(u);
      int i = 1;
      while (p[i - 1] < p[i]) ++i;
      u = G.rightMul(u, i);
    }
  }
  HeckeElement acc(n());
  acc.den_ = den_ * o.den_;
  for (int v : order) {
    if (!needed[v]) continue;
    if (v == 0) {
      xt[v] = num_;
    } else {
      const auto& p = G.oneLine(v);
      int i = 1;
      while (p[i - 1] < p[i]) ++i;
      int u = G.rightMul(v, i);
      HeckeElement tmp(n());
      tmp.num_ = xt[u];
      xt[v] = tmp.rightMulGenerator(i).num_;
    }
    if (o.num_[v].isZero()) continue;
    for (int w = 0; w < G.size(); ++w)
      if (!xt[v][w].isZero()) acc.num_[w].addMul(xt[v][w], o.num_[v]);
  }
  acc.reduce();
  return acc;
}

HeckeElement HeckeElement::scaled(const Laurent& c) const {
  ZLaurent z = ZLaurent::fromLaurent(c);
  HeckeElement r(n());
  r.den_ = den_;
  for (std::size_t w = 0; w < num_.size(); ++w) r.num_[w] = num_[w] * z;
  return r;
}

HeckeElement HeckeElement::dividedBy(const Laurent& c) const {
  ZLaurent z = ZLaurent::fromLaurent(c);
  if (z.isZero()) throw std::domain_error("HeckeElement: division by zero");
  HeckeElement r = *this;
  r.den_ = den_ * z;
  r.reduce();
  return r;
}

HeckeElement& HeckeElement::reduce() {
  // Balanced q-integers only carry cyclotomic factors of order up to 2n.
  for (int k = 2; k <= 2 * std::max(n(), 1); ++k) {
    const ZLaurent& phi = cyclotomic(k);
    while (true) {
      auto d = den_.dividedExactly(phi);
      if (!d) break;
      std::vector<ZLaurent> nums(num_.size());
      bool ok = true;
      for (std::size_t w = 0; w < num_.size() && ok; ++w) {
        auto r = num_[w].dividedExactly(phi);
        if (r) nums[w] = std::move(*r);
        else ok = false;
      }
      if (!ok) break;
      den_ = std::move(*d);
      num_ = std::move(nums);
    }
  }
  // Normalize the denominator to an ordinary polynomial with positive leading coefficient.
  const int e = den_.low();
  const bool flip = den_.coefficient(den_.high()) < 0;
  for (auto& x : num_) x = (flip ? -x : x).shifted(-e);
  den_ = (flip ? -den_ : den_).shifted(-e);
  return *this;
}

bool HeckeElement::operator==(const HeckeElement& o) const {
  if (n() != o.n()) return false;
  for (std::size_t w = 0; w < num_.size(); ++w)
    if (!(num_[w] * o.den_ == o.num_[w] * den_)) return false;
  return true;
}

std::string HeckeElement::str() const {
  std::string s;
  const auto& G = *group_;
  for (int w = 0; w < G.size(); ++w) {
    if (num_[w].isZero()) continue;
    if (!s.empty()) s += " + ";
    std::string perm;
    for (int x : G.oneLine(w)) perm += std::to_string(x);
    s += "(" + num_[w].toLaurent().str() + ")*T[" + perm + "]";
  }
  if (s.empty()) return "0";
  if (!(den_ == ZLaurent(1))) s = "(" + s + ") / (" + den_.toLaurent().str() + ")";
  return s;
}

HeckeElement idempotent(const ColorSeq& blocks) {
  const int n = colorSum(blocks);
  auto G = SymmetricGroup::get(n);
  int longest = 0;
  Laurent den(1);
  for (int m : blocks) {
    longest += m * (m - 1) / 2;
    den *= qfactorial(m);
  }
  HeckeElement r(n);
  for (int w : G->parabolic(blocks)) r = r + HeckeElement::basis(n, w).scaled(Laurent::monomial(G->length(w) - longest));
  return r.dividedBy(den);
}

// ---------------------------------------------------------------------------
// Algebroid

AlgebroidMorphism operator*(const AlgebroidMorphism& f, const AlgebroidMorphism& g) {
  if (g.target != f.source) throw std::invalid_argument("algebroid composition: color mismatch");
  return {g.source, f.target, f.value * g.value};
}

AlgebroidMorphism operator+(const AlgebroidMorphism& f, const AlgebroidMorphism& g) {
  if (f.source != g.source || f.target != g.target) throw std::invalid_argument("algebroid sum: color mismatch");
  return {f.source, f.target, f.value + g.value};
}

AlgebroidMorphism operator*(const Laurent& c, const AlgebroidMorphism& f) { return {f.source, f.target, f.value.scaled(c)}; }

AlgebroidMorphism identityMorphism(const ColorSeq& colors) { return {colors, colors, idempotent(colors)}; }

std::vector<int> cableWord(const ColorSeq& colors, int position) {
  if (position < 1 || position >= static_cast<int>(colors.size())) throw std::out_of_range("cableWord: position");
  int offset = 0;
  for (int i = 0; i < position - 1; ++i) offset += colors[i];
  const int a = colors[position - 1], b = colors[position];
  std::vector<int> word;
  for (int i = 1; i <= a; ++i)
    for (int j = i + b - 1; j >= i; --j) word.push_back(offset + j);
  return word;
}

namespace {

std::map<ColorSeq, HeckeElement>& idempotentCache() {
  static std::map<ColorSeq, HeckeElement> cache;
  return cache;
}

const HeckeElement& cachedIdempotent(const ColorSeq& c) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& cache = idempotentCache();
  auto it = cache.find(c);
  if (it == cache.end()) it = cache.emplace(c, idempotent(c)).first;
  return it->second;
}

// Drops zero colors; they do not change the idempotent.
ColorSeq positive(const ColorSeq& c) {
  ColorSeq r;
  for (int x : c)
    if (x > 0) r.push_back(x);
  return r;
}

}  // namespace

AlgebroidMorphism layerClass(const WebLayer& layer) {
  const HeckeElement& eIn = cachedIdempotent(positive(layer.in));
  const HeckeElement& eOut = cachedIdempotent(positive(layer.out));
  const int n = colorSum(layer.in);
  const int p = layer.position;
  switch (layer.kind) {
    case LayerKind::Split: return {layer.in, layer.out, eOut * eIn};
    case LayerKind::Merge: {
      Laurent c = qbinom(layer.in[p - 1] + layer.in[p], layer.in[p - 1]);
      return {layer.in, layer.out, (eOut * eIn).scaled(c)};
    }
    case LayerKind::XingPos: {
      HeckeElement x = eOut;
      for (int i : cableWord(layer.in, p)) x = x.rightMulGenerator(i);
      return {layer.in, layer.out, x * eIn};
    }
    case LayerKind::XingNeg: {
      // Inverse of the positive crossing out -> in, word reversed.
      auto word = cableWord(layer.out, p);
      HeckeElement x = eOut;
      HeckeElement shift = HeckeElement::one(n).scaled(Laurent::monomial(1) - Laurent::monomial(-1));
      for (auto it = word.rbegin(); it != word.rend(); ++it) x = x.rightMulGenerator(*it) - x * shift;
      return {layer.in, layer.out, x * eIn};
    }
  }
  throw std::logic_error("layerClass: unknown layer kind");
}

AlgebroidMorphism webClass(const Web& w) {
  if (w.layers().empty()) return identityMorphism(w.source());
  AlgebroidMorphism acc = layerClass(w.layers().front());
  for (std::size_t i = 1; i < w.layers().size(); ++i) acc = layerClass(w.layers()[i]) * acc;
  return acc;
}

AlgebroidMorphism cable(const ColoredBraidWord& beta) { return webClass(beta.toWeb()); }

AlgebroidMorphism eulerCrossing(int a, int b, bool positive) {
  auto ladders = rickardShape(a, b);
  AlgebroidMorphism sum{{a, b}, {b, a}, HeckeElement(a + b)};
  for (std::size_t k = 0; k < ladders.size(); ++k) {
    const int kk = static_cast<int>(k);
    Laurent w = Laurent::monomial(positive ? -kk : kk, 0, kk % 2 ? -1 : 1);
    sum = sum + w * webClass(ladders[k].web());
  }
  return sum;
}

SkeinReport verifySkein(int a, int b) {
  if (b < 0 || a < b) throw std::invalid_argument("verifySkein: need a >= b >= 0");
  SkeinReport rep;
  rep.a = a;
  rep.b = b;
  // (-q^{b-1})^s
  auto coefficient = [&](int s) { return Laurent::monomial(s * (b - 1), 0, s % 2 ? -1 : 1); };

  AlgebroidMorphism lhs{{a, b}, {a, b}, HeckeElement(a + b)};
  for (int s = 0; s <= b; ++s) lhs = lhs + coefficient(s) * webClass(threadedDigon(a, b, s));
  AlgebroidMorphism rhs = skeinScalar(a, b) * webClass(twistedDigon(a, b));
  rep.digonIdentity = lhs == rhs;
  if (!rep.digonIdentity) rep.digonWitness = (lhs.value - rhs.value).str();

  AlgebroidMorphism lhs2{{a, b}, {b, a}, HeckeElement(a + b)};
  for (int s = 0; s <= b; ++s) lhs2 = lhs2 + coefficient(s) * webClass(skeinLeftTerm(a, b, s));
  Laurent scalar2 = qPochhammerEven(b).shifted(-b);
  if (b % 2) scalar2 = -scalar2;
  AlgebroidMorphism rhs2 = scalar2 * webClass(skeinRightWeb(a, b));
  rep.crossingIdentity = lhs2 == rhs2;
  if (!rep.crossingIdentity) rep.crossingWitness = (lhs2.value - rhs2.value).str();
  return rep;
}

}  // namespace skein

#include "skein/chainlab.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace skein {

namespace {

int parity(int n) { return ((n % 2) + 2) % 2; }
Rational signOf(int n) { return parity(n) ? Rational(-1) : Rational(1); }

std::string shiftLabel(const GradingShift& s) {
  std::ostringstream out;
  if (s.q != 0) out << "q^" << s.q;
  if (s.t != 0) out << "t^" << s.t;
  return out.str();
}

bool sameWeb(const BimodulePtr& x, const BimodulePtr& y) { return x == y || x->web() == y->web(); }

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMap

void ComplexMap::add(int from, int to, const BimoduleMap& f) {
  if (f.isZero()) return;
  auto key = std::make_pair(from, to);
  auto it = parts.find(key);
  if (it == parts.end()) {
    parts.emplace(key, f);
    return;
  }
  it->second = it->second + f;
  if (it->second.isZero()) parts.erase(it);
}

const BimoduleMap* ComplexMap::find(int from, int to) const {
  auto it = parts.find({from, to});
  return it == parts.end() ? nullptr : &it->second;
}

bool ComplexMap::isZero() const {
  return std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.second.isZero(); });
}

ComplexMap ComplexMap::pruned() const {
  ComplexMap r{qweight, tweight, {}};
  for (const auto& [k, f] : parts)
    if (!f.isZero()) r.parts.emplace(k, f);
  return r;
}

ComplexMap ComplexMap::operator+(const ComplexMap& o) const {
  const bool mine = !isZero(), theirs = !o.isZero();
  if (mine && theirs && (qweight != o.qweight || tweight != o.tweight))
    throw std::invalid_argument("ComplexMap: adding maps of different weights");
  ComplexMap r = mine || !theirs ? *this : ComplexMap{o.qweight, o.tweight, {}};
  if (!mine) r.parts.clear();
  for (const auto& [k, f] : o.parts) r.add(k.first, k.second, f);
  return r.pruned();
}

ComplexMap ComplexMap::operator-(const ComplexMap& o) const { return *this + o.scaled(-1); }

ComplexMap ComplexMap::scaled(const Rational& c) const {
  ComplexMap r{qweight, tweight, {}};
  if (c == 0) return r;
  for (const auto& [k, f] : parts) r.parts.emplace(k, f.scaled(c));
  return r;
}

bool ComplexMap::operator==(const ComplexMap& o) const { return (*this - o).isZero(); }

ComplexMap ComplexMap::restricted(const std::vector<int>& keep) const {
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  auto in = [&](int i) { return std::binary_search(sorted.begin(), sorted.end(), i); };
  ComplexMap r{qweight, tweight, {}};
  for (const auto& [k, f] : parts)
    if (in(k.first) && in(k.second)) r.parts.emplace(k, f);
  return r;
}

ComplexMap compose(const ComplexMap& g, const ComplexMap& f) {
  ComplexMap r{g.qweight + f.qweight, g.tweight + f.tweight, {}};
  std::multimap<int, const std::pair<const std::pair<int, int>, BimoduleMap>*> bySource;
  for (const auto& p : g.parts) bySource.emplace(p.first.first, &p);
  for (const auto& [fk, fm] : f.parts) {
    auto [lo, hi] = bySource.equal_range(fk.second);
    for (auto it = lo; it != hi; ++it) r.add(fk.first, it->second->first.second, compose(it->second->second, fm));
  }
  return r;
}

int ChainComplex::add(ChainObject o) {
  objects.push_back(std::move(o));
  return size() - 1;
}

int componentDegree(const ChainObject& from, const ChainObject& to, int qweight) {
  return qweight + from.shift.q - to.shift.q;
}

void validate(const ChainComplex& x, const ComplexMap& f, const ChainComplex& target) {
  for (const auto& [k, m] : f.parts) {
    const auto [i, j] = k;
    if (i < 0 || i >= x.size() || j < 0 || j >= target.size())
      throw std::logic_error("component index out of range");
    const ChainObject& a = x.objects[i];
    const ChainObject& b = target.objects[j];
    if (!sameWeb(m.source, a.bimodule) || !sameWeb(m.target, b.bimodule))
      throw std::logic_error("component " + std::to_string(i) + "->" + std::to_string(j) + " joins the wrong bimodules");
    if (b.shift.t != a.shift.t + f.tweight)
      throw std::logic_error("component " + std::to_string(i) + "->" + std::to_string(j) + " has the wrong t-degree");
    if (!m.isZero() && m.qdegree != componentDegree(a, b, f.qweight))
      throw std::logic_error("component " + std::to_string(i) + "->" + std::to_string(j) + " has degree " +
                             std::to_string(m.qdegree) + ", expected " +
                             std::to_string(componentDegree(a, b, f.qweight)));
  }
}

void validate(const ChainComplex& x) {
  if (x.differential.tweight != 1) throw std::logic_error("differential must have t-weight 1");
  for (std::size_t i = 1; i < x.objects.size(); ++i)
    if (x.objects[i].bimodule->source() != x.objects[0].bimodule->source() ||
        x.objects[i].bimodule->target() != x.objects[0].bimodule->target())
      throw std::logic_error("objects of a complex must share their boundary");
  validate(x, x.differential, x);
}

ChainComplex shifted(ChainComplex x, GradingShift s) {
  for (auto& o : x.objects) o.shift = o.shift + s;
  return x;
}

ComplexMap identityMap(const ChainComplex& x) {
  ComplexMap r{0, 0, {}};
  for (int i = 0; i < x.size(); ++i) r.add(i, i, BimoduleMap::identity(x.objects[i].bimodule));
  return r;
}

ChainComplex subquotient(const ChainComplex& x, const std::vector<int>& keep) {
  ChainComplex r;
  std::map<int, int> index;
  for (int i : keep) {
    index[i] = r.size();
    r.add(x.objects[i]);
  }
  r.differential = {x.differential.qweight, x.differential.tweight, {}};
  for (const auto& [k, f] : x.differential.parts) {
    auto a = index.find(k.first), b = index.find(k.second);
    if (a != index.end() && b != index.end()) r.differential.add(a->second, b->second, f);
  }
  return r;
}

ComplexMap commutator(const ChainComplex& a, const ChainComplex& b, const ComplexMap& f) {
  ComplexMap left = compose(b.differential, f);
  ComplexMap right = compose(f, a.differential).scaled(signOf(f.tweight));
  // Keep the expected weight even when both sides vanish.
  ComplexMap r = left - right;
  r.qweight = f.qweight + a.differential.qweight;
  r.tweight = f.tweight + 1;
  return r;
}

std::optional<std::string> dSquaredWitness(const ChainComplex& x) {
  ComplexMap sq = compose(x.differential, x.differential).pruned();
  if (sq.parts.empty()) return std::nullopt;
  const auto& [k, f] = *sq.parts.begin();
  std::string desc = f.str();
  if (desc.size() > 200) desc = desc.substr(0, 200) + "...";
  return "d^2 nonzero on " + x.objects[k.first].label + " -> " + x.objects[k.second].label + ": " + desc;
}

ComplexMap centralAction(const ChainComplex& x, const std::function<SymExpr(const GradedBimodule&)>& f) {
  ComplexMap r{0, 0, {}};
  bool haveDegree = false;
  for (int i = 0; i < x.size(); ++i) {
    const BimodulePtr& b = x.objects[i].bimodule;
    SymExpr e = f(*b);
    if (e.poly.isZero()) continue;
    const int d = e.degree();
    if (haveDegree && d != r.qweight) throw std::logic_error("centralAction: inhomogeneous");
    r.qweight = d;
    haveDegree = true;
    r.add(i, i, multiplicationMap(b, e));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Linear algebra over map spaces

namespace {

// Coordinates of a tagged family of complex maps: (tag, from, to, generator,
// coordinate, monomial) -> row.
using FlatKey = std::tuple<int, int, int, int, int, Mono>;

void flatten(int tag, const ComplexMap& f, const std::function<void(const FlatKey&, const Rational&)>& emit) {
  for (const auto& [k, m] : f.parts)
    for (std::size_t j = 0; j < m.images.size(); ++j)
      for (std::size_t c = 0; c < m.images[j].size(); ++c)
        for (const auto& [mono, coeff] : m.images[j][c].terms())
          emit({tag, k.first, k.second, static_cast<int>(j), static_cast<int>(c), mono}, coeff);
}

using Tagged = std::vector<std::pair<int, ComplexMap>>;

struct FlatSystem {
  std::vector<SparseVector> rows;
  std::vector<Rational> rhs;
};

FlatSystem flattenSystem(const std::vector<Tagged>& columns, const Tagged& target) {
  std::map<FlatKey, std::map<int, Rational>> rows;
  std::map<FlatKey, Rational> rhs;
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [tag, f] : columns[c])
      flatten(tag, f, [&](const FlatKey& k, const Rational& v) { rows[k][static_cast<int>(c)] += v; });
  for (const auto& [tag, f] : target) flatten(tag, f, [&](const FlatKey& k, const Rational& v) { rhs[k] += v; });
  FlatSystem s;
  for (auto& [k, row] : rows) {
    std::map<int, Rational> clean;
    for (auto& [c, v] : row)
      if (v != 0) clean[c] = v;
    auto it = rhs.find(k);
    Rational b = it == rhs.end() ? Rational(0) : it->second;
    if (it != rhs.end()) rhs.erase(it);
    if (clean.empty() && b == 0) continue;
    s.rows.push_back(toSparse(clean));
    s.rhs.push_back(b);
  }
  for (auto& [k, b] : rhs) {
    if (b == 0) continue;
    s.rows.push_back({});
    s.rhs.push_back(b);
  }
  return s;
}

std::optional<std::vector<Rational>> solveTagged(const std::vector<Tagged>& columns, const Tagged& target) {
  FlatSystem s = flattenSystem(columns, target);
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    if (s.rows[i].empty() && s.rhs[i] != 0) return std::nullopt;
  return solveLinear(s.rows, s.rhs, static_cast<int>(columns.size()));
}

std::vector<std::vector<Rational>> kernelTagged(const std::vector<Tagged>& columns) {
  FlatSystem s = flattenSystem(columns, {});
  RowEchelon ech(static_cast<int>(columns.size()));
  for (const auto& row : s.rows) ech.insert(row);
  std::vector<std::vector<Rational>> out;
  for (const auto& v : ech.nullspace()) {
    std::vector<Rational> dense(columns.size());
    for (const auto& [c, x] : v) dense[c] = x;
    out.push_back(std::move(dense));
  }
  return out;
}

Tagged single(const ComplexMap& f) { return {{0, f}}; }

}  // namespace

const HomSpace& cachedHom(const BimodulePtr& b1, const BimodulePtr& b2, int qdegree, int truncation) {
  using Key = std::tuple<const GradedBimodule*, const GradedBimodule*, int, int>;
  static std::mutex mu;
  static std::map<Key, HomSpace> cache;
  const Key key{b1.get(), b2.get(), qdegree, truncation};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  HomSpace h = homSolve(b1, b2, qdegree, truncation);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(h)).first->second;
}

MapSpace mapSpace(const ChainComplex& a, const ChainComplex& b, int qweight, int tweight, int truncation) {
  MapSpace out;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      const ChainObject& x = a.objects[i];
      const ChainObject& y = b.objects[j];
      if (y.shift.t != x.shift.t + tweight) continue;
      if (x.bimodule->source() != y.bimodule->source() || x.bimodule->target() != y.bimodule->target()) continue;
      const HomSpace& h = cachedHom(x.bimodule, y.bimodule, componentDegree(x, y, qweight), truncation);
      out.stabilized = out.stabilized && h.stabilized();
      for (const auto& m : h.basis) {
        ComplexMap f{qweight, tweight, {}};
        f.add(i, j, m);
        out.basis.push_back(std::move(f));
      }
    }
  return out;
}

std::optional<std::vector<Rational>> solveCombination(const std::vector<ComplexMap>& span, const ComplexMap& target) {
  std::vector<Tagged> cols;
  for (const auto& f : span) cols.push_back(single(f));
  return solveTagged(cols, single(target));
}

std::vector<std::vector<Rational>> kernel(const std::vector<ComplexMap>& images) {
  std::vector<Tagged> cols;
  for (const auto& f : images) cols.push_back(single(f));
  return kernelTagged(cols);
}

ComplexMap combine(const std::vector<ComplexMap>& span, const std::vector<Rational>& c, int qweight, int tweight) {
  ComplexMap r{qweight, tweight, {}};
  for (std::size_t i = 0; i < span.size(); ++i) {
    if (c[i] == 0) continue;
    for (const auto& [k, f] : span[i].parts) r.add(k.first, k.second, f.scaled(c[i]));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Complexes

ChainComplex rickard(int a, int b, bool positive, int truncation) {
  ChainComplex x;
  const auto shape = rickardShape(a, b);
  for (std::size_t k = 0; k < shape.size(); ++k) {
    const int kk = static_cast<int>(k);
    GradingShift s = positive ? GradingShift{-kk, kk} : GradingShift{kk, -kk};
    x.add({GradedBimodule::of(shape[k].web()), s, shiftLabel(s) + "C^" + std::to_string(k), kk, {}});
  }
  for (int k = 0; k + 1 < x.size(); ++k) {
    if (positive)
      x.differential.add(k, k + 1, uniqueMap(x.objects[k].bimodule, x.objects[k + 1].bimodule, 1, truncation));
    else
      x.differential.add(k + 1, k, uniqueMap(x.objects[k + 1].bimodule, x.objects[k].bimodule, 1, truncation));
  }
  return x;
}

ChainComplex shiftedRickard(int c, int d, int a, int b, int truncation) {
  if (a < 0 || b < 0 || c < 0 || d < 0 || a + b != c + d)
    throw std::invalid_argument("shiftedRickard: need nonnegative colors with a+b = c+d");
  ChainComplex x;
  const int step = a - d + 1;
  for (int k = 0; k <= std::min(b, d); ++k) {
    Ladder l{a, b, d - k, b - k};
    GradingShift s{-k * step, k};
    x.add({GradedBimodule::of(l.web()), s,
           shiftLabel(s) + "F^(" + std::to_string(d - k) + ")E^(" + std::to_string(b - k) + ")", k, {}});
  }
  for (int k = 0; k + 1 < x.size(); ++k)
    x.differential.add(k, k + 1, uniqueMap(x.objects[k].bimodule, x.objects[k + 1].bimodule, step, truncation));
  return x;
}

std::vector<std::vector<int>> subsetsBySize(int n) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) s.push_back(i + 1);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

std::string oddLabel(const std::string& letter, const std::vector<int>& odd) {
  std::string s;
  for (int i : odd) s += letter + std::to_string(i);
  return s;
}

ChainComplex koszul(const ChainComplex& x, int b) {
  if (b == 0) return x;
  for (const auto& o : x.objects)
    if (o.bimodule->source().size() != 2 || o.bimodule->source()[1] != b || o.bimodule->target()[1] != b)
      throw std::invalid_argument("koszul: second strand must have color " + std::to_string(b));
  const auto subsets = subsetsBySize(b);
  const int n = static_cast<int>(subsets.size());
  std::map<std::vector<int>, int> subsetIndex;
  for (int i = 0; i < n; ++i) subsetIndex[subsets[i]] = i;
  auto index = [&](int i, int J) { return i * n + J; };

  ChainComplex r;
  for (int i = 0; i < x.size(); ++i)
    for (const auto& J : subsets) {
      ChainObject o = x.objects[i];
      for (int j : J) o.shift = o.shift + GradingShift{2 * j, -1};
      o.base = i;
      o.odd = J;
      if (!J.empty()) o.label += "." + oddLabel("xi", J);
      r.add(std::move(o));
    }
  r.differential = {x.differential.qweight, 1, {}};
  for (const auto& [k, f] : x.differential.parts)
    for (int J = 0; J < n; ++J) r.differential.add(index(k.first, J), index(k.second, J), f);
  for (int i = 0; i < x.size(); ++i) {
    const BimodulePtr& B = x.objects[i].bimodule;
    const AlphabetExpr diff = B->alphabet("X2") - B->alphabet("X2'");
    for (int J = 0; J < n; ++J) {
      const auto& set = subsets[J];
      for (std::size_t p = 0; p < set.size(); ++p) {
        std::vector<int> rest = set;
        rest.erase(rest.begin() + static_cast<long>(p));
        const Rational sign = signOf(x.objects[i].shift.t + static_cast<int>(p));
        r.differential.add(index(i, J), index(i, subsetIndex.at(rest)),
                           multiplicationMap(B, B->complete(set[p], diff)).scaled(sign));
      }
    }
  }
  return r;
}

ChainComplex kmcs(int a, int b, int truncation) { return koszul(shiftedRickard(a, b, a, b, truncation), b); }

// ---------------------------------------------------------------------------
// The zeta basis

namespace {

// Products of odd generators expanded in another odd basis: generator i of
// the first basis is sum_l coeff(i, l) y_l. Returns the sorted target sets
// with their (sign-corrected) coefficients.
std::map<std::vector<int>, Poly> expandProduct(const std::vector<int>& J,
                                               const std::function<Poly(int, int)>& coeff, int range) {
  std::map<std::vector<int>, Poly> acc;
  std::vector<int> chosen;
  std::function<void(std::size_t, const Poly&)> rec = [&](std::size_t p, const Poly& c) {
    if (c.isZero()) return;
    if (p == J.size()) {
      std::vector<int> sorted = chosen;
      int inversions = 0;
      for (std::size_t u = 0; u < sorted.size(); ++u)
        for (std::size_t v = u + 1; v < sorted.size(); ++v)
          if (sorted[u] > sorted[v]) ++inversions;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return;
      Poly& slot = acc[sorted];
      slot = slot + c * Poly(signOf(inversions));
      return;
    }
    for (int l = 1; l <= range; ++l) {
      if (std::find(chosen.begin(), chosen.end(), l) != chosen.end()) continue;
      Poly cl = coeff(J[p], l);
      if (cl.isZero()) continue;
      chosen.push_back(l);
      rec(p + 1, c * cl);
      chosen.pop_back();
    }
  };
  rec(0, Poly(1));
  for (auto it = acc.begin(); it != acc.end();)
    it = it->second.isZero() ? acc.erase(it) : std::next(it);
  return acc;
}

// Change of exterior basis on each object: direction true gives zeta -> xi.
ComplexMap basisChange(const ChainComplex& x, int b,
                       bool toXi) {
  std::map<std::pair<int, std::vector<int>>, int> index;
  for (int i = 0; i < x.size(); ++i) index[{x.objects[i].base, x.objects[i].odd}] = i;
  ComplexMap r{0, 0, {}};
  for (int i = 0; i < x.size(); ++i) {
    const BimodulePtr& B = x.objects[i].bimodule;
    // Ladder edge 6 is the middle rung M.
    const AlphabetExpr M = B->alphabet(6);
    const auto& J = x.objects[i].odd;
    std::function<Poly(int, int)> coeff;
    if (toXi) {
      coeff = [&](int j, int l) -> Poly {
        if (l > j) return Poly();
        return B->elementary(j - l, M).poly * Poly(signOf(l - 1));
      };
    } else {
      coeff = [&](int l, int j) -> Poly {
        if (j > l) return Poly();
        return B->complete(l - j, M).poly * Poly(signOf(j - 1));
      };
    }
    for (const auto& [L, poly] : expandProduct(J, coeff, b)) {
      const int target = index.at({x.objects[i].base, L});
      r.add(i, target, multiplicationMap(B, SymExpr{B->edgeAmbient(), poly}));
    }
  }
  return r;
}

}  // namespace

FilteredComplex zetaTransform(const ChainComplex& kmcsComplex, int a, int b) {
  FilteredComplex f;
  f.a = a;
  f.b = b;
  f.xi = shifted(kmcsComplex, {b * (a - b - 1), b});
  for (const auto& o : f.xi.objects) {
    const int k = b - (o.base < 0 ? 0 : o.base);
    if (!(o.bimodule->web() == Ladder{a, b, k, k}.web()))
      throw std::invalid_argument("zetaTransform: object is not a Koszul-twisted ladder");
    int l = 0, s = 0;
    for (int j : o.odd) (j <= k ? l : s)++;
    f.blocks.push_back({k, l, s});
  }
  f.toXi = basisChange(f.xi, b, true);
  f.fromXi = basisChange(f.xi, b, false);
  f.zeta = f.xi;
  for (int i = 0; i < f.zeta.size(); ++i) {
    auto& o = f.zeta.objects[i];
    o.label = shiftLabel(o.shift) + "W" + std::to_string(f.blocks[i].k) +
              (o.odd.empty() ? "" : "." + oddLabel("zeta", o.odd));
  }
  ComplexMap d = compose(f.fromXi, compose(f.xi.differential, f.toXi)).pruned();
  d.qweight = f.xi.differential.qweight;
  d.tweight = 1;
  f.zeta.differential = d;
  f.dv = f.dh = f.dc = ComplexMap{d.qweight, 1, {}};
  for (const auto& [k, m] : d.parts) {
    const auto& src = f.blocks[k.first];
    const auto& tgt = f.blocks[k.second];
    if (tgt.k == src.k && tgt.s == src.s)
      f.dv.add(k.first, k.second, m);
    else if (tgt.k == src.k - 1 && tgt.s == src.s)
      f.dh.add(k.first, k.second, m);
    else if (tgt.k == src.k - 1 && tgt.s == src.s + 1)
      f.dc.add(k.first, k.second, m);
    else
      throw std::logic_error("zetaTransform: differential component " + f.zeta.objects[k.first].label + " -> " +
                             f.zeta.objects[k.second].label + " is not block triangular");
  }
  return f;
}

ComplexMap FilteredComplex::theta(int r) const {
  if (r < 1 || r > b) throw std::invalid_argument("theta: index out of range");
  std::map<std::pair<int, std::vector<int>>, int> index;
  for (int i = 0; i < xi.size(); ++i) index[{xi.objects[i].base, xi.objects[i].odd}] = i;
  ComplexMap t{2 * r, -1, {}};
  for (int i = 0; i < xi.size(); ++i) {
    const auto& J = xi.objects[i].odd;
    if (std::find(J.begin(), J.end(), r) != J.end()) continue;
    std::vector<int> K = J;
    K.insert(std::upper_bound(K.begin(), K.end(), r), r);
    const int before = static_cast<int>(std::count_if(J.begin(), J.end(), [r](int j) { return j < r; }));
    const Rational sign = signOf(b - blocks[i].k + before);
    t.add(i, index.at({xi.objects[i].base, K}), BimoduleMap::identity(xi.objects[i].bimodule).scaled(sign));
  }
  ComplexMap z = compose(fromXi, compose(t, toXi)).pruned();
  z.qweight = 2 * r;
  z.tweight = -1;
  return z;
}

namespace {

// x = c y for some nonzero scalar c.
bool proportionalTo(const BimoduleMap& x, const BimoduleMap& y) {
  if (x.isZero() || y.isZero()) return x.isZero() && y.isZero();
  for (std::size_t j = 0; j < y.images.size(); ++j)
    for (std::size_t c = 0; c < y.images[j].size(); ++c) {
      const auto& terms = y.images[j][c].terms();
      if (terms.empty()) continue;
      const Rational ratio = x.images[j][c].coefficient(terms.begin()->first) / terms.begin()->second;
      return ratio != 0 && x == y.scaled(ratio);
    }
  return false;
}

}  // namespace

PatternReport zetaPattern(const FilteredComplex& f) {
  PatternReport rep;
  auto note = [&](const std::string& w) {
    if (rep.witness.empty()) rep.witness = w;
  };
  auto name = [&](int i) { return f.zeta.objects[i].label; };
  for (const auto& [k, m] : f.dc.parts)
    if (f.blocks[k.second].s != f.blocks[k.first].s + 1) {
      rep.triangular = false;
      note("connecting component " + name(k.first) + " -> " + name(k.second) + " does not raise s by one");
    }
  for (const ComplexMap* m : {&f.dv, &f.dh})
    for (const auto& [k, g] : m->parts)
      if (f.blocks[k.second].s != f.blocks[k.first].s) {
        rep.triangular = false;
        note("component " + name(k.first) + " -> " + name(k.second) + " changes s");
      }
  const ComplexMap across = f.dh + f.dc;
  for (int i = 0; i < f.zeta.size(); ++i)
    for (int j = 0; j < f.zeta.size(); ++j) {
      if (f.blocks[j].k != f.blocks[i].k - 1) continue;
      const auto& I = f.zeta.objects[i].odd;
      const auto& J = f.zeta.objects[j].odd;
      bool allowed = I.size() == J.size();
      for (std::size_t p = 0; allowed && p < I.size(); ++p) allowed = I[p] - J[p] == 0 || I[p] - J[p] == 1;
      if ((across.find(i, j) != nullptr) != allowed) {
        rep.acrossPattern = false;
        note((allowed ? "missing component " : "unexpected component ") + name(i) + " -> " + name(j));
      }
    }
  for (const auto& [k, g] : f.dv.parts) {
    const auto& I = f.zeta.objects[k.first].odd;
    const auto& J = f.zeta.objects[k.second].odd;
    std::vector<int> dropped;
    std::set_difference(I.begin(), I.end(), J.begin(), J.end(), std::back_inserter(dropped));
    if (I.size() != J.size() + 1 || dropped.size() != 1) {
      rep.verticalEntries = false;
      note("vertical component " + name(k.first) + " -> " + name(k.second) + " does not drop one generator");
      continue;
    }
    const BimodulePtr& B = g.source;
    // Ladder edges 6 and 2 are the upper and lower rungs.
    const Poly entry = B->elementary(dropped[0], B->alphabet(6)).poly - B->elementary(dropped[0], B->alphabet(2)).poly;
    const BimoduleMap expected = multiplicationMap(B, SymExpr{B->edgeAmbient(), entry});
    if (!proportionalTo(g, expected)) {
      rep.verticalEntries = false;
      note("vertical component " + name(k.first) + " -> " + name(k.second) + " is not a multiple of e_j(M) - e_j(M')");
    }
  }
  return rep;
}

std::vector<int> mccsObjects(const FilteredComplex& f, int s) {
  std::vector<int> keep;
  for (int i = 0; i < f.zeta.size(); ++i)
    if (f.blocks[i].s == s) keep.push_back(i);
  return keep;
}

ChainComplex mccs(const FilteredComplex& f, int s) {
  ChainComplex x = f.zeta;
  x.differential = f.dv + f.dh;
  x.differential.tweight = 1;
  return shifted(subquotient(x, mccsObjects(f, s)), {-s * (f.b - 1), -s});
}

ChainComplex row(const FilteredComplex& f, int l) {
  std::vector<int> keep;
  for (int i = 0; i < f.zeta.size(); ++i)
    if (f.blocks[i].s == 0 && f.blocks[i].l == l) keep.push_back(i);
  ChainComplex x = f.zeta;
  x.differential = f.dh;
  x.differential.tweight = 1;
  return subquotient(x, keep);
}

ThetaReport thetaCheck(const FilteredComplex& f, int s, int r) {
  ThetaReport rep;
  const ComplexMap th = f.theta(r);
  ComplexMap vertical{th.qweight, th.tweight, {}};
  for (const auto& [k, m] : th.parts) {
    const auto& src = f.blocks[k.first];
    const auto& tgt = f.blocks[k.second];
    if (tgt.k != src.k) {
      rep.splitClean = false;
      continue;
    }
    if (tgt.s == src.s)
      vertical.add(k.first, k.second, m);
    else if (tgt.s != src.s + 1)
      rep.splitClean = false;
  }
  ChainComplex x = f.zeta;
  x.differential = f.dv + f.dh;
  x.differential.tweight = 1;
  const auto keep = mccsObjects(f, s);
  ComplexMap lhs = commutator(x, x, vertical).restricted(keep);
  ComplexMap rhs = centralAction(x, [r](const GradedBimodule& B) {
                     return B.complete(r, B.alphabet("X2") - B.alphabet("X2'"));
                   }).restricted(keep);
  ComplexMap diff = (lhs - rhs).pruned();
  rep.pass = rep.splitClean && diff.parts.empty();
  if (!diff.parts.empty()) {
    const auto& k = diff.parts.begin()->first;
    rep.witness = "commutator differs on " + f.zeta.objects[k.first].label + " -> " + f.zeta.objects[k.second].label;
  } else if (!rep.splitClean) {
    rep.witness = "theta has a component that is neither vertical nor connecting";
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Homotopies

HomotopyResult nullHomotopy(const ChainComplex& x, const ComplexMap& f, int truncation) {
  HomotopyResult res;
  MapSpace space = mapSpace(x, x, f.qweight - x.differential.qweight, f.tweight - 1, truncation);
  res.stabilized = space.stabilized;
  std::vector<ComplexMap> images;
  for (const auto& h : space.basis) images.push_back(commutator(x, x, h));
  auto c = solveCombination(images, f);
  if (!c) return res;
  res.homotopy = combine(space.basis, *c, f.qweight - x.differential.qweight, f.tweight - 1);
  return res;
}

namespace {

std::vector<ComplexMap> closedMaps(const ChainComplex& a, const ChainComplex& b, const MapSpace& space) {
  std::vector<ComplexMap> images;
  for (const auto& f : space.basis) images.push_back(commutator(a, b, f));
  std::vector<ComplexMap> out;
  for (const auto& v : kernel(images)) out.push_back(combine(space.basis, v, 0, 0));
  return out;
}

}  // namespace

EquivalenceResult equivalenceCertificate(const ChainComplex& a, const ChainComplex& b, int truncation) {
  EquivalenceResult res;
  const MapSpace ab = mapSpace(a, b, 0, 0, truncation);
  const MapSpace ba = mapSpace(b, a, 0, 0, truncation);
  const MapSpace ha = mapSpace(a, a, 0, -1, truncation);
  const MapSpace hb = mapSpace(b, b, 0, -1, truncation);
  res.stabilized = ab.stabilized && ba.stabilized && ha.stabilized && hb.stabilized;
  const auto zab = closedMaps(a, b, ab);
  const auto zba = closedMaps(b, a, ba);

  std::vector<ComplexMap> candidates;
  if (zab.empty()) {
    candidates.push_back(ComplexMap{0, 0, {}});
  } else {
    std::vector<Rational> generic(zab.size());
    for (std::size_t i = 0; i < zab.size(); ++i) generic[i] = static_cast<long>(i + 1);
    candidates.push_back(combine(zab, generic, 0, 0));
    if (zab.size() > 1)
      for (const auto& z : zab) candidates.push_back(z);
  }
  std::vector<ComplexMap> dha, dhb;
  for (const auto& h : ha.basis) dha.push_back(commutator(a, a, h));
  for (const auto& h : hb.basis) dhb.push_back(commutator(b, b, h));
  const ComplexMap idA = identityMap(a), idB = identityMap(b);

  for (const auto& f : candidates) {
    // Unknowns: g in zba, then hA, then hB. Tag 0 is End(A), tag 1 is End(B).
    std::vector<Tagged> cols;
    for (const auto& g : zba) cols.push_back({{0, compose(g, f)}, {1, compose(f, g)}});
    for (const auto& d : dha) cols.push_back({{0, d.scaled(-1)}});
    for (const auto& d : dhb) cols.push_back({{1, d.scaled(-1)}});
    auto c = solveTagged(cols, {{0, idA}, {1, idB}});
    if (!c) continue;
    const std::size_t n1 = zba.size(), n2 = ha.basis.size();
    EquivalenceCertificate cert;
    cert.f = f;
    cert.g = combine(zba, std::vector<Rational>(c->begin(), c->begin() + static_cast<long>(n1)), 0, 0);
    cert.hA = combine(ha.basis, std::vector<Rational>(c->begin() + static_cast<long>(n1), c->begin() + static_cast<long>(n1 + n2)), 0, -1);
    cert.hB = combine(hb.basis, std::vector<Rational>(c->begin() + static_cast<long>(n1 + n2), c->end()), 0, -1);
    // Independent recheck of both identities.
    if (!(compose(cert.g, cert.f) - idA == commutator(a, a, cert.hA))) continue;
    if (!(compose(cert.f, cert.g) - idB == commutator(b, b, cert.hB))) continue;
    res.certificate = std::move(cert);
    return res;
  }
  return res;
}

ChainComplex fullTwistModel(int truncation) {
  const BimodulePtr sm = GradedBimodule::of(Web::merge(1, {1, 1}).then(Web::split(1, {2}, 1, 1)));
  const BimodulePtr id = GradedBimodule::of(Web::identity({1, 1}));
  ChainComplex x;
  x.add({sm, {1, 0}, "q^1 SM", 0, {}});
  x.add({sm, {-1, 1}, "q^-1t^1 SM", 1, {}});
  x.add({id, {-2, 2}, "q^-2t^2 id", 2, {}});
  x.differential.add(0, 1, multiplicationMap(sm, sm->elementary(1, sm->alphabet("X2") - sm->alphabet("X2'"))));
  x.differential.add(1, 2, uniqueMap(sm, id, 1, truncation));
  return x;
}

// ---------------------------------------------------------------------------
// Induction along a split-off strand

namespace {

struct Wrap {
  Web top, bottom;
};

Wrap wrapping(const ColorSeq& colors, int s) {
  if (colors.size() != 2) throw std::invalid_argument("inducedI: expects two strands");
  const int a = colors[0], l = colors[1];
  return {Web::merge(2, {a, l, s}), Web::split(2, {a, l + s}, l, s)};
}

Web wrapWeb(const Web& w, int s) {
  Wrap wr = wrapping(w.source(), s);
  return compose(wr.top, compose(tensor(w, Web::identity({s})), wr.bottom));
}

}  // namespace

ChainComplex inducedI(int s, const ChainComplex& x) {
  if (s < 0) throw std::invalid_argument("inducedI: negative color");
  if (s == 0) return x;
  ChainComplex r;
  for (const auto& o : x.objects) {
    ChainObject w = o;
    w.bimodule = GradedBimodule::of(wrapWeb(o.bimodule->web(), s));
    w.label = "I" + std::to_string(s) + "(" + o.label + ")";
    r.add(std::move(w));
  }
  r.differential = {x.differential.qweight, x.differential.tweight, {}};
  for (const auto& [k, f] : x.differential.parts) {
    Wrap wr = wrapping(f.source->source(), s);
    r.differential.add(k.first, k.second, whisker(wr.top, tensorIdentity(f, {}, {s}), wr.bottom));
  }
  return r;
}

DigonRemoval digonRemoval(int a, int b, int k, int s) {
  if (a < 0 || k < 0 || s < 1 || k + s > b || k > a) throw std::invalid_argument("digonRemoval: bad colors");
  DigonRemoval dr{a, b, k, s, {}, {}, {}};
  const int n = b - k, r = n - s;

  const BimodulePtr src = GradedBimodule::of(wrapWeb(Ladder{a, b - s, k, k}.web(), s));
  const Web bottom = Web::split(2, {a, b}, k, n);
  const Web top = Web::merge(1, {a, k, n}).then(Web::split(1, {a + k, n}, a, k)).then(Web::merge(2, {a, k, n}));
  const Web digon = Web::split(1, {n}, r, s).then(Web::merge(1, {r, s}));
  const BimodulePtr dig = GradedBimodule::of(compose(top, compose(tensor(Web::identity({a, k}), digon), bottom)));

  // Vertex layout of both webs, bottom to top:
  //   source: X2'->(Y,E), Y->(M',D), X1'+M'->F, F->(X1,M), M+D->Y', Y'+E->X2
  //   digon:  X2'->(M',B'), B'->(D,E), D+E->B, X1'+M'->F, F->(X1,M), M+B->X2
  const auto& sg = src->graph();
  const auto& tg = dig->graph();
  auto sName = [&](int e) { return sg.edges[e].name; };
  auto tName = [&](int e) { return tg.edges[e].name; };
  std::map<std::string, AlphabetExpr> fwd, bwd;
  fwd[sName(sg.vertices[0].first)] = dig->alphabet(tg.vertices[0].first) + dig->alphabet(tg.vertices[1].first);
  fwd[sName(sg.vertices[1].first)] = dig->alphabet(tg.vertices[0].first);
  fwd[sName(sg.vertices[3].first)] = dig->alphabet(tg.vertices[4].first);
  bwd[tName(tg.vertices[0].first)] = src->alphabet(sg.vertices[1].first);
  bwd[tName(tg.vertices[1].first)] = src->alphabet(sg.vertices[1].second);
  bwd[tName(tg.vertices[4].first)] = src->alphabet(sg.vertices[3].first);
  const BimoduleMap assoc = edgeRingMap(src, dig, fwd, 0);
  const BimoduleMap assocInv = edgeRingMap(dig, src, bwd, 0);

  const DigonDecomposition dd = digonDecomposition(r, s);
  std::vector<int> range(n);
  std::iota(range.begin(), range.end(), k + 1);
  for (const auto& T : subsetsBySize(n)) {
    if (static_cast<int>(T.size()) != s) continue;
    std::vector<int> chosen;
    for (int t : T) chosen.push_back(t + k);
    std::vector<int> rest;
    std::set_difference(range.begin(), range.end(), chosen.begin(), chosen.end(), std::back_inserter(rest));
    std::vector<int> parts(r);
    for (int m = 1; m <= r; ++m)
      parts[r - m] = static_cast<int>(std::count_if(chosen.begin(), chosen.end(), [&](int i) { return i < rest[m - 1]; }));
    const Partition alpha(parts);
    auto it = std::find(dd.labels.begin(), dd.labels.end(), alpha);
    if (it == dd.labels.end()) throw std::logic_error("digonRemoval: partition outside the box");
    const std::size_t idx = static_cast<std::size_t>(it - dd.labels.begin());
    dr.subsets.push_back(chosen);
    dr.forward.push_back(compose(whisker(top, tensorIdentity(dd.forward[idx], {a, k}, {}), bottom), assoc));
    dr.backward.push_back(compose(assocInv, whisker(top, tensorIdentity(dd.backward[idx], {a, k}, {}), bottom)));
  }
  return dr;
}

std::optional<std::string> digonRemovalWitness(const DigonRemoval& dr) {
  const std::string where = "digon removal (a,b,k,s)=(" + std::to_string(dr.a) + "," + std::to_string(dr.b) + "," +
                            std::to_string(dr.k) + "," + std::to_string(dr.s) + ")";
  if (dr.forward.empty()) return where + " has no components";
  const BimodulePtr source = dr.forward.front().source;
  const BimodulePtr target = dr.forward.front().target;
  BimoduleMap sum = BimoduleMap::zero(source, source, 0);
  for (std::size_t i = 0; i < dr.subsets.size(); ++i) {
    sum = sum + compose(dr.backward[i], dr.forward[i]);
    for (std::size_t j = 0; j < dr.subsets.size(); ++j) {
      const BimoduleMap c = compose(dr.forward[i], dr.backward[j]);
      const bool ok = i == j ? c.qdegree == 0 && c == BimoduleMap::identity(target) : c.isZero();
      if (!ok) return where + ": forward " + std::to_string(i) + " after backward " + std::to_string(j) + " is wrong";
    }
  }
  if (!(sum == BimoduleMap::identity(source))) return where + ": the summands do not add up to the identity";
  return std::nullopt;
}

InducedReport verifyInduced(int a, int b, int s, int truncation) {
  InducedReport rep;
  const FilteredComplex big = zetaTransform(kmcs(a, b, truncation), a, b);
  const FilteredComplex small = zetaTransform(kmcs(a, b - s, truncation), a, b - s);
  const ChainComplex y = mccs(big, s);
  const ChainComplex x = inducedI(s, mccs(small, 0));
  const auto yIndex = mccsObjects(big, s);

  std::map<int, DigonRemoval> removal;
  rep.inverses = true;
  for (int k = 0; k <= b - s && k <= a; ++k) {
    DigonRemoval dr = digonRemoval(a, b, k, s);
    if (auto w = digonRemovalWitness(dr)) {
      rep.inverses = false;
      if (rep.witness.empty()) rep.witness = *w;
    }
    removal.emplace(k, std::move(dr));
  }

  // One candidate component per (object of x, subset T).
  std::vector<ComplexMap> comps;
  for (int i = 0; i < x.size(); ++i) {
    const int k = (b - s) - x.objects[i].base;
    const auto& dr = removal.at(k);
    for (std::size_t t = 0; t < dr.subsets.size(); ++t) {
      std::vector<int> J = x.objects[i].odd;
      J.insert(J.end(), dr.subsets[t].begin(), dr.subsets[t].end());
      std::sort(J.begin(), J.end());
      int target = -1;
      for (int j = 0; j < y.size(); ++j)
        if (big.blocks[yIndex[j]].k == k && y.objects[j].odd == J) target = j;
      if (target < 0) throw std::logic_error("verifyInduced: no matching object");
      const int deg = componentDegree(x.objects[i], y.objects[target], 0);
      if (dr.forward[t].qdegree != deg) {
        if (rep.witness.empty())
          rep.witness = "degree mismatch on " + x.objects[i].label + " -> " + y.objects[target].label + ": " +
                        std::to_string(dr.forward[t].qdegree) + " vs " + std::to_string(deg);
        return rep;
      }
      ComplexMap m{0, 0, {}};
      m.parts.emplace(std::make_pair(i, target), dr.forward[t]);
      comps.push_back(std::move(m));
    }
  }
  std::vector<ComplexMap> images;
  for (const auto& c : comps) images.push_back(commutator(x, y, c));
  const auto ker = kernel(images);
  rep.kernelDimension = static_cast<int>(ker.size());
  for (int power = 0; power < 4 && !rep.intertwines; ++power) {
    std::vector<Rational> c(comps.size());
    for (std::size_t v = 0; v < ker.size(); ++v) {
      Rational w = 1;
      for (int p = 0; p < power; ++p) w *= static_cast<long>(v + 2);
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += w * ker[v][i];
    }
    rep.intertwines = !ker.empty() && std::all_of(c.begin(), c.end(), [](const Rational& z) { return z != 0; });
  }
  if (!rep.intertwines && rep.witness.empty())
    rep.witness = "no chain map with all components nonzero (kernel dimension " + std::to_string(ker.size()) + ")";
  return rep;
}

AlgebroidMorphism eulerCharacteristic(const ChainComplex& x) {
  if (x.objects.empty()) throw std::invalid_argument("eulerCharacteristic: empty complex");
  std::optional<AlgebroidMorphism> sum;
  for (const auto& o : x.objects) {
    AlgebroidMorphism term = Laurent::monomial(o.shift.q, 0, signOf(o.shift.t)) * webClass(o.bimodule->web());
    sum = sum ? *sum + term : term;
  }
  return *sum;
}

StructureReport verifyMainStructure(const FilteredComplex& f) {
  StructureReport rep;
  std::vector<int> seen(f.zeta.size(), 0);
  rep.objects = true;
  rep.blocks = true;
  ComplexMap dvh = f.dv + f.dh;
  for (int s = 0; s <= f.b; ++s) {
    const auto keep = mccsObjects(f, s);
    const ChainComplex m = shifted(mccs(f, s), {s * (f.b - 1), s});
    for (std::size_t i = 0; i < keep.size(); ++i) {
      ++seen[keep[i]];
      const auto& o = f.zeta.objects[keep[i]];
      if (!(m.objects[i].shift == o.shift) || m.objects[i].bimodule != o.bimodule) rep.objects = false;
    }
    ComplexMap lifted{m.differential.qweight, 1, {}};
    for (const auto& [k, g] : m.differential.parts) lifted.add(keep[k.first], keep[k.second], g);
    if (!(lifted == dvh.restricted(keep))) {
      rep.blocks = false;
      if (rep.witness.empty()) rep.witness = "block s=" + std::to_string(s) + " differs";
    }
    if (dSquaredWitness(m)) {
      rep.blocks = false;
      if (rep.witness.empty()) rep.witness = "block s=" + std::to_string(s) + " has d^2 != 0";
    }
  }
  for (int c : seen)
    if (c != 1) rep.objects = false;
  for (const auto& [k, g] : dvh.parts)
    if (f.blocks[k.first].s != f.blocks[k.second].s) rep.blocks = false;
  rep.triangular = true;
  for (const auto& [k, g] : f.dc.parts)
    if (f.blocks[k.second].s != f.blocks[k.first].s + 1) rep.triangular = false;
  if (!(dvh + f.dc == f.zeta.differential)) {
    rep.triangular = false;
    if (rep.witness.empty()) rep.witness = "dv + dh + dc differs from the differential";
  }
  if (!rep.objects && rep.witness.empty()) rep.witness = "objects do not match the blocks";
  return rep;
}

}  // namespace skein

#include "skein/bimodeng.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace skein {

// ---------------------------------------------------------------------------
// Elements

bool isZero(const Element& x) {
  for (const auto& p : x)
    if (!p.isZero()) return false;
  return true;
}

Element operator+(const Element& x, const Element& y) {
  if (x.size() != y.size()) throw std::invalid_argument("Element: rank mismatch");
  Element r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Element operator-(const Element& x, const Element& y) {
  if (x.size() != y.size()) throw std::invalid_argument("Element: rank mismatch");
  Element r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

Element operator*(const Rational& c, const Element& x) {
  Element r = x;
  for (auto& p : r) p *= c;
  return r;
}

Element operator*(const Element& x, const Poly& r) {
  Element out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].isZero()) out[i] = x[i] * r;
  return out;
}

namespace {

std::vector<Poly> generatorVariables(int n, int offset) {
  std::vector<Poly> e;
  for (int i = 0; i < n; ++i) e.push_back(Poly::var(offset + i));
  return e;
}

std::vector<int> evenWeights(const ColorSeq& colors) {
  std::vector<int> w;
  for (int c : colors)
    for (int i = 1; i <= c; ++i) w.push_back(2 * i);
  return w;
}

std::vector<Partition> splitBasis(int a, int b) {
  auto box = partitionsInBox(a, b);
  std::stable_sort(box.begin(), box.end(), [](const Partition& x, const Partition& y) { return x.size() < y.size(); });
  return box;
}

Poly schurOfBlock(const Partition& lambda, int size, int offset) {
  return schurPoly(lambda, {{1, generatorVariables(size, offset)}});
}

// e_d(A + B) in the local variables of a split strand: A is 0..a-1, B is a..a+b-1.
std::vector<Poly> sumAlphabetImages(int a, int b, int offset) {
  auto eA = [&](int i) { return i == 0 ? Poly(1) : Poly::var(offset + i - 1); };
  auto eB = [&](int i) { return i == 0 ? Poly(1) : Poly::var(offset + a + i - 1); };
  std::vector<Poly> images;
  for (int d = 1; d <= a + b; ++d) {
    Poly s;
    for (int i = std::max(0, d - b); i <= std::min(a, d); ++i) s += eA(i) * eB(d - i);
    images.push_back(s);
  }
  return images;
}

// Change of basis for Sym(A) (x) Sym(B) as a free module over Sym(A + B)
// on the Schur polynomials s_mu(A), one table per degree.
struct SplitTable {
  std::map<Mono, int> row;
  std::vector<std::pair<int, Mono>> cols;  // (index in splitBasis, monomial in E)
  DenseMatrix inverse;
};

const SplitTable& splitTable(int a, int b, int d) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::unique_ptr<SplitTable>> cache;
  const auto key = std::make_tuple(a, b, d);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto t = std::make_unique<SplitTable>();
  std::vector<int> localWeights = evenWeights({a, b});
  std::vector<int> sumWeights = evenWeights({a + b});
  auto rows = monomialsOfDegree(localWeights, d);
  for (std::size_t i = 0; i < rows.size(); ++i) t->row[rows[i]] = static_cast<int>(i);
  auto basis = splitBasis(a, b);
  auto images = sumAlphabetImages(a, b, 0);
  std::vector<Poly> columns;
  for (std::size_t mu = 0; mu < basis.size(); ++mu) {
    const int rest = d - 2 * basis[mu].size();
    if (rest < 0) continue;
    Poly s = schurOfBlock(basis[mu], a, 0);
    for (const auto& m : monomialsOfDegree(sumWeights, rest)) {
      t->cols.emplace_back(static_cast<int>(mu), m);
      columns.push_back(s * Poly::monomial(m, 1).substitute(images));
    }
  }
  if (columns.size() != rows.size())
    throw std::logic_error("split layer is not free of the expected rank in degree " + std::to_string(d));
  DenseMatrix m(static_cast<int>(rows.size()), static_cast<int>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [mono, x] : columns[c].terms()) m.at(t->row.at(mono), static_cast<int>(c)) = x;
  auto inv = m.inverse();
  if (!inv) throw std::logic_error("split layer change of basis is singular");
  t->inverse = std::move(*inv);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, fresh] = cache.emplace(key, std::move(t));
  return *it->second;
}

// Writes f (local variables of A and B) as sum_mu s_mu(A) g_mu(A + B); the
// g_mu use variables 0..a+b-1 for e_i(A + B).
std::vector<Poly> decomposeSplit(int a, int b, const Poly& f, std::size_t basisSize) {
  std::vector<Poly> out(basisSize);
  const std::vector<int> localWeights = evenWeights({a, b});
  for (const auto& [m, c] : f.terms()) {
    const SplitTable& t = splitTable(a, b, m.weightedDegree(localWeights));
    const int r = t.row.at(m);
    for (std::size_t k = 0; k < t.cols.size(); ++k) {
      const Rational& x = t.inverse.at(static_cast<int>(k), r);
      if (x == 0) continue;
      out[t.cols[k].first].addTerm(t.cols[k].second, c * x);
    }
  }
  return out;
}

std::vector<long> monomialCounts(const std::vector<int>& weights, int maxDegree) {
  std::vector<long> c(std::max(0, maxDegree + 1), 0);
  if (maxDegree < 0) return c;
  c[0] = 1;
  for (int w : weights)
    for (int d = w; d <= maxDegree; ++d) c[d] += c[d - w];
  return c;
}

bool sameBimodule(const BimodulePtr& x, const BimodulePtr& y) { return x == y || x->web() == y->web(); }

}  // namespace

// ---------------------------------------------------------------------------
// GradedBimodule

std::shared_ptr<const GradedBimodule> GradedBimodule::of(const Web& w) {
  static std::mutex mu;
  static std::map<std::string, BimodulePtr> cache;
  const std::string key = colorsToString(w.source()) + "|" + render(w);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end() && it->second->web() == w) return it->second;
  }
  auto b = std::make_shared<const GradedBimodule>(w);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, fresh] = cache.emplace(key, b);
  return it->second->web() == w ? it->second : b;
}

GradedBimodule::GradedBimodule(const Web& w) : web_(w) {
  if (w.hasCrossings()) throw WebError("bimodules are built from merges and splits only");
  auto makeLevel = [](const ColorSeq& colors) {
    Level l{colors, {}, evenWeights(colors)};
    int off = 0;
    for (int c : colors) {
      l.offsets.push_back(off);
      off += c;
    }
    if (off > Mono::kMaxVars) throw WebError("too many variables for one level: " + colorsToString(colors));
    return l;
  };
  levels_.push_back(makeLevel(w.source()));
  stride_.push_back(1);
  for (const auto& layer : w.layers()) {
    const Level& below = levels_.back();
    Layer L;
    L.kind = layer.kind;
    L.strand = layer.position - 1;
    L.offset = below.offsets[L.strand];
    if (layer.kind == LayerKind::Merge) {
      L.a = layer.in[L.strand];
      L.b = layer.in[L.strand + 1];
      L.mergeImages = generatorVariables(L.offset, 0);
      for (auto& p : sumAlphabetImages(L.a, L.b, L.offset)) L.mergeImages.push_back(p);
      shift_ -= L.a * L.b;
    } else {
      L.a = layer.out[L.strand];
      L.b = layer.out[L.strand + 1];
      L.box = splitBasis(L.a, L.b);
      for (const auto& lambda : L.box) L.boxSchur.push_back(schurOfBlock(lambda, L.a, 0));
      L.radix = static_cast<int>(L.box.size());
    }
    layers_.push_back(std::move(L));
    levels_.push_back(makeLevel(layer.out));
    stride_.push_back(stride_.back() * layers_.back().radix);
  }
  rank_ = stride_.back();
  genDegree_.assign(rank_, 0);
  for (int j = 0; j < rank_; ++j) {
    int deg = 0;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      const Layer& L = layers_[l];
      const int digit = (j / stride_[l]) % L.radix;
      deg += L.kind == LayerKind::Merge ? -L.a * L.b : 2 * L.box[digit].size();
    }
    genDegree_[j] = deg;
  }

  graph_ = edgeGraph(w);
  std::vector<std::pair<std::string, int>> alphabets;
  for (const auto& e : graph_.edges) alphabets.emplace_back(e.name, e.size);
  ambient_ = std::make_shared<const Ambient>(alphabets);
  edgeHome_.assign(graph_.edges.size(), {0, 0});
  for (std::size_t i = 0; i < graph_.incoming.size(); ++i) edgeHome_[graph_.incoming[i]] = {0, static_cast<int>(i)};
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& v = graph_.vertices[l];
    const int level = static_cast<int>(l) + 1, p = layers_[l].strand;
    if (v.kind == EdgeGraph::VertexKind::Merge) {
      edgeHome_[v.whole] = {level, p};
    } else {
      edgeHome_[v.first] = {level, p};
      edgeHome_[v.second] = {level, p + 1};
    }
  }
  for (std::size_t e = 0; e < graph_.edges.size(); ++e)
    for (int i = 1; i <= graph_.edges[e].size; ++i)
      varHome_.emplace_back(edgeHome_[e].first, levelVariable(edgeHome_[e].first, edgeHome_[e].second, i));
}

int GradedBimodule::minGeneratorDegree() const { return *std::min_element(genDegree_.begin(), genDegree_.end()); }

std::string GradedBimodule::generatorLabel(int j) const {
  std::string s;
  for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; --l) {
    const Layer& L = layers_[l];
    if (L.kind != LayerKind::Split) continue;
    if (!s.empty()) s += "*";
    s += "s" + L.box[(j / stride_[l]) % L.radix].str();
  }
  return s.empty() ? "1" : s;
}

Element GradedBimodule::basisElement(int j, const Poly& coeff) const {
  if (j < 0 || j >= rank_) throw std::out_of_range("basisElement: index out of range");
  Element x(rank_);
  x[j] = coeff;
  return x;
}

GradedBimodule::Expansion GradedBimodule::layerAct(int layer, const Mono& mono, int j) const {
  const CacheKey key{layer, mono, j};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = layerCache_.find(key);
    if (it != layerCache_.end()) return it->second;
  }
  const Layer& L = layers_[layer - 1];
  Expansion out;
  if (L.kind == LayerKind::Merge) {
    Poly p = Poly::monomial(mono, 1).substitute(L.mergeImages);
    if (!p.isZero()) out.emplace_back(0, std::move(p));
  } else {
    const int c = L.a + L.b;
    Mono local, rest = mono;
    for (int i = 0; i < c; ++i) {
      local.setExp(i, mono.exp(L.offset + i));
      rest.setExp(L.offset + i, 0);
    }
    Poly f = Poly::monomial(local, 1) * L.boxSchur[j];
    auto parts = decomposeSplit(L.a, L.b, f, L.box.size());
    const Poly restPoly = Poly::monomial(rest, 1);
    for (std::size_t mu = 0; mu < parts.size(); ++mu)
      if (!parts[mu].isZero()) out.emplace_back(static_cast<int>(mu), parts[mu].shiftVariables(L.offset) * restPoly);
  }
  std::lock_guard<std::mutex> lock(mu_);
  return layerCache_.emplace(key, std::move(out)).first->second;
}

const GradedBimodule::Expansion& GradedBimodule::lowerAct(int level, const Mono& mono, int index) const {
  const CacheKey key{level, mono, index};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = lowerCache_.find(key);
    if (it != lowerCache_.end()) return it->second;
  }
  Expansion out;
  if (level == 0 || mono == Mono{}) {
    out.emplace_back(index, Poly::monomial(mono, 1));
  } else {
    const int below = stride_[level - 1];
    const int j = (index / below) % layers_[level - 1].radix;
    const int rest = index % below;
    std::map<int, Poly> acc;
    for (const auto& [jj, p] : layerAct(level, mono, j))
      for (const auto& [m2, c2] : p.terms())
        for (const auto& [idx, q] : lowerAct(level - 1, m2, rest)) acc[jj * below + idx] += q * c2;
    for (auto& [idx, q] : acc)
      if (!q.isZero()) out.emplace_back(idx, std::move(q));
  }
  std::lock_guard<std::mutex> lock(mu_);
  return lowerCache_.emplace(key, std::move(out)).first->second;
}

Element GradedBimodule::actMono(int level, const Mono& mono, const Element& x) const {
  if (level == 0) return x * Poly::monomial(mono, 1);
  const int S = stride_[level];
  Element out(rank_);
  for (int K = 0; K < rank_; ++K) {
    if (x[K].isZero()) continue;
    const int base = K - K % S;
    for (const auto& [idx, q] : lowerAct(level, mono, K % S)) out[base + idx] += q * x[K];
  }
  return out;
}

Element GradedBimodule::act(int level, const Poly& r, const Element& x) const {
  if (level < 0 || level > levels()) throw std::out_of_range("act: level out of range");
  if (static_cast<int>(x.size()) != rank_) throw std::invalid_argument("act: element of the wrong rank");
  Element out(rank_);
  for (const auto& [m, c] : r.terms()) out = out + c * actMono(level, m, x);
  return out;
}

int GradedBimodule::edge(const std::string& name) const {
  int e = graph_.find(name);
  if (e >= 0) return e;
  if (name.size() >= 3 && name[0] == 'X' && name.back() == '\'') {
    const int i = std::stoi(name.substr(1, name.size() - 2));
    if (i >= 1 && i <= static_cast<int>(graph_.incoming.size())) return graph_.incoming[i - 1];
  }
  throw std::invalid_argument("no edge named " + name);
}

AlphabetExpr GradedBimodule::alphabet(int e) const {
  return AlphabetExpr::alphabet(graph_.edges.at(e).name, graph_.edges.at(e).size);
}

AlphabetExpr GradedBimodule::alphabet(const std::string& name) const { return alphabet(edge(name)); }

SymExpr GradedBimodule::elementary(int r, const AlphabetExpr& a) const {
  if (r < 0) return {ambient_, Poly()};
  return {ambient_, elementarySeries(ambient_->combination(a), r)[r]};
}

SymExpr GradedBimodule::complete(int r, const AlphabetExpr& a) const {
  if (r < 0) return {ambient_, Poly()};
  return {ambient_, completeSeries(ambient_->combination(a), r)[r]};
}

SymExpr GradedBimodule::schur(const Partition& alpha, const AlphabetExpr& a) const {
  return {ambient_, schurPoly(alpha, ambient_->combination(a))};
}

Element GradedBimodule::multiply(const SymExpr& f, const Element& x) const {
  if (f.ambient != ambient_ && f.ambient->alphabets() != ambient_->alphabets())
    throw std::invalid_argument("multiply: polynomial over a different edge ring");
  Element out(rank_);
  for (const auto& [m, c] : f.poly.terms()) {
    std::vector<Mono> perLevel(levels_.size());
    for (int v = 0; v <= m.maxVar(); ++v) {
      const int e = m.exp(v);
      if (!e) continue;
      const auto [level, lv] = varHome_[v];
      perLevel[level].setExp(lv, perLevel[level].exp(lv) + e);
    }
    Element y = x;
    for (int l = levels(); l >= 0; --l)
      if (!(perLevel[l] == Mono{})) y = actMono(l, perLevel[l], y);
    out = out + c * y;
  }
  return out;
}

int GradedBimodule::degree(const Element& x) const {
  int deg = INT_MIN;
  for (int j = 0; j < rank_; ++j)
    for (const auto& [m, c] : x[j].terms()) {
      const int d = genDegree_[j] + m.weightedDegree(levels_[0].weights);
      if (deg != INT_MIN && d != deg) throw std::invalid_argument("element is not homogeneous");
      deg = d;
    }
  return deg;
}

std::vector<std::pair<int, Mono>> GradedBimodule::gradedPiece(int d) const {
  std::vector<std::pair<int, Mono>> out;
  for (int j = 0; j < rank_; ++j)
    for (const auto& m : monomialsOfDegree(levels_[0].weights, d - genDegree_[j])) out.emplace_back(j, m);
  return out;
}

long GradedBimodule::pieceDimension(int d) const {
  const int span = d - minGeneratorDegree();
  if (span < 0) return 0;
  auto counts = monomialCounts(levels_[0].weights, span);
  long n = 0;
  for (int j = 0; j < rank_; ++j) {
    const int r = d - genDegree_[j];
    if (r >= 0) n += counts[r];
  }
  return n;
}

std::vector<Rational> GradedBimodule::coordinates(const Element& x, int d) const {
  auto piece = gradedPiece(d);
  std::map<std::pair<int, Mono>, int> index;
  for (std::size_t i = 0; i < piece.size(); ++i) index[piece[i]] = static_cast<int>(i);
  std::vector<Rational> v(piece.size());
  for (int j = 0; j < rank_; ++j)
    for (const auto& [m, c] : x[j].terms()) {
      auto it = index.find({j, m});
      if (it == index.end()) throw std::invalid_argument("coordinates: element has a term outside degree " + std::to_string(d));
      v[it->second] = c;
    }
  return v;
}

Laurent GradedBimodule::generatorSeries() const {
  Laurent s;
  for (int d : genDegree_) s += Laurent::monomial(d);
  return s;
}

Laurent GradedBimodule::hilbertSeries(int maxDegree) const {
  Laurent s;
  for (int d = minGeneratorDegree(); d <= maxDegree; ++d) {
    long n = pieceDimension(d);
    if (n) s += Laurent::monomial(d, 0, Rational(n));
  }
  return s;
}

std::string GradedBimodule::str(const Element& x) const {
  auto name = [&](int v) {
    int strand = 0;
    while (strand + 1 < static_cast<int>(levels_[0].offsets.size()) && levels_[0].offsets[strand + 1] <= v) ++strand;
    return "e" + std::to_string(v - levels_[0].offsets[strand] + 1) + "(X" + std::to_string(strand + 1) + "')";
  };
  std::string s;
  for (int j = 0; j < rank_; ++j) {
    if (x[j].isZero()) continue;
    if (!s.empty()) s += " + ";
    s += "[" + generatorLabel(j) + "]*(" + x[j].str(name) + ")";
  }
  return s.empty() ? "0" : s;
}

std::string GradedBimodule::dump(int maxDegree) const {
  std::ostringstream o;
  o << "web " << render(web_) << "\n";
  o << "source " << colorsToString(source()) << " target " << colorsToString(target()) << "\n";
  o << "rank " << rank_ << " shift " << shift_ << "\n";
  for (int j = 0; j < rank_; ++j) o << "generator " << j << " " << generatorLabel(j) << " degree " << genDegree_[j] << "\n";
  const int L = levels();
  for (std::size_t s = 0; s < levels_[L].colors.size(); ++s)
    for (int i = 1; i <= levels_[L].colors[s]; ++i)
      for (int j = 0; j < rank_; ++j)
        o << "left e" << i << "(X" << s + 1 << ") * [" << generatorLabel(j)
          << "] = " << str(act(L, Poly::var(levelVariable(L, static_cast<int>(s), i)), basisElement(j))) << "\n";
  for (int d = minGeneratorDegree(); d <= maxDegree; ++d) o << "dim " << d << " " << pieceDimension(d) << "\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Maps

BimoduleMap BimoduleMap::zero(BimodulePtr source, BimodulePtr target, int qdegree) {
  BimoduleMap f{source, target, qdegree, {}};
  f.images.assign(source->rank(), target->zero());
  return f;
}

BimoduleMap BimoduleMap::identity(BimodulePtr b) {
  BimoduleMap f{b, b, 0, {}};
  for (int j = 0; j < b->rank(); ++j) f.images.push_back(b->basisElement(j));
  return f;
}

Element BimoduleMap::apply(const Element& x) const {
  if (static_cast<int>(x.size()) != source->rank()) throw std::invalid_argument("apply: element of the wrong rank");
  Element out = target->zero();
  for (int j = 0; j < source->rank(); ++j)
    if (!x[j].isZero()) out = out + images[j] * x[j];
  return out;
}

bool BimoduleMap::isZero() const {
  for (const auto& x : images)
    if (!skein::isZero(x)) return false;
  return true;
}

BimoduleMap BimoduleMap::operator+(const BimoduleMap& o) const {
  if (!sameBimodule(source, o.source) || !sameBimodule(target, o.target))
    throw std::invalid_argument("adding maps between different bimodules");
  if (o.isZero()) return *this;
  if (isZero()) return o;
  if (qdegree != o.qdegree) throw std::invalid_argument("adding maps of different degrees");
  BimoduleMap r = *this;
  for (std::size_t j = 0; j < images.size(); ++j) r.images[j] = images[j] + o.images[j];
  return r;
}

BimoduleMap BimoduleMap::operator-(const BimoduleMap& o) const { return *this + o.scaled(-1); }

BimoduleMap BimoduleMap::scaled(const Rational& c) const {
  BimoduleMap r = *this;
  for (auto& x : r.images) x = c * x;
  return r;
}

bool BimoduleMap::operator==(const BimoduleMap& o) const { return (*this - o).isZero(); }

DenseMatrix BimoduleMap::matrix(int d) const {
  auto cols = source->gradedPiece(d);
  const int rows = static_cast<int>(target->pieceDimension(d + qdegree));
  DenseMatrix m(rows, static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    Element img = images[cols[c].first] * Poly::monomial(cols[c].second, 1);
    auto v = target->coordinates(img, d + qdegree);
    for (int r = 0; r < rows; ++r) m.at(r, static_cast<int>(c)) = v[r];
  }
  return m;
}

bool BimoduleMap::commutesWithActions() const {
  const int L = source->levels(), LT = target->levels();
  const int n = static_cast<int>(source->levelWeights(L).size());
  for (int v = 0; v < n; ++v) {
    const Poly g = Poly::var(v);
    for (int j = 0; j < source->rank(); ++j)
      if (apply(source->act(L, g, source->basisElement(j))) != target->act(LT, g, images[j])) return false;
  }
  return true;
}

std::string BimoduleMap::str() const {
  std::string s = "degree " + std::to_string(qdegree) + ":";
  for (int j = 0; j < source->rank(); ++j)
    s += " [" + source->generatorLabel(j) + "] -> " + target->str(images[j]) + ";";
  return s;
}

BimoduleMap compose(const BimoduleMap& g, const BimoduleMap& f) {
  if (!sameBimodule(f.target, g.source)) throw std::invalid_argument("compose: bimodules do not match");
  BimoduleMap r{f.source, g.target, f.qdegree + g.qdegree, {}};
  for (const auto& x : f.images) r.images.push_back(g.apply(x));
  return r;
}

BimoduleMap multiplicationMap(const BimodulePtr& b, const SymExpr& f) {
  const int deg = f.poly.isZero() ? 0 : f.degree();
  BimoduleMap m{b, b, deg, {}};
  for (int j = 0; j < b->rank(); ++j) m.images.push_back(b->multiply(f, b->basisElement(j)));
  return m;
}

// ---------------------------------------------------------------------------
// Hom spaces

int defaultTruncation(int a, int b) { return 2 * (a + b) + 8; }

namespace {

int solveHom(const BimodulePtr& b1, const BimodulePtr& b2, int qdegree, int bound, std::vector<BimoduleMap>* out) {
  const auto& w0 = b1->levelWeights(0);
  const int L1 = b1->levels(), L2 = b2->levels();
  std::vector<int> order(b1->rank());
  for (int j = 0; j < b1->rank(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return b1->generatorDegree(x) < b1->generatorDegree(y); });

  struct Unknown {
    int j, K;
    Mono mono;
  };
  std::vector<Unknown> unknowns;
  std::vector<std::vector<int>> unknownsOf(b1->rank());
  for (int j : order)
    for (int K = 0; K < b2->rank(); ++K)
      for (const auto& m : monomialsOfDegree(w0, b1->generatorDegree(j) + qdegree - b2->generatorDegree(K))) {
        unknownsOf[j].push_back(static_cast<int>(unknowns.size()));
        unknowns.push_back({j, K, m});
      }

  RowEchelon ech(static_cast<int>(unknowns.size()));
  const auto& wL = b1->levelWeights(L1);
  std::map<std::pair<int, int>, Element> targetAct;
  for (int v = 0; v < static_cast<int>(wL.size()); ++v) {
    const Poly g = Poly::var(v);
    for (int j = 0; j < b1->rank(); ++j) {
      if (b1->generatorDegree(j) + wL[v] + qdegree > bound) continue;
      std::map<std::pair<int, Mono>, std::map<int, Rational>> rows;
      const Element src = b1->act(L1, g, b1->basisElement(j));
      for (int k = 0; k < b1->rank(); ++k) {
        if (src[k].isZero()) continue;
        for (int u : unknownsOf[k])
          for (const auto& [nu, c] : src[k].terms()) rows[{unknowns[u].K, unknowns[u].mono * nu}][u] += c;
      }
      for (int u : unknownsOf[j]) {
        const int K = unknowns[u].K;
        auto it = targetAct.find({v, K});
        if (it == targetAct.end()) it = targetAct.emplace(std::make_pair(v, K), b2->act(L2, g, b2->basisElement(K))).first;
        for (int K2 = 0; K2 < b2->rank(); ++K2)
          for (const auto& [nu, c] : it->second[K2].terms()) rows[{K2, unknowns[u].mono * nu}][u] -= c;
      }
      for (const auto& [coord, row] : rows) ech.insert(toSparse(row));
    }
  }
  auto kernel = ech.nullspace();
  if (out) {
    for (const auto& vec : kernel) {
      BimoduleMap f = BimoduleMap::zero(b1, b2, qdegree);
      for (const auto& [u, x] : vec) f.images[unknowns[u].j][unknowns[u].K].addTerm(unknowns[u].mono, x);
      out->push_back(std::move(f));
    }
  }
  return static_cast<int>(kernel.size());
}

}  // namespace

HomSpace homSolve(const BimodulePtr& b1, const BimodulePtr& b2, int qdegree, int truncation) {
  if (b1->source() != b2->source() || b1->target() != b2->target())
    throw std::invalid_argument("homSolve: bimodules have different boundaries");
  HomSpace h;
  h.truncation = truncation;
  h.dimension = solveHom(b1, b2, qdegree, truncation, &h.basis);
  h.dimensionNext = solveHom(b1, b2, qdegree, truncation + 2, nullptr);
  return h;
}

BimoduleMap uniqueMap(const BimodulePtr& b1, const BimodulePtr& b2, int qdegree, int truncation) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, std::string, int, int>, BimoduleMap> cache;
  const auto key = std::make_tuple(render(b1->web()) + colorsToString(b1->source()),
                                   render(b2->web()) + colorsToString(b2->source()), qdegree, truncation);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end() && sameBimodule(it->second.source, b1) && sameBimodule(it->second.target, b2)) return it->second;
  }
  HomSpace h = homSolve(b1, b2, qdegree, truncation);
  if (!h.stabilized())
    throw NotStabilizedError("hom space of degree " + std::to_string(qdegree) + " from " + render(b1->web()) + " to " +
                             render(b2->web()) + " has dimension " + std::to_string(h.dimension) + " at D=" +
                             std::to_string(truncation) + " but " + std::to_string(h.dimensionNext) + " at D+2");
  if (h.dimension != 1)
    throw std::runtime_error("expected a unique map of degree " + std::to_string(qdegree) + " from " + render(b1->web()) +
                             " to " + render(b2->web()) + ", found dimension " + std::to_string(h.dimension) + " (" +
                             std::to_string(h.dimensionNext) + " at D+2)");
  HomSpace below = homSolve(b1, b2, qdegree - 2, truncation);
  if (below.dimension != 0)
    throw std::runtime_error("map of degree " + std::to_string(qdegree) + " from " + render(b1->web()) + " to " +
                             render(b2->web()) + " is not of lowest degree");
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, h.basis.front()).first->second;
}

// ---------------------------------------------------------------------------
// Foams

BimoduleMap foamGenerator(FoamKind kind, int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("foamGenerator: negative colors");
  const int c = a + b;
  const Web digonOnPair = Web::merge(1, {a, b}).then(Web::split(1, {c}, a, b));  // S.M
  const Web digonOnStrand = Web::split(1, {c}, a, b).then(Web::merge(1, {a, b}));  // M.S
  switch (kind) {
    case FoamKind::Unzip: {
      auto src = GradedBimodule::of(digonOnPair), tgt = GradedBimodule::of(Web::identity({a, b}));
      auto box = splitBasis(a, b);
      BimoduleMap f{src, tgt, a * b, {}};
      for (int j = 0; j < src->rank(); ++j) f.images.push_back(tgt->basisElement(0, schurOfBlock(box[j], a, 0)));
      return f;
    }
    case FoamKind::Zip: {
      auto src = GradedBimodule::of(Web::identity({a, b})), tgt = GradedBimodule::of(digonOnPair);
      Partition full(std::vector<int>(a, b));
      SymExpr s = tgt->schur(full, tgt->alphabet("X1") - tgt->alphabet("X2'"));
      return {src, tgt, a * b, {tgt->multiply(s, tgt->unit())}};
    }
    case FoamKind::Collapse: {
      auto src = GradedBimodule::of(digonOnStrand), tgt = GradedBimodule::of(Web::identity({c}));
      auto box = splitBasis(a, b);
      BimoduleMap f{src, tgt, -a * b, {}};
      for (int j = 0; j < src->rank(); ++j) {
        Poly concrete = schurPoly(box[j], {{1, elementaryInVariables(a, 0)}});
        Poly collapsed = symmetricToElementary(sylvester(a, b, concrete), c);
        f.images.push_back(tgt->basisElement(0, collapsed));
      }
      return f;
    }
    case FoamKind::Create: {
      auto src = GradedBimodule::of(Web::identity({c})), tgt = GradedBimodule::of(digonOnStrand);
      return {src, tgt, -a * b, {tgt->unit()}};
    }
  }
  throw std::invalid_argument("foamGenerator: unknown kind");
}

BimoduleMap tensorIdentity(const BimoduleMap& f, const ColorSeq& before, const ColorSeq& after) {
  auto widen = [&](const Web& w) {
    Web r = w;
    if (!before.empty()) r = tensor(Web::identity(before), r);
    if (!after.empty()) r = tensor(r, Web::identity(after));
    return r;
  };
  const int offset = colorSum(before);
  BimoduleMap g{GradedBimodule::of(widen(f.source->web())), GradedBimodule::of(widen(f.target->web())), f.qdegree, {}};
  if (g.source->rank() != f.source->rank() || g.target->rank() != f.target->rank())
    throw std::logic_error("tensorIdentity: rank changed");
  for (const auto& x : f.images) {
    Element y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i].shiftVariables(offset);
    g.images.push_back(std::move(y));
  }
  return g;
}

BimoduleMap whisker(const Web& top, const BimoduleMap& f, const Web& bottom) {
  auto bot = GradedBimodule::of(bottom);
  BimoduleMap g{GradedBimodule::of(compose(top, compose(f.source->web(), bottom))),
                GradedBimodule::of(compose(top, compose(f.target->web(), bottom))), f.qdegree, {}};
  const int rb = bot->rank(), rm = f.source->rank(), rm2 = f.target->rank();
  for (int J = 0; J < g.source->rank(); ++J) {
    const int jb = J % rb, jm = (J / rb) % rm, jt = J / (rb * rm);
    Element img = g.target->zero();
    for (int K = 0; K < rm2; ++K) {
      const Poly& p = f.images[jm][K];
      if (p.isZero()) continue;
      Element y = bot->act(bot->levels(), p, bot->basisElement(jb));
      for (int J2 = 0; J2 < rb; ++J2)
        if (!y[J2].isZero()) img[J2 + rb * (K + rm2 * jt)] += y[J2];
    }
    g.images.push_back(std::move(img));
  }
  return g;
}

BimoduleMap edgeRingMap(const BimodulePtr& source, const BimodulePtr& target,
                        const std::map<std::string, AlphabetExpr>& images, int qdegree) {
  if (source->source() != target->source() || source->target() != target->target())
    throw std::invalid_argument("edgeRingMap: bimodules have different boundaries");
  const auto& g = source->graph();
  const auto& layers = source->web().layers();
  // Image alphabet of the first edge of each split vertex.
  std::vector<AlphabetExpr> splitImage(layers.size());
  std::vector<std::vector<Partition>> boxes(layers.size());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    if (layers[l].kind != LayerKind::Split) continue;
    const std::string& name = g.edges[g.vertices[l].first].name;
    auto it = images.find(name);
    splitImage[l] = it != images.end() ? it->second : target->alphabet(name);
    const int p = layers[l].position - 1;
    boxes[l] = splitBasis(layers[l].out[p], layers[l].out[p + 1]);
  }
  BimoduleMap f{source, target, qdegree, {}};
  for (int J = 0; J < source->rank(); ++J) {
    SymExpr prod{target->edgeAmbient(), Poly(1)};
    int stride = 1;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      if (layers[l].kind != LayerKind::Split) continue;
      const int radix = static_cast<int>(boxes[l].size());
      const Partition& lambda = boxes[l][(J / stride) % radix];
      stride *= radix;
      if (lambda.size() > 0) prod.poly = prod.poly * target->schur(lambda, splitImage[l]).poly;
    }
    f.images.push_back(target->multiply(prod, target->unit()));
  }
  return f;
}

DigonDecomposition digonDecomposition(int r, int s) {
  DigonDecomposition d;
  d.r = r;
  d.s = s;
  const BimoduleMap col = foamGenerator(FoamKind::Collapse, r, s);
  const BimoduleMap cr = foamGenerator(FoamKind::Create, r, s);
  const BimodulePtr& digon = col.source;
  const auto& vx = digon->graph().vertices.front();
  const AlphabetExpr first = digon->alphabet(vx.first), second = digon->alphabet(vx.second);
  d.labels = splitBasis(r, s);
  for (const auto& alpha : d.labels) {
    d.forward.push_back(compose(col, multiplicationMap(digon, digon->schur(alpha, first))));
    const Partition dual = dualComplement(alpha, r, s);
    const Rational sign = dual.size() % 2 ? -1 : 1;
    d.backward.push_back(compose(multiplicationMap(digon, digon->schur(dual, second)), cr).scaled(sign));
  }
  return d;
}

}  // namespace skein

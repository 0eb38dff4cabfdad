#include "skein/linalg.hpp"

#include <stdexcept>

namespace skein {

SparseVector toSparse(const std::map<int, Rational>& entries) {
  SparseVector v;
  v.reserve(entries.size());
  for (const auto& [c, x] : entries)
    if (x != 0) v.emplace_back(c, x);
  return v;
}

RowEchelon::RowEchelon(int columns) : columns_(columns) {}

std::map<int, Rational> RowEchelon::reduce(const SparseVector& row) const {
  std::map<int, Rational> r;
  for (const auto& [c, x] : row)
    if (x != 0) r[c] += x;
  auto it = r.begin();
  while (it != r.end()) {
    auto p = pivots_.find(it->first);
    if (p == pivots_.end() || it->second == 0) {
      ++it;
      continue;
    }
    const int col = it->first;
    const Rational factor = it->second;
    for (const auto& [c, x] : p->second) {
      auto [pos, fresh] = r.try_emplace(c, 0);
      pos->second -= factor * x;
      if (pos->second == 0) r.erase(pos);
    }
    it = r.upper_bound(col);
  }
  return r;
}

bool RowEchelon::insert(const SparseVector& row) {
  for (const auto& [c, x] : row)
    if (c < 0 || c >= columns_) throw std::out_of_range("RowEchelon: column out of range");
  auto r = reduce(row);
  if (r.empty()) return false;
  const Rational lead = r.begin()->second;
  for (auto& [c, x] : r) x /= lead;
  pivots_.emplace(r.begin()->first, std::move(r));
  reduced_ = false;
  return true;
}

void RowEchelon::backSubstitute() const {
  if (reduced_) return;
  auto& piv = pivots_;
  for (auto p = piv.rbegin(); p != piv.rend(); ++p) {
    const int col = p->first;
    for (auto q = piv.begin(); q != piv.end() && q->first < col; ++q) {
      auto e = q->second.find(col);
      if (e == q->second.end()) continue;
      const Rational factor = e->second;
      for (const auto& [c, x] : p->second) {
        auto [pos, fresh] = q->second.try_emplace(c, 0);
        pos->second -= factor * x;
        if (pos->second == 0) q->second.erase(pos);
      }
    }
  }
  reduced_ = true;
}

std::vector<SparseVector> RowEchelon::nullspace() const {
  backSubstitute();
  std::map<int, std::map<int, Rational>> byFree;
  for (int c = 0; c < columns_; ++c)
    if (!pivots_.count(c)) byFree[c][c] = 1;
  for (const auto& [p, row] : pivots_)
    for (const auto& [c, x] : row)
      if (c != p) byFree.at(c)[p] = -x;
  std::vector<SparseVector> out;
  out.reserve(byFree.size());
  for (auto& [f, entries] : byFree) {
    SparseVector v = toSparse(entries);
    const Rational lead = v.front().second;
    for (auto& [c, x] : v) x /= lead;
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<std::vector<Rational>> solveLinear(const std::vector<SparseVector>& rows,
                                                 const std::vector<Rational>& rhs, int columns) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("solveLinear: row/rhs size mismatch");
  RowEchelon ech(columns + 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SparseVector r = rows[i];
    if (rhs[i] != 0) r.emplace_back(columns, rhs[i]);
    ech.insert(r);
  }
  // A pivot in the augmented column means 0 = nonzero.
  auto test = ech.reduce({{columns, 1}});
  if (test.empty()) return std::nullopt;
  std::vector<Rational> x(columns);
  auto basis = ech.nullspace();
  // The nullspace vector with free column `columns` carries the solution.
  for (const auto& v : basis) {
    if (v.back().first != columns) continue;
    const Rational scale = v.back().second;
    if (v.front().first != columns) {
      // Entries are normalized by the first coordinate; rescale so the
      // augmented coordinate is -1, i.e. A x - b = 0.
      for (const auto& [c, val] : v)
        if (c < columns) x[c] = -val / scale;
    }
    return x;
  }
  return x;  // unreachable: the augmented column is free when consistent
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool DenseMatrix::isZero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch");
  DenseMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.cols_; ++j)
        if (o.at(k, j) != 0) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch");
  DenseMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch");
  DenseMatrix r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

int DenseMatrix::rank() const {
  RowEchelon e(cols_);
  for (int i = 0; i < rows_; ++i) {
    SparseVector row;
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0) row.emplace_back(j, at(i, j));
    e.insert(row);
  }
  return e.rank();
}

std::optional<DenseMatrix> DenseMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const int n = rows_;
  DenseMatrix m = *this, inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m.at(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m.at(p, j), m.at(c, j));
        std::swap(inv.at(p, j), inv.at(c, j));
      }
    const Rational pivot = m.at(c, c);
    for (int j = 0; j < n; ++j) {
      m.at(c, j) /= pivot;
      inv.at(c, j) /= pivot;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || m.at(i, c) == 0) continue;
      const Rational f = m.at(i, c);
      for (int j = 0; j < n; ++j) {
        if (m.at(c, j) != 0) m.at(i, j) -= f * m.at(c, j);
        if (inv.at(c, j) != 0) inv.at(i, j) -= f * inv.at(c, j);
      }
    }
  }
  return inv;
}

std::string DenseMatrix::str() const {
  std::string s = "[";
  for (int i = 0; i < rows_; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < cols_; ++j) {
      if (j) s += ",";
      s += toString(at(i, j));
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace skein

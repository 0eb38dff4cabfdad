#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skein/gradearith.hpp"

namespace skein {

// Sparse rational vector: (column, value) pairs, sorted by column, no zeros.
using SparseVector = std::vector<std::pair<int, Rational>>;

SparseVector toSparse(const std::map<int, Rational>& entries);

// Incremental row echelon form over Q. Rows are reduced against the pivots
// seen so far as they are inserted; pivot rows are kept with leading 1.
class RowEchelon {
 public:
  explicit RowEchelon(int columns);

  int columns() const { return columns_; }
  int rank() const { return static_cast<int>(pivots_.size()); }
  // Returns true if the row was independent of the rows inserted before.
  bool insert(const SparseVector& row);
  // Reduced form of `row` modulo the current row space.
  std::map<int, Rational> reduce(const SparseVector& row) const;

  // Basis of {x : row . x = 0 for all inserted rows}, one vector per free
  // column, each scaled so that its first nonzero entry is 1.
  std::vector<SparseVector> nullspace() const;

 private:
  void backSubstitute() const;
  int columns_;
  mutable std::map<int, std::map<int, Rational>> pivots_;  // pivot column -> row
  mutable bool reduced_ = true;
};

// Solves A x = b for sparse rows of A with right-hand sides b. Free
// variables are set to zero. Returns nothing when the system is inconsistent.
std::optional<std::vector<Rational>> solveLinear(const std::vector<SparseVector>& rows,
                                                 const std::vector<Rational>& rhs, int columns);

// Small dense matrices, row-major.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}
  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  bool isZero() const;

  DenseMatrix operator*(const DenseMatrix& o) const;
  DenseMatrix operator+(const DenseMatrix& o) const;
  DenseMatrix operator-(const DenseMatrix& o) const;
  bool operator==(const DenseMatrix& o) const = default;

  int rank() const;
  std::optional<DenseMatrix> inverse() const;
  std::string str() const;  // "[[1,0],[0,1/2]]"

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

}  // namespace skein

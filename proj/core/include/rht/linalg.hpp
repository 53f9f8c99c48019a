#pragma once

#include <optional>
#include <vector>

#include "rht/rational.hpp"

namespace rht {

using Vec = std::vector<Rational>;
using Matrix = std::vector<Vec>;  // row-major, rectangular

bool is_zero_vec(const Vec& v);

/// In-place reduced row echelon form. Returns the rank; pivot columns, in
/// row order, are appended to *pivots when given.
std::size_t rref(Matrix& m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(Matrix m);

/// Basis of {x : m x = 0} for m with `cols` columns (needed when m has no
/// rows). One vector per free column, in column order; the free coordinate
/// of each vector is 1.
std::vector<Vec> kernel_basis(const Matrix& m, std::size_t cols);

/// Any solution x of a x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const Matrix& a, const Vec& b);

Vec mat_vec(const Matrix& m, const Vec& x);
Matrix mat_mul(const Matrix& a, const Matrix& b);

/// Incremental row space: supports "reduce a vector against rows seen so
/// far" and insertion, used for quotient representatives.
class RowSpace {
 public:
  explicit RowSpace(std::size_t cols) : cols_(cols) {}
  std::size_t dim() const { return rows_.size(); }
  /// Residue of v modulo the span; zero vector iff v is in the span.
  Vec reduce(Vec v) const;
  /// Reduces and, when nonzero, inserts; returns true when inserted.
  bool insert(Vec v);

 private:
  std::size_t cols_;
  Matrix rows_;                      // kept in echelon form
  std::vector<std::size_t> lead_;   // lead column per row
};

}  // namespace rht

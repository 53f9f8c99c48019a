#include "rht/linalg.hpp"

#include <algorithm>

namespace rht {

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

std::size_t rref(Matrix& m, std::vector<std::size_t>* pivots) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Rational inv = Rational(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

std::size_t rank(Matrix m) { return rref(m); }

std::vector<Vec> kernel_basis(const Matrix& m, std::size_t cols) {
  Matrix r = m;
  std::vector<std::size_t> pivots;
  rref(r, &pivots);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  Matrix aug(rows, Vec(cols + 1, Rational(0)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  std::vector<std::size_t> pivots;
  rref(aug, &pivots);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (pivots[i] == cols) return std::nullopt;
  Vec x(cols, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  if (rows == 0) return is_zero_vec(b) || b.empty() ? std::optional<Vec>(x) : std::nullopt;
  return x;
}

Vec mat_vec(const Matrix& m, const Vec& x) {
  Vec y(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
  return y;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k == 0 ? 0 : b[0].size();
  Matrix c(n, Vec(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

Vec RowSpace::reduce(Vec v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Rational& f = v[lead_[i]];
    if (f.is_zero()) continue;
    const Rational scale = f;
    for (std::size_t j = 0; j < cols_; ++j) v[j] -= scale * rows_[i][j];
  }
  return v;
}

bool RowSpace::insert(Vec v) {
  v = reduce(std::move(v));
  std::size_t lead = cols_;
  for (std::size_t j = 0; j < cols_; ++j)
    if (!v[j].is_zero()) { lead = j; break; }
  if (lead == cols_) return false;
  const Rational inv = Rational(1) / v[lead];
  for (auto& x : v) x *= inv;
  rows_.push_back(std::move(v));
  lead_.push_back(lead);
  return true;
}

}  // namespace rht

#include "rht/finite_dga.hpp"

#include <algorithm>
#include <map>

#include "rht/errors.hpp"

namespace rht {

FiniteDga::Sparse sparse_add(const FiniteDga::Sparse& a, const FiniteDga::Sparse& b) {
  FiniteDga::Sparse out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].idx < b[j].idx)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].idx < a[i].idx) {
      out.push_back(b[j++]);
    } else {
      Rational c = a[i].c + b[j].c;
      if (!c.is_zero()) out.push_back({a[i].idx, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

FiniteDga::Sparse sparse_scale(const FiniteDga::Sparse& a, const Rational& c) {
  FiniteDga::Sparse out;
  if (c.is_zero()) return out;
  out.reserve(a.size());
  for (const auto& e : a) out.push_back({e.idx, e.c * c});
  return out;
}

Rational sparse_coeff(const FiniteDga::Sparse& a, int idx) {
  for (const auto& e : a)
    if (e.idx == idx) return e.c;
  return 0;
}

static bool sparse_equal(const FiniteDga::Sparse& a, const FiniteDga::Sparse& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].idx != b[i].idx || a[i].c != b[i].c) return false;
  return true;
}

FiniteDga::FiniteDga(std::vector<std::string> labels, std::vector<int> degrees, int unit,
                     std::vector<std::vector<Sparse>> mult, std::vector<Sparse> diff)
    : labels_(std::move(labels)),
      degrees_(std::move(degrees)),
      unit_(unit),
      mult_(std::move(mult)),
      diff_(std::move(diff)) {
  const std::size_t n = labels_.size();
  if (degrees_.size() != n || mult_.size() != n || diff_.size() != n)
    throw InputError("coefficient algebra tables have mismatched sizes");
  if (unit_ < 0 || static_cast<std::size_t>(unit_) >= n || degrees_[unit_] != 0)
    throw InputError("coefficient algebra unit must be a degree-0 basis element");
  for (std::size_t i = 0; i < n; ++i) {
    if (degrees_[i] < 0) throw InputError("coefficient algebra with negative degree");
    if (degrees_[i] == 0 && static_cast<int>(i) != unit_)
      throw InputError("coefficient algebra must be connected (one degree-0 element)");
    top_ = std::max(top_, degrees_[i]);
    if (mult_[i].size() != n) throw InputError("ragged multiplication table");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& e : mult_[i][j])
        if (degrees_[e.idx] != degrees_[i] + degrees_[j])
          throw InputError("multiplication table violates degree additivity");
    }
    Sparse ei{{static_cast<int>(i), Rational(1)}};
    if (!sparse_equal(mult_[unit_][i], ei) || !sparse_equal(mult_[i][unit_], ei))
      throw InputError("unit does not act as identity on " + labels_[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Sparse flip = sparse_scale(mult_[j][i], parity_sign(long(degrees_[i]) * degrees_[j]));
      if (!sparse_equal(mult_[i][j], flip))
        throw InputError("multiplication table is not graded commutative at (" + labels_[i] +
                         ", " + labels_[j] + ")");
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Sparse left, right;
        for (const auto& e : mult_[i][j]) left = sparse_add(left, sparse_scale(mult_[e.idx][k], e.c));
        for (const auto& e : mult_[j][k]) right = sparse_add(right, sparse_scale(mult_[i][e.idx], e.c));
        if (!sparse_equal(left, right))
          throw InputError("multiplication table is not associative at (" + labels_[i] + ", " +
                           labels_[j] + ", " + labels_[k] + ")");
      }
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : diff_[i])
      if (degrees_[e.idx] != degrees_[i] + 1)
        throw InputError("differential does not raise degree by 1 on " + labels_[i]);
    if (!d_sparse(diff_[i]).empty())
      throw InputError("coefficient algebra differential does not square to zero on " + labels_[i]);
  }
  // d is a derivation of the table: d(b_i b_j) = d(b_i) b_j + (-1)^{|b_i|} b_i d(b_j).
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Sparse lhs = d_sparse(mult_[i][j]);
      Sparse rhs;
      for (const auto& e : diff_[i]) rhs = sparse_add(rhs, sparse_scale(mult_[e.idx][j], e.c));
      for (const auto& e : diff_[j])
        rhs = sparse_add(rhs, sparse_scale(mult_[i][e.idx], e.c * Rational(parity_sign(degrees_[i]))));
      if (!sparse_equal(lhs, rhs))
        throw InputError("differential is not a derivation at (" + labels_[i] + ", " + labels_[j] + ")");
    }
}

int FiniteDga::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

FiniteDga::Sparse FiniteDga::mul_sparse(const Sparse& a, const Sparse& b) const {
  Sparse out;
  for (const auto& x : a)
    for (const auto& y : b) out = sparse_add(out, sparse_scale(mult_[x.idx][y.idx], x.c * y.c));
  return out;
}

FiniteDga::Sparse FiniteDga::d_sparse(const Sparse& a) const {
  Sparse out;
  for (const auto& x : a) out = sparse_add(out, sparse_scale(diff_[x.idx], x.c));
  return out;
}

std::vector<int> FiniteDga::indices_in_degree(int q) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (degrees_[i] == q) out.push_back(static_cast<int>(i));
  return out;
}

std::size_t FiniteDga::dim_in_degree(int q) const { return indices_in_degree(q).size(); }

FiniteDga FiniteDga::from_monomial_basis(const GcaPresentation& p,
                                         const std::vector<Monomial>& basis) {
  const TablePtr& t = p.table_ptr();
  std::map<Monomial, int, MonomialLess> index{MonomialLess{t.get()}};
  std::vector<std::string> labels;
  std::vector<int> degrees;
  int unit = -1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!index.emplace(basis[i], static_cast<int>(i)).second)
      throw InputError("duplicate monomial in coefficient basis");
    labels.push_back(basis[i].str(*t));
    degrees.push_back(static_cast<int>(basis[i].degree(*t)));
    if (basis[i].is_unit()) unit = static_cast<int>(i);
  }
  if (unit < 0) throw InputError("coefficient basis must contain the unit monomial");

  auto project = [&](const Poly& q) {
    Sparse out;
    for (const auto& [m, c] : q.terms()) {
      auto it = index.find(m);
      if (it != index.end()) out.push_back({it->second, c});
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.idx < b.idx; });
    return out;
  };

  const std::size_t n = basis.size();
  std::vector<std::vector<Sparse>> mult(n, std::vector<Sparse>(n));
  std::vector<Sparse> diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Poly pi = Poly::term(t, basis[i], 1);
    diff[i] = project(p.apply_d(pi));
    for (std::size_t j = 0; j < n; ++j)
      mult[i][j] = project(multiply(pi, Poly::term(t, basis[j], 1)));
  }
  return FiniteDga(std::move(labels), std::move(degrees), unit, std::move(mult), std::move(diff));
}

}  // namespace rht

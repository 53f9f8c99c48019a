#pragma once

#include <string>
#include <vector>

#include "rht/gca.hpp"
#include "rht/rational.hpp"

namespace rht {

/// Finite-dimensional connected DGA with a chosen homogeneous basis, explicit
/// multiplication table and differential table. Construction validates the
/// axioms: unique degree-0 basis element acting as the unit, degree
/// additivity, graded commutativity, associativity, and a differential that
/// raises degree by 1 and squares to zero.
class FiniteDga {
 public:
  struct Entry {
    int idx;
    Rational c;
  };
  using Sparse = std::vector<Entry>;  // sorted by idx, no zero coefficients

  FiniteDga(std::vector<std::string> labels, std::vector<int> degrees, int unit,
            std::vector<std::vector<Sparse>> mult, std::vector<Sparse> diff);

  /// Quotient presentation: the span of `basis` monomials inside a free
  /// graded-commutative algebra, products falling outside the list treated
  /// as zero. Valid only when the discarded monomials span an ideal; the
  /// constructor's associativity check rejects anything else.
  static FiniteDga from_monomial_basis(const GcaPresentation& p,
                                       const std::vector<Monomial>& basis);

  std::size_t dim() const { return labels_.size(); }
  const std::string& label(int i) const { return labels_[i]; }
  int degree(int i) const { return degrees_[i]; }
  int unit() const { return unit_; }
  int top_degree() const { return top_; }
  int index_of(const std::string& label) const;  // -1 when absent

  const Sparse& mul(int i, int j) const { return mult_[i][j]; }
  const Sparse& d(int i) const { return diff_[i]; }

  Sparse mul_sparse(const Sparse& a, const Sparse& b) const;
  Sparse d_sparse(const Sparse& a) const;

  std::vector<int> indices_in_degree(int q) const;
  std::size_t dim_in_degree(int q) const;

 private:
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  int unit_;
  int top_ = 0;
  std::vector<std::vector<Sparse>> mult_;
  std::vector<Sparse> diff_;
};

FiniteDga::Sparse sparse_add(const FiniteDga::Sparse& a, const FiniteDga::Sparse& b);
FiniteDga::Sparse sparse_scale(const FiniteDga::Sparse& a, const Rational& c);
Rational sparse_coeff(const FiniteDga::Sparse& a, int idx);

}  // namespace rht

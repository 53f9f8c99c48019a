#pragma once

#include <string>
#include <vector>

#include "rht/finite_dga.hpp"
#include "rht/linalg.hpp"

namespace rht {

/// Dual coalgebra B_* of a finite DGA: basis elements b_{j*} in degree
/// -|b_j|, coproduct dual to the multiplication and differential dual to
/// d_B. The pairing convention is plain slot-by-slot evaluation:
/// <D(e), x (x) y> = <e, xy>.
///
/// Sign of the dual differential: the coefficient of b_{i*} in
/// d_{B*}(b_{j*}) is (-1)^{|b_j|} <b_{j*}, d_B(b_i)>. The quotient models
/// downstream are insensitive to this choice; this one keeps the mixed-model
/// ideal closed under the differential (see the consistency checks in the
/// mapping-space model tests).
class DualCoalgebra {
 public:
  struct CoTerm {
    int left, right;
    Rational c;
  };
  struct IterTerm {
    Rational c;
    std::vector<int> slots;
  };

  explicit DualCoalgebra(const FiniteDga& b);

  /// Raw tables, unvalidated; used by tests for corrupted-table controls.
  DualCoalgebra(std::vector<int> algebra_degrees, int counit,
                std::vector<std::vector<CoTerm>> coproduct,
                std::vector<FiniteDga::Sparse> d_dual);

  std::size_t dim() const { return adeg_.size(); }
  /// Coalgebra degree of a dual basis element: -(algebra degree) <= 0.
  int degree(int j) const { return -adeg_[j]; }
  int algebra_degree(int j) const { return adeg_[j]; }
  int counit_index() const { return counit_; }

  const std::vector<CoTerm>& coproduct(int j) const { return cop_[j]; }
  const FiniteDga::Sparse& d_dual(int j) const { return ddual_[j]; }

  /// Delta^(m): m-fold iterated coproduct of b_{j*}, expanded in the first
  /// slot each round; m = 0 is the identity, terms have m+1 slots.
  std::vector<IterTerm> iterated_coproduct(int j, int m) const;

  /// Empty iff (D(x)1)D = (1(x)D)D on every dual basis element.
  std::vector<std::string> check_coassoc() const;
  /// Empty iff (eps(x)1)D = id = (1(x)eps)D and d_dual^2 = 0.
  std::vector<std::string> check_counit_and_differential() const;

  /// Exact splitting of the dual basis space: d_dual(a_k) = b_k, the c_j are
  /// a complementary family of cocycles containing 1_*.
  struct CocycleBasis {
    std::vector<Vec> a, b, c;
  };
  CocycleBasis cocycle_basis() const;

 private:
  std::vector<int> adeg_;
  int counit_;
  std::vector<std::vector<CoTerm>> cop_;
  std::vector<FiniteDga::Sparse> ddual_;
};

/// Finite Poincare-duality replacement for a supported Z-part together with
/// the quasi-isomorphism on its generators and the exponent m (top class
/// beta^m). Supported closed forms: the trivial Z-part (giving the ground
/// field, m = 0) and Z-parts with a distinguished degree-2 cocycle beta, a
/// generator y with d(y) = c beta^{m+1}, and all other generators of degree
/// >= 3 mapping to zero.
struct PdTarget {
  FiniteDga algebra;
  std::vector<FiniteDga::Sparse> eta;  // per Z-part generator
  int m = 0;
};

PdTarget pd_quasi_target(const GcaPresentation& zpart, int beta);

}  // namespace rht

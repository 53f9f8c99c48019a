#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rht/dual_coalgebra.hpp"
#include "rht/finite_dga.hpp"
#include "rht/gca.hpp"
#include "rht/linalg.hpp"

namespace rht {

/// Quasi-isomorphism data eta : (/\V, d) -> B given on generators.
struct EtaMap {
  std::vector<FiniteDga::Sparse> on_gen;  // one entry per V-generator
};

struct BsBuildOptions {
  bool consistency_check = true;  // scalar part of delta on degree -1 generators
  bool d_squared_check = true;    // reduced delta^2 = 0 on the degree-1 quotient
};

/// Model for the identity component of the self-equivalence monoid of the
/// space presented by (/\V, d), truncated to generator degrees <= 2 (with
/// degree-3 generators present so differentials of degree-2 classes are
/// expressible). Generators are v(x)b_* pairs named "v@b"; the quotient
/// identifies degree-0 generators with their evaluation scalars, kills
/// negative degrees, and imposes the differentials of degree-0 generators as
/// linear relations among degree-1 generators.
class BsModel {
 public:
  struct MixedGen {
    int v;       // V-generator index
    int b;       // B-basis index (the dualized element)
    int degree;  // |v| - |b|
  };

  BsModel(const GcaPresentation& v, FiniteDga b, EtaMap eta, BsBuildOptions opts = {});

  const GcaPresentation& source() const { return v_; }
  const FiniteDga& coefficients() const { return b_; }
  const DualCoalgebra& dual() const { return dual_; }

  // --- ambient mixed algebra -------------------------------------------
  const std::vector<MixedGen>& mixed() const { return mixed_; }
  const TablePtr& mixed_table() const { return mtable_; }
  int mixed_index(int v, int b) const;  // -1 outside the table
  const std::vector<int>& mixed_in_degree(int d) const;  // d in [-1, 3]
  const std::string& mixed_name(int mixed_idx) const;

  /// delta on an ambient generator of degree -1..2 (formula-level, before
  /// any reduction).
  const Poly& delta(int mixed_idx) const;
  /// Evaluation scalar of a degree-0 generator.
  const Rational& u_value(int mixed_idx) const;

  // --- the reduced model -----------------------------------------------
  /// Ambient degree-1 generators surviving the quotient; their classes form
  /// the basis of the degree-1 part.
  const std::vector<int>& survivors() const { return survivors_; }
  const std::vector<std::string>& survivor_names() const { return survivor_names_; }
  /// Ambient degree-1 generators rewritten away by the relations.
  const std::vector<int>& eliminated() const { return eliminated_; }

  /// Class of an ambient degree-1 generator in survivor coordinates.
  Vec class_of_degree1(int mixed_idx) const;
  /// Full reduction: kill negatives, evaluate degree-0 generators,
  /// substitute eliminated degree-1 generators.
  Poly reduce(const Poly& p) const;
  Poly reduced_delta_of_survivor(std::size_t si) const;

  /// Monomial basis of the degree-2 part of the quotient.
  const std::vector<Monomial>& degree2_basis() const { return m2_basis_; }
  std::vector<std::string> degree2_basis_names() const;
  /// Matrix of the reduced differential (E/M_u)^1 -> (E/M_u)^2; rows indexed
  /// by degree2_basis, columns by survivors.
  const Matrix& delta1_matrix() const { return delta1_; }

  // --- H^1 ----------------------------------------------------------------
  const std::vector<Vec>& h1_basis() const { return h1_basis_; }
  const std::vector<std::string>& h1_names() const { return h1_names_; }
  /// Coordinates of a degree-1 class in the H^1 basis, when it is a cocycle.
  std::optional<Vec> h1_coordinates(const Vec& survivor_coords) const;

  // --- evaluation-map model ---------------------------------------------
  struct EvTerm {
    Poly component;  // reduced element of the model, degree |x| - |b|
    int b;           // coefficient-algebra basis index
  };
  /// m(ev)(x) for a V-generator x of degree <= 2, as an element of
  /// (E/M_u) (x) B.
  std::vector<EvTerm> ev_model(int vgen) const;

 private:
  Poly expand_tensor(const std::vector<int>& vgens, int b) const;
  Poly delta_of(int v, int b) const;
  Poly kill_and_evaluate(const Poly& p) const;  // R: negatives -> 0, degree-0 -> u
  void build_reduction();

  GcaPresentation v_;
  FiniteDga b_;
  DualCoalgebra dual_;
  EtaMap eta_;

  std::vector<MixedGen> mixed_;
  TablePtr mtable_;
  std::vector<std::vector<int>> by_degree_;  // index 0 <-> degree -1
  std::map<std::pair<int, int>, int> pair_index_;
  std::vector<Poly> delta_;       // ambient delta for degrees -1..2
  std::vector<Rational> u_;       // degree-0 generators
  std::vector<char> has_delta_;

  std::vector<int> survivors_;
  std::vector<std::string> survivor_names_;
  std::vector<int> eliminated_;
  std::map<int, Poly> rewrite_;   // eliminated generator -> survivor combination
  std::map<int, std::size_t> survivor_pos_;

  std::vector<Monomial> m2_basis_;
  Matrix delta1_;
  std::vector<Vec> h1_basis_;
  std::vector<std::string> h1_names_;
};

}  // namespace rht

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rht/bs_model.hpp"
#include "rht/gca.hpp"

namespace rht {

/// A torus-separable model: the first 2k generators are closed degree-1
/// torus generators t_{i1}, t_{i2}; the rest form the Z-part (no degree-1
/// generators, differential internal to the Z-part). The symplectic class is
/// q beta + sum_i q_i t_{i1} t_{i2} with all named coefficients nonzero.
struct SeparableSpec {
  GcaPresentation model;
  int k = 0;
  int beta = -1;  // model generator index; -1 when the Z-part is trivial
  Rational q_beta;
  std::vector<Rational> q_torus;
};

SeparableSpec make_separable_spec(const GcaPresentation& model, int k, const Poly& symplectic);

/// The separable pipeline output: mapping-space model of the identity
/// self-equivalence component over the finite replacement of the model.
struct SepModel {
  SeparableSpec spec;
  int m;  // truncation exponent of the Z-part replacement
  BsModel bs;
  std::vector<int> torus_class_mixed;  // ambient indices of t_{i lambda}(x)1_*
};

/// eta_scale rescales the quasi-isomorphism on the distinguished degree-2
/// cocycle; any nonzero value yields the same reduced model shape.
SepModel build_separable_model(const SeparableSpec& spec, const Rational& eta_scale = Rational(1));

/// kappa : H^1(T^{2k}) -> H^2(B aut_1), presented on the model's W^2 basis
/// (the degree-2 classes of the classifying space, one per H^1 class of the
/// self-equivalence space under the suspension identification).
struct KappaMap {
  std::vector<std::string> source;  // s11, s12, ..., sk1, sk2
  std::vector<std::string> w2;
  Matrix mat;  // |w2| x 2k
};

KappaMap kappa(const SepModel& model);

/// H^2 of the classifying map, given by its values on the W^2 basis.
struct ClassifyingData {
  std::vector<std::string> w2;
  std::vector<std::string> h2b;  // basis names of H^2(base)
  Matrix mat;                    // |h2b| x |w2|
};

struct Witness {
  std::string cls;  // obstructing torus class s_{i lambda}
  Vec image;        // its nonzero image in H^2(base)
};

struct Verdict {
  bool extendable = false;
  std::optional<Witness> witness;
};

Verdict is_extendable(const SepModel& model, const KappaMap& k, const ClassifyingData& f);

ClassifyingData sum_classifying(const ClassifyingData& f, const ClassifyingData& g);

struct ModuliDim {
  Int dim_w2;
  Int dim;  // dim W^2 - 2k
};

ModuliDim moduli_dim_s2(const SepModel& model);

/// Closed form sum_{s=1}^{min(m,k)} C(2k, 2s); independent oracle for
/// moduli_dim_s2 over the torus x complex-projective family.
Int corollary_dim_closed_form(int k, int m);

/// Torus fibre over the 2-sphere with classifying pair (a, b): the class
/// extends iff the pair vanishes.
bool torus_over_s2_check(long a, long b);

}  // namespace rht

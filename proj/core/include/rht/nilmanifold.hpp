#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rht/bs_model.hpp"
#include "rht/gca.hpp"

namespace rht {

/// Lower-triangular degree-1 model check: every generator has degree 1,
/// d(x_i) lies in the subalgebra on x_1..x_{i-1} (declaration order), and
/// d^2 = 0. Empty report iff valid.
std::vector<std::string> validate_nil(const GcaPresentation& model);

/// Mapping-space model of a nilmanifold model against itself (the finite
/// coefficient algebra is the full exterior model, eta the identity).
struct NilModel {
  GcaPresentation model;
  BsModel bs;
};

NilModel build_nil_model(const GcaPresentation& model);

/// The classifying space has polynomial cohomology on one degree-2 generator
/// per degree-1 class of the reduced model. Violations report any degree-1
/// class with nonvanishing reduced differential (impossible for valid
/// input: the reduced model is minimal on odd generators).
struct NilGenerators {
  std::vector<std::string> names;
  std::vector<std::string> violations;
};

NilGenerators baut1_poly_generators(const NilModel& model);

struct NilVerdict {
  bool extendable = false;
  std::optional<std::string> witness;
  Vec witness_image;
};

/// Extendability of the symplectic class: the induced map vanishes iff every
/// degree-2 polynomial generator maps to zero. `f` assigns to generator
/// names their image vectors over an H^2(base) basis of dimension h2b_dim;
/// absent names count as zero.
NilVerdict is_extendable_nil(const NilModel& model, const std::map<std::string, Vec>& f,
                             std::size_t h2b_dim);

/// Optional symplectic input: degree-2 cocycle with [omega]^n nonzero in the
/// top cohomology (n = half the generator count).
void validate_nil_symplectic(const GcaPresentation& model, const Poly& omega);

}  // namespace rht

#pragma once

#include <string>
#include <vector>

#include "rht/gca.hpp"
#include "rht/separable.hpp"

namespace rht::testing {

/// /\(t11, t12, ..., tk1, tk2), zero differential.
inline GcaPresentation torus_model(int k) {
  std::vector<Generator> gens;
  for (int i = 1; i <= k; ++i) {
    gens.push_back({"t" + std::to_string(i) + "1", 1});
    gens.push_back({"t" + std::to_string(i) + "2", 1});
  }
  TablePtr t = make_table(std::move(gens));
  std::vector<Poly> diff(t->size(), Poly(t));
  return GcaPresentation(t, std::move(diff));
}

/// Torus times complex projective space: 2k torus generators, then b (deg 2)
/// and y (deg 2m+1) with d(y) = b^{m+1}.
inline GcaPresentation torus_cp_model(int k, int m) {
  std::vector<Generator> gens;
  for (int i = 1; i <= k; ++i) {
    gens.push_back({"t" + std::to_string(i) + "1", 1});
    gens.push_back({"t" + std::to_string(i) + "2", 1});
  }
  gens.push_back({"b", 2});
  gens.push_back({"y", 2 * m + 1});
  TablePtr t = make_table(std::move(gens));
  std::vector<Poly> diff(t->size(), Poly(t));
  const int b = t->index_of("b");
  diff[t->index_of("y")] = Poly::generator(t, b).pow(m + 1);
  return GcaPresentation(t, std::move(diff));
}

inline Poly standard_symplectic(const GcaPresentation& model, int k, bool with_b) {
  const TablePtr& t = model.table_ptr();
  Poly w(t);
  for (int i = 0; i < k; ++i)
    w += multiply(Poly::generator(t, 2 * i), Poly::generator(t, 2 * i + 1));
  if (with_b) w += Poly::generator(t, t->index_of("b"));
  return w;
}

inline SepModel build_torus_cp(int k, int m, const Rational& eta_scale = Rational(1)) {
  GcaPresentation pres = torus_cp_model(k, m);
  SeparableSpec spec = make_separable_spec(pres, k, standard_symplectic(pres, k, true));
  return build_separable_model(spec, eta_scale);
}

inline SepModel build_torus_only(int k) {
  GcaPresentation pres = torus_model(k);
  SeparableSpec spec = make_separable_spec(pres, k, standard_symplectic(pres, k, false));
  return build_separable_model(spec);
}

/// Kodaira-Thurston model: /\(x1..x4), d(x4) = x1 x2.
inline GcaPresentation kodaira_thurston() {
  TablePtr t = make_table({{"x1", 1}, {"x2", 1}, {"x3", 1}, {"x4", 1}});
  std::vector<Poly> diff(4, Poly(t));
  diff[3] = multiply(Poly::generator(t, 0), Poly::generator(t, 1));
  return GcaPresentation(t, std::move(diff));
}

/// /\(x1..xn), zero differential (the n-torus as a nilmanifold model).
inline GcaPresentation nil_torus(int n) {
  std::vector<Generator> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({"x" + std::to_string(i), 1});
  TablePtr t = make_table(std::move(gens));
  std::vector<Poly> diff(t->size(), Poly(t));
  return GcaPresentation(t, std::move(diff));
}

}  // namespace rht::testing

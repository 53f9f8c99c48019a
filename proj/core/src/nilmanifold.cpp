#include "rht/nilmanifold.hpp"

#include "rht/errors.hpp"
#include "rht/finite_dga.hpp"

namespace rht {

std::vector<std::string> validate_nil(const GcaPresentation& model) {
  std::vector<std::string> report;
  const GeneratorTable& t = model.table();
  for (int i = 0; i < t.size(); ++i)
    if (t[i].degree != 1)
      report.push_back("generator " + t[i].name + " has degree " + std::to_string(t[i].degree) +
                       ", expected 1");
  if (!report.empty()) return report;
  for (int i = 0; i < t.size(); ++i)
    for (const auto& [mono, c] : model.d_of(i).terms())
      for (const auto& f : mono.factors())
        if (f.gen >= i) {
          report.push_back("d(" + t[i].name + ") is not lower triangular: involves " +
                           t[f.gen].name);
          break;
        }
  for (int g : model.check_d_squared())
    report.push_back("d^2 is nonzero on " + t[g].name);
  return report;
}

NilModel build_nil_model(const GcaPresentation& model) {
  auto report = validate_nil(model);
  if (!report.empty()) throw InputError("not a nilmanifold model: " + report.front());
  const int n = model.table().size();
  std::vector<Monomial> basis;
  for (int q = 0; q <= n; ++q)
    for (const auto& m : model.basis_in_degree(q)) basis.push_back(m);
  FiniteDga b = FiniteDga::from_monomial_basis(model, basis);
  EtaMap eta;
  eta.on_gen.resize(n);
  for (int i = 0; i < n; ++i)
    eta.on_gen[i] = {{b.index_of(model.table()[i].name), Rational(1)}};
  BsModel bs(model, std::move(b), std::move(eta));
  return NilModel{model, std::move(bs)};
}

NilGenerators baut1_poly_generators(const NilModel& model) {
  NilGenerators out;
  out.names = model.bs.survivor_names();
  const Matrix& d1 = model.bs.delta1_matrix();
  for (std::size_t j = 0; j < out.names.size(); ++j)
    for (std::size_t i = 0; i < d1.size(); ++i)
      if (!d1[i][j].is_zero()) {
        out.violations.push_back("reduced differential is nonzero on " + out.names[j]);
        break;
      }
  return out;
}

NilVerdict is_extendable_nil(const NilModel& model, const std::map<std::string, Vec>& f,
                             std::size_t h2b_dim) {
  const NilGenerators gens = baut1_poly_generators(model);
  if (!gens.violations.empty()) throw ModelInconsistency(gens.violations.front());
  for (const auto& [name, v] : f) {
    bool known = false;
    for (const auto& g : gens.names) known = known || g == name;
    if (!known) throw InputError("unknown classifying-space generator: " + name);
    if (v.size() != h2b_dim) throw InputError("classifying value of wrong dimension on " + name);
  }
  for (const auto& name : gens.names) {
    auto it = f.find(name);
    if (it == f.end()) continue;
    if (!is_zero_vec(it->second)) return NilVerdict{false, name, it->second};
  }
  return NilVerdict{true, std::nullopt, Vec(h2b_dim, Rational(0))};
}

void validate_nil_symplectic(const GcaPresentation& model, const Poly& omega) {
  auto deg = omega.homogeneous_degree();
  if (!deg || *deg != 2) throw InputError("symplectic expression must be homogeneous of degree 2");
  if (!model.apply_d(omega).is_zero()) throw InputError("symplectic expression is not a cocycle");
  const int n = model.table().size();
  if (n % 2 != 0) throw InputError("nilmanifold symplectic input needs an even generator count");
  const Poly top = omega.pow(n / 2);
  if (top.is_zero()) throw InputError("the symplectic class has vanishing top power");
  // Top power must be nonzero in cohomology: reduce against the image of d.
  const auto top_basis = model.basis_in_degree(n);
  std::map<Monomial, std::size_t, MonomialLess> index{MonomialLess{model.table_ptr().get()}};
  for (std::size_t i = 0; i < top_basis.size(); ++i) index.emplace(top_basis[i], i);
  RowSpace image(top_basis.size());
  for (const auto& m : model.basis_in_degree(n - 1)) {
    const Poly dm = model.apply_d(Poly::term(model.table_ptr(), m, 1));
    Vec v(top_basis.size(), Rational(0));
    for (const auto& [mono, c] : dm.terms()) v[index.at(mono)] = c;
    image.insert(std::move(v));
  }
  Vec w(top_basis.size(), Rational(0));
  for (const auto& [mono, c] : top.terms()) w[index.at(mono)] = c;
  if (is_zero_vec(image.reduce(w)))
    throw InputError("the top power of the symplectic class is exact");
}

}  // namespace rht

#include "rht/separable.hpp"

#include <algorithm>

#include "rht/dual_coalgebra.hpp"
#include "rht/errors.hpp"

namespace rht {

SeparableSpec make_separable_spec(const GcaPresentation& model, int k, const Poly& symplectic) {
  if (k < 0) throw InputError("torus rank parameter must be >= 0");
  const GeneratorTable& t = model.table();
  if (t.size() < 2 * k) throw InputError("model has fewer than 2k generators");
  for (int i = 0; i < 2 * k; ++i) {
    if (t[i].degree != 1)
      throw InputError("torus generator " + t[i].name + " must have degree 1");
    if (!model.d_of(i).is_zero())
      throw InputError("torus generator " + t[i].name + " must be closed");
  }
  for (int i = 2 * k; i < t.size(); ++i) {
    if (t[i].degree == 1)
      throw InputError("Z-part must have no degree-1 generators (found " + t[i].name + ")");
    for (const auto& [mono, c] : model.d_of(i).terms())
      for (const auto& f : mono.factors())
        if (f.gen < 2 * k)
          throw InputError("model does not split: d(" + t[i].name + ") involves torus generators");
  }
  if (symplectic.table().get() != model.table_ptr().get())
    throw PresentationMismatch("symplectic expression over a foreign presentation");
  auto deg = symplectic.homogeneous_degree();
  if (!deg || *deg != 2) throw InputError("symplectic expression must be homogeneous of degree 2");

  SeparableSpec spec{model, k, -1, Rational(0), std::vector<Rational>(k, Rational(0))};
  for (const auto& [mono, c] : symplectic.terms()) {
    const auto& fs = mono.factors();
    if (fs.size() == 1 && fs[0].exp == 1 && fs[0].gen >= 2 * k) {
      if (spec.beta != -1 && spec.beta != fs[0].gen)
        throw InputError("symplectic expression names two distinct Z-part cocycles");
      spec.beta = fs[0].gen;
      spec.q_beta = c;
      continue;
    }
    if (fs.size() == 2 && fs[0].exp == 1 && fs[1].exp == 1) {
      const int a = std::min(fs[0].gen, fs[1].gen), b = std::max(fs[0].gen, fs[1].gen);
      if (a < 2 * k && b < 2 * k && b == a + 1 && a % 2 == 0) {
        // t_{i1} t_{i2} with i = a/2; the canonical factor order may have
        // flipped the pair, so read the sign back off the monomial.
        Rational coeff = c;
        if (mono.factors()[0].gen != a) coeff = -coeff;
        spec.q_torus[a / 2] = coeff;
        continue;
      }
    }
    throw InputError("symplectic expression has an unsupported term: " + mono.str(t));
  }
  for (int i = 0; i < k; ++i)
    if (spec.q_torus[i].is_zero())
      throw InputError("symplectic expression must pair every torus factor (missing pair " +
                       std::to_string(i + 1) + ")");
  const bool zpart_trivial = t.size() == 2 * k;
  if (!zpart_trivial && spec.beta == -1)
    throw InputError("symplectic expression must involve a Z-part cocycle");
  if (!zpart_trivial && spec.q_beta.is_zero())
    throw InputError("the Z-part coefficient of the symplectic class must be nonzero");
  if (spec.beta != -1 && t[spec.beta].degree != 2)
    throw InputError("the distinguished Z-part class must have degree 2");
  if (spec.beta != -1 && !model.d_of(spec.beta).is_zero())
    throw InputError("the distinguished Z-part class must be a cocycle");
  return spec;
}

SepModel build_separable_model(const SeparableSpec& spec, const Rational& eta_scale) {
  if (eta_scale.is_zero()) throw InputError("eta rescaling must be nonzero");
  const GeneratorTable& t = spec.model.table();
  const int n = t.size();
  const int twok = 2 * spec.k;

  // Z-part as its own presentation (generators keep their names).
  std::vector<Generator> zgens;
  for (int i = twok; i < n; ++i) zgens.push_back(t[i]);
  TablePtr ztable = make_table(zgens);
  std::vector<Poly> zdiff;
  for (int i = twok; i < n; ++i) {
    Poly dz(ztable);
    for (const auto& [mono, c] : spec.model.d_of(i).terms()) {
      std::vector<Factor> fs;
      for (const auto& f : mono.factors()) fs.push_back({f.gen - twok, f.exp});
      dz.add_term(Monomial::normalize(*ztable, std::move(fs))->first, c);
    }
    zdiff.push_back(std::move(dz));
  }
  GcaPresentation zpart(ztable, std::move(zdiff));
  const PdTarget pd = pd_quasi_target(zpart, spec.beta == -1 ? -1 : spec.beta - twok);

  // Finite replacement of the whole model: exterior torus part tensor the
  // truncated polynomial part, as a monomial quotient of the model algebra.
  std::vector<Monomial> basis;
  {
    std::vector<int> subset;
    std::function<void(int)> rec = [&](int next) {
      for (int e = 0; e <= (spec.beta == -1 ? 0 : pd.m); ++e) {
        std::vector<Factor> fs;
        for (int g : subset) fs.push_back({g, 1});
        if (e > 0) fs.push_back({spec.beta, e});
        basis.push_back(Monomial::normalize(t, std::move(fs))->first);
      }
      for (int g = next; g < twok; ++g) {
        subset.push_back(g);
        rec(g + 1);
        subset.pop_back();
      }
    };
    rec(0);
  }
  std::sort(basis.begin(), basis.end(), [&](const Monomial& a, const Monomial& b) {
    return Monomial::compare(t, a, b) < 0;
  });
  FiniteDga b = FiniteDga::from_monomial_basis(spec.model, basis);

  EtaMap eta;
  eta.on_gen.assign(n, {});
  for (int i = 0; i < twok; ++i) eta.on_gen[i] = {{b.index_of(t[i].name), Rational(1)}};
  for (int i = twok; i < n; ++i) {
    for (const auto& e : pd.eta[i - twok]) {
      const int full = b.index_of(pd.algebra.label(e.idx));
      if (full < 0) throw ModelInconsistency("finite replacement misses " + pd.algebra.label(e.idx));
      Rational c = e.c;
      if (i == spec.beta) c *= eta_scale;
      eta.on_gen[i].push_back({full, c});
    }
  }

  BsModel bs(spec.model, std::move(b), std::move(eta));
  std::vector<int> torus_classes;
  for (int i = 0; i < twok; ++i)
    torus_classes.push_back(bs.mixed_index(i, bs.coefficients().unit()));
  return SepModel{spec, pd.m, std::move(bs), std::move(torus_classes)};
}

KappaMap kappa(const SepModel& model) {
  KappaMap out;
  out.w2 = model.bs.h1_names();
  const std::size_t w2dim = model.bs.h1_basis().size();
  out.mat.assign(w2dim, Vec(2 * model.spec.k, Rational(0)));
  for (int i = 0; i < model.spec.k; ++i)
    for (int lam = 1; lam <= 2; ++lam)
      out.source.push_back("s" + std::to_string(i + 1) + std::to_string(lam));
  for (std::size_t j = 0; j < model.torus_class_mixed.size(); ++j) {
    const Vec cls = model.bs.class_of_degree1(model.torus_class_mixed[j]);
    auto coords = model.bs.h1_coordinates(cls);
    if (!coords)
      throw ModelInconsistency("torus class " + model.bs.mixed_name(model.torus_class_mixed[j]) +
                               " is not a cocycle of the reduced model");
    for (std::size_t i = 0; i < w2dim; ++i) out.mat[i][j] = (*coords)[i];
  }
  if (rank(out.mat) != static_cast<std::size_t>(2 * model.spec.k))
    throw ModelInconsistency("kappa does not have full rank 2k");
  return out;
}

Verdict is_extendable(const SepModel& model, const KappaMap& k, const ClassifyingData& f) {
  if (f.w2 != k.w2)
    throw InputError("classifying data is not given on the model's W^2 basis");
  for (const auto& row : f.mat)
    if (row.size() != k.w2.size()) throw InputError("classifying matrix has wrong shape");
  (void)model;
  const Matrix composite = mat_mul(f.mat, k.mat);
  for (std::size_t j = 0; j < k.source.size(); ++j) {
    Vec col(composite.size(), Rational(0));
    bool nonzero = false;
    for (std::size_t i = 0; i < composite.size(); ++i) {
      col[i] = composite[i][j];
      nonzero = nonzero || !col[i].is_zero();
    }
    if (nonzero) return Verdict{false, Witness{k.source[j], std::move(col)}};
  }
  return Verdict{true, std::nullopt};
}

ClassifyingData sum_classifying(const ClassifyingData& f, const ClassifyingData& g) {
  if (f.w2 != g.w2 || f.h2b != g.h2b)
    throw InputError("classifying data sum needs matching source and target bases");
  ClassifyingData out = f;
  for (std::size_t i = 0; i < out.mat.size(); ++i)
    for (std::size_t j = 0; j < out.mat[i].size(); ++j) out.mat[i][j] += g.mat[i][j];
  return out;
}

ModuliDim moduli_dim_s2(const SepModel& model) {
  const Int w2 = static_cast<long>(model.bs.h1_basis().size());
  return ModuliDim{w2, w2 - Int(2 * model.spec.k)};
}

Int corollary_dim_closed_form(int k, int m) {
  if (k < 1 || m < 1) throw InputError("closed form needs k >= 1 and m >= 1");
  Int sum = 0;
  for (int s = 1; s <= std::min(m, k); ++s) sum += binomial(2 * k, 2 * s);
  return sum;
}

bool torus_over_s2_check(long a, long b) {
  TablePtr t = make_table({{"t1", 1}, {"t2", 1}});
  GcaPresentation pres(t, {Poly::zero(t), Poly::zero(t)});
  Poly omega = multiply(Poly::generator(t, 0), Poly::generator(t, 1));
  SepModel model = build_separable_model(make_separable_spec(pres, 1, omega));
  KappaMap km = kappa(model);
  ClassifyingData f{km.w2, {"s2"}, Matrix(1, Vec(km.w2.size(), Rational(0)))};
  for (std::size_t j = 0; j < km.w2.size(); ++j) {
    if (km.w2[j] == "t1@1") f.mat[0][j] = Rational(a);
    if (km.w2[j] == "t2@1") f.mat[0][j] = Rational(b);
  }
  return is_extendable(model, km, f).extendable;
}

}  // namespace rht

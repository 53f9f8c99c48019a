#include "rht/commands.hpp"

#include <random>
#include <sstream>

#include "rht/errors.hpp"
#include "rht/nilmanifold.hpp"
#include "rht/separable.hpp"

namespace rht {

namespace {

using nlohmann::ordered_json;

bool nil_shaped(const dsl::ModelDocument& doc) {
  const GeneratorTable& t = doc.presentation.table();
  if (t.size() == 0) return false;
  for (int i = 0; i < t.size(); ++i)
    if (t[i].degree != 1) return false;
  return true;
}

SeparableSpec spec_from_doc(const dsl::ModelDocument& doc) {
  if (!doc.torus_k) throw InputError("this command requires a torus declaration");
  if (!doc.symplectic) throw InputError("this command requires a symplectic declaration");
  return make_separable_spec(doc.presentation, *doc.torus_k, *doc.symplectic);
}

ordered_json sparse_pairs(const Vec& v, const std::vector<std::string>& names) {
  ordered_json out = ordered_json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.push_back({names[i], v[i].str()});
  return out;
}

ClassifyingData classifying_from_doc(const std::vector<std::string>& w2,
                                     const dsl::ModelDocument& doc) {
  if (doc.base_kind == dsl::BaseKind::None)
    throw InputError("this command requires a base declaration");
  ClassifyingData f{w2, doc.base_names, Matrix(doc.base_names.size(), Vec(w2.size(), Rational(0)))};
  for (const auto& [key, value] : doc.classify) {
    std::size_t col = w2.size();
    for (std::size_t j = 0; j < w2.size(); ++j)
      if (w2[j] == key) { col = j; break; }
    if (col == w2.size()) {
      std::string names;
      for (const auto& n : w2) names += (names.empty() ? "" : ", ") + n;
      throw InputError("classify key '" + key + "' is not a degree-2 class of this model (have: " +
                       names + ")");
    }
    for (std::size_t i = 0; i < doc.base_names.size(); ++i) f.mat[i][col] = value[i];
  }
  return f;
}

ordered_json envelope(const std::string& command, const dsl::ModelDocument& doc) {
  ordered_json j;
  j["schema"] = 1;
  j["command"] = command;
  j["dga"] = doc.name;
  return j;
}

int capped_degree(int n, const RunOptions& opts) {
  if (n < 0) throw InputError("degree must be nonnegative");
  if (n > opts.max_degree)
    throw InputError("degree " + std::to_string(n) + " exceeds the enumeration cap " +
                     std::to_string(opts.max_degree) + " (set RHT_MAX_DEGREE to raise it)");
  return n;
}

Report cmd_check(const dsl::ModelDocument& doc, const RunOptions& opts) {
  ordered_json checks = ordered_json::array();
  bool ok = true;
  const auto& pres = doc.presentation;

  {
    ordered_json c;
    c["name"] = "d_squared";
    ordered_json viols = ordered_json::array();
    for (int g : pres.check_d_squared()) viols.push_back(pres.table()[g].name);
    c["status"] = viols.empty() ? "ok" : "violations";
    c["violations"] = viols;
    ok = ok && viols.empty();
    checks.push_back(std::move(c));
  }

  if (nil_shaped(doc) && !doc.torus_k) {
    ordered_json c;
    c["name"] = "nil_lower_triangular";
    ordered_json viols = ordered_json::array();
    for (const auto& v : validate_nil(pres)) viols.push_back(v);
    c["status"] = viols.empty() ? "ok" : "violations";
    c["violations"] = viols;
    ok = ok && viols.empty();
    checks.push_back(std::move(c));
  }

  {
    ordered_json c;
    c["name"] = "coalgebra_laws";
    try {
      std::optional<BsModel> bs;
      if (doc.torus_k && doc.symplectic) {
        SepModel m = build_separable_model(spec_from_doc(doc));
        bs.emplace(std::move(m.bs));
      } else if (nil_shaped(doc)) {
        NilModel m = build_nil_model(pres);
        bs.emplace(std::move(m.bs));
      }
      if (bs) {
        ordered_json viols = ordered_json::array();
        for (const auto& v : bs->dual().check_coassoc()) viols.push_back(v);
        for (const auto& v : bs->dual().check_counit_and_differential()) viols.push_back(v);
        c["status"] = viols.empty() ? "ok" : "violations";
        c["violations"] = viols;
        ok = ok && viols.empty();
      } else {
        c["status"] = "skipped";
        c["reason"] = "no finite coefficient algebra derivable (needs torus+symplectic or a nilmanifold shape)";
      }
    } catch (const Error& e) {
      c["status"] = "skipped";
      c["reason"] = e.what();
    }
    checks.push_back(std::move(c));
  }

  {
    // Seeded spot-checks of the algebra laws on this presentation.
    ordered_json c;
    c["name"] = "random_koszul_leibniz";
    std::mt19937_64 rng(opts.seed);
    const int n = pres.table().size();
    ordered_json viols = ordered_json::array();
    if (n == 0) {
      c["status"] = "skipped";
      c["reason"] = "no generators";
    } else {
      const bool d2_ok = pres.check_d_squared().empty();
      auto random_term = [&]() {
        std::vector<Factor> fs;
        const int len = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < len; ++i) fs.push_back({static_cast<int>(rng() % n), 1});
        auto nf = Monomial::normalize(pres.table(), std::move(fs));
        Poly p(pres.table_ptr());
        const long coeff = static_cast<long>(rng() % 7) - 3;
        if (nf && coeff != 0) p.add_term(nf->first, Rational(coeff) * Rational(nf->second));
        return p;
      };
      for (int it = 0; it < 200; ++it) {
        const Poly a = random_term(), b = random_term();
        const auto da = a.homogeneous_degree(), db = b.homogeneous_degree();
        const Poly ab = multiply(a, b);
        if (da && db) {
          Poly ba = multiply(b, a);
          ba *= Rational(parity_sign(*da * *db));
          if (!(ab == ba)) viols.push_back("koszul symmetry failed at iteration " + std::to_string(it));
        }
        Poly leib = pres.apply_d(ab) - multiply(pres.apply_d(a), b);
        if (da) leib -= multiply(a, pres.apply_d(b)) * Rational(parity_sign(*da));
        if (da && !leib.is_zero())
          viols.push_back("leibniz rule failed at iteration " + std::to_string(it));
        if (d2_ok && !pres.apply_d(pres.apply_d(a + b)).is_zero())
          viols.push_back("d^2 propagation failed at iteration " + std::to_string(it));
      }
      c["status"] = viols.empty() ? "ok" : "violations";
      c["violations"] = viols;
      c["cases"] = 200;
      c["seed"] = opts.seed;
      ok = ok && viols.empty();
    }
    checks.push_back(std::move(c));
  }

  Report r;
  r.json = envelope("check", doc);
  r.json["result"] = {{"ok", ok}, {"checks", checks}};
  r.json["provenance"] = {{"route", nil_shaped(doc) && !doc.torus_k ? "nilmanifold" : "core"},
                          {"criterion", "algebra axioms and differential laws"}};
  return r;
}

Report cmd_cohomology(const dsl::ModelDocument& doc, const RunOptions& opts) {
  int lo, hi;
  if (opts.deg) {
    lo = hi = capped_degree(*opts.deg, opts);
  } else if (opts.from && opts.to) {
    lo = capped_degree(*opts.from, opts);
    hi = capped_degree(*opts.to, opts);
    if (lo > hi) throw InputError("empty degree range");
  } else {
    throw InputError("cohomology requires --deg or --from/--to");
  }
  ordered_json degrees = ordered_json::array();
  for (int n = lo; n <= hi; ++n) {
    const auto h = doc.presentation.cohomology(n);
    ordered_json d;
    d["degree"] = n;
    d["dim"] = std::to_string(h.dim);
    ordered_json reps = ordered_json::array();
    for (const auto& p : h.representatives) reps.push_back(p.str());
    d["representatives"] = reps;
    degrees.push_back(std::move(d));
  }
  Report r;
  r.json = envelope("cohomology", doc);
  r.json["result"] = {{"degrees", degrees}};
  r.json["provenance"] = {{"route", "core"},
                          {"criterion", "kernel modulo image of the derivation differential"}};
  return r;
}

Report cmd_fsmodel(const dsl::ModelDocument& doc, const RunOptions&) {
  Report r;
  r.json = envelope("fsmodel", doc);
  std::string route;
  std::optional<BsModel> bs;
  if (doc.torus_k) {
    SepModel m = build_separable_model(spec_from_doc(doc));
    bs.emplace(std::move(m.bs));
    route = "separable";
  } else if (nil_shaped(doc)) {
    NilModel m = build_nil_model(doc.presentation);
    bs.emplace(std::move(m.bs));
    route = "nilmanifold";
  } else {
    throw InputError("fsmodel needs a torus declaration or a nilmanifold-shaped model");
  }
  ordered_json basis = ordered_json::array();
  for (const auto& n : bs->survivor_names()) basis.push_back(n);
  ordered_json killed = ordered_json::array();
  for (int idx : bs->eliminated()) killed.push_back(bs->mixed_name(idx));
  const auto m2names = bs->degree2_basis_names();
  ordered_json delta;
  for (std::size_t si = 0; si < bs->survivors().size(); ++si) {
    ordered_json entries = ordered_json::array();
    const Matrix& d1 = bs->delta1_matrix();
    for (std::size_t i = 0; i < m2names.size(); ++i)
      if (!d1[i][si].is_zero()) entries.push_back({m2names[i], d1[i][si].str()});
    delta[bs->survivor_names()[si]] = entries;
  }
  ordered_json h1 = ordered_json::array();
  for (const auto& n : bs->h1_names()) h1.push_back(n);
  r.json["result"] = {{"basis", basis},
                      {"eliminated", killed},
                      {"delta", delta},
                      {"h1", h1},
                      {"degree2_dim", std::to_string(m2names.size())}};
  r.json["provenance"] = {{"route", route},
                          {"criterion", "reduced mapping-space model in degrees <= 2"}};
  return r;
}

Report cmd_kappa(const dsl::ModelDocument& doc, const RunOptions&) {
  SepModel m = build_separable_model(spec_from_doc(doc));
  KappaMap km = kappa(m);
  Report r;
  r.json = envelope("kappa", doc);
  ordered_json w2 = ordered_json::array();
  for (const auto& n : km.w2) w2.push_back(n);
  ordered_json matrix;
  for (std::size_t j = 0; j < km.source.size(); ++j) {
    Vec col(km.w2.size(), Rational(0));
    for (std::size_t i = 0; i < km.w2.size(); ++i) col[i] = km.mat[i][j];
    matrix[km.source[j]] = sparse_pairs(col, km.w2);
  }
  r.json["result"] = {{"rank", std::to_string(2 * m.spec.k)},
                      {"w2", w2},
                      {"dim_w2", std::to_string(km.w2.size())},
                      {"matrix", matrix}};
  r.json["provenance"] = {
      {"route", "separable"},
      {"criterion", "torus classes transgressed to degree-2 classes of the classifying space"}};
  return r;
}

Report cmd_extendable(const dsl::ModelDocument& doc, const RunOptions&) {
  Report r;
  r.json = envelope("extendable", doc);
  if (!doc.torus_k) throw InputError("extendable requires a torus declaration");
  if (doc.base_kind == dsl::BaseKind::None)
    throw InputError("extendable requires a base declaration");
  if (*doc.torus_k == 0) {
    // Simply-connected fibre: the class always extends.
    r.json["result"] = {{"extendable", true}, {"witness", nullptr}, {"k", "0"}};
    r.json["provenance"] = {{"route", "separable"},
                            {"criterion", "fibre with vanishing H^1: the class always extends"}};
    return r;
  }
  SepModel m = build_separable_model(spec_from_doc(doc));
  KappaMap km = kappa(m);
  ClassifyingData f = classifying_from_doc(km.w2, doc);
  Verdict v = is_extendable(m, km, f);
  r.json["result"]["extendable"] = v.extendable;
  if (v.witness) {
    r.json["result"]["witness"] = {{"class", v.witness->cls},
                                   {"image", sparse_pairs(v.witness->image, doc.base_names)}};
  } else {
    r.json["result"]["witness"] = nullptr;
  }
  r.json["result"]["k"] = std::to_string(m.spec.k);
  r.json["provenance"] = {
      {"route", "separable"},
      {"criterion", "extendable iff H(f) composed with kappa vanishes on torus H^1"}};
  return r;
}

Report cmd_moduli(const dsl::ModelDocument& doc, const RunOptions&) {
  SepModel m = build_separable_model(spec_from_doc(doc));
  const ModuliDim md = moduli_dim_s2(m);
  Report r;
  r.json = envelope("moduli-dim", doc);
  r.json["result"] = {{"dim_w2", md.dim_w2.get_str()},
                      {"torus_rank_2k", std::to_string(2 * m.spec.k)},
                      {"moduli_dim", md.dim.get_str()}};
  r.json["provenance"] = {{"route", "separable"},
                          {"criterion", "dim W^2 - 2k over the 2-sphere"}};
  return r;
}

Report cmd_nil_extendable(const dsl::ModelDocument& doc, const RunOptions&) {
  if (!nil_shaped(doc))
    throw InputError("nil-extendable needs a model with all generators in degree 1");
  if (doc.base_kind == dsl::BaseKind::None)
    throw InputError("nil-extendable requires a base declaration");
  NilModel m = build_nil_model(doc.presentation);
  if (doc.symplectic) validate_nil_symplectic(doc.presentation, *doc.symplectic);
  std::map<std::string, Vec> f;
  for (const auto& [key, value] : doc.classify) f[key] = value;
  NilVerdict v = is_extendable_nil(m, f, doc.base_names.size());
  Report r;
  r.json = envelope("nil-extendable", doc);
  r.json["result"]["extendable"] = v.extendable;
  if (v.witness) {
    r.json["result"]["witness"] = {{"generator", *v.witness},
                                   {"image", sparse_pairs(v.witness_image, doc.base_names)}};
  } else {
    r.json["result"]["witness"] = nullptr;
  }
  ordered_json gens = ordered_json::array();
  for (const auto& n : baut1_poly_generators(m).names) gens.push_back(n);
  r.json["result"]["generators"] = gens;
  r.json["provenance"] = {{"route", "nilmanifold"},
                          {"criterion",
                           "extendable iff the induced map vanishes on the degree-2 polynomial "
                           "generators of the classifying-space cohomology"}};
  return r;
}

void render_value(std::ostringstream& os, const ordered_json& v, int indent);

void render_object(std::ostringstream& os, const ordered_json& v, int indent) {
  for (const auto& [key, val] : v.items()) {
    os << std::string(indent, ' ') << key << ":";
    if (val.is_object() || (val.is_array() && !val.empty() && !val[0].is_string())) {
      os << "\n";
      render_value(os, val, indent + 2);
    } else {
      os << " ";
      render_value(os, val, 0);
    }
  }
}

void render_value(std::ostringstream& os, const ordered_json& v, int indent) {
  if (v.is_object()) {
    render_object(os, v, indent);
  } else if (v.is_array()) {
    if (indent == 0) {
      os << v.dump() << "\n";
    } else {
      for (const auto& item : v) {
        os << std::string(indent, ' ') << "- ";
        if (item.is_object() || item.is_array()) {
          os << item.dump() << "\n";
        } else if (item.is_string()) {
          os << item.get<std::string>() << "\n";
        } else {
          os << item.dump() << "\n";
        }
      }
    }
  } else if (v.is_string()) {
    os << v.get<std::string>() << "\n";
  } else {
    os << v.dump() << "\n";
  }
}

}  // namespace

std::string Report::render_text() const {
  std::ostringstream os;
  render_object(os, json, 0);
  return os.str();
}

Report run(const std::string& command, const dsl::ModelDocument& doc, const RunOptions& opts) {
  if (command == "check") return cmd_check(doc, opts);
  if (command == "cohomology") return cmd_cohomology(doc, opts);
  if (command == "fsmodel") return cmd_fsmodel(doc, opts);
  if (command == "kappa") return cmd_kappa(doc, opts);
  if (command == "extendable") return cmd_extendable(doc, opts);
  if (command == "moduli-dim") return cmd_moduli(doc, opts);
  if (command == "nil-extendable") return cmd_nil_extendable(doc, opts);
  throw InputError("unknown command: " + command);
}

}  // namespace rht

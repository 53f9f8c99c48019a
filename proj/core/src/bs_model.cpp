#include "rht/bs_model.hpp"

#include <algorithm>

#include "rht/errors.hpp"

namespace rht {

namespace {

Rational rational_pow(const Rational& x, int e) {
  Rational out(1);
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

}  // namespace

BsModel::BsModel(const GcaPresentation& v, FiniteDga b, EtaMap eta, BsBuildOptions opts)
    : v_(v), b_(std::move(b)), dual_(b_), eta_(std::move(eta)) {
  const int nv = v_.table().size();
  if (static_cast<int>(eta_.on_gen.size()) != nv)
    throw InputError("eta must be given on every generator");

  // eta must be degree-preserving and a chain map into (B, d_B).
  auto eta_apply = [&](const Poly& p) {
    FiniteDga::Sparse out;
    for (const auto& [mono, c] : p.terms()) {
      FiniteDga::Sparse acc{{b_.unit(), c}};
      for (const auto& f : mono.factors())
        for (int i = 0; i < f.exp && !acc.empty(); ++i)
          acc = b_.mul_sparse(acc, eta_.on_gen[f.gen]);
      out = sparse_add(out, acc);
    }
    return out;
  };
  for (int g = 0; g < nv; ++g) {
    for (const auto& e : eta_.on_gen[g])
      if (b_.degree(e.idx) != v_.table()[g].degree)
        throw InputError("eta does not preserve degree on " + v_.table()[g].name);
    FiniteDga::Sparse lhs = eta_apply(v_.d_of(g));
    FiniteDga::Sparse rhs = b_.d_sparse(eta_.on_gen[g]);
    if (sparse_add(lhs, sparse_scale(rhs, Rational(-1))).empty() == false)
      throw InputError("eta is not a chain map on generator " + v_.table()[g].name);
  }

  // Mixed generators v(x)b_*, all pairs; only degrees -1..3 are worked on.
  by_degree_.assign(5, {});
  std::vector<Generator> mgens;
  for (int g = 0; g < nv; ++g) {
    for (int bi = 0; bi < static_cast<int>(b_.dim()); ++bi) {
      const int deg = v_.table()[g].degree - b_.degree(bi);
      const int idx = static_cast<int>(mixed_.size());
      mixed_.push_back({g, bi, deg});
      pair_index_[{g, bi}] = idx;
      mgens.push_back({v_.table()[g].name + "@" + b_.label(bi), deg});
      if (deg >= -1 && deg <= 3) by_degree_[deg + 1].push_back(idx);
    }
  }
  mtable_ = make_table(std::move(mgens));

  u_.assign(mixed_.size(), Rational(0));
  for (int idx : by_degree_[1]) {  // degree 0
    const auto& mg = mixed_[idx];
    u_[idx] = Rational(parity_sign(tau(v_.table()[mg.v].degree))) *
              sparse_coeff(eta_.on_gen[mg.v], mg.b);
  }

  delta_.assign(mixed_.size(), Poly(mtable_));
  has_delta_.assign(mixed_.size(), 0);
  for (int d = -1; d <= 2; ++d)
    for (int idx : by_degree_[d + 1]) {
      delta_[idx] = delta_of(mixed_[idx].v, mixed_[idx].b);
      has_delta_[idx] = 1;
    }

  build_reduction();

  if (opts.consistency_check) {
    for (int idx : by_degree_[0]) {
      const Poly r = kill_and_evaluate(delta_[idx]);
      if (!r.is_zero())
        throw ModelInconsistency("evaluation of the differential of degree -1 generator " +
                                 mixed_name(idx) + " is nonzero: " + r.str());
    }
  }

  if (opts.d_squared_check) {
    std::map<int, Poly> cache;
    std::function<const Poly*(int)> value = [&](int g) -> const Poly* {
      auto it = cache.find(g);
      if (it == cache.end()) {
        if (!has_delta_[g]) throw Error("differential requested outside the truncation window");
        it = cache.emplace(g, reduce(delta_[g])).first;
      }
      return &it->second;
    };
    for (std::size_t si = 0; si < survivors_.size(); ++si) {
      const Poly once = reduced_delta_of_survivor(si);
      const Poly twice = apply_odd_derivation(once, value);
      if (!twice.is_zero())
        throw ModelInconsistency("reduced differential does not square to zero on " +
                                 survivor_names_[si]);
    }
  }
}

int BsModel::mixed_index(int v, int b) const {
  auto it = pair_index_.find({v, b});
  return it == pair_index_.end() ? -1 : it->second;
}

const std::vector<int>& BsModel::mixed_in_degree(int d) const {
  if (d < -1 || d > 3) throw InputError("mixed generators tracked only in degrees -1..3");
  return by_degree_[d + 1];
}

const std::string& BsModel::mixed_name(int mixed_idx) const {
  return (*mtable_)[mixed_idx].name;
}

const Poly& BsModel::delta(int mixed_idx) const {
  if (!has_delta_[mixed_idx])
    throw InputError("differential not computed for " + mixed_name(mixed_idx));
  return delta_[mixed_idx];
}

const Rational& BsModel::u_value(int mixed_idx) const {
  if (mixed_[mixed_idx].degree != 0)
    throw InputError("evaluation scalar defined only in degree 0");
  return u_[mixed_idx];
}

Poly BsModel::expand_tensor(const std::vector<int>& vgens, int b) const {
  const int m = static_cast<int>(vgens.size());
  if (m == 0)
    return b == dual_.counit_index() ? Poly::one(mtable_) : Poly::zero(mtable_);

  std::vector<long> suffix(m + 1, 0);
  for (int l = m - 1; l >= 0; --l)
    suffix[l] = suffix[l + 1] + v_.table()[vgens[l]].degree;

  Poly out(mtable_);
  for (const auto& term : dual_.iterated_coproduct(b, m - 1)) {
    // Koszul sign of interleaving: slot l crosses the generators to its right.
    long sign_exp = 0;
    for (int l = 0; l < m; ++l)
      sign_exp += static_cast<long>(dual_.algebra_degree(term.slots[l])) * suffix[l + 1];
    Poly prod = Poly::term(mtable_, Monomial(), term.c * Rational(parity_sign(sign_exp)));
    for (int l = 0; l < m && !prod.is_zero(); ++l)
      prod = multiply(prod, Poly::generator(mtable_, pair_index_.at({vgens[l], term.slots[l]})));
    out += prod;
  }
  return out;
}

Poly BsModel::delta_of(int v, int b) const {
  Poly out(mtable_);
  for (const auto& [mono, c] : v_.d_of(v).terms()) {
    Poly piece = expand_tensor(mono.flatten(), b);
    piece *= c;
    out += piece;
  }
  const int vsign = parity_sign(v_.table()[v].degree);
  for (const auto& e : dual_.d_dual(b))
    out += Poly::generator(mtable_, pair_index_.at({v, e.idx})) * (e.c * Rational(vsign));
  return out;
}

Poly BsModel::kill_and_evaluate(const Poly& p) const {
  Poly out(mtable_);
  for (const auto& [mono, c] : p.terms()) {
    Rational coeff = c;
    std::vector<Factor> kept;
    bool dead = false;
    for (const auto& f : mono.factors()) {
      const int deg = mixed_[f.gen].degree;
      if (deg < 0) {
        dead = true;
        break;
      }
      if (deg == 0) {
        coeff *= rational_pow(u_[f.gen], f.exp);
        if (coeff.is_zero()) {
          dead = true;
          break;
        }
      } else {
        kept.push_back(f);
      }
    }
    if (dead) continue;
    out.add_term(Monomial::normalize(*mtable_, std::move(kept))->first, coeff);
  }
  return out;
}

void BsModel::build_reduction() {
  const std::vector<int>& deg1 = by_degree_[2];
  std::map<int, std::size_t> deg1_pos;
  for (std::size_t i = 0; i < deg1.size(); ++i) deg1_pos[deg1[i]] = i;

  Matrix relations;
  for (int idx : by_degree_[1]) {
    const Poly r = kill_and_evaluate(delta_[idx]);
    if (r.is_zero()) continue;
    Vec row(deg1.size(), Rational(0));
    for (const auto& [mono, c] : r.terms()) {
      const auto& fs = mono.factors();
      if (fs.size() != 1 || fs[0].exp != 1 || mixed_[fs[0].gen].degree != 1)
        throw ModelInconsistency("relation from " + mixed_name(idx) +
                                 " is not linear in degree-1 generators");
      row[deg1_pos.at(fs[0].gen)] = c;
    }
    relations.push_back(std::move(row));
  }

  std::vector<std::size_t> pivots;
  rref(relations, &pivots);
  std::vector<bool> is_pivot(deg1.size(), false);
  for (auto p : pivots) is_pivot[p] = true;

  for (std::size_t i = 0; i < deg1.size(); ++i) {
    if (is_pivot[i]) {
      eliminated_.push_back(deg1[i]);
    } else {
      survivor_pos_[deg1[i]] = survivors_.size();
      survivors_.push_back(deg1[i]);
      survivor_names_.push_back(mixed_name(deg1[i]));
    }
  }
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Poly rw(mtable_);
    for (std::size_t j = 0; j < deg1.size(); ++j) {
      if (j == pivots[r] || relations[r][j].is_zero()) continue;
      rw += Poly::generator(mtable_, deg1[j]) * (-relations[r][j]);
    }
    rewrite_.emplace(deg1[pivots[r]], std::move(rw));
  }

  // Degree-2 monomial basis of the quotient: degree-2 generators plus
  // products of two distinct survivors (degree-1 generators are odd).
  for (int idx : by_degree_[3])
    m2_basis_.push_back(Monomial::normalize(*mtable_, {{idx, 1}})->first);
  for (std::size_t i = 0; i < survivors_.size(); ++i)
    for (std::size_t j = i + 1; j < survivors_.size(); ++j)
      m2_basis_.push_back(
          Monomial::normalize(*mtable_, {{survivors_[i], 1}, {survivors_[j], 1}})->first);
  std::sort(m2_basis_.begin(), m2_basis_.end(), [&](const Monomial& a, const Monomial& b2) {
    return Monomial::compare(*mtable_, a, b2) < 0;
  });
  std::map<Monomial, std::size_t, MonomialLess> m2_index{MonomialLess{mtable_.get()}};
  for (std::size_t i = 0; i < m2_basis_.size(); ++i) m2_index.emplace(m2_basis_[i], i);

  delta1_.assign(m2_basis_.size(), Vec(survivors_.size(), Rational(0)));
  for (std::size_t si = 0; si < survivors_.size(); ++si) {
    const Poly dr = reduce(delta_[survivors_[si]]);
    for (const auto& [mono, c] : dr.terms()) {
      auto it = m2_index.find(mono);
      if (it == m2_index.end())
        throw ModelInconsistency("reduced differential of " + survivor_names_[si] +
                                 " leaves the degree-2 basis");
      delta1_[it->second][si] = c;
    }
  }

  h1_basis_ = kernel_basis(delta1_, survivors_.size());
  for (std::size_t i = 0; i < h1_basis_.size(); ++i) {
    std::size_t support = 0, where = 0;
    for (std::size_t j = 0; j < survivors_.size(); ++j)
      if (!h1_basis_[i][j].is_zero()) {
        ++support;
        where = j;
      }
    if (support == 1 && h1_basis_[i][where].is_one())
      h1_names_.push_back(survivor_names_[where]);
    else
      h1_names_.push_back("w" + std::to_string(i));
  }
}

Vec BsModel::class_of_degree1(int mixed_idx) const {
  if (mixed_[mixed_idx].degree != 1) throw InputError("not a degree-1 generator");
  Vec out(survivors_.size(), Rational(0));
  auto sp = survivor_pos_.find(mixed_idx);
  if (sp != survivor_pos_.end()) {
    out[sp->second] = 1;
    return out;
  }
  const Poly& rw = rewrite_.at(mixed_idx);
  for (const auto& [mono, c] : rw.terms())
    out[survivor_pos_.at(mono.factors()[0].gen)] = c;
  return out;
}

Poly BsModel::reduce(const Poly& p) const {
  return substitute(kill_and_evaluate(p), rewrite_);
}

Poly BsModel::reduced_delta_of_survivor(std::size_t si) const {
  return reduce(delta_[survivors_[si]]);
}

std::vector<std::string> BsModel::degree2_basis_names() const {
  std::vector<std::string> out;
  out.reserve(m2_basis_.size());
  for (const auto& m : m2_basis_) out.push_back(m.str(*mtable_));
  return out;
}

std::optional<Vec> BsModel::h1_coordinates(const Vec& survivor_coords) const {
  Matrix m(survivors_.size(), Vec(h1_basis_.size(), Rational(0)));
  for (std::size_t j = 0; j < h1_basis_.size(); ++j)
    for (std::size_t i = 0; i < survivors_.size(); ++i) m[i][j] = h1_basis_[j][i];
  return solve(m, survivor_coords);
}

std::vector<BsModel::EvTerm> BsModel::ev_model(int vgen) const {
  if (v_.table()[vgen].degree > 2)
    throw InputError("evaluation model computed only for generators of degree <= 2");
  std::vector<EvTerm> out;
  for (int bi = 0; bi < static_cast<int>(b_.dim()); ++bi) {
    const int idx = pair_index_.at({vgen, bi});
    Poly component = reduce(Poly::generator(mtable_, idx));
    component *= Rational(parity_sign(tau(b_.degree(bi))));
    if (!component.is_zero()) out.push_back({std::move(component), bi});
  }
  return out;
}

}  // namespace rht

#include "rht/dual_coalgebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "rht/errors.hpp"

namespace rht {

DualCoalgebra::DualCoalgebra(const FiniteDga& b) {
  const int n = static_cast<int>(b.dim());
  adeg_.resize(n);
  for (int i = 0; i < n; ++i) adeg_[i] = b.degree(i);
  counit_ = b.unit();
  cop_.resize(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (const auto& e : b.mul(p, q)) cop_[e.idx].push_back({p, q, e.c});
  ddual_.resize(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& e : b.d(i)) {
      // coefficient of b_{i*} in d_{B*}(b_{j*}), j = e.idx
      ddual_[e.idx].push_back({i, e.c * Rational(parity_sign(adeg_[e.idx]))});
    }
  }
  for (auto& v : ddual_)
    std::sort(v.begin(), v.end(),
              [](const FiniteDga::Entry& a, const FiniteDga::Entry& b2) { return a.idx < b2.idx; });
}

DualCoalgebra::DualCoalgebra(std::vector<int> algebra_degrees, int counit,
                             std::vector<std::vector<CoTerm>> coproduct,
                             std::vector<FiniteDga::Sparse> d_dual)
    : adeg_(std::move(algebra_degrees)),
      counit_(counit),
      cop_(std::move(coproduct)),
      ddual_(std::move(d_dual)) {}

std::vector<DualCoalgebra::IterTerm> DualCoalgebra::iterated_coproduct(int j, int m) const {
  if (m < 0) throw InputError("iterated coproduct needs m >= 0");
  std::vector<IterTerm> terms{{Rational(1), {j}}};
  // Delta^(m) = (Delta (x) 1^(m-1)) o ... o (Delta (x) 1) o Delta: expand the
  // first slot each round. With the plain pairing no Koszul signs appear here.
  for (int round = 0; round < m; ++round) {
    std::vector<IterTerm> next;
    for (const auto& t : terms) {
      for (const auto& ct : cop_[t.slots[0]]) {
        IterTerm nt;
        nt.c = t.c * ct.c;
        nt.slots.reserve(t.slots.size() + 1);
        nt.slots.push_back(ct.left);
        nt.slots.push_back(ct.right);
        nt.slots.insert(nt.slots.end(), t.slots.begin() + 1, t.slots.end());
        next.push_back(std::move(nt));
      }
    }
    terms = std::move(next);
  }
  return terms;
}

std::vector<std::string> DualCoalgebra::check_coassoc() const {
  std::vector<std::string> report;
  for (std::size_t j = 0; j < cop_.size(); ++j) {
    std::map<std::tuple<int, int, int>, Rational> lhs, rhs;
    for (const auto& ct : cop_[j]) {
      for (const auto& ct2 : cop_[ct.left]) {
        auto& v = lhs[{ct2.left, ct2.right, ct.right}];
        v += ct.c * ct2.c;
      }
      for (const auto& ct2 : cop_[ct.right]) {
        auto& v = rhs[{ct.left, ct2.left, ct2.right}];
        v += ct.c * ct2.c;
      }
    }
    auto clean = [](std::map<std::tuple<int, int, int>, Rational>& m) {
      for (auto it = m.begin(); it != m.end();)
        it = it->second.is_zero() ? m.erase(it) : std::next(it);
    };
    clean(lhs);
    clean(rhs);
    if (lhs != rhs)
      report.push_back("coassociativity fails on dual basis element " + std::to_string(j));
  }
  return report;
}

std::vector<std::string> DualCoalgebra::check_counit_and_differential() const {
  std::vector<std::string> report;
  for (std::size_t j = 0; j < cop_.size(); ++j) {
    std::map<int, Rational> from_left, from_right;  // (eps(x)1)D and (1(x)eps)D
    for (const auto& ct : cop_[j]) {
      if (ct.left == counit_) from_left[ct.right] += ct.c;
      if (ct.right == counit_) from_right[ct.left] += ct.c;
    }
    auto is_ej = [&](const std::map<int, Rational>& m) {
      for (const auto& [i, c] : m) {
        if (i == static_cast<int>(j) && c != Rational(1)) return false;
        if (i != static_cast<int>(j) && !c.is_zero()) return false;
      }
      return m.count(static_cast<int>(j)) == 1;
    };
    if (!is_ej(from_left) || !is_ej(from_right))
      report.push_back("counit law fails on dual basis element " + std::to_string(j));
  }
  for (std::size_t j = 0; j < ddual_.size(); ++j) {
    FiniteDga::Sparse dd;
    for (const auto& e : ddual_[j]) dd = sparse_add(dd, sparse_scale(ddual_[e.idx], e.c));
    if (!dd.empty())
      report.push_back("dual differential does not square to zero on element " + std::to_string(j));
  }
  return report;
}

DualCoalgebra::CocycleBasis DualCoalgebra::cocycle_basis() const {
  const std::size_t n = adeg_.size();
  CocycleBasis out;
  int maxdeg = 0;
  for (auto d : adeg_) maxdeg = std::max(maxdeg, d);
  // Per algebra degree q, split span{b_{j*} : |b_j| = q} into transgressive
  // pairs and cocycles, reducing cocycles modulo the image from degree q+1.
  std::vector<std::vector<Vec>> image_by_deg(maxdeg + 2);
  for (int q = maxdeg; q >= 0; --q) {
    std::vector<int> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (adeg_[j] == q) cols.push_back(static_cast<int>(j));
    if (cols.empty()) continue;
    Matrix m(n, Vec(cols.size(), Rational(0)));
    for (std::size_t cj = 0; cj < cols.size(); ++cj)
      for (const auto& e : ddual_[cols[cj]]) m[e.idx][cj] = e.c;
    Matrix r = m;
    std::vector<std::size_t> pivots;
    rref(r, &pivots);
    for (auto pc : pivots) {
      Vec a(n, Rational(0));
      a[cols[pc]] = 1;
      Vec b(n, Rational(0));
      for (const auto& e : ddual_[cols[pc]]) b[e.idx] = e.c;
      out.a.push_back(std::move(a));
      if (q >= 1) image_by_deg[q - 1].push_back(b);
      out.b.push_back(std::move(b));
    }
    RowSpace img(n);
    for (const auto& v : image_by_deg[q]) img.insert(v);
    for (const auto& k : kernel_basis(m, cols.size())) {
      Vec full(n, Rational(0));
      for (std::size_t cj = 0; cj < cols.size(); ++cj) full[cols[cj]] = k[cj];
      Vec residue = img.reduce(full);
      if (!is_zero_vec(residue)) {
        img.insert(residue);
        out.c.push_back(std::move(residue));
      }
    }
  }
  return out;
}

PdTarget pd_quasi_target(const GcaPresentation& zpart, int beta) {
  const int n = zpart.table().size();
  if (n == 0) {
    if (beta != -1) throw InputError("trivial Z-part cannot carry a distinguished cocycle");
    auto t = make_table({});
    GcaPresentation trivial(t, {});
    return PdTarget{FiniteDga::from_monomial_basis(trivial, {Monomial()}), {}, 0};
  }
  if (beta < 0 || beta >= n) throw UnsupportedInput("non-trivial Z-part needs a degree-2 cocycle");
  const auto& bg = zpart.table()[beta];
  if (bg.degree != 2) throw UnsupportedInput("distinguished cocycle must have degree 2");
  if (!zpart.d_of(beta).is_zero()) throw UnsupportedInput("distinguished degree-2 element is not a cocycle");
  for (int i = 0; i < n; ++i)
    if (i != beta && zpart.table()[i].degree < 3)
      throw UnsupportedInput("unsupported Z-part: generator " + zpart.table()[i].name +
                             " of degree < 3 beside the distinguished cocycle");

  // Locate the unique generator with d(y) = c beta^{m+1}.
  int m = -1;
  for (int i = 0; i < n; ++i) {
    const Poly& d = zpart.d_of(i);
    if (d.is_zero() || d.term_count() != 1) continue;
    const auto& [mono, c] = *d.terms().begin();
    const auto& fs = mono.factors();
    if (fs.size() == 1 && fs[0].gen == beta && fs[0].exp >= 2) {
      const int mm = fs[0].exp - 1;
      if (m == -1)
        m = mm;
      else if (mm != m)
        throw UnsupportedInput("Z-part with conflicting truncation exponents");
    }
  }
  if (m < 0)
    throw UnsupportedInput(
        "unsupported Z-part: no generator with differential a power of the distinguished cocycle");

  // C = Q[beta]/(beta^{m+1}) presented on a fresh one-generator table.
  auto ct = make_table({{bg.name, 2}});
  GcaPresentation cpres(ct, {Poly::zero(ct)});
  std::vector<Monomial> basis;
  for (int e = 0; e <= m; ++e) basis.push_back(Monomial::normalize(*ct, {{0, e}})->first);
  PdTarget out{FiniteDga::from_monomial_basis(cpres, basis), {}, m};
  out.eta.assign(n, {});
  const int beta_in_c = out.algebra.index_of(bg.name);
  out.eta[beta] = {{beta_in_c, Rational(1)}};

  // Chain-map validation: with d_C = 0 this needs eta(d g) = 0 in C for all g.
  for (int i = 0; i < n; ++i) {
    Rational leak(0);
    for (const auto& [mono, c] : zpart.d_of(i).terms()) {
      const auto& fs = mono.factors();
      if (fs.size() == 1 && fs[0].gen == beta && fs[0].exp <= m) leak += c;
    }
    if (!leak.is_zero())
      throw UnsupportedInput("Z-part differential is not compatible with the finite replacement");
  }
  return out;
}

}  // namespace rht

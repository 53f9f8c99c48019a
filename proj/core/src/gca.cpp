#include "rht/gca.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rht/errors.hpp"

namespace rht {

GeneratorTable::GeneratorTable(std::vector<Generator> gens) : gens_(std::move(gens)) {
  for (int i = 0; i < static_cast<int>(gens_.size()); ++i) {
    if (gens_[i].name.empty()) throw InputError("generator with empty name");
    if (!by_name_.emplace(gens_[i].name, i).second)
      throw InputError("duplicate generator name: " + gens_[i].name);
  }
  std::vector<int> order(gens_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (gens_[a].degree != gens_[b].degree) return gens_[a].degree < gens_[b].degree;
    return gens_[a].name < gens_[b].name;
  });
  rank_.resize(gens_.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank_[order[r]] = static_cast<int>(r);
}

int GeneratorTable::index_of(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

TablePtr make_table(std::vector<Generator> gens) {
  return std::make_shared<const GeneratorTable>(std::move(gens));
}

std::optional<std::pair<Monomial, int>> Monomial::normalize(
    const GeneratorTable& t, std::vector<Factor> raw) {
  std::vector<Factor> v;
  v.reserve(raw.size());
  for (const auto& f : raw) {
    if (f.exp < 0) throw InputError("negative exponent in monomial");
    if (f.exp == 0) continue;
    if (t[f.gen].odd() && f.exp > 1) return std::nullopt;
    v.push_back(f);
  }
  // Insertion sort counting Koszul transpositions: crossing two odd factors
  // flips the sign; even factors commute freely.
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    Factor x = v[i];
    std::size_t j = i;
    while (j > 0 && t.rank(v[j - 1].gen) > t.rank(x.gen)) {
      if (t[v[j - 1].gen].odd() && t[x.gen].odd()) sign = -sign;
      v[j] = v[j - 1];
      --j;
    }
    v[j] = x;
  }
  Monomial m;
  for (const auto& f : v) {
    if (!m.f_.empty() && m.f_.back().gen == f.gen) {
      if (t[f.gen].odd()) return std::nullopt;
      m.f_.back().exp += f.exp;
    } else {
      m.f_.push_back(f);
    }
  }
  return std::make_pair(std::move(m), sign);
}

long Monomial::degree(const GeneratorTable& t) const {
  long d = 0;
  for (const auto& f : f_) d += static_cast<long>(f.exp) * t[f.gen].degree;
  return d;
}

std::vector<int> Monomial::flatten() const {
  std::vector<int> out;
  for (const auto& f : f_)
    for (int i = 0; i < f.exp; ++i) out.push_back(f.gen);
  return out;
}

int Monomial::compare(const GeneratorTable& t, const Monomial& a, const Monomial& b) {
  const long da = a.degree(t), db = b.degree(t);
  if (da != db) return da < db ? -1 : 1;
  // Exponent-lex within a degree: at the first rank where the exponents
  // differ, the monomial with the larger exponent comes first.
  std::size_t i = 0, j = 0;
  while (i < a.f_.size() && j < b.f_.size()) {
    const int ra = t.rank(a.f_[i].gen), rb = t.rank(b.f_[j].gen);
    if (ra != rb) return ra < rb ? -1 : 1;
    if (a.f_[i].exp != b.f_[j].exp) return a.f_[i].exp > b.f_[j].exp ? -1 : 1;
    ++i;
    ++j;
  }
  if (i < a.f_.size()) return -1;
  if (j < b.f_.size()) return 1;
  return 0;
}

std::string Monomial::str(const GeneratorTable& t) const {
  if (f_.empty()) return "1";
  std::string s;
  for (const auto& f : f_) {
    if (!s.empty()) s += "*";
    s += t[f.gen].name;
    if (f.exp > 1) s += "^" + std::to_string(f.exp);
  }
  return s;
}

Poly::Poly(TablePtr t) : table_(std::move(t)), terms_(MonomialLess{table_.get()}) {}

Poly Poly::one(TablePtr t) {
  Poly p(std::move(t));
  p.add_term(Monomial(), 1);
  return p;
}

Poly Poly::generator(TablePtr t, int gen) {
  auto nf = Monomial::normalize(*t, {{gen, 1}});
  Poly p(std::move(t));
  p.add_term(nf->first, 1);
  return p;
}

Poly Poly::term(TablePtr t, const Monomial& m, const Rational& c) {
  Poly p(std::move(t));
  p.add_term(m, c);
  return p;
}

const Rational& Poly::coeff(const Monomial& m) const {
  static const Rational kZero(0);
  auto it = terms_.find(m);
  return it == terms_.end() ? kZero : it->second;
}

Poly& Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return *this;
  auto [it, fresh] = terms_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

static void check_same_table(const Poly& a, const Poly& b) {
  if (a.table().get() != b.table().get())
    throw PresentationMismatch("operands belong to different presentations");
}

Poly& Poly::operator+=(const Poly& o) {
  check_same_table(*this, o);
  for (const auto& [m, c] : o.terms()) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same_table(*this, o);
  for (const auto& [m, c] : o.terms()) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  check_same_table(a, b);
  return a.terms_ == b.terms_;
}

Poly multiply(const Poly& a, const Poly& b) {
  check_same_table(a, b);
  const GeneratorTable& t = *a.table();
  Poly out(a.table());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      std::vector<Factor> raw = ma.factors();
      raw.insert(raw.end(), mb.factors().begin(), mb.factors().end());
      auto nf = Monomial::normalize(t, std::move(raw));
      if (!nf) continue;  // an odd generator squared
      out.add_term(nf->first, ca * cb * Rational(nf->second));
    }
  }
  return out;
}

Poly Poly::pow(int n) const {
  if (n < 0) throw InputError("negative power of a polynomial");
  Poly acc = Poly::one(table_);
  for (int i = 0; i < n; ++i) acc = multiply(acc, *this);
  return acc;
}

bool Poly::is_homogeneous() const {
  return is_zero() || homogeneous_degree().has_value();
}

std::optional<long> Poly::homogeneous_degree() const {
  std::optional<long> deg;
  for (const auto& [m, c] : terms_) {
    const long d = m.degree(*table_);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

Poly Poly::component_of_degree(long n) const {
  Poly out(table_);
  for (const auto& [m, c] : terms_)
    if (m.degree(*table_) == n) out.add_term(m, c);
  return out;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const Rational a = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (m.is_unit()) {
      os << a.str();
    } else if (a.is_one()) {
      os << m.str(*table_);
    } else {
      os << a.str() << "*" << m.str(*table_);
    }
  }
  return os.str();
}

Poly apply_odd_derivation(const Poly& p, const std::function<const Poly*(int)>& value) {
  const TablePtr& t = p.table();
  Poly out(t);
  for (const auto& [m, c] : p.terms()) {
    const auto& fs = m.factors();
    long prefix_deg = 0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const Poly* dv = value(fs[i].gen);
      if (dv == nullptr)
        throw Error("no differential value for generator " + (*t)[fs[i].gen].name);
      if (!dv->is_zero()) {
        // d(P g^e S) = ... + (-1)^{|P|} e * P g^{e-1} (dg) S + ...
        std::vector<Factor> left(fs.begin(), fs.begin() + i);
        if (fs[i].exp > 1) left.push_back({fs[i].gen, fs[i].exp - 1});
        std::vector<Factor> right(fs.begin() + i + 1, fs.end());
        Monomial lm, rm;
        lm = Monomial::normalize(*t, std::move(left))->first;
        rm = Monomial::normalize(*t, std::move(right))->first;
        const Rational scale = c * Rational(fs[i].exp) * Rational(parity_sign(prefix_deg));
        Poly piece = multiply(multiply(Poly::term(t, lm, scale), *dv), Poly::term(t, rm, 1));
        out += piece;
      }
      prefix_deg += static_cast<long>(fs[i].exp) * (*t)[fs[i].gen].degree;
    }
  }
  return out;
}

Poly substitute(const Poly& p, const std::map<int, Poly>& images) {
  const TablePtr& t = p.table();
  Poly out(t);
  for (const auto& [m, c] : p.terms()) {
    Poly acc = Poly::term(t, Monomial(), c);
    for (const auto& f : m.factors()) {
      auto it = images.find(f.gen);
      const Poly base = it != images.end() ? it->second : Poly::generator(t, f.gen);
      acc = multiply(acc, base.pow(f.exp));
      if (acc.is_zero()) break;
    }
    out += acc;
  }
  return out;
}

GcaPresentation::GcaPresentation(TablePtr table, std::vector<Poly> diff)
    : table_(std::move(table)), diff_(std::move(diff)) {
  if (diff_.size() != static_cast<std::size_t>(table_->size()))
    throw InputError("differential table size does not match generator count");
  for (int i = 0; i < table_->size(); ++i) {
    if (diff_[i].table().get() != table_.get())
      throw PresentationMismatch("differential value over a foreign presentation");
    if (diff_[i].is_zero()) continue;
    auto deg = diff_[i].homogeneous_degree();
    if (!deg || *deg != (*table_)[i].degree + 1)
      throw InputError("d(" + (*table_)[i].name + ") must be homogeneous of degree " +
                       std::to_string((*table_)[i].degree + 1));
  }
}

Poly GcaPresentation::apply_d(const Poly& p) const {
  if (p.table().get() != table_.get())
    throw PresentationMismatch("polynomial over a foreign presentation");
  return apply_odd_derivation(p, [this](int g) { return &diff_[g]; });
}

std::vector<int> GcaPresentation::check_d_squared() const {
  std::vector<int> bad;
  for (int i = 0; i < table_->size(); ++i)
    if (!apply_d(diff_[i]).is_zero()) bad.push_back(i);
  return bad;
}

bool GcaPresentation::is_minimal() const {
  for (int i = 0; i < table_->size(); ++i)
    for (const auto& [m, c] : diff_[i].terms())
      if (m.flatten().size() < 2) return false;
  return true;
}

std::vector<Monomial> GcaPresentation::basis_in_degree(int n) const {
  for (int i = 0; i < table_->size(); ++i)
    if ((*table_)[i].degree <= 0)
      throw InputError("basis enumeration requires positive generator degrees");
  std::vector<Monomial> out;
  if (n < 0) return out;
  // Generators visited in canonical rank order, so factor lists come out in
  // normal form directly.
  std::vector<int> by_rank(table_->size());
  for (int i = 0; i < table_->size(); ++i) by_rank[table_->rank(i)] = i;
  std::vector<Factor> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int remaining) {
    if (remaining == 0) {
      auto nf = Monomial::normalize(*table_, cur);
      out.push_back(nf->first);
      return;
    }
    if (idx == by_rank.size()) return;
    const int g = by_rank[idx];
    const int d = (*table_)[g].degree;
    const int maxexp = (*table_)[g].odd() ? 1 : remaining / d;
    for (int e = 0; e <= maxexp; ++e) {
      if (e * d > remaining) break;
      if (e > 0) cur.push_back({g, e});
      rec(idx + 1, remaining - e * d);
      if (e > 0) cur.pop_back();
    }
  };
  rec(0, n);
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return Monomial::compare(*table_, a, b) < 0; });
  return out;
}

GcaPresentation::Cohomology GcaPresentation::cohomology(int n) const {
  const auto below = basis_in_degree(n - 1);
  const auto here = basis_in_degree(n);
  const auto above = basis_in_degree(n + 1);

  std::map<Monomial, std::size_t, MonomialLess> here_index{MonomialLess{table_.get()}};
  std::map<Monomial, std::size_t, MonomialLess> above_index{MonomialLess{table_.get()}};
  for (std::size_t i = 0; i < here.size(); ++i) here_index.emplace(here[i], i);
  for (std::size_t i = 0; i < above.size(); ++i) above_index.emplace(above[i], i);

  auto coords = [&](const Poly& p, const auto& index, std::size_t dim) {
    Vec v(dim, Rational(0));
    for (const auto& [m, c] : p.terms()) v[index.at(m)] = c;
    return v;
  };

  // d_n as a matrix C^n -> C^{n+1}, columns indexed by the degree-n basis.
  Matrix dn(above.size(), Vec(here.size(), Rational(0)));
  for (std::size_t j = 0; j < here.size(); ++j) {
    const Vec col = coords(apply_d(Poly::term(table_, here[j], 1)), above_index, above.size());
    for (std::size_t i = 0; i < above.size(); ++i) dn[i][j] = col[i];
  }

  const std::vector<Vec> cycles = kernel_basis(dn, here.size());

  RowSpace image(here.size());
  for (const auto& m : below)
    image.insert(coords(apply_d(Poly::term(table_, m, 1)), here_index, here.size()));

  Cohomology h;
  for (const auto& z : cycles) {
    Vec residue = image.reduce(z);
    if (is_zero_vec(residue)) continue;
    Poly rep(table_);
    for (std::size_t i = 0; i < here.size(); ++i) rep.add_term(here[i], residue[i]);
    h.representatives.push_back(std::move(rep));
    image.insert(std::move(residue));
  }
  h.dim = h.representatives.size();
  return h;
}

}  // namespace rht

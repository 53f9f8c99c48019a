#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rht/linalg.hpp"
#include "rht/rational.hpp"

namespace rht {

struct Generator {
  std::string name;
  int degree = 0;
  bool odd() const { return degree % 2 != 0; }
};

/// Immutable generator roster of one free graded-commutative algebra.
/// Generators keep their declaration index; the canonical factor order used
/// by monomial normal forms is degree-major, then name.
class GeneratorTable {
 public:
  explicit GeneratorTable(std::vector<Generator> gens);

  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& operator[](int i) const { return gens_[i]; }
  int index_of(const std::string& name) const;  // -1 when absent
  int rank(int i) const { return rank_[i]; }

 private:
  std::vector<Generator> gens_;
  std::map<std::string, int> by_name_;
  std::vector<int> rank_;
};

using TablePtr = std::shared_ptr<const GeneratorTable>;

TablePtr make_table(std::vector<Generator> gens);

struct Factor {
  int gen = 0;
  int exp = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Sign-normal monomial: factors sorted by the table's canonical order,
/// exponents >= 1, odd generators square to zero so carry exponent 1.
class Monomial {
 public:
  Monomial() = default;  // the unit monomial

  /// Sorts `raw` (factors in arbitrary order, repeats allowed) into normal
  /// form, merging exponents. Returns nullopt when an odd generator squares
  /// (the monomial is zero); otherwise the normal form and the Koszul sign
  /// (+1/-1) produced by sorting.
  static std::optional<std::pair<Monomial, int>> normalize(
      const GeneratorTable& t, std::vector<Factor> raw);

  const std::vector<Factor>& factors() const { return f_; }
  bool is_unit() const { return f_.empty(); }
  long degree(const GeneratorTable& t) const;
  /// Exponents as individual generators, in factor order.
  std::vector<int> flatten() const;

  static int compare(const GeneratorTable& t, const Monomial& a, const Monomial& b);
  std::string str(const GeneratorTable& t) const;  // "1" for the unit

 private:
  std::vector<Factor> f_;
};

struct MonomialLess {
  const GeneratorTable* t;
  bool operator()(const Monomial& a, const Monomial& b) const {
    return Monomial::compare(*t, a, b) < 0;
  }
};

/// Finite rational linear combination of monomials over one table. No zero
/// coefficients are stored.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialLess>;

  explicit Poly(TablePtr t);
  static Poly zero(TablePtr t) { return Poly(std::move(t)); }
  static Poly one(TablePtr t);
  static Poly generator(TablePtr t, int gen);
  static Poly term(TablePtr t, const Monomial& m, const Rational& c);

  const TablePtr& table() const { return table_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const Rational& coeff(const Monomial& m) const;

  Poly& add_term(const Monomial& m, const Rational& c);
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(int n) const;
  bool is_homogeneous() const;
  /// Degree shared by all terms; nullopt for 0 or inhomogeneous values.
  std::optional<long> homogeneous_degree() const;
  Poly component_of_degree(long n) const;

  std::string str() const;  // canonical rendering, "0" when zero

 private:
  TablePtr table_;
  Terms terms_;
};

/// Graded-commutative product with exact Koszul signs.
Poly multiply(const Poly& a, const Poly& b);

/// Extends generator values to a degree +1 derivation by the graded Leibniz
/// rule. `value` must return the image of each generator encountered;
/// returning nullptr means the value is unknown and raises an Error.
Poly apply_odd_derivation(const Poly& p, const std::function<const Poly*(int)>& value);

/// Substitutes generators by polynomials (an algebra map); generators not in
/// the map are kept.
Poly substitute(const Poly& p, const std::map<int, Poly>& images);

/// Free graded-commutative algebra with a derivation differential given on
/// generators. The differential must raise degree by exactly 1; d*d = 0 is
/// checked by check_d_squared, not assumed.
class GcaPresentation {
 public:
  GcaPresentation(TablePtr table, std::vector<Poly> diff);

  const GeneratorTable& table() const { return *table_; }
  const TablePtr& table_ptr() const { return table_; }
  const Poly& d_of(int gen) const { return diff_[gen]; }

  Poly apply_d(const Poly& p) const;
  /// Indices of generators g with d(d(g)) != 0; empty iff d^2 = 0.
  std::vector<int> check_d_squared() const;
  /// d lands in decomposables on every generator (Sullivan minimality).
  bool is_minimal() const;

  /// Complete monomial basis of degree n, in the canonical monomial order.
  /// Requires every generator to have positive degree.
  std::vector<Monomial> basis_in_degree(int n) const;

  struct Cohomology {
    std::size_t dim = 0;
    std::vector<Poly> representatives;  // cycles spanning H^n mod exactness
  };
  Cohomology cohomology(int n) const;

 private:
  TablePtr table_;
  std::vector<Poly> diff_;
};

}  // namespace rht

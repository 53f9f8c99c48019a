#include "rht/dsl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rht/errors.hpp"

namespace rht::dsl {

namespace {

enum class Tok {
  Ident, Int, Eq, Plus, Minus, Star, Caret, Slash,
  LParen, RParen, At, Arrow, Separator, End
};

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Eq: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Slash: return "'/'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::At: return "'@'";
    case Tok::Arrow: return "'->'";
    case Tok::Separator: return "newline or ';'";
    case Tok::End: return "end of input";
  }
  return "?";
}

const std::set<std::string> kReserved = {"dga", "gen", "d", "symplectic", "torus",
                                         "base", "classify", "S2", "basis"};

bool lex(const std::string& text, std::vector<Token>& out, Diagnostic& err) {
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string s, int l, int c) { out.push_back({k, std::move(s), l, c}); };
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == ' ' || ch == '\t' || ch == '\r') { ++i; ++col; continue; }
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (ch == '\n') { push(Tok::Separator, "\n", line, col); ++i; ++line; col = 1; continue; }
    const int l = line, c = col;
    if (ch == ';') { push(Tok::Separator, ";", l, c); ++i; ++col; continue; }
    if (ch == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(Tok::Arrow, "->", l, c); i += 2; col += 2; continue;
    }
    switch (ch) {
      case '=': push(Tok::Eq, "=", l, c); ++i; ++col; continue;
      case '+': push(Tok::Plus, "+", l, c); ++i; ++col; continue;
      case '-': push(Tok::Minus, "-", l, c); ++i; ++col; continue;
      case '*': push(Tok::Star, "*", l, c); ++i; ++col; continue;
      case '^': push(Tok::Caret, "^", l, c); ++i; ++col; continue;
      case '/': push(Tok::Slash, "/", l, c); ++i; ++col; continue;
      case '(': push(Tok::LParen, "(", l, c); ++i; ++col; continue;
      case ')': push(Tok::RParen, ")", l, c); ++i; ++col; continue;
      case '@': push(Tok::At, "@", l, c); ++i; ++col; continue;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string s;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        s += text[i++]; ++col;
      }
      push(Tok::Int, std::move(s), l, c);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::string s;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        s += text[i++]; ++col;
      }
      push(Tok::Ident, std::move(s), l, c);
      continue;
    }
    err = {l, c, std::string("unexpected character '") + ch + "'", {}};
    return false;
  }
  out.push_back({Tok::End, "", line, col});
  return true;
}

struct Expr {
  enum Kind { Num, Var, Add, Sub, Mul, Pow, Neg } kind;
  Rational num;
  std::string var;
  std::vector<Expr> kids;
  int exponent = 0;
  int line = 0, col = 0;
};

struct RawKey {
  std::string head;
  std::vector<std::pair<std::string, int>> mono;  // empty means the unit
  int line = 0, col = 0;
};

struct RawStmt {
  enum Kind { Dga, Gen, Diff, Symp, Torus, Base, Classify } kind;
  int line = 0, col = 0;
  std::string name;
  int number = 0;  // Gen degree / Torus rank
  Expr expr;
  RawKey key;
  bool base_s2 = false;
  std::vector<std::string> base_names;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  bool run(std::vector<RawStmt>& out, Diagnostic& err) {
    while (true) {
      while (at(Tok::Separator)) ++pos_;
      if (at(Tok::End)) return true;
      RawStmt s;
      if (!statement(s)) { err = err_; return false; }
      out.push_back(std::move(s));
      if (!at(Tok::End) && !expect(Tok::Separator)) { err = err_; return false; }
    }
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }

  bool fail(std::string msg, std::vector<std::string> expected = {}) {
    err_ = {cur().line, cur().col, std::move(msg), std::move(expected)};
    return false;
  }

  bool expect(Tok k) {
    if (at(k)) { ++pos_; return true; }
    return fail(std::string("expected ") + tok_name(k) + ", found " +
                    (cur().kind == Tok::End ? "end of input" : "'" + cur().text + "'"),
                {tok_name(k)});
  }

  bool ident(std::string& s) {
    if (!at(Tok::Ident)) return expect(Tok::Ident);
    s = cur().text;
    ++pos_;
    return true;
  }

  bool integer(int& v, bool allow_negative) {
    bool neg = false;
    if (allow_negative && at(Tok::Minus)) { neg = true; ++pos_; }
    if (!at(Tok::Int)) return expect(Tok::Int);
    try {
      v = std::stoi(cur().text);
    } catch (...) {
      return fail("integer out of range");
    }
    if (neg) v = -v;
    ++pos_;
    return true;
  }

  bool statement(RawStmt& s) {
    s.line = cur().line;
    s.col = cur().col;
    if (!at(Tok::Ident))
      return fail("expected a statement",
                  {"dga", "gen", "d", "symplectic", "torus", "base", "classify"});
    const std::string head = cur().text;
    if (head == "dga") {
      ++pos_; s.kind = RawStmt::Dga; return ident(s.name);
    }
    if (head == "gen") {
      ++pos_; s.kind = RawStmt::Gen;
      return ident(s.name) && integer(s.number, /*allow_negative=*/true);
    }
    if (head == "d") {
      ++pos_; s.kind = RawStmt::Diff;
      return ident(s.name) && expect(Tok::Eq) && expr(s.expr);
    }
    if (head == "symplectic") {
      ++pos_; s.kind = RawStmt::Symp;
      return ident(s.name) && expect(Tok::Eq) && expr(s.expr);
    }
    if (head == "torus") {
      ++pos_; s.kind = RawStmt::Torus;
      return integer(s.number, /*allow_negative=*/false);
    }
    if (head == "base") {
      ++pos_; s.kind = RawStmt::Base;
      if (at(Tok::Ident) && cur().text == "S2") { s.base_s2 = true; ++pos_; return true; }
      if (at(Tok::Ident) && cur().text == "basis") {
        ++pos_;
        std::string n;
        if (!ident(n)) return false;
        s.base_names.push_back(n);
        while (at(Tok::Ident)) { s.base_names.push_back(cur().text); ++pos_; }
        return true;
      }
      return fail("expected 'S2' or 'basis'", {"S2", "basis"});
    }
    if (head == "classify") {
      ++pos_; s.kind = RawStmt::Classify;
      return class_key(s.key) && expect(Tok::Arrow) && expr(s.expr);
    }
    return fail("unknown statement '" + head + "'",
                {"dga", "gen", "d", "symplectic", "torus", "base", "classify"});
  }

  bool class_key(RawKey& k) {
    k.line = cur().line;
    k.col = cur().col;
    if (!ident(k.head)) return false;
    if (!expect(Tok::At)) return false;
    if (at(Tok::Int) && cur().text == "1") { ++pos_; return true; }
    do {
      std::string g;
      if (!ident(g)) return false;
      int e = 1;
      if (at(Tok::Caret)) {
        ++pos_;
        if (!integer(e, false)) return false;
      }
      k.mono.emplace_back(std::move(g), e);
      if (!at(Tok::Star)) break;
      ++pos_;
    } while (true);
    return true;
  }

  bool expr(Expr& e) {
    e.line = cur().line;
    e.col = cur().col;
    bool neg = false;
    if (at(Tok::Minus)) { neg = true; ++pos_; }
    Expr t;
    if (!term(t)) return false;
    if (neg) {
      e.kind = Expr::Neg;
      e.kids.push_back(std::move(t));
    } else {
      e = std::move(t);
    }
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const bool plus = at(Tok::Plus);
      ++pos_;
      Expr rhs;
      if (!term(rhs)) return false;
      Expr combined;
      combined.kind = plus ? Expr::Add : Expr::Sub;
      combined.line = e.line;
      combined.col = e.col;
      combined.kids.push_back(std::move(e));
      combined.kids.push_back(std::move(rhs));
      e = std::move(combined);
    }
    return true;
  }

  bool term(Expr& e) {
    if (!factor(e)) return false;
    while (at(Tok::Star)) {
      ++pos_;
      Expr rhs;
      if (!factor(rhs)) return false;
      Expr combined;
      combined.kind = Expr::Mul;
      combined.line = e.line;
      combined.col = e.col;
      combined.kids.push_back(std::move(e));
      combined.kids.push_back(std::move(rhs));
      e = std::move(combined);
    }
    return true;
  }

  bool factor(Expr& e) {
    if (!atom(e)) return false;
    if (at(Tok::Caret)) {
      ++pos_;
      int exp = 0;
      if (!integer(exp, false)) return false;
      Expr p;
      p.kind = Expr::Pow;
      p.line = e.line;
      p.col = e.col;
      p.exponent = exp;
      p.kids.push_back(std::move(e));
      e = std::move(p);
    }
    return true;
  }

  bool atom(Expr& e) {
    e.line = cur().line;
    e.col = cur().col;
    if (at(Tok::Int)) {
      std::string num = cur().text;
      ++pos_;
      if (at(Tok::Slash)) {
        ++pos_;
        if (!at(Tok::Int)) return expect(Tok::Int);
        num += "/" + cur().text;
        ++pos_;
      }
      e.kind = Expr::Num;
      e.num = Rational::from_string(num);
      return true;
    }
    if (at(Tok::Ident)) {
      e.kind = Expr::Var;
      e.var = cur().text;
      ++pos_;
      return true;
    }
    if (at(Tok::LParen)) {
      ++pos_;
      Expr inner;
      if (!expr(inner)) return false;
      if (!expect(Tok::RParen)) return false;
      e = std::move(inner);
      return true;
    }
    return fail("expected a number, generator or '('", {"integer", "identifier", "'('"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Diagnostic err_;
};

bool eval_expr(const Expr& e, const TablePtr& t, Poly& out, Diagnostic& err) {
  switch (e.kind) {
    case Expr::Num:
      out = Poly::term(t, Monomial(), e.num);
      return true;
    case Expr::Var: {
      const int g = t->index_of(e.var);
      if (g < 0) {
        err = {e.line, e.col, "undeclared generator '" + e.var + "'", {}};
        return false;
      }
      out = Poly::generator(t, g);
      return true;
    }
    case Expr::Neg: {
      if (!eval_expr(e.kids[0], t, out, err)) return false;
      out *= Rational(-1);
      return true;
    }
    case Expr::Add:
    case Expr::Sub: {
      Poly a(t), b(t);
      if (!eval_expr(e.kids[0], t, a, err) || !eval_expr(e.kids[1], t, b, err)) return false;
      out = e.kind == Expr::Add ? a + b : a - b;
      return true;
    }
    case Expr::Mul: {
      Poly a(t), b(t);
      if (!eval_expr(e.kids[0], t, a, err) || !eval_expr(e.kids[1], t, b, err)) return false;
      out = multiply(a, b);
      return true;
    }
    case Expr::Pow: {
      Poly a(t);
      if (!eval_expr(e.kids[0], t, a, err)) return false;
      if (e.exponent < 0 || e.exponent > 64) {
        err = {e.line, e.col, "exponent out of range", {}};
        return false;
      }
      out = a.pow(e.exponent);
      return true;
    }
  }
  return false;
}

std::string render_base_value(const Vec& v, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const Rational a = v[i].abs();
    if (s.empty()) {
      if (v[i].sign() < 0) s += "-";
    } else {
      s += v[i].sign() < 0 ? " - " : " + ";
    }
    if (a.is_one())
      s += names[i];
    else
      s += a.str() + "*" + names[i];
  }
  return s.empty() ? "0" : s;
}

}  // namespace

std::string Diagnostic::str() const {
  std::ostringstream os;
  os << "line " << line << ", column " << col << ": " << message;
  if (!expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? " or " : "") << expected[i];
    os << ")";
  }
  return os.str();
}

ParseResult parse(const std::string& text) {
  ParseResult result;
  std::vector<Token> toks;
  Diagnostic err;
  if (!lex(text, toks, err)) {
    result.error = err;
    return result;
  }
  std::vector<RawStmt> stmts;
  Parser parser(std::move(toks));
  if (!parser.run(stmts, err)) {
    result.error = err;
    return result;
  }

  auto bail = [&](int line, int col, std::string msg) {
    result.error = Diagnostic{line, col, std::move(msg), {}};
    return result;
  };

  // Generator roster first; declarations must precede any use.
  std::vector<Generator> gens;
  std::map<std::string, int> declared;
  for (const auto& s : stmts) {
    if (s.kind != RawStmt::Gen) continue;
    if (kReserved.count(s.name))
      return bail(s.line, s.col, "'" + s.name + "' is a reserved word");
    if (declared.count(s.name))
      return bail(s.line, s.col, "duplicate generator name '" + s.name + "'");
    declared[s.name] = static_cast<int>(gens.size());
    gens.push_back({s.name, s.number});
  }
  TablePtr table = make_table(gens);

  std::vector<Poly> diff(gens.size(), Poly(table));
  std::vector<bool> has_diff(gens.size(), false);
  for (const auto& s : stmts) {
    if (s.kind != RawStmt::Diff) continue;
    auto it = declared.find(s.name);
    if (it == declared.end())
      return bail(s.line, s.col, "differential for undeclared generator '" + s.name + "'");
    if (has_diff[it->second])
      return bail(s.line, s.col, "duplicate differential for '" + s.name + "'");
    Poly p(table);
    if (!eval_expr(s.expr, table, p, err)) {
      result.error = err;
      return result;
    }
    if (!p.is_zero()) {
      auto deg = p.homogeneous_degree();
      if (!deg || *deg != gens[it->second].degree + 1)
        return bail(s.line, s.col,
                    "d(" + s.name + ") must be homogeneous of degree " +
                        std::to_string(gens[it->second].degree + 1));
    }
    diff[it->second] = std::move(p);
    has_diff[it->second] = true;
  }

  ModelDocument doc(GcaPresentation(table, std::move(diff)));

  for (const auto& s : stmts) {
    switch (s.kind) {
      case RawStmt::Dga:
        doc.name = s.name;
        break;
      case RawStmt::Symp: {
        if (doc.symplectic) return bail(s.line, s.col, "duplicate symplectic declaration");
        Poly p(table);
        if (!eval_expr(s.expr, table, p, err)) {
          result.error = err;
          return result;
        }
        doc.symplectic = std::move(p);
        doc.symplectic_name = s.name;
        break;
      }
      case RawStmt::Torus:
        if (doc.torus_k) return bail(s.line, s.col, "duplicate torus declaration");
        doc.torus_k = s.number;
        break;
      case RawStmt::Base: {
        if (doc.base_kind != BaseKind::None)
          return bail(s.line, s.col, "duplicate base declaration");
        if (s.base_s2) {
          doc.base_kind = BaseKind::S2;
          doc.base_names = {"s2"};
        } else {
          doc.base_kind = BaseKind::Named;
          std::set<std::string> seen;
          for (const auto& n : s.base_names)
            if (!seen.insert(n).second)
              return bail(s.line, s.col, "duplicate base basis name '" + n + "'");
          doc.base_names = s.base_names;
        }
        break;
      }
      default:
        break;
    }
  }

  // Classifying values need the base basis, so bind them last.
  TablePtr base_table;
  if (doc.base_kind != BaseKind::None) {
    std::vector<Generator> bg;
    for (const auto& n : doc.base_names) bg.push_back({n, 2});
    base_table = make_table(bg);
  }
  std::map<std::string, std::pair<int, int>> seen_keys;
  for (const auto& s : stmts) {
    if (s.kind != RawStmt::Classify) continue;
    if (doc.base_kind == BaseKind::None)
      return bail(s.line, s.col, "classify needs a base declaration");
    auto it = declared.find(s.key.head);
    if (it == declared.end())
      return bail(s.key.line, s.key.col, "undeclared generator '" + s.key.head + "' in class name");
    std::vector<Factor> fs;
    for (const auto& [g, e] : s.key.mono) {
      auto git = declared.find(g);
      if (git == declared.end())
        return bail(s.key.line, s.key.col, "undeclared generator '" + g + "' in class name");
      fs.push_back({git->second, e});
    }
    auto nf = Monomial::normalize(*table, std::move(fs));
    if (!nf || nf->second != 1)
      return bail(s.key.line, s.key.col, "class name monomial is not in canonical order");
    const std::string key = s.key.head + "@" + nf->first.str(*table);
    if (!seen_keys.emplace(key, std::make_pair(s.line, s.col)).second)
      return bail(s.line, s.col, "duplicate classify entry for " + key);
    Poly value(base_table);
    if (!eval_expr(s.expr, base_table, value, err)) {
      result.error = err;
      return result;
    }
    Vec v(doc.base_names.size(), Rational(0));
    for (const auto& [mono, c] : value.terms()) {
      const auto& mf = mono.factors();
      if (mf.size() != 1 || mf[0].exp != 1)
        return bail(s.line, s.col, "classifying value must be linear in the base basis");
      v[mf[0].gen] = c;
    }
    doc.classify.emplace_back(key, std::move(v));
  }
  std::sort(doc.classify.begin(), doc.classify.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  result.doc = std::move(doc);
  return result;
}

std::string print(const ModelDocument& doc) {
  std::ostringstream os;
  os << "dga " << doc.name << "\n";
  const GeneratorTable& t = doc.presentation.table();
  for (int i = 0; i < t.size(); ++i) os << "gen " << t[i].name << " " << t[i].degree << "\n";
  for (int i = 0; i < t.size(); ++i)
    if (!doc.presentation.d_of(i).is_zero())
      os << "d " << t[i].name << " = " << doc.presentation.d_of(i).str() << "\n";
  if (doc.symplectic)
    os << "symplectic " << (doc.symplectic_name.empty() ? "w" : doc.symplectic_name) << " = "
       << doc.symplectic->str() << "\n";
  if (doc.torus_k) os << "torus " << *doc.torus_k << "\n";
  if (doc.base_kind == BaseKind::S2) os << "base S2\n";
  if (doc.base_kind == BaseKind::Named) {
    os << "base basis";
    for (const auto& n : doc.base_names) os << " " << n;
    os << "\n";
  }
  for (const auto& [key, value] : doc.classify)
    os << "classify " << key << " -> " << render_base_value(value, doc.base_names) << "\n";
  return os.str();
}

}  // namespace rht::dsl

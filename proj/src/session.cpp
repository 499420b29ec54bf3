#include "gmdet/session.hpp"

#include <cctype>
#include <set>

namespace gmdet::session {

namespace {

const std::set<std::string> kReserved = {"t", "params", "let", "connection", "check", "print"};
const std::set<std::string> kChecks = {"theorem", "conjecture"};
const std::set<std::string> kPrints = {"euler", "h0", "h1", "gmdet", "pairing", "tau", "irreg", "curvature"};

struct Token {
  enum class Kind { Ident, Int, Sym, End };
  Kind kind = Kind::End;
  std::string text;
  Pos pos;
};

std::string where(const Pos& p) { return "line " + std::to_string(p.line) + ", column " + std::to_string(p.col) + ": "; }

[[noreturn]] void fail(const Pos& p, const std::string& msg) { throw InputError(where(p) + msg); }

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  Pos p;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++p.line;
        p.col = 1;
      } else {
        ++p.col;
      }
    }
  };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      advance(1);
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Kind::Ident, s.substr(i, j - i), p});
      advance(j - i);
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Kind::Int, s.substr(i, j - i), p});
      advance(j - i);
    } else if (std::string(";{}[](),=+-*/^").find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Token::Kind::Sym, std::string(1, static_cast<char>(c)), p});
      advance(1);
    } else {
      fail(p, std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }
  out.push_back({Token::Kind::End, "", p});
  return out;
}

ExprPtr make(Expr::Kind k, std::vector<ExprPtr> args, Pos pos) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = std::move(args);
  e->pos = pos;
  return e;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  Script parse() {
    Script s;
    while (peek().kind != Token::Kind::End) s.stmts.push_back(statement());
    if (!have_params_) fail(peek().pos, "params required");
    return s;
  }

  ExprPtr standalone(const std::vector<std::string>& params) {
    have_params_ = true;
    for (const auto& p : params) scope_.insert(p);
    ExprPtr e = expr();
    if (peek().kind != Token::Kind::End) fail(peek().pos, "unexpected '" + peek().text + "' after expression");
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  bool have_params_ = false;
  std::vector<std::string> params_;
  std::set<std::string> scope_;
  std::set<std::string> connections_;

  const Token& peek() const { return toks_[at_]; }
  Token next() { return toks_[at_ == toks_.size() - 1 ? at_ : at_++]; }
  bool is_sym(const std::string& s) const { return peek().kind == Token::Kind::Sym && peek().text == s; }
  bool is_word(const std::string& s) const { return peek().kind == Token::Kind::Ident && peek().text == s; }

  std::string describe(const Token& t) const { return t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'"; }

  void expect_sym(const std::string& s) {
    if (!is_sym(s)) fail(peek().pos, "expected '" + s + "', found " + describe(peek()));
    next();
  }
  void expect_word(const std::string& s) {
    if (!is_word(s)) fail(peek().pos, "expected '" + s + "', found " + describe(peek()));
    next();
  }
  Token ident() {
    if (peek().kind != Token::Kind::Ident) fail(peek().pos, "expected an identifier, found " + describe(peek()));
    return next();
  }
  long integer() {
    if (peek().kind != Token::Kind::Int) fail(peek().pos, "expected an integer, found " + describe(peek()));
    Token t = next();
    if (t.text.size() > 9) fail(t.pos, "integer too large");
    return std::stol(t.text);
  }

  void require_params(const Pos& p) {
    if (!have_params_) fail(p, "params required");
  }

  Stmt statement() {
    const Token& t = peek();
    if (t.kind != Token::Kind::Ident) fail(t.pos, "expected a statement, found " + describe(t));
    if (t.text == "params") return params_stmt();
    require_params(t.pos);
    if (t.text == "let") return let_stmt();
    if (t.text == "connection") return connection_stmt();
    if (t.text == "check" || t.text == "print") return command_stmt();
    fail(t.pos, "unknown statement '" + t.text + "'");
  }

  Stmt params_stmt() {
    ParamsStmt s;
    s.pos = next().pos;
    if (have_params_) fail(s.pos, "duplicate params declaration");
    have_params_ = true;
    while (!is_sym(";")) {
      Token n = ident();
      if (kReserved.count(n.text)) fail(n.pos, "'" + n.text + "' is reserved");
      if (scope_.count(n.text)) fail(n.pos, "duplicate parameter " + n.text);
      scope_.insert(n.text);
      s.names.push_back(n.text);
    }
    next();
    params_ = s.names;
    return s;
  }

  Stmt let_stmt() {
    LetStmt s;
    s.pos = next().pos;
    Token n = ident();
    if (kReserved.count(n.text)) fail(n.pos, "'" + n.text + "' is reserved");
    if (scope_.count(n.text)) fail(n.pos, n.text + " is already defined");
    s.name = n.text;
    expect_sym("=");
    s.value = expr();
    expect_sym(";");
    scope_.insert(s.name);
    return s;
  }

  Stmt connection_stmt() {
    ConnectionStmt s;
    s.pos = next().pos;
    Token n = ident();
    if (connections_.count(n.text)) fail(n.pos, "connection " + n.text + " is already defined");
    s.name = n.text;
    expect_sym("{");
    expect_word("rank");
    Pos rp = peek().pos;
    s.rank = integer();
    if (s.rank < 1) fail(rp, "rank must be positive");
    expect_sym(";");
    expect_word("poles");
    while (!is_sym(";")) {
      s.poles.push_back(expr());
      if (is_sym(",")) next();
    }
    next();
    expect_word("dt");
    s.dt = matrix(s.rank);
    expect_sym(";");
    std::set<std::string> seen;
    while (is_word("d")) {
      next();
      Token p = ident();
      if (std::find(params_.begin(), params_.end(), p.text) == params_.end())
        fail(p.pos, "arity mismatch: " + p.text + " is not a declared parameter");
      if (!seen.insert(p.text).second) fail(p.pos, "duplicate d " + p.text + " block");
      s.d.emplace_back(p.text, matrix(s.rank));
      expect_sym(";");
    }
    expect_sym("}");
    connections_.insert(s.name);
    return s;
  }

  Stmt command_stmt() {
    CommandStmt s;
    Token v = next();
    s.verb = v.text;
    s.pos = v.pos;
    Token w = ident();
    const auto& allowed = s.verb == "check" ? kChecks : kPrints;
    if (!allowed.count(w.text)) fail(w.pos, "unknown " + s.verb + " command '" + w.text + "'");
    s.what = w.text;
    expect_sym("(");
    Token target = ident();
    if (!connections_.count(target.text)) fail(target.pos, "undefined connection " + target.text);
    s.target = target.text;
    if (is_sym(",")) {
      next();
      expect_word("section");
      expect_sym("=");
      s.section = expr();
    }
    expect_sym(")");
    expect_sym(";");
    return s;
  }

  MatrixExpr matrix(long rank) {
    MatrixExpr m;
    m.pos = peek().pos;
    expect_sym("[");
    for (;;) {
      std::vector<ExprPtr> row;
      row.push_back(expr());
      while (is_sym(",")) {
        next();
        row.push_back(expr());
      }
      m.rows.push_back(std::move(row));
      if (!is_sym(";")) break;
      next();
    }
    expect_sym("]");
    bool ok = static_cast<long>(m.rows.size()) == rank;
    for (const auto& r : m.rows) ok = ok && static_cast<long>(r.size()) == rank;
    if (!ok) fail(m.pos, "matrix shape " + std::to_string(rank) + "×" + std::to_string(rank) + " expected");
    return m;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (is_sym("+") || is_sym("-")) {
      Token op = next();
      ExprPtr rhs = term();
      lhs = make(op.text == "+" ? Expr::Kind::Add : Expr::Kind::Sub, {lhs, rhs}, op.pos);
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (is_sym("*") || is_sym("/")) {
      Token op = next();
      ExprPtr rhs = unary();
      lhs = make(op.text == "*" ? Expr::Kind::Mul : Expr::Kind::Div, {lhs, rhs}, op.pos);
    }
    return lhs;
  }

  ExprPtr unary() {
    if (is_sym("-")) {
      Token op = next();
      return make(Expr::Kind::Neg, {unary()}, op.pos);
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (!is_sym("^")) return base;
    Token op = next();
    bool paren = is_sym("(");
    if (paren) next();
    bool neg = is_sym("-");
    if (neg) next();
    long n = integer();
    if (paren) expect_sym(")");
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Pow;
    e->args = {base};
    e->exponent = neg ? -n : n;
    e->pos = op.pos;
    return e;
  }

  ExprPtr atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Int) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      std::string digits = next().text;
      std::size_t k = digits.find_first_not_of('0');
      e->text = k == std::string::npos ? "0" : digits.substr(k);
      e->pos = t.pos;
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      if (t.text != "t" && !scope_.count(t.text)) fail(t.pos, "undefined identifier " + t.text);
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Ident;
      e->text = t.text;
      e->pos = t.pos;
      next();
      return e;
    }
    if (is_sym("(")) {
      next();
      ExprPtr e = expr();
      expect_sym(")");
      return e;
    }
    fail(t.pos, "expected an expression, found " + describe(t));
  }
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string wrap(const Expr& e, bool paren) { return paren ? "(" + render(e) + ")" : render(e); }

std::string render_matrix(const MatrixExpr& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < m.rows[i].size(); ++j) {
      if (j) s += ", ";
      s += render(*m.rows[i][j]);
    }
  }
  return s + "]";
}

bool same_expr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind || a->text != b->text || a->exponent != b->exponent || a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!same_expr(a->args[i], b->args[i])) return false;
  return true;
}

bool same_matrix(const MatrixExpr& a, const MatrixExpr& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].size() != b.rows[i].size()) return false;
    for (std::size_t j = 0; j < a.rows[i].size(); ++j)
      if (!same_expr(a.rows[i][j], b.rows[i][j])) return false;
  }
  return true;
}

struct SameStmt {
  const Stmt& other;
  bool operator()(const ParamsStmt& a) const { return a.names == std::get<ParamsStmt>(other).names; }
  bool operator()(const LetStmt& a) const {
    const auto& b = std::get<LetStmt>(other);
    return a.name == b.name && same_expr(a.value, b.value);
  }
  bool operator()(const ConnectionStmt& a) const {
    const auto& b = std::get<ConnectionStmt>(other);
    if (a.name != b.name || a.rank != b.rank || a.poles.size() != b.poles.size() || a.d.size() != b.d.size())
      return false;
    for (std::size_t i = 0; i < a.poles.size(); ++i)
      if (!same_expr(a.poles[i], b.poles[i])) return false;
    if (!same_matrix(a.dt, b.dt)) return false;
    for (std::size_t i = 0; i < a.d.size(); ++i)
      if (a.d[i].first != b.d[i].first || !same_matrix(a.d[i].second, b.d[i].second)) return false;
    return true;
  }
  bool operator()(const CommandStmt& a) const {
    const auto& b = std::get<CommandStmt>(other);
    return a.verb == b.verb && a.what == b.what && a.target == b.target && same_expr(a.section, b.section);
  }
};

}  // namespace

const std::vector<std::string>& Script::params() const {
  for (const auto& s : stmts)
    if (auto p = std::get_if<ParamsStmt>(&s)) return p->names;
  throw InputError("params required");
}

const ConnectionStmt* Script::find_connection(const std::string& name) const {
  for (const auto& s : stmts)
    if (auto c = std::get_if<ConnectionStmt>(&s); c && c->name == name) return c;
  return nullptr;
}

std::vector<const CommandStmt*> Script::commands() const {
  std::vector<const CommandStmt*> out;
  for (const auto& s : stmts)
    if (auto c = std::get_if<CommandStmt>(&s)) out.push_back(c);
  return out;
}

Script parse_session(const std::string& text) { return Parser(text).parse(); }

std::string render(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
    case Expr::Kind::Ident: return e.text;
    case Expr::Kind::Neg: return "-" + wrap(*e.args[0], precedence(*e.args[0]) < 3);
    case Expr::Kind::Pow: {
      std::string x = e.exponent < 0 ? "(" + std::to_string(e.exponent) + ")" : std::to_string(e.exponent);
      return wrap(*e.args[0], precedence(*e.args[0]) < 5) + "^" + x;
    }
    default: {
      int p = precedence(e);
      const char* op = e.kind == Expr::Kind::Add ? " + " : e.kind == Expr::Kind::Sub ? " - "
                       : e.kind == Expr::Kind::Mul ? "*" : "/";
      return wrap(*e.args[0], precedence(*e.args[0]) < p) + op + wrap(*e.args[1], precedence(*e.args[1]) <= p);
    }
  }
}

std::string render(const Script& s) {
  std::string out;
  for (const auto& st : s.stmts) {
    if (auto p = std::get_if<ParamsStmt>(&st)) {
      out += "params";
      for (const auto& n : p->names) out += " " + n;
      out += ";\n";
    } else if (auto l = std::get_if<LetStmt>(&st)) {
      out += "let " + l->name + " = " + render(*l->value) + ";\n";
    } else if (auto c = std::get_if<ConnectionStmt>(&st)) {
      out += "connection " + c->name + " {\n  rank " + std::to_string(c->rank) + ";\n  poles";
      for (std::size_t i = 0; i < c->poles.size(); ++i) out += (i ? ", " : " ") + render(*c->poles[i]);
      out += ";\n  dt " + render_matrix(c->dt) + ";\n";
      for (const auto& [name, m] : c->d) out += "  d " + name + " " + render_matrix(m) + ";\n";
      out += "}\n";
    } else if (auto k = std::get_if<CommandStmt>(&st)) {
      out += k->verb + " " + k->what + "(" + k->target;
      if (k->section) out += ", section = " + render(*k->section);
      out += ");\n";
    }
  }
  return out;
}

bool same_ast(const Script& a, const Script& b) {
  if (a.stmts.size() != b.stmts.size()) return false;
  for (std::size_t i = 0; i < a.stmts.size(); ++i) {
    if (a.stmts[i].index() != b.stmts[i].index()) return false;
    if (!std::visit(SameStmt{b.stmts[i]}, a.stmts[i])) return false;
  }
  return true;
}

Evaluator::Evaluator(const Script& s) : script_(s), names_(s.params()) {
  for (const auto& st : s.stmts)
    if (auto l = std::get_if<LetStmt>(&st)) lets_.emplace_back(l->name, eval(*l->value));
}

CurveFunction Evaluator::eval(const Expr& e) const {
  const std::size_t arity = names_.size();
  switch (e.kind) {
    case Expr::Kind::Number: return CurveFunction(BaseScalar(Rational(mpz_class(e.text)), arity));
    case Expr::Kind::Ident: {
      if (e.text == "t") return CurveFunction(CurvePolynomial::t());
      for (std::size_t j = 0; j < arity; ++j)
        if (names_[j] == e.text) return CurveFunction(BaseScalar::parameter(arity, j));
      for (const auto& [n, v] : lets_)
        if (n == e.text) return v;
      fail(e.pos, "undefined identifier " + e.text);
    }
    case Expr::Kind::Neg: return -eval(*e.args[0]);
    case Expr::Kind::Add: return eval(*e.args[0]) + eval(*e.args[1]);
    case Expr::Kind::Sub: return eval(*e.args[0]) - eval(*e.args[1]);
    case Expr::Kind::Mul: return eval(*e.args[0]) * eval(*e.args[1]);
    case Expr::Kind::Div: {
      CurveFunction d = eval(*e.args[1]);
      if (d.is_zero()) fail(e.pos, "division by zero");
      return eval(*e.args[0]) / d;
    }
    case Expr::Kind::Pow: {
      CurveFunction b = eval(*e.args[0]);
      if (b.is_zero() && e.exponent < 0) fail(e.pos, "division by zero");
      if (e.exponent > 10000 || e.exponent < -10000) fail(e.pos, "exponent out of range");
      return b.pow(static_cast<int>(e.exponent));
    }
  }
  fail(e.pos, "malformed expression");
}

BaseScalar Evaluator::eval_scalar(const Expr& e) const {
  CurveFunction f = eval(e).reduced();
  if (f.num().degree() > 0 || f.den().degree() > 0) fail(e.pos, "expected an expression free of t");
  if (f.is_zero()) return BaseScalar(Rational(0), names_.size());
  return f.num().coeff(0) / f.den().coeff(0);
}

CurvePolynomial Evaluator::eval_polynomial(const Expr& e) const {
  CurveFunction f = eval(e).reduced();
  if (!f.is_polynomial()) fail(e.pos, "expected a polynomial in t");
  return f.num() * f.den().leading().inverse();
}

Connection Evaluator::connection(const std::string& name) const {
  const ConnectionStmt* c = script_.find_connection(name);
  if (!c) throw InputError("undefined connection " + name);
  const std::size_t r = static_cast<std::size_t>(c->rank), arity = names_.size();
  auto build = [&](const MatrixExpr& m) {
    FunctionMatrix out(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) out(i, j) = eval(*m.rows[i][j]).reduced();
    return out;
  };
  std::vector<BaseScalar> poles;
  for (const auto& p : c->poles) poles.push_back(eval_scalar(*p));
  std::vector<FunctionMatrix> par(arity, FunctionMatrix(r, r));
  for (const auto& [pname, m] : c->d)
    for (std::size_t j = 0; j < arity; ++j)
      if (names_[j] == pname) par[j] = build(m);
  try {
    return make_connection(r, arity, std::move(poles), build(c->dt), std::move(par), names_);
  } catch (const InputError& err) {
    throw InputError(where(c->pos) + "connection " + name + ": " + err.what());
  }
}

BaseScalar Evaluator::scalar_from_text(const std::string& text) const {
  Parser p(text);
  std::vector<std::string> scope = names_;
  for (const auto& [n, v] : lets_) scope.push_back(n);
  ExprPtr e = p.standalone(scope);
  return eval_scalar(*e);
}

}  // namespace gmdet::session

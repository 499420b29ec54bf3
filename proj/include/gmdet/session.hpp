#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gmdet/connection.hpp"

namespace gmdet::session {

struct Pos {
  int line = 1;
  int col = 1;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, Ident, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind = Kind::Number;
  // Digits of a literal or the identifier name.
  std::string text;
  std::vector<ExprPtr> args;
  long exponent = 0;
  Pos pos;
};

struct MatrixExpr {
  std::vector<std::vector<ExprPtr>> rows;
  Pos pos;
};

struct ParamsStmt {
  std::vector<std::string> names;
  Pos pos;
};

struct LetStmt {
  std::string name;
  ExprPtr value;
  Pos pos;
};

struct ConnectionStmt {
  std::string name;
  long rank = 0;
  std::vector<ExprPtr> poles;
  MatrixExpr dt;
  std::vector<std::pair<std::string, MatrixExpr>> d;
  Pos pos;
};

struct CommandStmt {
  // "check" or "print".
  std::string verb;
  // theorem | conjecture for check; euler | h0 | h1 | gmdet | pairing | tau | irreg | curvature for print.
  std::string what;
  std::string target;
  ExprPtr section;
  Pos pos;
};

using Stmt = std::variant<ParamsStmt, LetStmt, ConnectionStmt, CommandStmt>;

struct Script {
  std::vector<Stmt> stmts;

  const std::vector<std::string>& params() const;
  const ConnectionStmt* find_connection(const std::string& name) const;
  std::vector<const CommandStmt*> commands() const;
};

// Throws InputError with "line L, column C: ..." on syntax and scoping errors.
Script parse_session(const std::string& text);
std::string render(const Script& s);
std::string render(const Expr& e);
// Structural equality, ignoring source positions.
bool same_ast(const Script& a, const Script& b);

class Evaluator {
 public:
  explicit Evaluator(const Script& s);

  CurveFunction eval(const Expr& e) const;
  BaseScalar eval_scalar(const Expr& e) const;
  CurvePolynomial eval_polynomial(const Expr& e) const;
  Connection connection(const std::string& name) const;
  // Parses and evaluates a standalone expression in the script's scope.
  BaseScalar scalar_from_text(const std::string& text) const;
  const Names& names() const { return names_; }

 private:
  const Script& script_;
  Names names_;
  std::vector<std::pair<std::string, CurveFunction>> lets_;
};

}  // namespace gmdet::session

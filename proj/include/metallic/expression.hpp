#pragma once

#include <memory>
#include <string>
#include <vector>

#include "metallic/jet.hpp"

namespace metallic {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& what, int line_, int column_)
      : std::runtime_error(what + " (line " + std::to_string(line_) +
                           ", column " + std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

enum class NamedConst { pi, sigma, sigma_bar, p, q };
enum class UnaryOp { neg, sin, cos, tan, sqrt, ln };
enum class BinaryOp { add, sub, mul, div };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression AST for immersion components. pow is modeled as a dedicated
// node with an integer exponent, matching the grammar's '^' integer rule.
struct Expr {
  enum class Kind { constant, variable, named, unary, binary, power };

  Kind kind;
  double cvalue = 0.0;         // constant
  int var_index = 0;           // variable (0-based)
  NamedConst named{};          // named
  UnaryOp uop{};               // unary
  BinaryOp bop{};              // binary
  int exponent = 0;            // power
  ExprPtr lhs, rhs;            // children (unary/power use lhs only)

  static ExprPtr constant(double v);
  static ExprPtr variable(int index);
  static ExprPtr named_const(NamedConst c);
  static ExprPtr unary(UnaryOp op, ExprPtr a);
  static ExprPtr binary(BinaryOp op, ExprPtr a, ExprPtr b);
  static ExprPtr power(ExprPtr a, int n);
};

// Values for the named constants; sigma/sigma_bar are resolved against the
// metallic parameters supplied alongside the expression, never hard-coded.
struct ConstBindings {
  double p = 1.0;
  double q = 1.0;
  double sigma = 0.0;
  double sigma_bar = 0.0;
};

struct UnknownVariableError : std::runtime_error {
  explicit UnknownVariableError(const std::string& what)
      : std::runtime_error(what) {}
};

// Parses the grammar
//   expr   := term (('+'|'-') term)*
//   term   := ('-')? factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | 'pi' | 'sigma' | 'sigma_bar' | 'p' | 'q'
//           | var | func '(' expr ')' | '(' expr ')'
//   var    := 'u' digit+       (u1 is the first chart coordinate)
//   func   := sin | cos | tan | sqrt | ln
ExprPtr parse_expression(const std::string& text);

// Canonical text form; parse(print(e)) reproduces the tree.
std::string print_expression(const Expr& e);

// Evaluates the 2-jet of the expression at a chart point. Variables must be
// indexed below point.size().
Jet2 jet_eval(const Expr& e, const Vector& point, const ConstBindings& consts);

double eval(const Expr& e, const Vector& point, const ConstBindings& consts);

// Substitutes each variable u_i by the expression repl[i].
ExprPtr substitute(const Expr& e, const std::vector<ExprPtr>& repl);

// Largest variable index used, or -1 if none.
int max_variable_index(const Expr& e);

}  // namespace metallic

#include "metallic/expression.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace metallic {

ExprPtr Expr::constant(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::constant;
  e->cvalue = v;
  return e;
}
ExprPtr Expr::variable(int index) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::variable;
  e->var_index = index;
  return e;
}
ExprPtr Expr::named_const(NamedConst c) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::named;
  e->named = c;
  return e;
}
ExprPtr Expr::unary(UnaryOp op, ExprPtr a) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::unary;
  e->uop = op;
  e->lhs = std::move(a);
  return e;
}
ExprPtr Expr::binary(BinaryOp op, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::binary;
  e->bop = op;
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}
ExprPtr Expr::power(ExprPtr a, int n) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::power;
  e->exponent = n;
  e->lhs = std::move(a);
  return e;
}

namespace {

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
      advance();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  void advance() {
    if (pos < src.size()) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line, col);
  }
};

struct Parser {
  Lexer lx;

  explicit Parser(const std::string& s) : lx(s) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    if (lx.peek() != '\0') lx.fail("unexpected trailing input");
    return e;
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      char c = lx.peek();
      if (c == '+' || c == '-') {
        lx.advance();
        e = Expr::binary(c == '+' ? BinaryOp::add : BinaryOp::sub, e, term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    bool negated = false;
    if (lx.peek() == '-') {
      lx.advance();
      negated = true;
    }
    ExprPtr e = factor();
    for (;;) {
      char c = lx.peek();
      if (c == '*' || c == '/') {
        lx.advance();
        e = Expr::binary(c == '*' ? BinaryOp::mul : BinaryOp::div, e, factor());
      } else {
        break;
      }
    }
    return negated ? Expr::unary(UnaryOp::neg, e) : e;
  }

  ExprPtr factor() {
    ExprPtr e = base();
    if (lx.peek() == '^') {
      lx.advance();
      e = Expr::power(e, integer());
    }
    return e;
  }

  int integer() {
    lx.skip_ws();
    bool neg = false;
    if (lx.peek() == '-') {
      lx.advance();
      neg = true;
    }
    if (!std::isdigit(static_cast<unsigned char>(lx.peek())))
      lx.fail("expected integer exponent");
    long v = 0;
    while (lx.pos < lx.src.size() &&
           std::isdigit(static_cast<unsigned char>(lx.src[lx.pos]))) {
      v = v * 10 + (lx.src[lx.pos] - '0');
      lx.advance();
    }
    return static_cast<int>(neg ? -v : v);
  }

  ExprPtr base() {
    char c = lx.peek();
    if (c == '\0') lx.fail("unexpected end of input");
    if (c == '(') {
      lx.advance();
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    lx.fail(std::string("unexpected character '") + c + "'");
  }

  void expect(char c) {
    if (lx.peek() != c) lx.fail(std::string("expected '") + c + "'");
    lx.advance();
  }

  ExprPtr number() {
    lx.skip_ws();
    size_t start = lx.pos;
    while (lx.pos < lx.src.size() &&
           (std::isdigit(static_cast<unsigned char>(lx.src[lx.pos])) ||
            lx.src[lx.pos] == '.' || lx.src[lx.pos] == 'e' ||
            lx.src[lx.pos] == 'E' ||
            ((lx.src[lx.pos] == '+' || lx.src[lx.pos] == '-') && lx.pos > start &&
             (lx.src[lx.pos - 1] == 'e' || lx.src[lx.pos - 1] == 'E'))))
      lx.advance();
    try {
      size_t used = 0;
      double v = std::stod(lx.src.substr(start, lx.pos - start), &used);
      if (used != lx.pos - start) lx.fail("malformed number");
      return Expr::constant(v);
    } catch (const std::invalid_argument&) {
      lx.fail("malformed number");
    } catch (const std::out_of_range&) {
      lx.fail("number out of range");
    }
  }

  ExprPtr identifier() {
    lx.skip_ws();
    size_t start = lx.pos;
    while (lx.pos < lx.src.size() &&
           (std::isalnum(static_cast<unsigned char>(lx.src[lx.pos])) ||
            lx.src[lx.pos] == '_'))
      lx.advance();
    std::string id = lx.src.substr(start, lx.pos - start);
    if (id == "pi") return Expr::named_const(NamedConst::pi);
    if (id == "sigma") return Expr::named_const(NamedConst::sigma);
    if (id == "sigma_bar") return Expr::named_const(NamedConst::sigma_bar);
    if (id == "p") return Expr::named_const(NamedConst::p);
    if (id == "q") return Expr::named_const(NamedConst::q);
    if (id.size() >= 2 && id[0] == 'u' &&
        std::all_of(id.begin() + 1, id.end(),
                    [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      int idx = std::stoi(id.substr(1));
      if (idx < 1) lx.fail("variable index must be >= 1");
      return Expr::variable(idx - 1);
    }
    UnaryOp op;
    if (id == "sin") op = UnaryOp::sin;
    else if (id == "cos") op = UnaryOp::cos;
    else if (id == "tan") op = UnaryOp::tan;
    else if (id == "sqrt") op = UnaryOp::sqrt;
    else if (id == "ln") op = UnaryOp::ln;
    else lx.fail("unknown identifier '" + id + "'");
    expect('(');
    ExprPtr arg = expr();
    expect(')');
    return Expr::unary(op, arg);
  }
};

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::neg: return "-";
    case UnaryOp::sin: return "sin";
    case UnaryOp::cos: return "cos";
    case UnaryOp::tan: return "tan";
    case UnaryOp::sqrt: return "sqrt";
    case UnaryOp::ln: return "ln";
  }
  return "?";
}

char binary_name(BinaryOp op) {
  switch (op) {
    case BinaryOp::add: return '+';
    case BinaryOp::sub: return '-';
    case BinaryOp::mul: return '*';
    case BinaryOp::div: return '/';
  }
  return '?';
}

}  // namespace

ExprPtr parse_expression(const std::string& text) {
  return Parser(text).parse();
}

std::string print_expression(const Expr& e) {
  std::ostringstream os;
  switch (e.kind) {
    case Expr::Kind::constant: {
      os.precision(17);
      os << e.cvalue;
      break;
    }
    case Expr::Kind::variable:
      os << 'u' << (e.var_index + 1);
      break;
    case Expr::Kind::named:
      switch (e.named) {
        case NamedConst::pi: os << "pi"; break;
        case NamedConst::sigma: os << "sigma"; break;
        case NamedConst::sigma_bar: os << "sigma_bar"; break;
        case NamedConst::p: os << "p"; break;
        case NamedConst::q: os << "q"; break;
      }
      break;
    case Expr::Kind::unary:
      if (e.uop == UnaryOp::neg)
        os << "-(" << print_expression(*e.lhs) << ')';
      else
        os << unary_name(e.uop) << '(' << print_expression(*e.lhs) << ')';
      break;
    case Expr::Kind::binary:
      os << '(' << print_expression(*e.lhs) << ' ' << binary_name(e.bop) << ' '
         << print_expression(*e.rhs) << ')';
      break;
    case Expr::Kind::power:
      os << '(' << print_expression(*e.lhs) << ")^" << e.exponent;
      break;
  }
  return os.str();
}

Jet2 jet_eval(const Expr& e, const Vector& point, const ConstBindings& consts) {
  const int dim = static_cast<int>(point.size());
  switch (e.kind) {
    case Expr::Kind::constant:
      return Jet2::constant(e.cvalue, dim);
    case Expr::Kind::variable:
      if (e.var_index >= dim)
        throw UnknownVariableError("variable u" + std::to_string(e.var_index + 1) +
                                   " exceeds chart dimension " +
                                   std::to_string(dim));
      return Jet2::variable(e.var_index, point(e.var_index), dim);
    case Expr::Kind::named:
      switch (e.named) {
        case NamedConst::pi: return Jet2::constant(M_PI, dim);
        case NamedConst::sigma: return Jet2::constant(consts.sigma, dim);
        case NamedConst::sigma_bar: return Jet2::constant(consts.sigma_bar, dim);
        case NamedConst::p: return Jet2::constant(consts.p, dim);
        case NamedConst::q: return Jet2::constant(consts.q, dim);
      }
      break;
    case Expr::Kind::unary: {
      Jet2 a = jet_eval(*e.lhs, point, consts);
      switch (e.uop) {
        case UnaryOp::neg: return -a;
        case UnaryOp::sin: return sin(a);
        case UnaryOp::cos: return cos(a);
        case UnaryOp::tan: return tan(a);
        case UnaryOp::sqrt: return sqrt(a);
        case UnaryOp::ln: return log(a);
      }
      break;
    }
    case Expr::Kind::binary: {
      Jet2 a = jet_eval(*e.lhs, point, consts);
      Jet2 b = jet_eval(*e.rhs, point, consts);
      switch (e.bop) {
        case BinaryOp::add: return a + b;
        case BinaryOp::sub: return a - b;
        case BinaryOp::mul: return a * b;
        case BinaryOp::div: return a / b;
      }
      break;
    }
    case Expr::Kind::power:
      return pow(jet_eval(*e.lhs, point, consts), e.exponent);
  }
  throw std::logic_error("jet_eval: malformed expression node");
}

double eval(const Expr& e, const Vector& point, const ConstBindings& consts) {
  return jet_eval(e, point, consts).value;
}

ExprPtr substitute(const Expr& e, const std::vector<ExprPtr>& repl) {
  switch (e.kind) {
    case Expr::Kind::constant:
    case Expr::Kind::named:
      return std::make_shared<Expr>(e);
    case Expr::Kind::variable:
      if (e.var_index >= static_cast<int>(repl.size()))
        throw UnknownVariableError("substitute: no replacement for u" +
                                   std::to_string(e.var_index + 1));
      return repl[e.var_index];
    case Expr::Kind::unary:
      return Expr::unary(e.uop, substitute(*e.lhs, repl));
    case Expr::Kind::binary:
      return Expr::binary(e.bop, substitute(*e.lhs, repl),
                          substitute(*e.rhs, repl));
    case Expr::Kind::power:
      return Expr::power(substitute(*e.lhs, repl), e.exponent);
  }
  throw std::logic_error("substitute: malformed expression node");
}

int max_variable_index(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::constant:
    case Expr::Kind::named:
      return -1;
    case Expr::Kind::variable:
      return e.var_index;
    case Expr::Kind::unary:
    case Expr::Kind::power:
      return max_variable_index(*e.lhs);
    case Expr::Kind::binary:
      return std::max(max_variable_index(*e.lhs), max_variable_index(*e.rhs));
  }
  return -1;
}

}  // namespace metallic

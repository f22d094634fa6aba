#include "sqfn/expr.hpp"

#include <cctype>
#include <cmath>

namespace sqfn {

namespace {

struct Const : Expr {
  double v;
  explicit Const(double v) : v(v) {}
  double eval(PointView) const override { return v; }
};

struct Coord : Expr {
  int i;
  explicit Coord(int i) : i(i) {}
  double eval(PointView u) const override { return u[static_cast<std::size_t>(i)]; }
};

struct Norm : Expr {
  double eval(PointView u) const override {
    double s = 0.0;
    for (double c : u) s += c * c;
    return std::sqrt(s);
  }
};

struct Neg : Expr {
  ExprPtr a;
  explicit Neg(ExprPtr a) : a(std::move(a)) {}
  double eval(PointView u) const override { return -a->eval(u); }
};

struct Bin : Expr {
  char op;
  ExprPtr a, b;
  Bin(char op, ExprPtr a, ExprPtr b) : op(op), a(std::move(a)), b(std::move(b)) {}
  double eval(PointView u) const override {
    double x = a->eval(u), y = b->eval(u);
    switch (op) {
      case '+': return x + y;
      case '-': return x - y;
      case '*': return x * y;
      case '/': return x / y;
      default: return std::pow(x, y);
    }
  }
};

class Parser {
 public:
  Parser(const std::string& text, int max_dim) : text_(text), max_dim_(max_dim) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      skip_ws();
      if (accept('+')) e = std::make_shared<Bin>('+', e, term());
      else if (accept('-')) e = std::make_shared<Bin>('-', e, term());
      else return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      skip_ws();
      if (accept('*')) e = std::make_shared<Bin>('*', e, unary());
      else if (accept('/')) e = std::make_shared<Bin>('/', e, unary());
      else return e;
    }
  }

  // unary minus binds looser than '^', so -x1^2 means -(x1^2)
  ExprPtr unary() {
    skip_ws();
    if (accept('-')) return std::make_shared<Neg>(unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    skip_ws();
    if (accept('^')) return std::make_shared<Bin>('^', base, unary());  // right assoc
    return base;
  }

  ExprPtr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    char c = text_[pos_];
    if (accept('(')) {
      ExprPtr e = expr();
      skip_ws();
      if (!accept(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = std::stod(text_.substr(pos_), &used);
      pos_ += used;
      return std::make_shared<Const>(v);
    }
    if (c == 'r') {
      ++pos_;
      return std::make_shared<Norm>();
    }
    if (c == 'x') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("coordinate index expected after 'x'");
      int idx = text_[pos_] - '0';
      ++pos_;
      if (idx < 1 || idx > max_dim_) fail("coordinate index out of range");
      return std::make_shared<Coord>(idx - 1);
    }
    fail(std::string("unexpected character '") + c + "'");
    return nullptr;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ValidationError("expression parse error at position " + std::to_string(pos_) + ": " + what);
  }

  const std::string& text_;
  int max_dim_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(const std::string& text, int max_dim) {
  return Parser(text, max_dim).run();
}

}  // namespace sqfn

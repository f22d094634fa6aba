#pragma once

#include <memory>
#include <string>

#include "sqfn/common.hpp"

namespace sqfn {

/// Parsed arithmetic expression over the components of a difference vector.
/// Supported: + - * / ^, parentheses, numeric literals, coordinates x1..x9,
/// and r = |x| (the Euclidean norm of the argument vector).
class Expr {
 public:
  virtual ~Expr() = default;
  virtual double eval(PointView u) const = 0;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Parses an expression; throws ValidationError with position info on bad input.
ExprPtr parse_expr(const std::string& text, int max_dim);

}  // namespace sqfn

#ifndef HBKIT_SYMCALC_EXPR_HPP
#define HBKIT_SYMCALC_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hbkit/symcalc/scalar.hpp"

namespace hbkit::symcalc {

/// Raw expression tree, as produced by the parser or built by hand.
struct Expr {
  enum class Kind { kNumber, kSymbol, kAdd, kMul, kNeg, kDiv, kPow, kSin, kCos };

  Kind kind;
  Rational number;   // kNumber
  std::string name;  // kSymbol
  int exponent = 0;  // kPow
  std::vector<std::shared_ptr<const Expr>> args;

  static std::shared_ptr<const Expr> num(Rational v);
  static std::shared_ptr<const Expr> sym(std::string name);
  static std::shared_ptr<const Expr> node(Kind kind, std::vector<std::shared_ptr<const Expr>> args);
  static std::shared_ptr<const Expr> power(std::shared_ptr<const Expr> base, int exponent);
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Grammar: sums and products of rationals, decimals, symbols, `pi`,
/// `(…)`, `^` with a nonnegative integer exponent, division by a constant,
/// and sin/cos of an integer combination of angles. Throws ExpressionError
/// with the offending column.
ExprPtr parse(std::string_view text);

/// Canonical form. Throws UnknownSymbol for names missing from the chart.
Scalar normalize(const Expr& e, const ChartPtr& chart);

Scalar parse_scalar(const ChartPtr& chart, std::string_view text);

}  // namespace hbkit::symcalc

#endif  // HBKIT_SYMCALC_EXPR_HPP

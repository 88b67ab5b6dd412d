#include "hbkit/symcalc/expr.hpp"

#include <cctype>

#include "hbkit/errors.hpp"

namespace hbkit::symcalc {

ExprPtr Expr::num(Rational v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kNumber;
  e->number = std::move(v);
  return e;
}

ExprPtr Expr::sym(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kSymbol;
  e->name = std::move(name);
  return e;
}

ExprPtr Expr::node(Kind kind, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->args = std::move(args);
  return e;
}

ExprPtr Expr::power(ExprPtr base, int exponent) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::kPow;
  e->exponent = exponent;
  e->args = {std::move(base)};
  return e;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr run() {
    auto e = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError(what + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr sum() {
    std::vector<ExprPtr> parts{product()};
    for (;;) {
      if (accept('+')) {
        parts.push_back(product());
      } else if (accept('-')) {
        parts.push_back(Expr::node(Expr::Kind::kNeg, {product()}));
      } else {
        break;
      }
    }
    return parts.size() == 1 ? parts.front() : Expr::node(Expr::Kind::kAdd, std::move(parts));
  }

  ExprPtr product() {
    ExprPtr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = Expr::node(Expr::Kind::kMul, {acc, unary()});
      } else if (accept('/')) {
        acc = Expr::node(Expr::Kind::kDiv, {acc, unary()});
      } else {
        return acc;
      }
    }
  }

  ExprPtr unary() {
    if (accept('-')) return Expr::node(Expr::Kind::kNeg, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (accept('^')) {
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      const auto digits = std::string(text_.substr(start, pos_ - start));
      if (digits.size() > 4) fail("exponent too large");
      return Expr::power(base, std::stoi(digits));
    }
    return base;
  }

  ExprPtr atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == "sin" || name == "cos") {
        if (!accept('(')) fail("expected '(' after " + name);
        ExprPtr arg = sum();
        if (!accept(')')) fail("expected ')'");
        return Expr::node(name == "sin" ? Expr::Kind::kSin : Expr::Kind::kCos, {arg});
      }
      return Expr::sym(std::move(name));
    }
    fail("unexpected character");
  }

  ExprPtr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string whole(text_.substr(start, pos_ - start));
    std::string frac;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      frac = std::string(text_.substr(fs, pos_ - fs));
    }
    if (whole.empty() && frac.empty()) fail("malformed number");
    mpz_class num(whole + frac, 10);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    Rational v(num, den);
    v.canonicalize();
    return Expr::num(v);
  }
};

// Integer-linear combination of angles inside sin/cos.
struct Linear {
  Rational constant;
  std::vector<Rational> coeffs;
};

Linear linear_angles(const Expr& e, const Chart& chart) {
  const std::size_t na = chart.n_angles();
  auto zero = [na] { return Linear{Rational(0), std::vector<Rational>(na, Rational(0))}; };
  auto is_const = [](const Linear& l) {
    for (const auto& c : l.coeffs)
      if (sgn(c) != 0) return false;
    return true;
  };
  auto scale = [](Linear l, const Rational& s) {
    l.constant *= s;
    for (auto& c : l.coeffs) c *= s;
    return l;
  };
  switch (e.kind) {
    case Expr::Kind::kNumber: {
      auto l = zero();
      l.constant = e.number;
      return l;
    }
    case Expr::Kind::kSymbol: {
      auto s = chart.lookup(e.name);
      if (s.kind != SymbolKind::kAngle)
        throw ExpressionError("sin/cos argument mentions non-angle symbol '" + e.name + "'");
      auto l = zero();
      l.coeffs[s.index] = 1;
      return l;
    }
    case Expr::Kind::kAdd: {
      auto l = zero();
      for (const auto& a : e.args) {
        auto r = linear_angles(*a, chart);
        l.constant += r.constant;
        for (std::size_t i = 0; i < na; ++i) l.coeffs[i] += r.coeffs[i];
      }
      return l;
    }
    case Expr::Kind::kNeg:
      return scale(linear_angles(*e.args[0], chart), Rational(-1));
    case Expr::Kind::kMul: {
      auto a = linear_angles(*e.args[0], chart);
      auto b = linear_angles(*e.args[1], chart);
      if (is_const(a)) return scale(b, a.constant);
      if (is_const(b)) return scale(a, b.constant);
      throw ExpressionError("sin/cos argument is not linear in the angles");
    }
    case Expr::Kind::kDiv: {
      auto a = linear_angles(*e.args[0], chart);
      auto b = linear_angles(*e.args[1], chart);
      if (!is_const(b) || sgn(b.constant) == 0) throw ExpressionError("division by a non-constant");
      return scale(a, 1 / b.constant);
    }
    case Expr::Kind::kPow: {
      auto a = linear_angles(*e.args[0], chart);
      if (e.exponent == 1) return a;
      if (!is_const(a)) throw ExpressionError("sin/cos argument is not linear in the angles");
      mpq_class v = 1;
      for (int i = 0; i < e.exponent; ++i) v *= a.constant;
      auto l = zero();
      l.constant = v;
      return l;
    }
    case Expr::Kind::kSin:
    case Expr::Kind::kCos:
      break;
  }
  throw ExpressionError("nested sin/cos in a sin/cos argument");
}

Scalar trig(const Expr& arg, const ChartPtr& chart, bool sine) {
  auto l = linear_angles(arg, *chart);
  if (sgn(l.constant) != 0) throw ExpressionError("sin/cos argument has a constant phase");
  std::vector<int> freqs(chart->n_angles());
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (l.coeffs[i].get_den() != 1) throw ExpressionError("sin/cos frequencies must be integers");
    if (!l.coeffs[i].get_num().fits_sint_p()) throw ExpressionError("sin/cos frequency too large");
    freqs[i] = static_cast<int>(l.coeffs[i].get_num().get_si());
  }
  return Scalar::harmonic(chart, std::move(freqs), sine);
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

Scalar normalize(const Expr& e, const ChartPtr& chart) {
  switch (e.kind) {
    case Expr::Kind::kNumber:
      return Scalar(chart, e.number);
    case Expr::Kind::kSymbol:
      return Scalar::symbol(chart, e.name);
    case Expr::Kind::kAdd: {
      ScalarBuilder b(chart);
      for (const auto& a : e.args) b.add(normalize(*a, chart));
      return std::move(b).build();
    }
    case Expr::Kind::kMul: {
      Scalar acc(chart, Rational(1));
      for (const auto& a : e.args) acc *= normalize(*a, chart);
      return acc;
    }
    case Expr::Kind::kNeg:
      return -normalize(*e.args[0], chart);
    case Expr::Kind::kDiv: {
      Scalar den = normalize(*e.args[1], chart);
      if (!den.is_constant() || den.is_zero()) throw ExpressionError("division is only allowed by a nonzero constant");
      return normalize(*e.args[0], chart) * (1 / den.constant_term());
    }
    case Expr::Kind::kPow:
      return pow(normalize(*e.args[0], chart), static_cast<unsigned>(e.exponent));
    case Expr::Kind::kSin:
      return trig(*e.args[0], chart, true);
    case Expr::Kind::kCos:
      return trig(*e.args[0], chart, false);
  }
  throw ExpressionError("malformed expression");
}

Scalar parse_scalar(const ChartPtr& chart, std::string_view text) { return normalize(*parse(text), chart); }

}  // namespace hbkit::symcalc

#ifndef HBKIT_SYMCALC_SCALAR_HPP
#define HBKIT_SYMCALC_SCALAR_HPP

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hbkit/symcalc/chart.hpp"

namespace hbkit::symcalc {

using Rational = mpq_class;

/// Packed monomial: one exponent per polynomial slot, one frequency per
/// angle, then 0 for cos or 1 for sin. A zero frequency vector is always
/// cos; otherwise the first nonzero frequency is positive.
using TermKey = std::vector<int>;

struct Term {
  TermKey key;
  Rational coeff;
};

/// Element of the coefficient ring: Q-polynomials in coordinates,
/// parameters and pi, times trigonometric polynomials in the angles.
///
/// Terms are kept sorted by key with nonzero coefficients, so two Scalars on
/// the same chart are equal iff their term lists are equal. A
/// default-constructed Scalar is a chart-less zero; it adopts the chart of
/// whatever it is combined with.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(ChartPtr chart) : chart_(std::move(chart)) {}
  Scalar(ChartPtr chart, const Rational& c);
  Scalar(ChartPtr chart, long c) : Scalar(std::move(chart), Rational(c)) {}

  /// A coordinate, parameter or `pi`.
  static Scalar symbol(ChartPtr chart, std::string_view name);
  static Scalar symbol(ChartPtr chart, const Symbol& s);
  /// cos(m.theta) or sin(m.theta) for an integer frequency vector m.
  static Scalar harmonic(ChartPtr chart, std::vector<int> freqs, bool sine);
  /// Canonicalizes arbitrary (possibly repeated, non-normalized) terms.
  static Scalar from_terms(ChartPtr chart, std::vector<Term> terms);

  const ChartPtr& chart() const { return chart_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True if no coordinate, parameter, pi or angle occurs.
  bool is_constant() const;
  Rational constant_term() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator*=(const Rational& c);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator*(Scalar a, const Rational& c) { return a *= c; }
  friend Scalar operator*(const Rational& c, Scalar a) { return a *= c; }
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  ChartPtr chart_;
  std::vector<Term> terms_;

  friend class ScalarBuilder;
};

/// Accumulates terms on a fixed chart and emits a canonical Scalar.
class ScalarBuilder {
 public:
  explicit ScalarBuilder(ChartPtr chart);
  /// `key` must already be canonical.
  void add(const TermKey& key, const Rational& coeff);
  /// Accepts any frequency sign; applies the trig normalization.
  void add_trig(TermKey key, Rational coeff);
  void add(const Scalar& s, const Rational& factor = 1);
  Scalar build() &&;

 private:
  ChartPtr chart_;
  std::vector<Term> pending_;
};

// Key layout helpers.
std::size_t key_size(const Chart& chart);
int key_frequency(const Chart& chart, const TermKey& key, std::size_t angle);
bool key_is_sine(const TermKey& key);

Scalar pow(const Scalar& base, unsigned exponent);

Scalar partial_derivative(const Scalar& f, const Symbol& v);
Scalar partial_derivative(const Scalar& f, std::string_view name);

/// Simultaneous substitution of polynomial symbols (coordinates or
/// parameters). All replacements share one chart, which must extend the
/// chart of `f`; the result lives on that chart.
Scalar substitute(const Scalar& f, const std::vector<std::pair<Symbol, Scalar>>& replacements);
Scalar substitute(const Scalar& f, const std::vector<std::pair<std::string, Scalar>>& replacements);

/// Re-expresses each angle of `f` as an integer combination of the angles
/// of `target` (`angle_map[j]` has one entry per target angle). Polynomial
/// slots carry over by name; `target` must contain every coordinate and
/// parameter of `f`'s chart.
Scalar substitute_angles(const Scalar& f, const ChartPtr& target, const std::vector<std::vector<int>>& angle_map);

/// Moves `f` onto a chart that extends its own.
Scalar lift(const Scalar& f, const ChartPtr& target);

/// Haar average over one circle factor.
Scalar average_over_angle(const Scalar& f, std::size_t angle);
Scalar average_over_angle(const Scalar& f, std::string_view angle);

/// (1/2pi) Int_0^{2pi} Int_0^theta f(s) ds dtheta, where `angle` plays the
/// role of s. The result no longer depends on that angle.
Scalar average_of_running_integral(const Scalar& f, std::size_t angle);

/// Int_0^1 f dt. Throws NonPolynomialIntegrand if t enters trigonometrically.
Scalar integrate_unit_interval(const Scalar& f, const Symbol& t);
Scalar integrate_unit_interval(const Scalar& f, std::string_view t);

bool is_identically_zero(const Scalar& f);
bool depends_on(const Scalar& f, const Symbol& s);

/// Floating-point value. `poly` holds coordinates then parameters (pi is
/// supplied internally); `angles` one value per chart angle.
double evaluate(const Scalar& f, const std::vector<double>& poly, const std::vector<double>& angles);

/// Re-parseable text form.
std::string to_string(const Scalar& f);

inline std::ostream& operator<<(std::ostream& os, const Scalar& f) { return os << to_string(f); }

}  // namespace hbkit::symcalc

#endif  // HBKIT_SYMCALC_SCALAR_HPP

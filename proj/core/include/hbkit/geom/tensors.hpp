#ifndef HBKIT_GEOM_TENSORS_HPP
#define HBKIT_GEOM_TENSORS_HPP

#include <bit>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "hbkit/errors.hpp"
#include "hbkit/symcalc/scalar.hpp"
#include "hbkit/verdict.hpp"

namespace hbkit::geom {

using symcalc::ChartPtr;
using symcalc::Rational;
using symcalc::Scalar;

/// Increasing multi-index over chart coordinates, one bit per coordinate.
using Mask = std::uint32_t;

inline std::size_t mask_degree(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }
Mask mask_of(const std::vector<std::size_t>& sorted_indices);
std::vector<std::size_t> indices_of(Mask m);
/// Sign of the permutation sorting `indices`; 0 if an index repeats.
int sort_sign(std::vector<std::size_t>& indices);
/// Sign of e_a ^ e_b rewritten on the sorted union; 0 if they overlap.
int merge_sign(Mask a, Mask b);
/// "dx1^dq"-style label for witnesses.
std::string mask_label(const symcalc::Chart& chart, Mask m, bool vector_basis);

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(ChartPtr chart);
  VectorField(ChartPtr chart, std::vector<Scalar> components);
  /// The coordinate field for coordinate `i`.
  static VectorField coordinate(ChartPtr chart, std::size_t i);

  const ChartPtr& chart() const { return chart_; }
  std::size_t size() const { return components_.size(); }
  const Scalar& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<Scalar>& components() const { return components_; }
  void set(std::size_t i, Scalar value);
  bool is_zero() const;

  VectorField operator-() const;
  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Scalar& f, const VectorField& X);
  friend bool operator==(const VectorField& a, const VectorField& b);

 private:
  ChartPtr chart_;
  std::vector<Scalar> components_;
};

struct FormTag {};
struct MultivectorTag {};

/// Totally antisymmetric tensor stored on increasing multi-indices. With
/// FormTag the basis is dx^I, with MultivectorTag it is d_I.
template <class Tag>
class Alternating {
 public:
  Alternating() = default;
  Alternating(ChartPtr chart, std::size_t degree) : chart_(std::move(chart)), degree_(degree) {
    if (chart_ && chart_->dimension() > 32) throw UnsupportedDegree("charts are limited to 32 coordinates");
    if (chart_ && degree_ > chart_->dimension()) throw DegreeOverflow("degree exceeds dimension");
  }
  /// Degree-0 element.
  static Alternating function(const Scalar& f) {
    Alternating out(f.chart(), 0);
    out.set(0, f);
    return out;
  }
  /// Basis element for the given indices (any order; sign applied).
  static Alternating basis(ChartPtr chart, std::vector<std::size_t> indices) {
    Alternating out(chart, indices.size());
    const int sign = sort_sign(indices);
    if (sign != 0) out.set(mask_of(indices), Scalar(chart, Rational(sign)));
    return out;
  }

  const ChartPtr& chart() const { return chart_; }
  std::size_t degree() const { return degree_; }
  const std::map<Mask, Scalar>& coefficients() const { return coeffs_; }
  Scalar coefficient(Mask m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? Scalar(chart_) : it->second;
  }
  Scalar coefficient(std::vector<std::size_t> indices) const {
    const int sign = sort_sign(indices);
    if (sign == 0) return Scalar(chart_);
    return coefficient(mask_of(indices)) * Rational(sign);
  }
  void set(Mask m, Scalar value) {
    if (mask_degree(m) != degree_) throw DegreeMismatch("multi-index has the wrong degree");
    if (value.is_zero()) {
      coeffs_.erase(m);
    } else {
      coeffs_[m] = std::move(value);
    }
  }
  void add_to(Mask m, const Scalar& value) {
    if (value.is_zero()) return;
    auto it = coeffs_.find(m);
    if (it == coeffs_.end()) {
      set(m, value);
      return;
    }
    it->second += value;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
  bool is_zero() const { return coeffs_.empty(); }

  Alternating operator-() const {
    Alternating out = *this;
    for (auto& [m, c] : out.coeffs_) c = -c;
    return out;
  }
  Alternating& operator+=(const Alternating& o) {
    require_compatible(o);
    for (const auto& [m, c] : o.coeffs_) add_to(m, c);
    return *this;
  }
  Alternating& operator-=(const Alternating& o) { return *this += -o; }
  friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
  friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }
  friend Alternating operator*(const Scalar& f, const Alternating& a) {
    Alternating out(a.chart_ ? a.chart_ : f.chart(), a.degree_);
    if (f.is_zero()) return out;
    for (const auto& [m, c] : a.coeffs_) out.set(m, f * c);
    return out;
  }
  friend bool operator==(const Alternating& a, const Alternating& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void require_compatible(const Alternating& o) {
    if (!chart_) {
      chart_ = o.chart_;
      degree_ = o.degree_;
      return;
    }
    if (!o.chart_) return;
    symcalc::require_same_chart(chart_, o.chart_);
    if (degree_ != o.degree_) throw DegreeMismatch("adding tensors of different degree");
  }

  ChartPtr chart_;
  std::size_t degree_ = 0;
  std::map<Mask, Scalar> coeffs_;
};

using DiffForm = Alternating<FormTag>;
using Multivector = Alternating<MultivectorTag>;

DiffForm coordinate_differential(ChartPtr chart, std::size_t i);

/// Vector-valued k-form, stored as one k-form per output direction:
/// K = sum_a K^a (x) d_a.
class VecValuedForm {
 public:
  VecValuedForm() = default;
  VecValuedForm(ChartPtr chart, std::size_t degree);
  VecValuedForm(ChartPtr chart, std::vector<DiffForm> components);
  /// Degree-0 vector-valued form of a vector field.
  static VecValuedForm from_vector_field(const VectorField& X);
  /// Identity endomorphism sum_a dx^a (x) d_a.
  static VecValuedForm identity(ChartPtr chart);
  /// Builds from values on increasing multi-indices.
  static VecValuedForm from_values(ChartPtr chart, std::size_t degree, const std::map<Mask, VectorField>& values);

  const ChartPtr& chart() const { return chart_; }
  std::size_t degree() const { return degree_; }
  const DiffForm& component(std::size_t a) const { return components_[a]; }
  const std::vector<DiffForm>& components() const { return components_; }
  void set_component(std::size_t a, DiffForm form);
  /// The vector value on the basis multi-index `m`.
  VectorField value(Mask m) const;
  VectorField to_vector_field() const;
  bool is_zero() const;

  VecValuedForm operator-() const;
  VecValuedForm& operator+=(const VecValuedForm& o);
  VecValuedForm& operator-=(const VecValuedForm& o);
  friend VecValuedForm operator+(VecValuedForm a, const VecValuedForm& b) { return a += b; }
  friend VecValuedForm operator-(VecValuedForm a, const VecValuedForm& b) { return a -= b; }
  friend VecValuedForm operator*(const Scalar& f, const VecValuedForm& K);
  friend bool operator==(const VecValuedForm& a, const VecValuedForm& b);

 private:
  ChartPtr chart_;
  std::size_t degree_ = 0;
  std::vector<DiffForm> components_;
};

// Zero tests with a witness naming the first nonvanishing coefficient.
Verdict check_zero(const VectorField& X, const std::string& where = {});
Verdict check_zero(const DiffForm& a, const std::string& where = {});
Verdict check_zero(const Multivector& a, const std::string& where = {});
Verdict check_zero(const VecValuedForm& K, const std::string& where = {});

std::string to_string(const VectorField& X);
std::string to_string(const DiffForm& a);
std::string to_string(const Multivector& a);
std::string to_string(const VecValuedForm& K);

inline std::ostream& operator<<(std::ostream& os, const VectorField& X) { return os << to_string(X); }
inline std::ostream& operator<<(std::ostream& os, const DiffForm& a) { return os << to_string(a); }
inline std::ostream& operator<<(std::ostream& os, const Multivector& a) { return os << to_string(a); }
inline std::ostream& operator<<(std::ostream& os, const VecValuedForm& K) { return os << to_string(K); }

}  // namespace hbkit::geom

#endif  // HBKIT_GEOM_TENSORS_HPP

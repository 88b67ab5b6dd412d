#include "hbkit/geom/tensors.hpp"

#include <algorithm>
#include <sstream>

namespace hbkit::geom {

Mask mask_of(const std::vector<std::size_t>& sorted_indices) {
  Mask m = 0;
  for (auto i : sorted_indices) m |= Mask{1} << i;
  return m;
}

std::vector<std::size_t> indices_of(Mask m) {
  std::vector<std::size_t> out;
  while (m != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

int sort_sign(std::vector<std::size_t>& indices) {
  int sign = 1;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    for (std::size_t j = i; j > 0 && indices[j - 1] >= indices[j]; --j) {
      if (indices[j - 1] == indices[j]) return 0;
      std::swap(indices[j - 1], indices[j]);
      sign = -sign;
    }
  }
  return sign;
}

int merge_sign(Mask a, Mask b) {
  if ((a & b) != 0) return 0;
  // Each index of b must move past the indices of a that exceed it.
  std::size_t swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    const int i = std::countr_zero(rest);
    const Mask above = i >= 31 ? Mask{0} : ~((Mask{1} << (i + 1)) - 1);
    swaps += mask_degree(a & above);
  }
  return swaps % 2 == 0 ? 1 : -1;
}

std::string mask_label(const symcalc::Chart& chart, Mask m, bool vector_basis) {
  if (m == 0) return "1";
  std::string out;
  for (auto i : indices_of(m)) {
    if (!out.empty()) out += "^";
    out += (vector_basis ? "d_" : "d") + chart.coordinate_name(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// VectorField

VectorField::VectorField(ChartPtr chart) : chart_(std::move(chart)) {
  components_.assign(chart_->dimension(), Scalar(chart_));
}

VectorField::VectorField(ChartPtr chart, std::vector<Scalar> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_->dimension())
    throw DegreeMismatch("vector field needs one component per coordinate");
  for (auto& c : components_) {
    if (c.is_zero()) {
      c = Scalar(chart_);
    } else {
      symcalc::require_same_chart(chart_, c.chart());
    }
  }
}

VectorField VectorField::coordinate(ChartPtr chart, std::size_t i) {
  VectorField X(chart);
  X.components_.at(i) = Scalar(chart, Rational(1));
  return X;
}

void VectorField::set(std::size_t i, Scalar value) {
  if (!value.is_zero()) symcalc::require_same_chart(chart_, value.chart());
  components_.at(i) = value.is_zero() ? Scalar(chart_) : std::move(value);
}

bool VectorField::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Scalar& s) { return s.is_zero(); });
}

VectorField VectorField::operator-() const {
  VectorField out = *this;
  for (auto& c : out.components_) c = -c;
  return out;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  if (!chart_) {
    *this = o;
    return *this;
  }
  if (!o.chart_) return *this;
  symcalc::require_same_chart(chart_, o.chart_);
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += o.components_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) { return *this += -o; }

VectorField operator*(const Scalar& f, const VectorField& X) {
  VectorField out = X;
  for (auto& c : out.components_) c = f * c;
  return out;
}

bool operator==(const VectorField& a, const VectorField& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.components_ == b.components_;
}

DiffForm coordinate_differential(ChartPtr chart, std::size_t i) { return DiffForm::basis(chart, {i}); }

// ---------------------------------------------------------------------------
// VecValuedForm

VecValuedForm::VecValuedForm(ChartPtr chart, std::size_t degree) : chart_(std::move(chart)), degree_(degree) {
  components_.assign(chart_->dimension(), DiffForm(chart_, degree));
}

VecValuedForm::VecValuedForm(ChartPtr chart, std::vector<DiffForm> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_->dimension())
    throw DegreeMismatch("vector-valued form needs one component per coordinate");
  degree_ = components_.empty() ? 0 : components_.front().degree();
  for (auto& c : components_) {
    if (c.is_zero()) {
      c = DiffForm(chart_, degree_);
      continue;
    }
    if (c.degree() != degree_) throw DegreeMismatch("components of different degree");
    symcalc::require_same_chart(chart_, c.chart());
  }
}

VecValuedForm VecValuedForm::from_vector_field(const VectorField& X) {
  std::vector<DiffForm> comps;
  comps.reserve(X.size());
  for (const auto& c : X.components()) {
    DiffForm f(X.chart(), 0);
    f.set(0, c);
    comps.push_back(std::move(f));
  }
  return VecValuedForm(X.chart(), std::move(comps));
}

VecValuedForm VecValuedForm::identity(ChartPtr chart) {
  VecValuedForm out(chart, 1);
  for (std::size_t a = 0; a < chart->dimension(); ++a) out.components_[a] = coordinate_differential(chart, a);
  return out;
}

VecValuedForm VecValuedForm::from_values(ChartPtr chart, std::size_t degree,
                                         const std::map<Mask, VectorField>& values) {
  VecValuedForm out(chart, degree);
  for (const auto& [m, v] : values) {
    if (mask_degree(m) != degree) throw DegreeMismatch("multi-index has the wrong degree");
    for (std::size_t a = 0; a < v.size(); ++a) out.components_[a].add_to(m, v[a]);
  }
  return out;
}

void VecValuedForm::set_component(std::size_t a, DiffForm form) {
  if (form.is_zero()) form = DiffForm(chart_, degree_);
  if (form.degree() != degree_) throw DegreeMismatch("component has the wrong degree");
  components_.at(a) = std::move(form);
}

VectorField VecValuedForm::value(Mask m) const {
  VectorField out(chart_);
  for (std::size_t a = 0; a < components_.size(); ++a) out.set(a, components_[a].coefficient(m));
  return out;
}

VectorField VecValuedForm::to_vector_field() const {
  if (degree_ != 0) throw DegreeMismatch("not a degree-0 vector-valued form");
  return value(0);
}

bool VecValuedForm::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const DiffForm& f) { return f.is_zero(); });
}

VecValuedForm VecValuedForm::operator-() const {
  VecValuedForm out = *this;
  for (auto& c : out.components_) c = -c;
  return out;
}

VecValuedForm& VecValuedForm::operator+=(const VecValuedForm& o) {
  if (!chart_) {
    *this = o;
    return *this;
  }
  if (!o.chart_) return *this;
  symcalc::require_same_chart(chart_, o.chart_);
  if (degree_ != o.degree_) throw DegreeMismatch("adding vector-valued forms of different degree");
  for (std::size_t a = 0; a < components_.size(); ++a) components_[a] += o.components_[a];
  return *this;
}

VecValuedForm& VecValuedForm::operator-=(const VecValuedForm& o) { return *this += -o; }

VecValuedForm operator*(const Scalar& f, const VecValuedForm& K) {
  VecValuedForm out = K;
  for (auto& c : out.components_) c = f * c;
  return out;
}

bool operator==(const VecValuedForm& a, const VecValuedForm& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.components_ == b.components_;
}

// ---------------------------------------------------------------------------
// witnesses and printing

namespace {

std::string join_where(const std::string& where, const std::string& label) {
  return where.empty() ? label : where + " " + label;
}

template <class Tag>
Verdict check_alternating(const Alternating<Tag>& a, const std::string& where, bool vector_basis) {
  if (a.is_zero()) return Verdict::pass();
  const auto& [m, c] = *a.coefficients().begin();
  return Verdict::fail(join_where(where, "[" + mask_label(*a.chart(), m, vector_basis) + "]"), c);
}

template <class Tag>
std::string alternating_string(const Alternating<Tag>& a, bool vector_basis) {
  if (a.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : a.coefficients()) {
    if (!first) out << " + ";
    first = false;
    out << "(" << symcalc::to_string(c) << ")";
    if (m != 0) out << " " << mask_label(*a.chart(), m, vector_basis);
  }
  return out.str();
}

}  // namespace

Verdict check_zero(const VectorField& X, const std::string& where) {
  for (std::size_t i = 0; i < X.size(); ++i)
    if (!X[i].is_zero()) return Verdict::fail(join_where(where, "[d_" + X.chart()->coordinate_name(i) + "]"), X[i]);
  return Verdict::pass();
}

Verdict check_zero(const DiffForm& a, const std::string& where) { return check_alternating(a, where, false); }

Verdict check_zero(const Multivector& a, const std::string& where) { return check_alternating(a, where, true); }

Verdict check_zero(const VecValuedForm& K, const std::string& where) {
  for (std::size_t a = 0; a < K.components().size(); ++a) {
    const auto& comp = K.component(a);
    if (comp.is_zero()) continue;
    const auto& [m, c] = *comp.coefficients().begin();
    return Verdict::fail(
        join_where(where, "[" + mask_label(*K.chart(), m, false) + " -> d_" + K.chart()->coordinate_name(a) + "]"), c);
  }
  return Verdict::pass();
}

std::string to_string(const VectorField& X) {
  if (X.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << symcalc::to_string(X[i]) << ") d_" << X.chart()->coordinate_name(i);
  }
  return out.str();
}

std::string to_string(const DiffForm& a) { return alternating_string(a, false); }

std::string to_string(const Multivector& a) { return alternating_string(a, true); }

std::string to_string(const VecValuedForm& K) {
  if (K.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t a = 0; a < K.components().size(); ++a) {
    if (K.component(a).is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "[" << to_string(K.component(a)) << "] (x) d_" << K.chart()->coordinate_name(a);
  }
  return out.str();
}

}  // namespace hbkit::geom

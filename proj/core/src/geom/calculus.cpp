#include "hbkit/geom/calculus.hpp"

#include "hbkit/symcalc/scalar.hpp"

namespace hbkit::geom {

namespace {

using symcalc::Symbol;
using symcalc::SymbolKind;

Scalar d_coord(const Scalar& f, std::size_t i) {
  return symcalc::partial_derivative(f, Symbol{SymbolKind::kCoordinate, i});
}

// Sign of moving index i to the front of the increasing list m.
int front_sign(Mask m, std::size_t i) {
  const Mask below = (Mask{1} << i) - 1;
  return mask_degree(m & below) % 2 == 0 ? 1 : -1;
}

// Sign of the right derivative of d_I by d_i: (-1)^{#{j in I : j > i}}.
int right_sign(Mask m, std::size_t i) {
  const Mask above = i >= 31 ? Mask{0} : ~((Mask{1} << (i + 1)) - 1);
  return mask_degree(m & above) % 2 == 0 ? 1 : -1;
}

template <class Tag>
Alternating<Tag> wedge_impl(const Alternating<Tag>& a, const Alternating<Tag>& b) {
  ChartPtr chart = a.chart() ? a.chart() : b.chart();
  if (a.chart() && b.chart()) symcalc::require_same_chart(a.chart(), b.chart());
  const std::size_t degree = a.degree() + b.degree();
  if (degree > chart->dimension()) throw DegreeOverflow("wedge degree exceeds dimension");
  Alternating<Tag> out(chart, degree);
  for (const auto& [ma, ca] : a.coefficients()) {
    for (const auto& [mb, cb] : b.coefficients()) {
      const int s = merge_sign(ma, mb);
      if (s == 0) continue;
      out.add_to(ma | mb, ca * cb * Rational(s));
    }
  }
  return out;
}

DiffForm partial_coefficients(const DiffForm& a, std::size_t i) {
  DiffForm out(a.chart(), a.degree());
  for (const auto& [m, c] : a.coefficients()) out.set(m, d_coord(c, i));
  return out;
}

// i_{d_i} a, with the convention that it vanishes on 0-forms.
DiffForm contract_coordinate(const DiffForm& a, std::size_t i) {
  if (a.degree() == 0) return DiffForm(a.chart(), 0);
  DiffForm out(a.chart(), a.degree() - 1);
  const Mask bit = Mask{1} << i;
  for (const auto& [m, c] : a.coefficients()) {
    if ((m & bit) == 0) continue;
    out.add_to(m & ~bit, c * Rational(front_sign(m, i)));
  }
  return out;
}

}  // namespace

DiffForm wedge(const DiffForm& a, const DiffForm& b) { return wedge_impl(a, b); }

Multivector wedge(const Multivector& a, const Multivector& b) { return wedge_impl(a, b); }

VecValuedForm wedge(const DiffForm& a, const VecValuedForm& K) {
  std::vector<DiffForm> comps;
  comps.reserve(K.components().size());
  for (const auto& c : K.components()) comps.push_back(wedge(a, c));
  return VecValuedForm(K.chart(), std::move(comps));
}

DiffForm exterior_derivative(const DiffForm& a) {
  const std::size_t dim = a.chart()->dimension();
  if (a.degree() + 1 > dim) throw DegreeOverflow("exterior derivative of a top-degree form");
  DiffForm out(a.chart(), a.degree() + 1);
  for (const auto& [m, c] : a.coefficients()) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Mask bit = Mask{1} << j;
      if ((m & bit) != 0) continue;
      Scalar dc = d_coord(c, j);
      if (dc.is_zero()) continue;
      out.add_to(m | bit, dc * Rational(front_sign(m, j)));
    }
  }
  return out;
}

DiffForm differential(const Scalar& f) { return exterior_derivative(DiffForm::function(f)); }

DiffForm interior_product(const VectorField& X, const DiffForm& a) {
  if (a.degree() == 0) throw DegreeUnderflow("interior product of a 0-form");
  symcalc::require_same_chart(X.chart(), a.chart());
  DiffForm out(a.chart(), a.degree() - 1);
  for (const auto& [m, c] : a.coefficients()) {
    for (Mask rest = m; rest != 0; rest &= rest - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(rest));
      if (X[i].is_zero()) continue;
      out.add_to(m & ~(Mask{1} << i), X[i] * c * Rational(front_sign(m, i)));
    }
  }
  return out;
}

Multivector interior_product(const DiffForm& alpha, const Multivector& A) {
  if (A.degree() == 0) throw DegreeUnderflow("contraction into a function");
  if (alpha.degree() != 1) throw DegreeMismatch("contraction needs a 1-form");
  Multivector out(A.chart(), A.degree() - 1);
  for (const auto& [m, c] : A.coefficients()) {
    for (Mask rest = m; rest != 0; rest &= rest - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(rest));
      Scalar ai = alpha.coefficient(Mask{1} << i);
      if (ai.is_zero()) continue;
      out.add_to(m & ~(Mask{1} << i), ai * c * Rational(front_sign(m, i)));
    }
  }
  return out;
}

Scalar evaluate(const DiffForm& a, const std::vector<VectorField>& args) {
  if (args.size() != a.degree()) throw DegreeMismatch("wrong number of arguments for form");
  DiffForm cur = a;
  for (const auto& X : args) cur = interior_product(X, cur);
  return cur.coefficient(0);
}

Scalar evaluate(const Multivector& A, const std::vector<DiffForm>& args) {
  if (args.size() != A.degree()) throw DegreeMismatch("wrong number of arguments for multivector");
  Multivector cur = A;
  for (const auto& alpha : args) cur = interior_product(alpha, cur);
  return cur.coefficient(0);
}

VectorField evaluate(const VecValuedForm& K, const std::vector<VectorField>& args) {
  VectorField out(K.chart());
  for (std::size_t c = 0; c < K.components().size(); ++c) out.set(c, evaluate(K.component(c), args));
  return out;
}

Scalar pair(const DiffForm& alpha, const VectorField& X) {
  if (alpha.degree() != 1) throw DegreeMismatch("pairing needs a 1-form");
  Scalar out(X.chart());
  for (const auto& [m, c] : alpha.coefficients()) {
    const auto i = static_cast<std::size_t>(std::countr_zero(m));
    out += c * X[i];
  }
  return out;
}

Scalar apply(const VectorField& X, const Scalar& f) {
  Scalar out(X.chart());
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (X[i].is_zero()) continue;
    out += X[i] * d_coord(f, i);
  }
  return out;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  symcalc::require_same_chart(X.chart(), Y.chart());
  VectorField out(X.chart());
  for (std::size_t k = 0; k < X.size(); ++k) out.set(k, apply(X, Y[k]) - apply(Y, X[k]));
  return out;
}

Scalar lie_derivative(const VectorField& X, const Scalar& f) { return apply(X, f); }

VectorField lie_derivative(const VectorField& X, const VectorField& Y) { return lie_bracket(X, Y); }

DiffForm lie_derivative(const VectorField& X, const DiffForm& a) {
  if (a.degree() == 0) return DiffForm::function(apply(X, a.coefficient(0)));
  DiffForm out(a.chart(), a.degree());
  if (a.degree() < a.chart()->dimension()) out += interior_product(X, exterior_derivative(a));
  out += exterior_derivative(interior_product(X, a));
  return out;
}

Multivector lie_derivative(const VectorField& X, const Multivector& A) {
  const ChartPtr& chart = A.chart();
  const std::size_t dim = chart->dimension();
  // [X, d_i] = -sum_k (d_i X^k) d_k
  std::vector<std::vector<Scalar>> dX(dim, std::vector<Scalar>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) dX[i][k] = d_coord(X[k], i);
  Multivector out(chart, A.degree());
  for (const auto& [m, c] : A.coefficients()) {
    out.add_to(m, apply(X, c));
    auto idx = indices_of(m);
    for (std::size_t p = 0; p < idx.size(); ++p) {
      for (std::size_t k = 0; k < dim; ++k) {
        if (dX[idx[p]][k].is_zero()) continue;
        auto replaced = idx;
        replaced[p] = k;
        const int s = sort_sign(replaced);
        if (s == 0) continue;
        out.add_to(mask_of(replaced), -(c * dX[idx[p]][k]) * Rational(s));
      }
    }
  }
  return out;
}

VecValuedForm lie_derivative(const VectorField& X, const VecValuedForm& K) {
  const std::size_t dim = K.chart()->dimension();
  std::vector<DiffForm> comps;
  comps.reserve(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    DiffForm cb = lie_derivative(X, K.component(b));
    for (std::size_t a = 0; a < dim; ++a) {
      Scalar da = d_coord(X[b], a);
      if (da.is_zero() || K.component(a).is_zero()) continue;
      cb -= da * K.component(a);
    }
    comps.push_back(std::move(cb));
  }
  return VecValuedForm(K.chart(), std::move(comps));
}

Multivector as_multivector(const VectorField& X) {
  Multivector out(X.chart(), 1);
  for (std::size_t i = 0; i < X.size(); ++i) out.set(Mask{1} << i, X[i]);
  return out;
}

VectorField as_vector_field(const Multivector& A) {
  if (A.degree() != 1) throw DegreeMismatch("not a degree-1 multivector");
  VectorField out(A.chart());
  for (const auto& [m, c] : A.coefficients()) out.set(static_cast<std::size_t>(std::countr_zero(m)), c);
  return out;
}

Multivector schouten_bracket(const Multivector& A, const Multivector& B) {
  symcalc::require_same_chart(A.chart(), B.chart());
  const ChartPtr& chart = A.chart();
  const std::size_t dim = chart->dimension();
  const std::size_t a = A.degree(), b = B.degree();
  if (a + b == 0) return Multivector(chart, 0);
  if (a + b - 1 > dim) throw DegreeOverflow("Schouten bracket degree exceeds dimension");
  Multivector out(chart, a + b - 1);
  const int twist = ((a + 1) * (b + 1)) % 2 == 0 ? 1 : -1;  // (-1)^{(a-1)(b-1)}
  // sum_i (U <- d/dzeta_i)(d_i V), the first half of the odd-variable formula.
  auto half = [&](const Multivector& U, const Multivector& V, int sign) {
    for (const auto& [mu, cu] : U.coefficients()) {
      for (Mask rest = mu; rest != 0; rest &= rest - 1) {
        const auto i = static_cast<std::size_t>(std::countr_zero(rest));
        const Mask reduced = mu & ~(Mask{1} << i);
        const int rs = right_sign(mu, i);
        for (const auto& [mv, cv] : V.coefficients()) {
          const int ms = merge_sign(reduced, mv);
          if (ms == 0) continue;
          Scalar dv = d_coord(cv, i);
          if (dv.is_zero()) continue;
          out.add_to(reduced | mv, cu * dv * Rational(sign * rs * ms));
        }
      }
    }
  };
  half(A, B, 1);
  half(B, A, -twist);
  return out;
}

VecValuedForm fn_bracket(const VecValuedForm& K, const VecValuedForm& L) {
  symcalc::require_same_chart(K.chart(), L.chart());
  const std::size_t k = K.degree(), l = L.degree();
  if (k + l > 3 && k != 0 && l != 0)
    throw UnsupportedDegree("Frolicher-Nijenhuis bracket of degrees (" + std::to_string(k) + "," + std::to_string(l) +
                            ") is not supported");
  const ChartPtr& chart = K.chart();
  const std::size_t dim = chart->dimension();
  if (k + l > dim) throw DegreeOverflow("bracket degree exceeds dimension");
  const bool odd_k = k % 2 == 1;
  auto add_signed = [odd_k](DiffForm& acc, const DiffForm& term) {
    if (odd_k) {
      acc -= term;
    } else {
      acc += term;
    }
  };

  std::vector<DiffForm> dK(dim), dL(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    if (k + 1 <= dim) dK[a] = exterior_derivative(K.component(a));
    if (l + 1 <= dim) dL[a] = exterior_derivative(L.component(a));
  }

  std::vector<DiffForm> comps(dim, DiffForm(chart, k + l));
  for (std::size_t c = 0; c < dim; ++c) {
    DiffForm& out = comps[c];
    for (std::size_t a = 0; a < dim; ++a) {
      // K^a ^ d_a(L^c) - d_a(K^c) ^ L^a
      if (!K.component(a).is_zero()) out += wedge(K.component(a), partial_coefficients(L.component(c), a));
      if (!L.component(a).is_zero()) out -= wedge(partial_coefficients(K.component(c), a), L.component(a));
      // (-1)^k (dK^a ^ i_a L^c + i_a K^c ^ dL^a)
      if (l > 0 && k + 1 <= dim && !dK[a].is_zero()) {
        DiffForm iL = contract_coordinate(L.component(c), a);
        if (!iL.is_zero()) add_signed(out, wedge(dK[a], iL));
      }
      if (k > 0 && l + 1 <= dim && !dL[a].is_zero()) {
        DiffForm iK = contract_coordinate(K.component(c), a);
        if (!iK.is_zero()) add_signed(out, wedge(iK, dL[a]));
      }
    }
  }
  return VecValuedForm(chart, std::move(comps));
}

VecValuedForm compose(const VecValuedForm& K, const VecValuedForm& L) {
  if (K.degree() != 1 || L.degree() != 1) throw DegreeMismatch("composition needs vector-valued 1-forms");
  symcalc::require_same_chart(K.chart(), L.chart());
  const std::size_t dim = K.chart()->dimension();
  std::vector<DiffForm> comps(dim, DiffForm(K.chart(), 1));
  for (std::size_t c = 0; c < dim; ++c) {
    for (const auto& [m, kcb] : K.component(c).coefficients()) {
      const auto b = static_cast<std::size_t>(std::countr_zero(m));
      comps[c] += kcb * L.component(b);
    }
  }
  return VecValuedForm(K.chart(), std::move(comps));
}

}  // namespace hbkit::geom

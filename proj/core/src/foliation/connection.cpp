#include "hbkit/foliation/connection.hpp"

#include "hbkit/errors.hpp"

namespace hbkit::foliation {

using geom::indices_of;
using geom::mask_of;
using symcalc::Rational;

namespace {

// gamma^*(dx^I) = gamma^{i1} ^ ... ^ gamma^{ik}.
DiffForm pull_by_endomorphism(const DiffForm& a, const VecValuedForm& K) {
  DiffForm out(a.chart(), a.degree());
  for (const auto& [m, c] : a.coefficients()) {
    DiffForm term = DiffForm::function(c);
    for (auto i : indices_of(m)) term = geom::wedge(term, K.component(i));
    out += term;
  }
  return out;
}

// All increasing index subsets of size k drawn from [0, n).
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

}  // namespace

Connection::Connection(VecValuedForm gamma) : gamma_(std::move(gamma)) {
  if (auto v = verify_connection(gamma_); !v)
    throw InvariantViolation("not a connection: " + (v.witness ? v.witness->where : std::string{}));
  const auto& chart = gamma_.chart();
  for (std::size_t i = 0; i < chart->n_horizontal(); ++i) {
    const auto dx = VectorField::coordinate(chart, i);
    frame_.push_back(dx - geom::evaluate(gamma_, {dx}));
  }
  for (std::size_t v = chart->n_horizontal(); v < chart->dimension(); ++v) coframe_.push_back(gamma_.component(v));
}

std::vector<VectorField> Connection::adapted_basis() const {
  std::vector<VectorField> out = frame_;
  for (std::size_t v = chart()->n_horizontal(); v < chart()->dimension(); ++v)
    out.push_back(VectorField::coordinate(chart(), v));
  return out;
}

VectorField Connection::vertical_part(const VectorField& X) const { return geom::evaluate(gamma_, {X}); }

VectorField Connection::horizontal_part(const VectorField& X) const { return X - vertical_part(X); }

DiffForm Connection::adjoint(const DiffForm& a) const { return pull_by_endomorphism(a, gamma_); }

Connection connection_from_frame(const std::vector<VectorField>& frame) {
  if (frame.empty()) throw NotComplementary("empty horizontal frame");
  const auto chart = frame.front().chart();
  if (frame.size() != chart->n_horizontal()) throw NotComplementary("frame needs one field per horizontal coordinate");
  VecValuedForm gamma(chart, 1);
  for (std::size_t v = chart->n_horizontal(); v < chart->dimension(); ++v) {
    DiffForm comp = geom::coordinate_differential(chart, v);
    for (std::size_t i = 0; i < frame.size(); ++i) {
      const auto& h = frame[i];
      symcalc::require_same_chart(chart, h.chart());
      comp -= h[v] * geom::coordinate_differential(chart, i);
    }
    gamma.set_component(v, comp);
  }
  for (std::size_t i = 0; i < frame.size(); ++i) {
    for (std::size_t j = 0; j < chart->n_horizontal(); ++j) {
      if (frame[i][j] != Scalar(chart, Rational(i == j ? 1 : 0)))
        throw NotComplementary("frame field " + std::to_string(i) + " has horizontal part other than d_" +
                               chart->coordinate_name(i));
    }
  }
  return Connection(std::move(gamma));
}

Verdict verify_connection(const VecValuedForm& gamma) {
  if (gamma.degree() != 1) return Verdict::fail("gamma is not a vector-valued 1-form");
  const auto& chart = gamma.chart();
  Verdict v = within("gamma o gamma - gamma", geom::check_zero(geom::compose(gamma, gamma) - gamma));
  for (std::size_t i = 0; i < chart->n_horizontal(); ++i)
    v &= within("image not vertical", geom::check_zero(gamma.component(i), "d_" + chart->coordinate_name(i)));
  for (std::size_t a = chart->n_horizontal(); a < chart->dimension(); ++a) {
    const auto dv = VectorField::coordinate(chart, a);
    v &= within("gamma(d_" + chart->coordinate_name(a) + ") - d_" + chart->coordinate_name(a),
                geom::check_zero(geom::evaluate(gamma, {dv}) - dv));
  }
  return v;
}

DiffForm BigradedForm::part(std::size_t p, std::size_t q) const {
  auto it = parts.find({p, q});
  return it == parts.end() ? DiffForm() : it->second;
}

DiffForm BigradedForm::total() const {
  DiffForm out;
  for (const auto& [pq, f] : parts) out += f;
  return out;
}

BigradedForm bigrade(const DiffForm& a, const Connection& gamma) {
  symcalc::require_same_chart(a.chart(), gamma.chart());
  const auto& chart = gamma.chart();
  const std::size_t nh = chart->n_horizontal();
  const std::size_t k = a.degree();
  const auto basis = gamma.adapted_basis();
  BigradedForm out;
  for (std::size_t p = 0; p <= k; ++p) {
    const std::size_t q = k - p;
    if (p > nh || q > chart->n_vertical()) continue;
    DiffForm part(chart, k);
    for (const auto& I : subsets(nh, p)) {
      for (const auto& J : subsets(chart->n_vertical(), q)) {
        std::vector<VectorField> args;
        DiffForm basis_form = DiffForm::function(Scalar(chart, Rational(1)));
        for (auto i : I) {
          args.push_back(basis[i]);
          basis_form = geom::wedge(basis_form, geom::coordinate_differential(chart, i));
        }
        for (auto j : J) {
          args.push_back(basis[nh + j]);
          basis_form = geom::wedge(basis_form, gamma.vertical_coframe()[j]);
        }
        const Scalar c = geom::evaluate(a, args);
        if (!c.is_zero()) part += c * basis_form;
      }
    }
    if (!part.is_zero()) out.parts.emplace(std::make_pair(p, q), std::move(part));
  }
  return out;
}

DiffForm covariant_derivative(const DiffForm& a, const Connection& gamma) {
  symcalc::require_same_chart(a.chart(), gamma.chart());
  const auto& chart = gamma.chart();
  const std::size_t k = a.degree() + 1;
  DiffForm out(chart, k);
  if (k > chart->n_horizontal()) return out;
  const DiffForm da = geom::exterior_derivative(a);
  for (const auto& I : subsets(chart->n_horizontal(), k)) {
    std::vector<VectorField> args;
    for (auto i : I) args.push_back(gamma.frame(i));
    out.add_to(mask_of(I), geom::evaluate(da, args));
  }
  return out;
}

BigradedDifferential bigraded_differential(const DiffForm& a, const Connection& gamma) {
  const auto& chart = gamma.chart();
  const std::size_t k = a.degree() + 1;
  if (k > chart->dimension()) return {DiffForm(), DiffForm(), DiffForm()};
  BigradedDifferential out{DiffForm(chart, k), DiffForm(chart, k), DiffForm(chart, k)};
  for (const auto& [pq, piece] : bigrade(a, gamma).parts) {
    const auto [p, q] = pq;
    const auto d = bigrade(geom::exterior_derivative(piece), gamma);
    out.d10 += d.part(p + 1, q);
    out.d01 += d.part(p, q + 1);
    if (q > 0) out.d2m1 += d.part(p + 2, q - 1);
  }
  return out;
}

bool is_horizontal_form(const DiffForm& a) {
  const auto& chart = a.chart();
  if (!chart) return true;
  const Mask horizontal = (Mask{1} << chart->n_horizontal()) - 1;
  for (const auto& [m, c] : a.coefficients())
    if ((m & ~horizontal) != 0) return false;
  return true;
}

VecValuedForm curvature(const Connection& gamma) {
  return Scalar(gamma.chart(), Rational(1, 2)) * geom::fn_bracket(gamma.gamma(), gamma.gamma());
}

std::map<std::pair<std::size_t, std::size_t>, VectorField> curvature_on_frame(const Connection& gamma) {
  std::map<std::pair<std::size_t, std::size_t>, VectorField> out;
  for (std::size_t i = 0; i < gamma.n_horizontal(); ++i)
    for (std::size_t j = i + 1; j < gamma.n_horizontal(); ++j)
      out.emplace(std::make_pair(i, j), gamma.vertical_part(geom::lie_bracket(gamma.frame(i), gamma.frame(j))));
  return out;
}

namespace {

std::string pair_label(std::size_t i, std::size_t j) {
  return "(h" + std::to_string(i + 1) + ",h" + std::to_string(j + 1) + ")";
}

}  // namespace

Verdict curvature_routes_agree(const Connection& gamma) {
  const auto curv = curvature(gamma);
  const auto& chart = gamma.chart();
  Verdict v;
  for (std::size_t a = 0; a < chart->n_horizontal(); ++a)
    v &= within("curvature not vertical-valued",
                geom::check_zero(curv.component(a), "-> d_" + chart->coordinate_name(a)));
  for (const auto& [ij, value] : curvature_on_frame(gamma)) {
    const auto [i, j] = ij;
    const auto fn = geom::evaluate(curv, {gamma.frame(i), gamma.frame(j)});
    v &= within("curvature routes " + pair_label(i, j), geom::check_zero(fn - value));
  }
  return v;
}

Verdict curvature_transition_check(const Connection& gamma, const VecValuedForm& xi) {
  const auto& chart = gamma.chart();
  symcalc::require_same_chart(chart, xi.chart());
  if (xi.degree() != 1) throw DegreeMismatch("Xi must be a vector-valued 1-form");
  for (std::size_t a = 0; a < chart->n_horizontal(); ++a)
    if (!xi.component(a).is_zero()) throw NotVertical("Xi has a horizontal output component");
  for (std::size_t a = chart->n_horizontal(); a < chart->dimension(); ++a)
    if (!geom::evaluate(xi, {VectorField::coordinate(chart, a)}).is_zero())
      throw NotVertical("Xi does not vanish on d_" + chart->coordinate_name(a));

  const Connection shifted(gamma.gamma() - xi);
  const auto curv = curvature(gamma);
  const auto curv_shifted = curvature(shifted);
  Verdict v;
  for (std::size_t i = 0; i < gamma.n_horizontal(); ++i) {
    for (std::size_t j = i + 1; j < gamma.n_horizontal(); ++j) {
      const auto& z1 = gamma.frame(i);
      const auto& z2 = gamma.frame(j);
      const auto x1 = geom::evaluate(xi, {z1});
      const auto x2 = geom::evaluate(xi, {z2});
      const VectorField rhs = geom::evaluate(curv, {z1, z2}) + geom::lie_bracket(x1, x2) + geom::lie_bracket(x1, z2) -
                              geom::lie_bracket(x2, z1) - geom::evaluate(xi, {geom::lie_bracket(z1, z2)});
      const VectorField lhs = geom::evaluate(curv_shifted, {z1, z2});
      v &= within("curvature transition " + pair_label(i, j), geom::check_zero(lhs - rhs));
    }
  }
  return v;
}

Verdict is_projectable(const VectorField& Z) {
  const auto& chart = Z.chart();
  Verdict v;
  for (std::size_t a = chart->n_horizontal(); a < chart->dimension(); ++a) {
    const auto br = geom::lie_bracket(Z, VectorField::coordinate(chart, a));
    for (std::size_t i = 0; i < chart->n_horizontal(); ++i)
      v &= check_zero(br[i], "[Z, d_" + chart->coordinate_name(a) + "] along d_" + chart->coordinate_name(i));
  }
  return v;
}

}  // namespace hbkit::foliation

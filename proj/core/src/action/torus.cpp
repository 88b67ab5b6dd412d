#include "hbkit/action/torus.hpp"

#include "hbkit/errors.hpp"
#include "hbkit/poisson/poisson.hpp"

namespace hbkit::action {

using symcalc::Rational;
using symcalc::Symbol;
using symcalc::SymbolKind;

namespace {

Symbol coordinate(std::size_t i) { return Symbol{SymbolKind::kCoordinate, i}; }

// Identity rows for the angles `chart` shares with its base, then `extra`
// rows for trailing angles.
std::vector<std::vector<int>> angle_rows(std::size_t shared, std::size_t target_angles) {
  std::vector<std::vector<int>> rows(shared, std::vector<int>(target_angles, 0));
  for (std::size_t a = 0; a < shared; ++a) rows[a][a] = 1;
  return rows;
}

// Images of a flow with its angle replaced by the combination `combo` of
// the angles of `target` (which extends the flow's base chart).
std::vector<Scalar> remap_flow(const CircleFlow& flow, const ChartPtr& base, const ChartPtr& target,
                               const std::vector<int>& combo) {
  auto rows = angle_rows(base->n_angles(), target->n_angles());
  rows.push_back(combo);
  std::vector<Scalar> out;
  out.reserve(flow.images.size());
  for (const auto& f : flow.images) out.push_back(symcalc::substitute_angles(f, target, rows));
  return out;
}

// (outer o inner)(x): outer images with coordinates replaced by inner.
std::vector<Scalar> compose_maps(const std::vector<Scalar>& outer, const std::vector<Scalar>& inner) {
  std::vector<std::pair<Symbol, Scalar>> map;
  for (std::size_t i = 0; i < inner.size(); ++i) map.emplace_back(coordinate(i), inner[i]);
  std::vector<Scalar> out;
  out.reserve(outer.size());
  for (const auto& f : outer) out.push_back(symcalc::substitute(f, map));
  return out;
}

void require_equal_maps(const std::vector<Scalar>& a, const std::vector<Scalar>& b, const symcalc::Chart& chart,
                        const std::string& what) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i])
      throw InvariantViolation(what + " fails for coordinate " + chart.coordinate_name(i) + ": " +
                               symcalc::to_string(a[i] - b[i]));
}

// Applies fn to every coefficient; the results live on `target`.
template <class Fn>
Scalar map_coefficients(const Scalar& f, const ChartPtr& target, Fn fn) {
  return f.is_zero() ? Scalar(target) : fn(f);
}

template <class Fn>
VectorField map_coefficients(const VectorField& X, const ChartPtr& target, Fn fn) {
  VectorField out(target);
  for (std::size_t i = 0; i < X.size(); ++i)
    if (!X[i].is_zero()) out.set(i, fn(X[i]));
  return out;
}

template <class Tag, class Fn>
geom::Alternating<Tag> map_coefficients(const geom::Alternating<Tag>& a, const ChartPtr& target, Fn fn) {
  geom::Alternating<Tag> out(target, a.degree());
  for (const auto& [m, c] : a.coefficients()) out.set(m, fn(c));
  return out;
}

template <class Fn>
VecValuedForm map_coefficients(const VecValuedForm& K, const ChartPtr& target, Fn fn) {
  std::vector<DiffForm> comps;
  comps.reserve(K.components().size());
  for (const auto& c : K.components()) comps.push_back(map_coefficients(c, target, fn));
  VecValuedForm out(target, K.degree());
  for (std::size_t a = 0; a < comps.size(); ++a) out.set_component(a, comps[a]);
  return out;
}

template <class T>
T factor_average(const TorusAction& action, std::size_t j, const T& t) {
  symcalc::require_same_chart(t.chart(), action.base());
  const auto pulled = geom::pullback(action.diffeo(j), t);
  const std::size_t angle = action.flow_chart(j)->n_angles() - 1;
  return map_coefficients(pulled, action.base(),
                          [&](const Scalar& c) { return action.to_base(j, symcalc::average_over_angle(c, angle)); });
}

template <class T>
T full_average(const TorusAction& action, const T& t) {
  T out = t;
  for (std::size_t j = 0; j < action.rank(); ++j) out = factor_average(action, j, out);
  return out;
}

template <class T>
T factor_running_average(const TorusAction& action, std::size_t j, const T& t) {
  symcalc::require_same_chart(t.chart(), action.base());
  const auto pulled = geom::pullback(action.diffeo(j), t);
  const std::size_t angle = action.flow_chart(j)->n_angles() - 1;
  return map_coefficients(pulled, action.base(), [&](const Scalar& c) {
    return action.to_base(j, symcalc::average_of_running_integral(c, angle));
  });
}

}  // namespace

TorusAction::TorusAction(ChartPtr base, std::vector<CircleFlow> flows)
    : base_(std::move(base)), flows_(std::move(flows)) {
  const std::size_t dim = base_->dimension();
  for (std::size_t j = 0; j < flows_.size(); ++j) {
    auto& flow = flows_[j];
    if (flow.images.size() != dim) throw InvariantViolation("flow " + flow.angle + " needs one image per coordinate");
    const auto chart = base_->extended({flow.angle});
    for (auto& f : flow.images) f = symcalc::lift(f, chart);

    // Phi_{-theta} inverts Phi_theta once the group law holds.
    std::vector<int> minus(chart->n_angles(), 0);
    minus.back() = -1;
    auto inverse = remap_flow(flow, base_, chart, minus);
    diffeos_.push_back(geom::Diffeo{chart, flow.images, std::move(inverse)});

    std::vector<Scalar> identity;
    for (std::size_t i = 0; i < dim; ++i) identity.push_back(Scalar::symbol(base_, coordinate(i)));
    std::vector<int> zero(base_->n_angles(), 0);
    require_equal_maps(remap_flow(flow, base_, base_, zero), identity, *base_, "Phi_0 = id for " + flow.angle);

    const auto two = base_->extended({flow.angle, flow.angle + "'"});
    std::vector<int> first(two->n_angles(), 0), second(two->n_angles(), 0), sum(two->n_angles(), 0);
    first[two->n_angles() - 2] = 1;
    second[two->n_angles() - 1] = 1;
    sum[two->n_angles() - 2] = sum[two->n_angles() - 1] = 1;
    require_equal_maps(compose_maps(remap_flow(flow, base_, two, first), remap_flow(flow, base_, two, second)),
                       remap_flow(flow, base_, two, sum), *base_, "group law for " + flow.angle);
  }
  for (std::size_t i = 0; i < flows_.size(); ++i) {
    for (std::size_t j = i + 1; j < flows_.size(); ++j) {
      const auto two = base_->extended({flows_[i].angle, flows_[j].angle});
      std::vector<int> a(two->n_angles(), 0), b(two->n_angles(), 0);
      a[two->n_angles() - 2] = 1;
      b[two->n_angles() - 1] = 1;
      const auto fi = remap_flow(flows_[i], base_, two, a);
      const auto fj = remap_flow(flows_[j], base_, two, b);
      require_equal_maps(compose_maps(fi, fj), compose_maps(fj, fi), *base_,
                         "flows " + flows_[i].angle + " and " + flows_[j].angle + " commute");
    }
  }
}

Scalar TorusAction::to_base(std::size_t j, const Scalar& f) const {
  const auto& chart = flow_chart(j);
  if (f.is_zero()) return Scalar(base_);
  symcalc::require_same_chart(f.chart(), chart);
  if (symcalc::depends_on(f, Symbol{SymbolKind::kAngle, chart->n_angles() - 1}))
    throw NonClosedOrbitCoefficients("coefficient still depends on " + flows_[j].angle);
  auto rows = angle_rows(base_->n_angles(), base_->n_angles());
  rows.emplace_back(base_->n_angles(), 0);
  return symcalc::substitute_angles(f, base_, rows);
}

VectorField infinitesimal_generator(const TorusAction& action, std::size_t j) {
  const auto& flow = action.flow(j);
  const auto& chart = action.flow_chart(j);
  const Symbol angle{SymbolKind::kAngle, chart->n_angles() - 1};
  auto rows = angle_rows(action.base()->n_angles(), action.base()->n_angles());
  rows.emplace_back(action.base()->n_angles(), 0);
  VectorField out(action.base());
  for (std::size_t i = 0; i < flow.images.size(); ++i)
    out.set(i, symcalc::substitute_angles(symcalc::partial_derivative(flow.images[i], angle), action.base(), rows));
  return out;
}

ActionVerdict verify_action(const TorusAction& action, const Multivector& P) {
  const auto& base = action.base();
  ActionVerdict out;
  for (std::size_t j = 0; j < action.rank(); ++j) {
    const auto& flow = action.flow(j);
    for (std::size_t i = 0; i < base->n_horizontal(); ++i)
      for (std::size_t v = base->n_horizontal(); v < base->dimension(); ++v)
        out.foliation_preserving &=
            check_zero(symcalc::partial_derivative(flow.images[i], coordinate(v)),
                       flow.angle + ": d" + base->coordinate_name(i) + "/d" + base->coordinate_name(v));
    const auto xi = infinitesimal_generator(action, j);
    for (std::size_t i = 0; i < base->n_horizontal(); ++i)
      out.leaf_tangent &= check_zero(xi[i], flow.angle + ": generator along d_" + base->coordinate_name(i));
    out.canonical &= within("L_xi(" + flow.angle + ") P", geom::check_zero(geom::lie_derivative(xi, P)));
  }
  return out;
}

Scalar average_over_factor(const TorusAction& a, std::size_t j, const Scalar& f) { return factor_average(a, j, f); }
VectorField average_over_factor(const TorusAction& a, std::size_t j, const VectorField& X) {
  return factor_average(a, j, X);
}
DiffForm average_over_factor(const TorusAction& a, std::size_t j, const DiffForm& f) { return factor_average(a, j, f); }
Multivector average_over_factor(const TorusAction& a, std::size_t j, const Multivector& A) {
  return factor_average(a, j, A);
}
VecValuedForm average_over_factor(const TorusAction& a, std::size_t j, const VecValuedForm& K) {
  return factor_average(a, j, K);
}

Scalar average(const TorusAction& a, const Scalar& f) { return full_average(a, f); }
VectorField average(const TorusAction& a, const VectorField& X) { return full_average(a, X); }
DiffForm average(const TorusAction& a, const DiffForm& f) { return full_average(a, f); }
Multivector average(const TorusAction& a, const Multivector& A) { return full_average(a, A); }
VecValuedForm average(const TorusAction& a, const VecValuedForm& K) { return full_average(a, K); }

Scalar running_integral_average(const TorusAction& a, std::size_t j, const Scalar& f) {
  return factor_running_average(a, j, f);
}
VectorField running_integral_average(const TorusAction& a, std::size_t j, const VectorField& X) {
  return factor_running_average(a, j, X);
}

VecValuedForm connection_difference(const TorusAction& action, const foliation::Connection& gamma) {
  return gamma.gamma() - average(action, gamma.gamma());
}

foliation::Connection hannay_berry(const TorusAction& action, const foliation::Connection& gamma) {
  return foliation::Connection(average(action, gamma.gamma()));
}

VectorField xi_via_double_integral(const TorusAction& action, const foliation::Connection& gamma,
                                   const VectorField& Z) {
  if (!gamma.vertical_part(Z).is_zero()) throw NotHorizontal("Z is not horizontal for the connection");
  VectorField current = Z;
  for (std::size_t j = 0; j < action.rank(); ++j) {
    const auto xi = infinitesimal_generator(action, j);
    current -= running_integral_average(action, j, geom::lie_bracket(current, xi));
  }
  return current - Z;
}

Verdict verify_premomentum(const TorusAction& action, const Multivector& P, const PreMomentumMap& mu) {
  if (mu.size() != action.rank()) return Verdict::fail("need one 1-form per generator");
  const auto& chart = action.base();
  Verdict v;
  for (std::size_t j = 0; j < action.rank(); ++j) {
    const std::string name = "mu(" + action.flow(j).angle + ")";
    if (mu[j].degree() != 1) return Verdict::fail(name + " is not a 1-form");
    v &= within(name + ": xi - P#mu", geom::check_zero(infinitesimal_generator(action, j) - poisson::sharp(P, mu[j])));
    const auto dmu = geom::exterior_derivative(mu[j]);
    for (std::size_t a = 0; a < chart->dimension(); ++a) {
      const auto X = poisson::sharp(P, geom::coordinate_differential(chart, a));
      if (X.is_zero()) continue;
      v &= within(name + ": i_{P#d" + chart->coordinate_name(a) + "} dmu",
                  geom::check_zero(geom::interior_product(X, dmu)));
    }
  }
  return v;
}

DiffForm compute_Q(const TorusAction& action, const foliation::Connection& gamma, const PreMomentumMap& mu) {
  if (mu.size() != action.rank()) throw DegreeMismatch("need one 1-form per generator");
  const auto& chart = gamma.chart();
  symcalc::require_same_chart(chart, action.base());
  DiffForm Q(chart, 1);
  VecValuedForm partial = gamma.gamma();
  for (std::size_t j = 0; j < action.rank(); ++j) {
    const foliation::Connection current(partial);
    const DiffForm mu10 = mu[j] - current.adjoint(mu[j]);
    for (std::size_t i = 0; i < current.n_horizontal(); ++i) {
      const Scalar integrand = geom::pair(mu10, current.frame(i));
      Q.add_to(geom::Mask{1} << i, -running_integral_average(action, j, integrand));
    }
    partial = average_over_factor(action, j, partial);
  }
  return Q;
}

Verdict averaged_curvature_identity(const TorusAction& action, const foliation::Connection& gamma, const DiffForm& Q,
                                    const Multivector& P) {
  const auto averaged = hannay_berry(action, gamma);
  const auto curv = foliation::curvature(gamma);
  const auto curv_avg = foliation::curvature(averaged);
  const auto dQ = foliation::covariant_derivative(Q, gamma);
  const auto QQ = poisson::braided_wedge(P, Q, Q);
  const Scalar half(gamma.chart(), Rational(1, 2));
  Verdict v;
  for (std::size_t i = 0; i < gamma.n_horizontal(); ++i) {
    for (std::size_t j = i + 1; j < gamma.n_horizontal(); ++j) {
      const auto& z1 = gamma.frame(i);
      const auto& z2 = gamma.frame(j);
      const geom::Mask m = (geom::Mask{1} << i) | (geom::Mask{1} << j);
      const Scalar potential = dQ.coefficient(m) + half * QQ.coefficient(m);
      const VectorField rhs = geom::evaluate(curv, {z1, z2}) + poisson::hamiltonian_vf(P, potential);
      v &= within("averaged curvature (h" + std::to_string(i + 1) + ",h" + std::to_string(j + 1) + ")",
                  geom::check_zero(geom::evaluate(curv_avg, {z1, z2}) - rhs));
    }
  }
  return v;
}

bool InvarianceVerdict::consistent() const {
  return averaged_equals_gamma.passed == fn_brackets_vanish.passed &&
         averaged_equals_gamma.passed == difference_vanishes.passed;
}

InvarianceVerdict invariance_criteria(const TorusAction& action, const foliation::Connection& gamma) {
  InvarianceVerdict out;
  const auto avg = average(action, gamma.gamma());
  out.averaged_equals_gamma = within("<gamma> - gamma", geom::check_zero(avg - gamma.gamma()));
  for (std::size_t j = 0; j < action.rank(); ++j) {
    const auto xi = VecValuedForm::from_vector_field(infinitesimal_generator(action, j));
    out.fn_brackets_vanish &=
        within("[gamma, xi(" + action.flow(j).angle + ")]_FN", geom::check_zero(geom::fn_bracket(gamma.gamma(), xi)));
  }
  // Xi^G vanishes on V, so it is zero iff it vanishes on the frame; use the
  // double-integral route so this is not the same computation as (ii).
  for (std::size_t i = 0; i < gamma.n_horizontal(); ++i)
    out.difference_vanishes &= within("Xi^G(h" + std::to_string(i + 1) + ")",
                                      geom::check_zero(xi_via_double_integral(action, gamma, gamma.frame(i))));
  return out;
}

}  // namespace hbkit::action

#include "hbkit/dirac/dirac.hpp"

#include "hbkit/errors.hpp"

namespace hbkit::dirac {

using geom::Mask;
using symcalc::Rational;

namespace {

void require_same_chart(const Section& s, const Section& t) {
  symcalc::require_same_chart(s.X.chart(), s.alpha.chart());
  symcalc::require_same_chart(s.X.chart(), t.X.chart());
  symcalc::require_same_chart(t.X.chart(), t.alpha.chart());
}

VectorField lift(const VectorField& X, const ChartPtr& target) {
  VectorField out(target);
  for (std::size_t i = 0; i < X.size(); ++i) out.set(i, symcalc::lift(X[i], target));
  return out;
}

DiffForm lift(const DiffForm& a, const ChartPtr& target) {
  DiffForm out(target, a.degree());
  for (const auto& [m, c] : a.coefficients()) out.set(m, symcalc::lift(c, target));
  return out;
}

Section lift(const Section& s, const ChartPtr& target) { return {lift(s.X, target), lift(s.alpha, target)}; }

void require_horizontal_2form(const DiffForm& sigma) {
  if (sigma.degree() != 2) throw DegreeMismatch("sigma must be a 2-form");
  if (!foliation::is_horizontal_form(sigma)) throw NotHorizontal("sigma is not a horizontal form");
}

// Rank of the generator matrix (X components, alpha components) at a
// rational point, by exact elimination.
std::size_t rank_at(const DiracStructure& D, const std::vector<Rational>& point) {
  const auto& chart = D.chart;
  std::vector<std::pair<std::string, Scalar>> values;
  for (std::size_t i = 0; i < chart->dimension(); ++i)
    values.emplace_back(chart->coordinate_name(i), Scalar(chart, point[i]));
  for (std::size_t k = 0; k < chart->n_parameters(); ++k)
    values.emplace_back(chart->parameters()[k], Scalar(chart, point[chart->dimension() + k]));
  auto value = [&](const Scalar& f) {
    const Scalar c = symcalc::substitute(f, values);
    if (!c.is_constant()) throw InvariantViolation("generator depends on an angle or pi");
    return c.constant_term();
  };
  const std::size_t n = chart->dimension();
  std::vector<std::vector<Rational>> rows;
  for (const auto& g : D.generators) {
    std::vector<Rational> row;
    for (std::size_t i = 0; i < n; ++i) row.push_back(value(g.section.X[i]));
    for (std::size_t i = 0; i < n; ++i) row.push_back(value(g.section.alpha.coefficient(Mask{1} << i)));
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 2 * n && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < 2 * n; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::string bracket_label(const Generator& a, const Generator& b) { return "[" + a.name + ", " + b.name + "]"; }

}  // namespace

Scalar pairing(const Section& s, const Section& t) {
  require_same_chart(s, t);
  return geom::pair(t.alpha, s.X) + geom::pair(s.alpha, t.X);
}

Section courant_bracket(const Section& s, const Section& t) {
  require_same_chart(s, t);
  const Scalar half(s.X.chart(), Rational(1, 2));
  const Scalar skew = geom::pair(s.alpha, t.X) - geom::pair(t.alpha, s.X);
  return {geom::lie_bracket(s.X, t.X),
          geom::lie_derivative(s.X, t.alpha) - geom::lie_derivative(t.X, s.alpha) + half * geom::differential(skew)};
}

Section lie_derivative(const VectorField& Z, const Section& s) {
  return {geom::lie_bracket(Z, s.X), geom::lie_derivative(Z, s.alpha)};
}

DiracData build_coupling_dirac(const Connection& gamma, const DiffForm& sigma, const Multivector& P) {
  const auto& chart = gamma.chart();
  symcalc::require_same_chart(chart, sigma.chart());
  symcalc::require_same_chart(chart, P.chart());
  require_horizontal_2form(sigma);
  DiracStructure D{chart, {}};
  for (std::size_t i = 0; i < gamma.n_horizontal(); ++i) {
    const auto& h = gamma.frame(i);
    D.generators.push_back({"e_h" + std::to_string(i + 1), {h, -geom::interior_product(h, sigma)}});
  }
  for (std::size_t v = 0; v < chart->n_vertical(); ++v) {
    const auto& theta = gamma.vertical_coframe()[v];
    D.generators.push_back(
        {"e_d" + chart->coordinate_name(chart->n_horizontal() + v), {poisson::sharp(P, theta), theta}});
  }
  return {gamma, sigma, P, std::move(D)};
}

Verdict verify_lagrangian(const DiracStructure& D) {
  const auto& gens = D.generators;
  Verdict v;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a; b < gens.size(); ++b)
      v &= check_zero(pairing(gens[a].section, gens[b].section), "<" + gens[a].name + ", " + gens[b].name + ">");
  if (!v) return v;
  const std::size_t n = D.chart->dimension();
  if (gens.size() != n)
    return Verdict::fail("expected " + std::to_string(n) + " generators, got " + std::to_string(gens.size()));
  // Generic points; a drop in rank at all of them means dependent generators.
  const std::size_t slots = n + D.chart->n_parameters();
  for (int seed = 1; seed <= 3; ++seed) {
    std::vector<Rational> point;
    for (std::size_t i = 0; i < slots; ++i)
      point.emplace_back(static_cast<long>((7 * seed + 3 * i * i + i) % 11) - 5, 3 + seed);
    if (rank_at(D, point) == n) return v;
  }
  return Verdict::fail("generators are not independent");
}

Verdict contains(const DiracStructure& D, const Section& s) {
  Verdict v;
  for (const auto& g : D.generators) v &= check_zero(pairing(s, g.section), "pairing with " + g.name);
  return v;
}

Verdict same_distribution(const DiracStructure& D1, const DiracStructure& D2) {
  Verdict v;
  for (const auto& g : D1.generators) v &= within(g.name + " of the first", contains(D2, g.section));
  return v;
}

Verdict verify_involutive(const DiracStructure& D) {
  const auto& gens = D.generators;
  Verdict v;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      v &= within(bracket_label(gens[a], gens[b]), contains(D, courant_bracket(gens[a].section, gens[b].section)));
  return v;
}

DiracStructure gauge_transform(const DiracStructure& D, const DiffForm& B) {
  symcalc::require_same_chart(D.chart, B.chart());
  if (B.degree() != 2) throw DegreeMismatch("gauge form must be a 2-form");
  DiracStructure out{D.chart, {}};
  for (const auto& g : D.generators)
    out.generators.push_back({g.name, {g.section.X, g.section.alpha + geom::interior_product(g.section.X, B)}});
  return out;
}

GInvarianceVerdict verify_g_invariance(const action::TorusAction& action, const DiracData& data) {
  const auto& D = data.D;
  symcalc::require_same_chart(D.chart, action.base());
  GInvarianceVerdict out;
  for (std::size_t j = 0; j < action.rank(); ++j) {
    const auto& phi = action.diffeo(j);
    DiracStructure lifted{phi.target, {}};
    for (const auto& g : D.generators) lifted.generators.push_back({g.name, lift(g.section, phi.target)});
    const auto xi = action::infinitesimal_generator(action, j);
    const std::string tag = " under flow " + std::to_string(j + 1);
    for (const auto& g : D.generators) {
      const Section pulled{geom::pullback(phi, g.section.X), geom::pullback(phi, g.section.alpha)};
      out.pullback &= within("pullback of " + g.name + tag, contains(lifted, pulled));
      out.lie &= within("L_xi " + g.name + tag, contains(D, lie_derivative(xi, g.section)));
    }
    out.sigma_invariant &= within("L_xi sigma" + tag, geom::check_zero(geom::lie_derivative(xi, data.sigma)));
  }
  return out;
}

Verdict hamiltonian_generator_check(const action::TorusAction& action, const action::PreMomentumMap& mu,
                                    const DiracStructure& D) {
  if (mu.size() != action.rank()) throw DegreeMismatch("need one 1-form per generator");
  Verdict v;
  for (std::size_t j = 0; j < mu.size(); ++j)
    v &= within("(xi_" + std::to_string(j + 1) + ", mu_" + std::to_string(j + 1) + ")",
                contains(D, {action::infinitesimal_generator(action, j), mu[j]}));
  return v;
}

namespace {

void require_leaf_vector(const DiracData& D, const LeafVector& u) {
  if (!D.gamma.vertical_part(u.h).is_zero()) throw NotHorizontal("leaf vector has a non-horizontal h");
}

VectorField leaf_field(const DiracData& D, const LeafVector& u) { return u.h + poisson::sharp(D.P, u.a); }

}  // namespace

Scalar presymplectic_form(const DiracData& D, const LeafVector& u, const LeafVector& v) {
  require_leaf_vector(D, u);
  require_leaf_vector(D, v);
  return geom::evaluate(D.sigma, {u.h, v.h}) + geom::evaluate(D.P, {u.a, v.a});
}

Scalar presymplectic_form_from_D(const DiracData& D, const LeafVector& u, const LeafVector& v) {
  require_leaf_vector(D, u);
  require_leaf_vector(D, v);
  // (h + P# a, gamma^* a - i_h sigma) lies in D.
  const DiffForm alpha = D.gamma.adjoint(u.a) - geom::interior_product(u.h, D.sigma);
  return -geom::pair(alpha, leaf_field(D, v));
}

Verdict presymplectic_comparison(const DiracData& D, const DiracData& averaged, const DiffForm& Q) {
  const auto& chart = D.gamma.chart();
  const DiffForm dQ = geom::exterior_derivative(Q);
  std::vector<std::pair<LeafVector, LeafVector>> family;  // (on D, on averaged)
  std::vector<std::string> names;
  for (std::size_t i = 0; i < D.gamma.n_horizontal(); ++i) {
    const LeafVector u{D.gamma.frame(i), geom::differential(Q.coefficient(Mask{1} << i))};
    const LeafVector ubar{averaged.gamma.frame(i), DiffForm(chart, 1)};
    if (leaf_field(D, u) != leaf_field(averaged, ubar))
      throw InvariantViolation("averaged frame is not h_i + P# dQ(h_i)");
    family.emplace_back(u, ubar);
    names.push_back("h" + std::to_string(i + 1) + "~");
  }
  for (std::size_t a = chart->n_horizontal(); a < chart->dimension(); ++a) {
    const LeafVector u{VectorField(chart), geom::coordinate_differential(chart, a)};
    family.emplace_back(u, u);
    names.push_back("P#d" + chart->coordinate_name(a));
  }
  Verdict v;
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      const auto& [u, ubar] = family[a];
      const auto& [w, wbar] = family[b];
      const Scalar lhs = presymplectic_form(averaged, ubar, wbar);
      const Scalar rhs = presymplectic_form(D, u, w) - geom::evaluate(dQ, {leaf_field(D, u), leaf_field(D, w)});
      v &= check_zero(lhs - rhs, "omega-bar - omega + dQ on (" + names[a] + ", " + names[b] + ")");
    }
  }
  return v;
}

}  // namespace hbkit::dirac

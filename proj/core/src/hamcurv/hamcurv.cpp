#include "hbkit/hamcurv/hamcurv.hpp"

#include "hbkit/errors.hpp"

namespace hbkit::hamcurv {

using geom::Mask;
using geom::VectorField;
using symcalc::Rational;

namespace {

void require_horizontal(const DiffForm& a, const char* what) {
  if (!foliation::is_horizontal_form(a)) throw NotHorizontal(std::string(what) + " is not a horizontal form");
}

std::string pair_label(std::size_t i, std::size_t j) {
  return "(h" + std::to_string(i + 1) + ",h" + std::to_string(j + 1) + ")";
}

// (id - gamma^*) mu: the part of mu that sees only the horizontal directions.
DiffForm horizontal_part(const Connection& gamma, const DiffForm& mu) { return mu - gamma.adjoint(mu); }

}  // namespace

Verdict verify_conn_H(const Connection& gamma, const DiffForm& sigma, const Multivector& P) {
  symcalc::require_same_chart(gamma.chart(), sigma.chart());
  if (sigma.degree() != 2) throw DegreeMismatch("sigma must be a 2-form");
  require_horizontal(sigma, "sigma");
  Verdict v;
  for (const auto& [ij, curv] : foliation::curvature_on_frame(gamma)) {
    const auto [i, j] = ij;
    const Mask m = (Mask{1} << i) | (Mask{1} << j);
    v &= within("Curv + P# d sigma " + pair_label(i, j),
                geom::check_zero(curv + poisson::hamiltonian_vf(P, sigma.coefficient(m))));
  }
  return v;
}

Verdict is_casimir_form(const DiffForm& beta, const Multivector& P) {
  if (!foliation::is_horizontal_form(beta)) return Verdict::fail("form is not horizontal");
  Verdict v;
  for (const auto& [m, c] : beta.coefficients()) v &= within("coefficient not Casimir", poisson::is_casimir(P, c));
  return v;
}

Verdict sigma_freedom_check(const Connection& gamma, const DiffForm& sigma, const DiffForm& sigma2,
                            const Multivector& P) {
  symcalc::require_same_chart(gamma.chart(), sigma.chart());
  return is_casimir_form(sigma2 - sigma, P);
}

Verdict verify_admissible(const Connection& gamma, const DiffForm& sigma, const Multivector&) {
  require_horizontal(sigma, "sigma");
  return within("d10 sigma", geom::check_zero(foliation::covariant_derivative(sigma, gamma)));
}

DiffForm bianchi_residue(const Connection& gamma, const DiffForm& sigma, const Multivector& P) {
  require_horizontal(sigma, "sigma");
  DiffForm r = foliation::covariant_derivative(sigma, gamma);
  if (!is_casimir_form(r, P)) throw NotCasimirResidue("d10 sigma has a non-Casimir coefficient");
  return r;
}

DiffForm casimir_complex_d(const Connection& gamma, const DiffForm& beta, const Multivector& P) {
  if (!is_casimir_form(beta, P)) throw NotCasimir("input is not a Casimir form");
  return foliation::covariant_derivative(beta, gamma);
}

Connection shifted_connection(const Connection& gamma, const DiffForm& Q, const Multivector& P) {
  require_horizontal(Q, "Q");
  if (Q.degree() != 1) throw DegreeMismatch("Q must be a 1-form");
  std::vector<VectorField> frame;
  for (std::size_t i = 0; i < gamma.n_horizontal(); ++i)
    frame.push_back(gamma.frame(i) + poisson::hamiltonian_vf(P, Q.coefficient(Mask{1} << i)));
  return foliation::connection_from_frame(frame);
}

DiffForm averaged_sigma(const Connection& gamma, const DiffForm& sigma, const DiffForm& Q, const Multivector& P) {
  require_horizontal(sigma, "sigma");
  const DiffForm dQ = foliation::covariant_derivative(Q, gamma);
  return sigma - (dQ + Scalar(gamma.chart(), Rational(1, 2)) * poisson::braided_wedge(P, Q, Q));
}

AveragingIdentitiesVerdict averaging_identities(const Connection& gamma, const DiffForm& sigma, const DiffForm& Q,
                                    const Multivector& P) {
  require_horizontal(sigma, "sigma");
  const Connection bar = shifted_connection(gamma, Q, P);
  const DiffForm Qs = poisson::braided_wedge(P, Q, sigma);
  const DiffForm dQ = foliation::covariant_derivative(Q, gamma);
  const DiffForm QQ = poisson::braided_wedge(P, Q, Q);

  AveragingIdentitiesVerdict out;
  out.shifted_derivative = within("d10 sigma under the shifted connection",
                                  geom::check_zero(foliation::covariant_derivative(sigma, bar) -
                                                   foliation::covariant_derivative(sigma, gamma) - Qs));
  out.squared_derivative =
      within("(d10)^2 Q - {Q ^ sigma}", geom::check_zero(foliation::covariant_derivative(dQ, gamma) - Qs));
  out.bracket_derivative =
      within("d10 1/2 {Q ^ Q} + {Q ^ d10 Q}",
             geom::check_zero(Scalar(gamma.chart(), Rational(1, 2)) * foliation::covariant_derivative(QQ, gamma) +
                              poisson::braided_wedge(P, Q, dQ)));
  return out;
}

AdiabaticVerdict adiabatic_check(const TorusAction& action, const Connection& gamma, const PreMomentumMap& mu) {
  if (mu.size() != action.rank()) throw DegreeMismatch("need one 1-form per generator");
  const Connection bar = action::hannay_berry(action, gamma);
  AdiabaticVerdict out;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const std::string gen = "mu_" + std::to_string(j + 1);
    const DiffForm averaged = action::average(action, horizontal_part(gamma, mu[j]));
    const DiffForm via_bar = horizontal_part(bar, mu[j]);
    out.condition &= within("<(id - gamma^*) " + gen + ">", geom::check_zero(averaged));
    out.averaged_vertical &= within("(id - <gamma>^*) " + gen, geom::check_zero(via_bar));
    out.routes_agree &= within("adiabatic routes differ for " + gen, geom::check_zero(via_bar - averaged));
  }
  return out;
}

PreMomentumMap adiabatic_fix(const TorusAction& action, const Connection& gamma, const PreMomentumMap& mu,
                             const std::vector<Scalar>& K, const Multivector& P) {
  if (mu.size() != action.rank() || K.size() != mu.size())
    throw DegreeMismatch("need one 1-form and one primitive per generator");
  PreMomentumMap fixed;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const DiffForm beta = action::average(action, horizontal_part(gamma, mu[j]));
    if (!foliation::covariant_derivative(beta, gamma).is_zero())
      throw NotACocycle("d10 <(id - gamma^*) mu_" + std::to_string(j + 1) + "> is not zero");
    if (!poisson::is_casimir(P, K[j]))
      throw PrimitiveMismatch("primitive " + std::to_string(j + 1) + " is not a Casimir");
    if (!(foliation::covariant_derivative(DiffForm::function(K[j]), gamma) - beta).is_zero())
      throw PrimitiveMismatch("d10 K_" + std::to_string(j + 1) + " differs from <(id - gamma^*) mu>");
    fixed.push_back(mu[j] - geom::differential(K[j]));
  }
  if (!action::verify_premomentum(action, P, fixed)) throw InvariantViolation("fixed map is not a pre-momentum map");
  if (!adiabatic_check(action, gamma, fixed).condition) throw InvariantViolation("fixed map is not adiabatic");
  return fixed;
}

AxiomaticVerdict axiomatic_verify(const TorusAction& action, const Connection& gamma, const Connection& gamma_t,
                                  const DiffForm& Q, const PreMomentumMap& mu, const Multivector& P) {
  require_horizontal(Q, "Q");
  const auto xi = gamma.gamma() - gamma_t.gamma();
  AxiomaticVerdict out;
  for (std::size_t i = 0; i < gamma.n_horizontal(); ++i) {
    const std::string at = "(h" + std::to_string(i + 1) + ")";
    const Scalar Qi = Q.coefficient(Mask{1} << i);
    for (std::size_t j = 0; j < mu.size(); ++j) {
      const std::string gen = "mu_" + std::to_string(j + 1);
      out.h1 &= check_zero(geom::pair(mu[j], gamma_t.horizontal_part(gamma.frame(i))), "H1 " + gen + at);
      out.h4 &= check_zero(action::average(action, geom::pair(mu[j], gamma.frame(i))), "H4 " + gen + at);
    }
    out.h2 &=
        within("H2 " + at, geom::check_zero(geom::evaluate(xi, {gamma.frame(i)}) - poisson::hamiltonian_vf(P, Qi)));
    out.h3 &= within("H3 " + at, poisson::is_casimir(P, action::average(action, Qi)));
  }
  return out;
}

}  // namespace hbkit::hamcurv

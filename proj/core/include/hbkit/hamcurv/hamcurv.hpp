#ifndef HBKIT_HAMCURV_HAMCURV_HPP
#define HBKIT_HAMCURV_HAMCURV_HPP

#include <vector>

#include "hbkit/action/torus.hpp"
#include "hbkit/poisson/poisson.hpp"

namespace hbkit::hamcurv {

using action::PreMomentumMap;
using action::TorusAction;
using foliation::Connection;
using geom::DiffForm;
using geom::Multivector;
using symcalc::Scalar;

/// Curv^gamma(h_i,h_j) = -P# d sigma(h_i,h_j) on every frame pair.
/// Throws NotHorizontal or DegreeMismatch unless sigma is a horizontal 2-form.
Verdict verify_conn_H(const Connection& gamma, const DiffForm& sigma, const Multivector& P);

/// Horizontal form whose coefficients are Casimirs of P.
Verdict is_casimir_form(const DiffForm& beta, const Multivector& P);

/// sigma' - sigma is a Casimir form.
Verdict sigma_freedom_check(const Connection& gamma, const DiffForm& sigma, const DiffForm& sigma2,
                            const Multivector& P);

/// d^gamma_{1,0} sigma = 0.
Verdict verify_admissible(const Connection& gamma, const DiffForm& sigma, const Multivector& P);

/// d^gamma_{1,0} sigma, which must be a Casimir 3-form. Throws NotCasimirResidue otherwise.
DiffForm bianchi_residue(const Connection& gamma, const DiffForm& sigma, const Multivector& P);

/// d^gamma_{1,0} restricted to Casimir forms. Throws NotCasimir for other input.
DiffForm casimir_complex_d(const Connection& gamma, const DiffForm& beta, const Multivector& P);

/// The connection with frame h_i + P# d Q(h_i), i.e. gamma - Xi with Xi = P# dQ.
Connection shifted_connection(const Connection& gamma, const DiffForm& Q, const Multivector& P);

/// sigma - (d^gamma_{1,0} Q + 1/2 {Q ^ Q}_P).
DiffForm averaged_sigma(const Connection& gamma, const DiffForm& sigma, const DiffForm& Q, const Multivector& P);

struct AveragingIdentitiesVerdict {
  Verdict shifted_derivative;  // d^{gamma-bar}_{1,0} sigma = d^gamma_{1,0} sigma + {Q ^ sigma}_P
  Verdict squared_derivative;  // (d^gamma_{1,0})^2 Q = {Q ^ sigma}_P
  Verdict bracket_derivative;  // d^gamma_{1,0} 1/2 {Q ^ Q}_P = -{Q ^ d^gamma_{1,0} Q}_P
  bool all() const { return shifted_derivative.passed && squared_derivative.passed && bracket_derivative.passed; }
};
/// gamma-bar is shifted_connection(gamma, Q, P).
AveragingIdentitiesVerdict averaging_identities(const Connection& gamma, const DiffForm& sigma, const DiffForm& Q,
                                    const Multivector& P);

struct AdiabaticVerdict {
  Verdict condition;          // <(id - gamma^*) mu_j> = 0
  Verdict averaged_vertical;  // (id - <gamma>^*) mu_j = 0
  Verdict routes_agree;       // (id - <gamma>^*) mu_j = <(id - gamma^*) mu_j>
  bool consistent() const { return routes_agree.passed && condition.passed == averaged_vertical.passed; }
};
AdiabaticVerdict adiabatic_check(const TorusAction& action, const Connection& gamma, const PreMomentumMap& mu);

/// mu_j - dK_j after checking that <(id - gamma^*) mu_j> is a d^gamma_{1,0}
/// cocycle (NotACocycle) and that K_j is a Casimir primitive of it
/// (PrimitiveMismatch). The result is re-verified; InvariantViolation if not.
PreMomentumMap adiabatic_fix(const TorusAction& action, const Connection& gamma, const PreMomentumMap& mu,
                             const std::vector<Scalar>& K, const Multivector& P);

struct AxiomaticVerdict {
  Verdict h1;  // i_{(id - gamma~)X} mu = 0
  Verdict h2;  // (gamma - gamma~)(X) = P# d Q(X)
  Verdict h3;  // <Q(X)> is a Casimir
  Verdict h4;  // <i_{(id - gamma)X} mu> = 0
  bool h1_to_h3() const { return h1.passed && h2.passed && h3.passed; }
};
/// All four conditions on the frame of gamma. Throws NotHorizontal if Q is not horizontal.
AxiomaticVerdict axiomatic_verify(const TorusAction& action, const Connection& gamma, const Connection& gamma_t,
                                  const DiffForm& Q, const PreMomentumMap& mu, const Multivector& P);

}  // namespace hbkit::hamcurv

#endif  // HBKIT_HAMCURV_HAMCURV_HPP

#ifndef HBKIT_DIRAC_DIRAC_HPP
#define HBKIT_DIRAC_DIRAC_HPP

#include <string>
#include <vector>

#include "hbkit/action/torus.hpp"
#include "hbkit/poisson/poisson.hpp"

namespace hbkit::dirac {

using foliation::Connection;
using geom::DiffForm;
using geom::Multivector;
using geom::VectorField;
using symcalc::ChartPtr;
using symcalc::Scalar;

/// A section (X, alpha) of TM + T*M.
struct Section {
  VectorField X;
  DiffForm alpha;

  bool operator==(const Section&) const = default;
};

/// <(X,a),(Y,b)> = b(X) + a(Y).
Scalar pairing(const Section& s, const Section& t);

/// ([X,Y], L_X b - L_Y a + 1/2 d(a(Y) - b(X))).
Section courant_bracket(const Section& s, const Section& t);

/// (L_Z X, L_Z alpha).
Section lie_derivative(const VectorField& Z, const Section& s);

struct Generator {
  std::string name;
  Section section;
};

/// A distribution in TM + T*M given by generating sections.
struct DiracStructure {
  ChartPtr chart;
  std::vector<Generator> generators;
};

/// D^{gamma,sigma} = {(X + P# a, a - i_X sigma) | X horizontal, a annihilating the horizontal}.
/// Generators: e_v = (P# theta^v, theta^v) with theta^v = gamma^* dv, and
/// e_i = (h_i, -i_{h_i} sigma).
struct DiracData {
  Connection gamma;
  DiffForm sigma;
  Multivector P;
  DiracStructure D;
};

/// Throws NotHorizontal or DegreeMismatch unless sigma is a horizontal 2-form.
DiracData build_coupling_dirac(const Connection& gamma, const DiffForm& sigma, const Multivector& P);

/// Pairwise pairings vanish, there are dim M generators, and they are
/// pointwise independent at a generic rational point.
Verdict verify_lagrangian(const DiracStructure& D);

/// Membership by pairing against every generator. Valid for Lagrangian D.
Verdict contains(const DiracStructure& D, const Section& s);

/// Every generator of one lies in the other. For two Lagrangian
/// distributions one inclusion already means equality.
Verdict same_distribution(const DiracStructure& D1, const DiracStructure& D2);

/// Courant brackets of generator pairs lie in D.
Verdict verify_involutive(const DiracStructure& D);

/// (X, alpha) -> (X, alpha + i_X B) on every generator.
DiracStructure gauge_transform(const DiracStructure& D, const DiffForm& B);

struct GInvarianceVerdict {
  Verdict pullback;         // Phi^*_theta of every generator lies in D, on the flow chart
  Verdict lie;              // L_{xi_j} of every generator lies in D
  Verdict sigma_invariant;  // L_{xi_j} sigma = 0, decisive when gamma is invariant
  bool consistent() const { return pullback.passed == lie.passed; }
};
GInvarianceVerdict verify_g_invariance(const action::TorusAction& action, const DiracData& D);

/// (xi_j, mu_j) lies in D for every generator of the action.
Verdict hamiltonian_generator_check(const action::TorusAction& action, const action::PreMomentumMap& mu,
                                    const DiracStructure& D);

/// A vector h + P# a of the characteristic distribution, with h horizontal for
/// the connection it is used with.
struct LeafVector {
  VectorField h;
  DiffForm a;
};

/// omega(u, v) = sigma(h_u, h_v) + P(a_u, b_v), the presymplectic form read
/// as omega(X, Y) = -alpha(Y) for (X, alpha) in D. Throws NotHorizontal if a
/// leaf vector's h is not horizontal for D.gamma.
Scalar presymplectic_form(const DiracData& D, const LeafVector& u, const LeafVector& v);

/// The same value read off D: -alpha_u(Y_v) with (X_u, alpha_u) in D.
Scalar presymplectic_form_from_D(const DiracData& D, const LeafVector& u, const LeafVector& v);

/// omega-bar(u, v) = omega(u, v) - dQ(u, v) on the family h_i + P# dQ(h_i),
/// P# dv, where omega-bar belongs to (gamma-bar, sigma-bar) and dQ is the full
/// exterior derivative of Q.
Verdict presymplectic_comparison(const DiracData& D, const DiracData& averaged, const DiffForm& Q);

}  // namespace hbkit::dirac

#endif  // HBKIT_DIRAC_DIRAC_HPP

#ifndef HBKIT_POISSON_POISSON_HPP
#define HBKIT_POISSON_POISSON_HPP

#include "hbkit/foliation/connection.hpp"

namespace hbkit::poisson {

using geom::DiffForm;
using geom::Multivector;
using geom::VectorField;
using symcalc::Scalar;

// Conventions: P(a, b) = sum_{i<j} P^{ij} (a_i b_j - a_j b_i),
// (P#a)^j = sum_i P^{ij} a_i so that b(P#a) = P(a, b), X_f = P#df and
// {f, g} = P(df, dg). With P = d_q ^ d_p this gives X_J = -p d_q + q d_p
// for J = (q^2 + p^2)/2.

/// P lies in the second exterior power of the vertical distribution.
Verdict is_vertical_bivector(const Multivector& P);

/// [P, P] = 0.
Verdict verify_jacobi(const Multivector& P);

VectorField sharp(const Multivector& P, const DiffForm& alpha);
VectorField hamiltonian_vf(const Multivector& P, const Scalar& f);
Scalar bracket(const Multivector& P, const Scalar& f, const Scalar& g);

/// P#df = 0.
Verdict is_casimir(const Multivector& P, const Scalar& f);

/// L_{h_i} P = 0 for every frame field of the connection. The frame spans
/// the projectable horizontal fields over basic functions, so this suffices.
Verdict verify_poisson_connection(const foliation::Connection& gamma, const Multivector& P);

/// {Q ^ beta}_P (Z_0..Z_q) = sum_i (-1)^i {Q(Z_i), beta(Z_0..^Z_i..Z_q)}
/// for horizontal Q of degree 1 and horizontal beta of degree q. Horizontal
/// forms are determined by their values on d_{x_i}, so the result does not
/// depend on a connection. Throws NotHorizontal.
DiffForm braided_wedge(const Multivector& P, const DiffForm& Q, const DiffForm& beta);

}  // namespace hbkit::poisson

#endif  // HBKIT_POISSON_POISSON_HPP

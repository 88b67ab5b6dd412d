#include "hbkit/poisson/poisson.hpp"

#include "hbkit/errors.hpp"

namespace hbkit::poisson {

using geom::Mask;
using symcalc::Rational;

Verdict is_vertical_bivector(const Multivector& P) {
  if (P.degree() != 2) return Verdict::fail("not a bivector");
  const auto& chart = P.chart();
  const Mask horizontal = (Mask{1} << chart->n_horizontal()) - 1;
  for (const auto& [m, c] : P.coefficients())
    if ((m & horizontal) != 0) return Verdict::fail("[" + geom::mask_label(*chart, m, true) + "]", c);
  return Verdict::pass();
}

Verdict verify_jacobi(const Multivector& P) { return within("[P,P]", geom::check_zero(geom::schouten_bracket(P, P))); }

VectorField hamiltonian_vf(const Multivector& P, const Scalar& f) { return sharp(P, geom::differential(f)); }

Scalar bracket(const Multivector& P, const Scalar& f, const Scalar& g) {
  return geom::evaluate(P, {geom::differential(f), geom::differential(g)});
}

Verdict is_casimir(const Multivector& P, const Scalar& f) {
  return within("P#df", geom::check_zero(hamiltonian_vf(P, f)));
}

Verdict verify_poisson_connection(const foliation::Connection& gamma, const Multivector& P) {
  Verdict v;
  for (std::size_t i = 0; i < gamma.n_horizontal(); ++i)
    v &= within("L_h" + std::to_string(i + 1) + " P", geom::check_zero(geom::lie_derivative(gamma.frame(i), P)));
  return v;
}

DiffForm braided_wedge(const Multivector& P, const DiffForm& Q, const DiffForm& beta) {
  if (Q.degree() != 1) throw DegreeMismatch("Q must be a 1-form");
  if (!foliation::is_horizontal_form(Q)) throw NotHorizontal("Q does not annihilate the vertical distribution");
  if (!foliation::is_horizontal_form(beta)) throw NotHorizontal("beta does not annihilate the vertical distribution");
  symcalc::require_same_chart(Q.chart(), beta.chart());
  const auto& chart = Q.chart();
  const std::size_t nh = chart->n_horizontal();
  const std::size_t k = beta.degree() + 1;
  DiffForm out(chart, k);
  if (k > nh) return out;
  // Walk increasing k-subsets of the horizontal indices as bit masks.
  for (Mask m = 0; m < (Mask{1} << nh); ++m) {
    if (geom::mask_degree(m) != k) continue;
    const auto idx = geom::indices_of(m);
    Scalar value(chart);
    for (std::size_t i = 0; i < k; ++i) {
      const Scalar qi = Q.coefficient(Mask{1} << idx[i]);
      if (qi.is_zero()) continue;
      const Scalar b = beta.coefficient(m & ~(Mask{1} << idx[i]));
      const Scalar term = bracket(P, qi, b);
      if (i % 2 == 0) {
        value += term;
      } else {
        value -= term;
      }
    }
    out.set(m, value);
  }
  return out;
}

}  // namespace hbkit::poisson

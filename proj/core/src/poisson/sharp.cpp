#include "hbkit/errors.hpp"
#include "hbkit/poisson/poisson.hpp"

namespace hbkit::poisson {

// The only place the sign of the musical map is decided. The test-only
// build defines HBKIT_FLIPPED_SHARP to prove the convention checks bite.
VectorField sharp(const Multivector& P, const DiffForm& alpha) {
  if (P.degree() != 2) throw DegreeMismatch("sharp needs a bivector");
  if (alpha.degree() != 1) throw DegreeMismatch("sharp needs a 1-form");
  symcalc::require_same_chart(P.chart(), alpha.chart());
  const auto& chart = P.chart();
  VectorField out(chart);
  for (const auto& [m, c] : P.coefficients()) {
    const auto ij = geom::indices_of(m);
    const std::size_t i = ij[0];
    const std::size_t j = ij[1];
    // P^{ij} = c and P^{ji} = -c.
    out.set(j, out[j] + c * alpha.coefficient(geom::Mask{1} << i));
    out.set(i, out[i] - c * alpha.coefficient(geom::Mask{1} << j));
  }
#ifdef HBKIT_FLIPPED_SHARP
  out = -out;
#endif
  return out;
}

}  // namespace hbkit::poisson

#ifndef HBKIT_GEOM_PULLBACK_HPP
#define HBKIT_GEOM_PULLBACK_HPP

#include <optional>
#include <vector>

#include "hbkit/geom/tensors.hpp"

namespace hbkit::geom {

/// Coordinate map Phi given by the images of the coordinates, optionally
/// with its inverse. The images may live on an extension of the tensor's
/// chart (for instance one carrying the flow angle); pulled-back tensors
/// then live there too.
struct Diffeo {
  ChartPtr target;
  std::vector<Scalar> images;
  std::optional<std::vector<Scalar>> inverse_images;
};

Scalar pullback(const Diffeo& phi, const Scalar& f);
DiffForm pullback(const Diffeo& phi, const DiffForm& a);
/// These three push vectors through the inverse and throw MissingInverse
/// without one.
VectorField pullback(const Diffeo& phi, const VectorField& Y);
Multivector pullback(const Diffeo& phi, const Multivector& A);
VecValuedForm pullback(const Diffeo& phi, const VecValuedForm& K);

}  // namespace hbkit::geom

#endif  // HBKIT_GEOM_PULLBACK_HPP

#ifndef HBKIT_FOLIATION_CONNECTION_HPP
#define HBKIT_FOLIATION_CONNECTION_HPP

#include <map>
#include <utility>
#include <vector>

#include "hbkit/geom/calculus.hpp"
#include "hbkit/verdict.hpp"

namespace hbkit::foliation {

using geom::DiffForm;
using geom::Mask;
using geom::VectorField;
using geom::VecValuedForm;
using symcalc::ChartPtr;
using symcalc::Scalar;

/// Ehresmann connection on a foliated chart whose leaves are the level sets
/// of the horizontal coordinates.
///
/// Stored both as the projection gamma onto the vertical distribution and
/// as its horizontal frame h_i = d_{x_i} - gamma(d_{x_i}). The adapted
/// coframe (dx_i, theta^v = gamma^* dv) is dual to (h_i, d_v).
class Connection {
 public:
  /// Throws InvariantViolation if gamma is not a projection onto the
  /// vertical distribution.
  explicit Connection(VecValuedForm gamma);

  const ChartPtr& chart() const { return gamma_.chart(); }
  const VecValuedForm& gamma() const { return gamma_; }
  std::size_t n_horizontal() const { return frame_.size(); }
  const std::vector<VectorField>& frame() const { return frame_; }
  const VectorField& frame(std::size_t i) const { return frame_[i]; }
  /// theta^v for each vertical coordinate, in chart order.
  const std::vector<DiffForm>& vertical_coframe() const { return coframe_; }
  /// The basis dual to the adapted coframe: the frame, then d_v.
  std::vector<VectorField> adapted_basis() const;

  VectorField vertical_part(const VectorField& X) const;
  VectorField horizontal_part(const VectorField& X) const;
  /// gamma^* a: a with every argument replaced by its vertical part.
  DiffForm adjoint(const DiffForm& a) const;

 private:
  VecValuedForm gamma_;
  std::vector<VectorField> frame_;
  std::vector<DiffForm> coframe_;
};

/// Connection whose horizontal distribution is spanned by `frame`, one
/// field per horizontal coordinate with horizontal part exactly d_{x_i}.
/// Throws NotComplementary otherwise.
Connection connection_from_frame(const std::vector<VectorField>& frame);

/// gamma o gamma = gamma, im gamma in V, gamma = id on V.
Verdict verify_connection(const VecValuedForm& gamma);

/// Components of a form in the adapted coframe, keyed by (p, q): p
/// differentials dx_i and q vertical coframe elements theta^v.
struct BigradedForm {
  std::map<std::pair<std::size_t, std::size_t>, DiffForm> parts;

  DiffForm part(std::size_t p, std::size_t q) const;
  DiffForm total() const;
};

BigradedForm bigrade(const DiffForm& a, const Connection& gamma);

/// Literal covariant exterior derivative: the (k+1)-form
/// X_0..X_k -> da((id-gamma)X_0, ..., (id-gamma)X_k).
DiffForm covariant_derivative(const DiffForm& a, const Connection& gamma);

/// Pieces of d of bidegree (1,0), (0,1) and (2,-1), applied to each
/// bigraded component of `a`.
struct BigradedDifferential {
  DiffForm d10;
  DiffForm d01;
  DiffForm d2m1;
};
BigradedDifferential bigraded_differential(const DiffForm& a, const Connection& gamma);

/// True if the form annihilates the vertical distribution (only dx_i).
bool is_horizontal_form(const DiffForm& a);

/// 1/2 [gamma, gamma]_FN.
VecValuedForm curvature(const Connection& gamma);
/// gamma([h_i, h_j]) for i < j, keyed by (i, j).
std::map<std::pair<std::size_t, std::size_t>, VectorField> curvature_on_frame(const Connection& gamma);
/// Both routes agree on every frame pair.
Verdict curvature_routes_agree(const Connection& gamma);

/// Checks Curv^{gamma - Xi}(Z1,Z2) = Curv^gamma(Z1,Z2) + [Xi Z1, Xi Z2]
/// + [Xi Z1, Z2] - [Xi Z2, Z1] - Xi[Z1,Z2] on the frame of gamma.
/// Throws NotVertical unless im Xi is vertical and Xi vanishes on V.
Verdict curvature_transition_check(const Connection& gamma, const VecValuedForm& xi);

/// [Z, d_v] is vertical for every vertical coordinate v.
Verdict is_projectable(const VectorField& Z);

}  // namespace hbkit::foliation

#endif  // HBKIT_FOLIATION_CONNECTION_HPP

#ifndef HBKIT_ACTION_TORUS_HPP
#define HBKIT_ACTION_TORUS_HPP

#include <string>
#include <vector>

#include "hbkit/foliation/connection.hpp"
#include "hbkit/geom/pullback.hpp"

namespace hbkit::action {

using geom::DiffForm;
using geom::Multivector;
using geom::VectorField;
using geom::VecValuedForm;
using symcalc::ChartPtr;
using symcalc::Scalar;

/// One circle factor, given by the images of all coordinates under
/// Phi_theta. The images live on the base chart extended by `angle`.
struct CircleFlow {
  std::string angle;
  std::vector<Scalar> images;
};

/// Action of T^k by k commuting flows.
class TorusAction {
 public:
  /// Throws InvariantViolation unless every flow is the identity at angle
  /// zero, satisfies Phi_theta o Phi_phi = Phi_{theta+phi}, and the flows
  /// commute pairwise.
  TorusAction(ChartPtr base, std::vector<CircleFlow> flows);

  const ChartPtr& base() const { return base_; }
  std::size_t rank() const { return flows_.size(); }
  const CircleFlow& flow(std::size_t j) const { return flows_.at(j); }
  /// The base chart extended by the angle of flow j (always its last angle).
  const ChartPtr& flow_chart(std::size_t j) const { return diffeos_.at(j).target; }
  /// Phi^{(j)}_theta, with inverse Phi^{(j)}_{-theta}.
  const geom::Diffeo& diffeo(std::size_t j) const { return diffeos_.at(j); }
  /// Drops the (unused) angle of flow j from a flow-chart scalar.
  Scalar to_base(std::size_t j, const Scalar& f) const;

 private:
  ChartPtr base_;
  std::vector<CircleFlow> flows_;
  std::vector<geom::Diffeo> diffeos_;
};

/// d/dtheta_j of the flow at theta_j = 0.
VectorField infinitesimal_generator(const TorusAction& action, std::size_t j);

struct ActionVerdict {
  Verdict foliation_preserving;
  Verdict leaf_tangent;
  Verdict canonical;
};
ActionVerdict verify_action(const TorusAction& action, const Multivector& P);

// Haar average <T> = Int_G Phi_g^* T dg, one circle factor at a time.
Scalar average(const TorusAction& action, const Scalar& f);
VectorField average(const TorusAction& action, const VectorField& X);
DiffForm average(const TorusAction& action, const DiffForm& a);
Multivector average(const TorusAction& action, const Multivector& A);
VecValuedForm average(const TorusAction& action, const VecValuedForm& K);

// Average over the single factor j.
Scalar average_over_factor(const TorusAction& action, std::size_t j, const Scalar& f);
VectorField average_over_factor(const TorusAction& action, std::size_t j, const VectorField& X);
DiffForm average_over_factor(const TorusAction& action, std::size_t j, const DiffForm& a);
Multivector average_over_factor(const TorusAction& action, std::size_t j, const Multivector& A);
VecValuedForm average_over_factor(const TorusAction& action, std::size_t j, const VecValuedForm& K);

/// (1/2pi) Int_0^{2pi} Int_0^theta Phi^{(j)*}_s f ds dtheta.
Scalar running_integral_average(const TorusAction& action, std::size_t j, const Scalar& f);
VectorField running_integral_average(const TorusAction& action, std::size_t j, const VectorField& X);

/// Xi^G = gamma - <gamma>.
VecValuedForm connection_difference(const TorusAction& action, const foliation::Connection& gamma);

/// <gamma>, which is a connection again.
foliation::Connection hannay_berry(const TorusAction& action, const foliation::Connection& gamma);

/// Xi^G(Z) = -Int_G Int_0^1 Phi^*_{exp(t xi)} [Z, xi_M] dt dg for a
/// gamma-horizontal Z. On T^k the factors are handled in turn: Z_0 = Z,
/// Z_j = Z_{j-1} - running average over factor j of [Z_{j-1}, xi_j], and
/// the result is Z_k - Z. Throws NotHorizontal if gamma(Z) != 0.
VectorField xi_via_double_integral(const TorusAction& action, const foliation::Connection& gamma, const VectorField& Z);

/// One 1-form per generator.
using PreMomentumMap = std::vector<DiffForm>;

/// xi_j = P# mu_j and i_{P# dx^a} d mu_j = 0 for every coordinate a.
Verdict verify_premomentum(const TorusAction& action, const Multivector& P, const PreMomentumMap& mu);

/// Q(Z) = -Int_G Int_0^1 Phi^*_{exp(ta)} i_Z (mu_a)_{1,0} dt dg on the frame
/// of gamma, returned as sum_i Q(h_i) dx_i. On T^k, factor j contributes
/// minus the running average of i_{Z_{j-1}} (mu_j)_{1,0}, where Z_{j-1} and
/// the (1,0) projection are taken for the connection already averaged over
/// the earlier factors.
DiffForm compute_Q(const TorusAction& action, const foliation::Connection& gamma, const PreMomentumMap& mu);

/// Curv^{<gamma>}(h_i,h_j) = Curv^gamma(h_i,h_j)
///   + P# d( d^gamma_{1,0} Q(h_i,h_j) + 1/2 {Q ^ Q}_P(h_i,h_j) )
/// on every pair of frame fields of gamma.
Verdict averaged_curvature_identity(const TorusAction& action, const foliation::Connection& gamma, const DiffForm& Q,
                                    const Multivector& P);

struct InvarianceVerdict {
  Verdict averaged_equals_gamma;  // <gamma> = gamma
  Verdict fn_brackets_vanish;     // [gamma, xi_M]_FN = 0
  Verdict difference_vanishes;    // Xi^G = 0 on the frame, by the double integral
  /// True when all three verdicts agree.
  bool consistent() const;
  bool invariant() const { return averaged_equals_gamma.passed; }
};
InvarianceVerdict invariance_criteria(const TorusAction& action, const foliation::Connection& gamma);

}  // namespace hbkit::action

#endif  // HBKIT_ACTION_TORUS_HPP

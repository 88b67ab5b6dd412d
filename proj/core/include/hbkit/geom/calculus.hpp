#ifndef HBKIT_GEOM_CALCULUS_HPP
#define HBKIT_GEOM_CALCULUS_HPP

#include <vector>

#include "hbkit/geom/tensors.hpp"

namespace hbkit::geom {

// Sign charter. Every bracket below follows these reductions, and the unit
// tests pin each of them:
//   fn_bracket on degree-0 operands (vector fields) is the Lie bracket [X,Y];
//   lie_derivative(X, K) == -fn_bracket(K, X) for vector-valued forms K;
//   schouten_bracket(X, A) == lie_derivative(X, A) for a vector field X.

DiffForm wedge(const DiffForm& a, const DiffForm& b);
Multivector wedge(const Multivector& a, const Multivector& b);
/// (a ^ K)^c = a ^ K^c.
VecValuedForm wedge(const DiffForm& a, const VecValuedForm& K);

DiffForm exterior_derivative(const DiffForm& a);
DiffForm differential(const Scalar& f);

/// Throws DegreeUnderflow on 0-forms.
DiffForm interior_product(const VectorField& X, const DiffForm& a);
/// Contraction of a form into the first slot of a multivector.
Multivector interior_product(const DiffForm& alpha, const Multivector& A);

/// a(X_1,...,X_k).
Scalar evaluate(const DiffForm& a, const std::vector<VectorField>& args);
/// A(a_1,...,a_k) for 1-forms a_i.
Scalar evaluate(const Multivector& A, const std::vector<DiffForm>& args);
VectorField evaluate(const VecValuedForm& K, const std::vector<VectorField>& args);
/// alpha(X) for a 1-form.
Scalar pair(const DiffForm& alpha, const VectorField& X);

/// X(f).
Scalar apply(const VectorField& X, const Scalar& f);

VectorField lie_bracket(const VectorField& X, const VectorField& Y);
Scalar lie_derivative(const VectorField& X, const Scalar& f);
VectorField lie_derivative(const VectorField& X, const VectorField& Y);
/// Cartan formula i_X d + d i_X.
DiffForm lie_derivative(const VectorField& X, const DiffForm& a);
/// Derivation of the tensor product applied to d_I.
Multivector lie_derivative(const VectorField& X, const Multivector& A);
/// Componentwise derivation of K = sum_a K^a (x) d_a.
VecValuedForm lie_derivative(const VectorField& X, const VecValuedForm& K);

Multivector as_multivector(const VectorField& X);
VectorField as_vector_field(const Multivector& A);

Multivector schouten_bracket(const Multivector& A, const Multivector& B);

/// Frolicher-Nijenhuis bracket by the coordinate formula. Arities with
/// k + l <= 3, or with a degree-0 operand, are supported; anything else
/// throws UnsupportedDegree.
VecValuedForm fn_bracket(const VecValuedForm& K, const VecValuedForm& L);

/// (K o L)(X) = K(L(X)) for vector-valued 1-forms.
VecValuedForm compose(const VecValuedForm& K, const VecValuedForm& L);

}  // namespace hbkit::geom

#endif  // HBKIT_GEOM_CALCULUS_HPP

#include "hbkit/geom/pullback.hpp"

#include "hbkit/geom/calculus.hpp"

namespace hbkit::geom {

namespace {

using symcalc::Symbol;
using symcalc::SymbolKind;

std::vector<std::pair<Symbol, Scalar>> coordinate_map(const Diffeo& phi) {
  std::vector<std::pair<Symbol, Scalar>> map;
  map.reserve(phi.images.size());
  for (std::size_t i = 0; i < phi.images.size(); ++i)
    map.emplace_back(Symbol{SymbolKind::kCoordinate, i}, symcalc::lift(phi.images[i], phi.target));
  return map;
}

// jac[j][i] = (d_j Psi^i) o Phi, so that Phi^* d_j = sum_i jac[j][i] d_i.
std::vector<std::vector<Scalar>> inverse_jacobian(const Diffeo& phi) {
  if (!phi.inverse_images) throw MissingInverse("pulling back vectors needs the inverse map");
  const auto map = coordinate_map(phi);
  const std::size_t dim = phi.images.size();
  std::vector<std::vector<Scalar>> jac(dim, std::vector<Scalar>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      Scalar psi = symcalc::lift((*phi.inverse_images)[i], phi.target);
      Scalar d = symcalc::partial_derivative(psi, Symbol{SymbolKind::kCoordinate, j});
      jac[j][i] = d.is_zero() ? Scalar(phi.target) : symcalc::substitute(d, map);
    }
  }
  return jac;
}

}  // namespace

Scalar pullback(const Diffeo& phi, const Scalar& f) {
  if (f.is_zero()) return Scalar(phi.target);
  return symcalc::substitute(f, coordinate_map(phi));
}

DiffForm pullback(const Diffeo& phi, const DiffForm& a) {
  const auto map = coordinate_map(phi);
  std::vector<DiffForm> dphi;
  dphi.reserve(phi.images.size());
  for (const auto& [sym, image] : map) dphi.push_back(differential(image));
  DiffForm out(phi.target, a.degree());
  for (const auto& [m, c] : a.coefficients()) {
    DiffForm term = DiffForm::function(symcalc::substitute(c, map));
    for (auto i : indices_of(m)) term = wedge(term, dphi[i]);
    out += term;
  }
  return out;
}

VectorField pullback(const Diffeo& phi, const VectorField& Y) {
  const auto jac = inverse_jacobian(phi);
  const auto map = coordinate_map(phi);
  const std::size_t dim = phi.images.size();
  VectorField out(phi.target);
  for (std::size_t j = 0; j < dim; ++j) {
    if (Y[j].is_zero()) continue;
    Scalar yj = symcalc::substitute(Y[j], map);
    for (std::size_t i = 0; i < dim; ++i)
      if (!jac[j][i].is_zero()) out.set(i, out[i] + jac[j][i] * yj);
  }
  return out;
}

Multivector pullback(const Diffeo& phi, const Multivector& A) {
  const auto jac = inverse_jacobian(phi);
  const auto map = coordinate_map(phi);
  const std::size_t dim = phi.images.size();
  std::vector<Multivector> pushed;
  pushed.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    Multivector v(phi.target, 1);
    for (std::size_t i = 0; i < dim; ++i) v.set(Mask{1} << i, jac[j][i]);
    pushed.push_back(std::move(v));
  }
  Multivector out(phi.target, A.degree());
  for (const auto& [m, c] : A.coefficients()) {
    Multivector term = Multivector::function(symcalc::substitute(c, map));
    for (auto j : indices_of(m)) term = wedge(term, pushed[j]);
    out += term;
  }
  return out;
}

VecValuedForm pullback(const Diffeo& phi, const VecValuedForm& K) {
  const auto jac = inverse_jacobian(phi);
  const std::size_t dim = phi.images.size();
  std::vector<DiffForm> pulled;
  pulled.reserve(dim);
  for (std::size_t a = 0; a < dim; ++a) pulled.push_back(pullback(phi, K.component(a)));
  std::vector<DiffForm> comps(dim, DiffForm(phi.target, K.degree()));
  for (std::size_t a = 0; a < dim; ++a) {
    if (pulled[a].is_zero()) continue;
    for (std::size_t i = 0; i < dim; ++i)
      if (!jac[a][i].is_zero()) comps[i] += jac[a][i] * pulled[a];
  }
  return VecValuedForm(phi.target, std::move(comps));
}

}  // namespace hbkit::geom

#include "hbkit/dirac/dirac.hpp"

#include <gtest/gtest.h>

#include "desk.hpp"
#include "hbkit/errors.hpp"
#include "hbkit/hamcurv/hamcurv.hpp"
#include "random_tensors.hpp"

namespace hbkit::dirac {
namespace {

using geom::Mask;
using symcalc::Chart;
using testing::S;
using testing::Scenario;

DiffForm dx(const ChartPtr& chart, std::vector<std::size_t> idx) { return DiffForm::basis(chart, std::move(idx)); }

// sigma from the frame potentials, as in the curvature-form tests.
DiffForm sigma_of(const Scenario& sc) {
  const auto& c = sc.chart;
  DiffForm sigma(c, 2);
  for (std::size_t i = 0; i < sc.potentials.size(); ++i)
    for (std::size_t j = i + 1; j < sc.potentials.size(); ++j) {
      const auto& Ai = sc.potentials[i];
      const auto& Aj = sc.potentials[j];
      const Scalar F = symcalc::partial_derivative(Aj, c->coordinate_name(i)) -
                       symcalc::partial_derivative(Ai, c->coordinate_name(j)) + poisson::bracket(sc.P, Ai, Aj);
      sigma.set((Mask{1} << i) | (Mask{1} << j), -F);
    }
  return sigma;
}

std::vector<Scenario> scenarios() {
  return {testing::triv_scenario(), testing::hb4d_scenario(), testing::hb4d_inv_scenario(), testing::ext3_scenario(),
          testing::t2_scenario()};
}

class DiracTest : public ::testing::Test {
 protected:
  Scenario triv = testing::triv_scenario();
  Scenario hb = testing::hb4d_scenario();
  Scenario inv = testing::hb4d_inv_scenario();
  ChartPtr chart = triv.chart;
  DiffForm dx12 = dx(chart, {0, 1});

  Scalar s(const std::string& t) const { return S(chart, t); }
  VectorField del(const std::string& n) const { return VectorField::coordinate(chart, chart->coordinate_index(n)); }
  DiffForm d(const std::string& n) const { return dx(chart, {chart->coordinate_index(n)}); }
  Section zero() const { return {VectorField(chart), DiffForm(chart, 1)}; }
};

TEST_F(DiracTest, PairingExamples) {
  EXPECT_EQ(pairing({del("q"), DiffForm(chart, 1)}, {VectorField(chart), d("q")}), s("1"));
  EXPECT_TRUE(pairing({del("q"), d("q")}, {del("q"), -d("q")}).is_zero());
  const auto e_dq = Section{poisson::sharp(triv.P, d("q")), d("q")};
  const auto e_dp = Section{poisson::sharp(triv.P, d("p")), d("p")};
  EXPECT_TRUE(pairing(e_dq, e_dp).is_zero());
  EXPECT_EQ(geom::pair(d("p"), e_dq.X), s("1"));
}

TEST_F(DiracTest, PairingIsSymmetricBilinear) {
  testing::RandomTensors rnd(chart, 3);
  for (int k = 0; k < 5; ++k) {
    const Section a{rnd.vector_field(), rnd.form(1)}, b{rnd.vector_field(), rnd.form(1)},
        c{rnd.vector_field(), rnd.form(1)};
    const Scalar f = rnd.scalar(2, 2, false);
    EXPECT_EQ(pairing(a, b), pairing(b, a));
    EXPECT_EQ(pairing(a, {f * b.X + c.X, f * b.alpha + c.alpha}), f * pairing(a, b) + pairing(a, c));
  }
}

TEST_F(DiracTest, CourantExamples) {
  const Section dq{del("q"), DiffForm(chart, 1)}, dp{del("p"), DiffForm(chart, 1)};
  EXPECT_EQ(courant_bracket(dq, dp), zero());
  EXPECT_EQ(courant_bracket({del("x1"), DiffForm(chart, 1)}, {VectorField(chart), d("q")}), zero());
  testing::RandomTensors rnd(chart, 11);
  for (int k = 0; k < 4; ++k) {
    const Scalar f = k == 0 ? s("q") : rnd.scalar(3, 3, false);
    const Scalar g = k == 0 ? s("p") : rnd.scalar(3, 3, false);
    const Section ef{poisson::hamiltonian_vf(triv.P, f), geom::differential(f)};
    const Section eg{poisson::hamiltonian_vf(triv.P, g), geom::differential(g)};
    const Scalar fg = poisson::bracket(triv.P, f, g);
    EXPECT_EQ(courant_bracket(ef, eg), (Section{poisson::hamiltonian_vf(triv.P, fg), geom::differential(fg)}));
  }
}

TEST_F(DiracTest, CourantSkewAndLeibniz) {
  testing::RandomTensors rnd(chart, 5);
  for (int k = 0; k < 4; ++k) {
    const Section a{rnd.vector_field(), rnd.form(1)}, b{rnd.vector_field(), rnd.form(1)};
    const Scalar f = rnd.scalar(2, 2, false);
    const auto ab = courant_bracket(a, b);
    const auto ba = courant_bracket(b, a);
    EXPECT_EQ(ab.X, -ba.X);
    EXPECT_EQ(ab.alpha, -ba.alpha);
    // [a, f b] = f [a, b] + X_a(f) b - 1/2 <a, b> df
    const auto lhs = courant_bracket(a, {f * b.X, f * b.alpha});
    const Scalar Xf = geom::lie_derivative(a.X, f);
    const Scalar half(chart, symcalc::Rational(1, 2));
    EXPECT_EQ(lhs.X, f * ab.X + Xf * b.X);
    EXPECT_EQ(lhs.alpha, f * ab.alpha + Xf * b.alpha - half * pairing(a, b) * geom::differential(f));
  }
}

TEST_F(DiracTest, TrivGenerators) {
  const auto D = build_coupling_dirac(triv.gamma, DiffForm(chart, 2), triv.P).D;
  ASSERT_EQ(D.generators.size(), 4u);
  EXPECT_EQ(D.generators[0].section, (Section{del("x1"), DiffForm(chart, 1)}));
  EXPECT_EQ(D.generators[1].section, (Section{del("x2"), DiffForm(chart, 1)}));
  EXPECT_EQ(D.generators[2].section, (Section{del("p"), d("q")}));
  EXPECT_EQ(D.generators[3].section, (Section{-del("q"), d("p")}));
  EXPECT_EQ(D.generators[2].name, "e_dq");
}

TEST_F(DiracTest, HbInvGenerators) {
  const DiffForm sigma = s("(q^2+p^2)/2") * dx12;
  const auto D = build_coupling_dirac(inv.gamma, sigma, inv.P).D;
  EXPECT_EQ(D.generators[0].section, (Section{inv.gamma.frame(0), s("-(q^2+p^2)/2") * d("x2")}));
  EXPECT_EQ(D.generators[1].section, (Section{inv.gamma.frame(1), s("(q^2+p^2)/2") * d("x1")}));
  EXPECT_THROW(build_coupling_dirac(inv.gamma, dx(chart, {0, 2}), inv.P), NotHorizontal);
}

TEST_F(DiracTest, Lagrangian) {
  for (const auto& sc : scenarios())
    EXPECT_TRUE(verify_lagrangian(build_coupling_dirac(sc.gamma, sigma_of(sc), sc.P).D));
  EXPECT_TRUE(verify_lagrangian(build_coupling_dirac(triv.gamma, DiffForm(chart, 2), Multivector(chart, 2)).D));

  auto D = build_coupling_dirac(inv.gamma, s("(q^2+p^2)/2") * dx12, inv.P).D;
  auto flipped = D;
  flipped.generators[0].section.alpha = -flipped.generators[0].section.alpha;
  EXPECT_FALSE(verify_lagrangian(flipped));

  auto short_family = D;
  short_family.generators.pop_back();
  const auto v = verify_lagrangian(short_family);
  EXPECT_FALSE(v);
  EXPECT_NE(v.witness->where.find("generators"), std::string::npos);

  auto repeated = D;
  repeated.generators[3] = repeated.generators[2];
  EXPECT_FALSE(verify_lagrangian(repeated));
}

TEST_F(DiracTest, Involutive) {
  EXPECT_TRUE(verify_involutive(build_coupling_dirac(triv.gamma, DiffForm(chart, 2), triv.P).D));
  EXPECT_TRUE(verify_involutive(build_coupling_dirac(inv.gamma, s("(q^2+p^2)/2") * dx12, inv.P).D));
  for (const auto& sc : scenarios())
    EXPECT_TRUE(verify_involutive(build_coupling_dirac(sc.gamma, sigma_of(sc), sc.P).D));

  // Breaking the curvature form breaks closure.
  const auto broken = verify_involutive(build_coupling_dirac(inv.gamma, DiffForm(chart, 2), inv.P).D);
  EXPECT_FALSE(broken);
  ASSERT_TRUE(broken.witness);
  EXPECT_NE(broken.witness->where.find("[e_h1, e_h2]"), std::string::npos);
  const auto Dz = build_coupling_dirac(inv.gamma, DiffForm(chart, 2), inv.P).D;
  EXPECT_FALSE(contains(Dz, courant_bracket(Dz.generators[0].section, Dz.generators[2].section)));
}

TEST_F(DiracTest, InvolutivityNeedsAdmissibility) {
  const auto ext3 = testing::ext3_scenario();
  const auto c3 = ext3.chart;
  const DiffForm sigma = sigma_of(ext3) + S(c3, "x3") * dx(c3, {0, 1});
  ASSERT_TRUE(hamcurv::verify_conn_H(ext3.gamma, sigma, ext3.P));
  ASSERT_FALSE(hamcurv::verify_admissible(ext3.gamma, sigma, ext3.P));
  EXPECT_TRUE(verify_lagrangian(build_coupling_dirac(ext3.gamma, sigma, ext3.P).D));
  EXPECT_FALSE(verify_involutive(build_coupling_dirac(ext3.gamma, sigma, ext3.P).D));
  // A closed Casimir shift keeps it admissible.
  const DiffForm closed = sigma_of(ext3) + S(c3, "x3") * dx(c3, {0, 2});
  EXPECT_TRUE(verify_involutive(build_coupling_dirac(ext3.gamma, closed, ext3.P).D));
}

TEST_F(DiracTest, BracketTable) {
  for (const auto& sc : {inv, testing::ext3_scenario()}) {
    const DiffForm sigma = sigma_of(sc);
    const auto data = build_coupling_dirac(sc.gamma, sigma, sc.P);
    const auto& c = sc.chart;
    const std::size_t nh = c->n_horizontal();
    const auto& theta = sc.gamma.vertical_coframe();
    for (std::size_t a = 0; a < theta.size(); ++a) {
      for (std::size_t b = 0; b < theta.size(); ++b) {
        const auto& al = theta[a];
        const auto& be = theta[b];
        const DiffForm psi = geom::lie_derivative(poisson::sharp(sc.P, al), be) -
                             geom::interior_product(poisson::sharp(sc.P, be), geom::exterior_derivative(al));
        EXPECT_EQ(courant_bracket(data.D.generators[nh + a].section, data.D.generators[nh + b].section),
                  (Section{poisson::sharp(sc.P, psi), psi}));
      }
    }
    for (std::size_t i = 0; i < nh; ++i) {
      const auto& X = sc.gamma.frame(i);
      const DiffForm iXs = geom::interior_product(X, sigma);
      for (std::size_t a = 0; a < theta.size(); ++a) {
        const DiffForm LXa = geom::lie_derivative(X, theta[a]);
        const Section expected{poisson::sharp(sc.P, LXa), LXa + geom::interior_product(poisson::sharp(sc.P, theta[a]),
                                                                                       geom::exterior_derivative(iXs))};
        EXPECT_EQ(courant_bracket(data.D.generators[i].section, data.D.generators[nh + a].section), expected);
      }
      for (std::size_t j = 0; j < nh; ++j) {
        const auto& Y = sc.gamma.frame(j);
        const auto br = courant_bracket(data.D.generators[i].section, data.D.generators[j].section);
        const DiffForm expected = -geom::lie_derivative(X, geom::interior_product(Y, sigma)) +
                                  geom::interior_product(Y, geom::exterior_derivative(iXs));
        EXPECT_EQ(br, (Section{geom::lie_bracket(X, Y), expected}));
        // By Cartan, -L_X i_Y s + i_Y d i_X s = -i_{[X,Y]} s - i_Y i_X ds; [X,Y] is
        // vertical here, so the bracket is (Curv(X,Y), -i_Y i_X ds), which lies in D.
        const auto XY = geom::lie_bracket(X, Y);
        EXPECT_EQ(expected, -geom::interior_product(XY, sigma) -
                                geom::interior_product(Y, geom::interior_product(X, geom::exterior_derivative(sigma))));
        EXPECT_TRUE(contains(data.D, br));
      }
    }
  }
}

TEST_F(DiracTest, MembershipSoundness) {
  const DiffForm sigma = s("(q^2+p^2)/2") * dx12;
  const auto data = build_coupling_dirac(inv.gamma, sigma, inv.P);
  testing::RandomTensors rnd(chart, 8);
  for (int k = 0; k < 5; ++k) {
    VectorField X(chart);
    DiffForm a(chart, 1);
    for (std::size_t i = 0; i < 2; ++i) X += rnd.scalar(2, 2, false) * inv.gamma.frame(i);
    for (const auto& th : inv.gamma.vertical_coframe()) a += rnd.scalar(2, 2, false) * th;
    EXPECT_TRUE(contains(data.D, {X + poisson::sharp(inv.P, a), a - geom::interior_product(X, sigma)}));
    EXPECT_FALSE(contains(data.D, {X + poisson::sharp(inv.P, a), a + geom::interior_product(X, sigma)}) &&
                 !geom::interior_product(X, sigma).is_zero());
  }
  EXPECT_FALSE(contains(data.D, {del("q"), DiffForm(chart, 1)}));
}

TEST_F(DiracTest, InvolutiveUnderFunctionMultiples) {
  const auto data = build_coupling_dirac(hb.gamma, sigma_of(hb), hb.P);
  testing::RandomTensors rnd(chart, 21);
  const auto& g = data.D.generators;
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      const Scalar f = rnd.scalar(2, 2, false), h = rnd.scalar(2, 2, false);
      const Section fa{f * g[a].section.X, f * g[a].section.alpha};
      const Section hb_{h * g[b].section.X, h * g[b].section.alpha};
      EXPECT_TRUE(contains(data.D, courant_bracket(fa, hb_)));
    }
  }
}

TEST_F(DiracTest, GaugeTransform) {
  const DiffForm sigma = sigma_of(hb);
  const auto data = build_coupling_dirac(hb.gamma, sigma, hb.P);
  const auto same = gauge_transform(data.D, DiffForm(chart, 2));
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(same.generators[k].section, data.D.generators[k].section);
  const DiffForm B = s("x1*q + x2") * dx12;
  const auto gauged = gauge_transform(data.D, B);
  const auto expected = build_coupling_dirac(hb.gamma, sigma - B, hb.P).D;
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(gauged.generators[k].section, expected.generators[k].section);
}

TEST_F(DiracTest, AveragedStructureIsAGaugeTransform) {
  for (const auto& sc : scenarios()) {
    const auto& c = sc.chart;
    const DiffForm sigma = sigma_of(sc);
    const DiffForm Q = action::compute_Q(sc.action, sc.gamma, sc.mu);
    const auto bar = action::hannay_berry(sc.action, sc.gamma);
    const DiffForm C = S(c, "x1") * dx(c, {0, 1});
    const DiffForm sigma_bar = hamcurv::averaged_sigma(sc.gamma, sigma, Q, sc.P);
    const auto D = build_coupling_dirac(sc.gamma, sigma, sc.P).D;
    const auto Dbar = build_coupling_dirac(bar, sigma_bar + C, sc.P).D;
    const auto gauged = gauge_transform(D, geom::exterior_derivative(Q) - C);
    EXPECT_TRUE(same_distribution(gauged, Dbar));
    EXPECT_TRUE(same_distribution(Dbar, gauged));
  }
  const DiffForm Q = action::compute_Q(hb.action, hb.gamma, hb.mu);
  const auto Dbar = build_coupling_dirac(action::hannay_berry(hb.action, hb.gamma),
                                         hamcurv::averaged_sigma(hb.gamma, sigma_of(hb), Q, hb.P), hb.P)
                        .D;
  EXPECT_FALSE(same_distribution(
      gauge_transform(build_coupling_dirac(hb.gamma, sigma_of(hb), hb.P).D, -geom::exterior_derivative(Q)), Dbar));
}

TEST_F(DiracTest, InvarianceOfAveragedStructure) {
  for (const auto& sc : scenarios()) {
    const auto& c = sc.chart;
    const DiffForm Q = action::compute_Q(sc.action, sc.gamma, sc.mu);
    const auto bar = action::hannay_berry(sc.action, sc.gamma);
    const DiffForm sigma_bar = hamcurv::averaged_sigma(sc.gamma, sigma_of(sc), Q, sc.P);
    const auto data = build_coupling_dirac(bar, sigma_bar + S(c, "x1*x2") * dx(c, {0, 1}), sc.P);
    ASSERT_TRUE(verify_involutive(data.D));
    const auto v = verify_g_invariance(sc.action, data);
    EXPECT_TRUE(v.pullback);
    EXPECT_TRUE(v.lie);
    EXPECT_TRUE(v.sigma_invariant);
  }
}

TEST_F(DiracTest, InvarianceFailsBeforeAveraging) {
  const auto v = verify_g_invariance(hb.action, build_coupling_dirac(hb.gamma, sigma_of(hb), hb.P));
  EXPECT_FALSE(v.pullback);
  EXPECT_FALSE(v.lie);
  EXPECT_TRUE(v.consistent());

  const auto t = verify_g_invariance(triv.action, build_coupling_dirac(triv.gamma, DiffForm(chart, 2), triv.P));
  EXPECT_TRUE(t.pullback && t.lie && t.sigma_invariant);
}

TEST_F(DiracTest, InvariantConnectionReducesToSigma) {
  // With gamma invariant, invariance of D is invariance of sigma.
  for (const char* extra : {"0", "q", "x1*(q^2+p^2)", "p*q"}) {
    const DiffForm sigma = s(extra) * dx12;
    const auto v = verify_g_invariance(triv.action, build_coupling_dirac(triv.gamma, sigma, triv.P));
    EXPECT_EQ(v.pullback.passed, v.sigma_invariant.passed) << extra;
    EXPECT_TRUE(v.consistent()) << extra;
  }
  EXPECT_FALSE(verify_g_invariance(triv.action, build_coupling_dirac(triv.gamma, s("q") * dx12, triv.P)).pullback);
}

TEST_F(DiracTest, HamiltonianGenerators) {
  for (const auto& sc : scenarios()) {
    const DiffForm Q = action::compute_Q(sc.action, sc.gamma, sc.mu);
    const auto bar = action::hannay_berry(sc.action, sc.gamma);
    const auto D = build_coupling_dirac(bar, hamcurv::averaged_sigma(sc.gamma, sigma_of(sc), Q, sc.P), sc.P).D;
    EXPECT_TRUE(hamiltonian_generator_check(sc.action, sc.mu, D));
  }
  const action::PreMomentumMap tilted{triv.mu[0] + s("x1") * d("x2")};
  ASSERT_TRUE(action::verify_premomentum(triv.action, triv.P, tilted));
  ASSERT_FALSE(hamcurv::adiabatic_check(triv.action, triv.gamma, tilted).condition);
  const auto D = build_coupling_dirac(triv.gamma, DiffForm(chart, 2), triv.P).D;
  EXPECT_FALSE(hamiltonian_generator_check(triv.action, tilted, D));

  const auto ext = chart->extended({"theta"});
  std::vector<Scalar> id;
  for (std::size_t i = 0; i < 4; ++i) id.push_back(Scalar::symbol(ext, chart->coordinate_name(i)));
  const action::TorusAction still(chart, {{"theta", id}});
  EXPECT_TRUE(hamiltonian_generator_check(still, {DiffForm(chart, 1)}, D));
}

TEST_F(DiracTest, PresymplecticRoutesAgree) {
  for (const auto& sc : scenarios()) {
    const auto data = build_coupling_dirac(sc.gamma, sigma_of(sc), sc.P);
    testing::RandomTensors rnd(sc.chart, 4);
    for (int k = 0; k < 3; ++k) {
      LeafVector u{VectorField(sc.chart), rnd.form(1)}, v{VectorField(sc.chart), rnd.form(1)};
      for (std::size_t i = 0; i < sc.chart->n_horizontal(); ++i) {
        u.h += rnd.scalar(2, 2, false) * sc.gamma.frame(i);
        v.h += rnd.scalar(2, 2, false) * sc.gamma.frame(i);
      }
      EXPECT_EQ(presymplectic_form(data, u, v), presymplectic_form_from_D(data, u, v));
      EXPECT_EQ(presymplectic_form(data, u, v), -presymplectic_form(data, v, u));
    }
  }
  const auto data = build_coupling_dirac(hb.gamma, sigma_of(hb), hb.P);
  EXPECT_THROW(presymplectic_form(data, {del("x1"), DiffForm(chart, 1)}, {del("x2"), DiffForm(chart, 1)}),
               NotHorizontal);
}

TEST_F(DiracTest, PresymplecticComparison) {
  for (const auto& sc : scenarios()) {
    const DiffForm Q = action::compute_Q(sc.action, sc.gamma, sc.mu);
    const auto bar = action::hannay_berry(sc.action, sc.gamma);
    const DiffForm sigma = sigma_of(sc);
    const auto D = build_coupling_dirac(sc.gamma, sigma, sc.P);
    const auto Dbar = build_coupling_dirac(bar, hamcurv::averaged_sigma(sc.gamma, sigma, Q, sc.P), sc.P);
    EXPECT_TRUE(presymplectic_comparison(D, Dbar, Q));
  }
  const DiffForm Q = action::compute_Q(hb.action, hb.gamma, hb.mu);
  const auto bar = action::hannay_berry(hb.action, hb.gamma);
  const auto D = build_coupling_dirac(hb.gamma, sigma_of(hb), hb.P);
  EXPECT_FALSE(presymplectic_comparison(D, build_coupling_dirac(bar, s("q") * dx12, hb.P), Q));
  EXPECT_THROW(presymplectic_comparison(D, build_coupling_dirac(hb.gamma, sigma_of(hb), hb.P), Q), InvariantViolation);
}

}  // namespace
}  // namespace hbkit::dirac

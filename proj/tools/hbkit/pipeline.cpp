#include "pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>

#include "hbkit/errors.hpp"
#include "hbkit/hamcurv/hamcurv.hpp"

namespace hbkit::cli {

using geom::Mask;
using geom::VectorField;

namespace {

enum Input { kAction = 1, kMu = 2, kSigma = 4 };

struct StageSpec {
  std::string name;
  int needs;
};

const std::vector<StageSpec>& specs() {
  static const std::vector<StageSpec> s{
      {"connection", 0},
      {"poisson", 0},
      {"action", kAction},
      {"premomentum", kAction | kMu},
      {"difference", kAction | kMu},
      {"curvature_form", kSigma},
      {"averaging", kAction | kMu | kSigma},
      {"adiabatic", kAction | kMu},
      {"dirac", kSigma},
  };
  return s;
}

int available(const Scenario& s) { return (s.action ? kAction : 0) | (s.mu ? kMu : 0) | (s.sigma ? kSigma : 0); }

std::string missing_field(int missing) {
  if (missing & kAction) return "action";
  if (missing & kMu) return "premomentum";
  return "sigma";
}

Verdict agree(bool consistent, const std::string& what) {
  return consistent ? Verdict::pass() : Verdict::fail(what + " disagree");
}

// Derived quantities shared by several stages, computed once.
class Context {
 public:
  explicit Context(const Scenario& s) : s_(s) {}

  const Scenario& scenario() const { return s_; }
  const action::TorusAction& act() const { return *s_.action; }

  const DiffForm& Q() {
    if (!Q_) Q_ = action::compute_Q(act(), s_.gamma, *s_.mu);
    return *Q_;
  }
  const foliation::Connection& bar() {
    if (!bar_) bar_ = action::hannay_berry(act(), s_.gamma);
    return *bar_;
  }
  const DiffForm& sigma_bar() {
    if (!sigma_bar_) sigma_bar_ = hamcurv::averaged_sigma(s_.gamma, *s_.sigma, Q(), s_.P);
    return *sigma_bar_;
  }
  DiffForm casimir() const { return s_.casimir ? *s_.casimir : DiffForm(s_.chart, 2); }
  // The pre-momentum map after adiabatic_fix when primitives are given.
  const action::PreMomentumMap& mu() {
    if (!mu_) mu_ = s_.primitives ? hamcurv::adiabatic_fix(act(), s_.gamma, *s_.mu, *s_.primitives, s_.P) : *s_.mu;
    return *mu_;
  }

 private:
  const Scenario& s_;
  std::optional<DiffForm> Q_;
  std::optional<foliation::Connection> bar_;
  std::optional<DiffForm> sigma_bar_;
  std::optional<action::PreMomentumMap> mu_;
};

using Add = std::function<void(std::string, Verdict)>;

void connection_stage(Context& c, const Add& add) {
  const auto& g = c.scenario().gamma;
  add("projection", foliation::verify_connection(g.gamma()));
  add("curvature_routes", foliation::curvature_routes_agree(g));
}

void poisson_stage(Context& c, const Add& add) {
  const auto& s = c.scenario();
  add("vertical", poisson::is_vertical_bivector(s.P));
  add("jacobi", poisson::verify_jacobi(s.P));
  add("connection", poisson::verify_poisson_connection(s.gamma, s.P));
}

void action_stage(Context& c, const Add& add) {
  const auto& s = c.scenario();
  const auto v = action::verify_action(c.act(), s.P);
  add("foliation_preserving", v.foliation_preserving);
  add("leaf_tangent", v.leaf_tangent);
  add("canonical", v.canonical);
  add("invariance_criteria_agree",
      agree(action::invariance_criteria(c.act(), s.gamma).consistent(), "invariance criteria"));
}

void premomentum_stage(Context& c, const Add& add) {
  const auto& s = c.scenario();
  add("generators", action::verify_premomentum(c.act(), s.P, *s.mu));
}

void difference_stage(Context& c, const Add& add) {
  const auto& s = c.scenario();
  const auto xi = action::connection_difference(c.act(), s.gamma);
  Verdict hamiltonian, double_integral, casimir;
  for (std::size_t i = 0; i < s.gamma.n_horizontal(); ++i) {
    const auto& h = s.gamma.frame(i);
    const std::string at = "h" + std::to_string(i + 1);
    const Scalar Qi = c.Q().coefficient(Mask{1} << i);
    const VectorField xi_h = geom::evaluate(xi, {h});
    hamiltonian &=
        within("Xi(" + at + ") - P# dQ(" + at + ")", geom::check_zero(xi_h - poisson::hamiltonian_vf(s.P, Qi)));
    double_integral &= within("double integral minus Xi(" + at + ")",
                              geom::check_zero(action::xi_via_double_integral(c.act(), s.gamma, h) - xi_h));
    casimir &= within("<Q(" + at + ")>", poisson::is_casimir(s.P, action::average(c.act(), Qi)));
  }
  add("hamiltonian", hamiltonian);
  add("double_integral", double_integral);
  add("averaged_curvature", action::averaged_curvature_identity(c.act(), s.gamma, c.Q(), s.P));
  add("averaged_Q_casimir", casimir);
}

void curvature_form_stage(Context& c, const Add& add) {
  const auto& s = c.scenario();
  add("hamiltonian", hamcurv::verify_conn_H(s.gamma, *s.sigma, s.P));
  add("admissible", hamcurv::verify_admissible(s.gamma, *s.sigma, s.P));
}

void averaging_stage(Context& c, const Add& add) {
  const auto& s = c.scenario();
  const auto shifted = hamcurv::shifted_connection(s.gamma, c.Q(), s.P);
  add("shifted_frame", within("gamma + X_Q - <gamma>", geom::check_zero(shifted.gamma() - c.bar().gamma())));
  add("hamiltonian", hamcurv::verify_conn_H(c.bar(), c.sigma_bar(), s.P));
  const auto t = hamcurv::averaging_identities(s.gamma, *s.sigma, c.Q(), s.P);
  add("shifted_derivative", t.shifted_derivative);
  add("squared_derivative", t.squared_derivative);
  add("bracket_derivative", t.bracket_derivative);
  if (hamcurv::verify_admissible(s.gamma, *s.sigma, s.P))
    add("admissible", hamcurv::verify_admissible(c.bar(), c.sigma_bar(), s.P));
  Verdict invariant;
  for (std::size_t j = 0; j < c.act().rank(); ++j)
    invariant &=
        within("L_xi" + std::to_string(j + 1) + " sigma-bar",
               geom::check_zero(geom::lie_derivative(action::infinitesimal_generator(c.act(), j), c.sigma_bar())));
  add("sigma_invariant", invariant);
}

void adiabatic_stage(Context& c, const Add& add) {
  const auto& s = c.scenario();
  if (s.primitives) {
    add("routes_agree_input", hamcurv::adiabatic_check(c.act(), s.gamma, *s.mu).routes_agree);
    c.mu();  // throws if the primitives do not fix the map
    add("fix", Verdict::pass());
  }
  const auto v = hamcurv::adiabatic_check(c.act(), s.gamma, c.mu());
  add("condition", v.condition);
  add("averaged_vertical", v.averaged_vertical);
  add("routes_agree", v.routes_agree);
}

void dirac_stage(Context& c, const Add& add) {
  const auto& s = c.scenario();
  const auto data = dirac::build_coupling_dirac(s.gamma, *s.sigma, s.P);
  add("lagrangian", dirac::verify_lagrangian(data.D));
  add("involutive", dirac::verify_involutive(data.D));
  if (!s.action || !s.mu) return;

  const DiffForm C = c.casimir();
  if (s.casimir)
    add("casimir_cocycle", hamcurv::is_casimir_form(C, s.P) &=
                           within("d10 C", geom::check_zero(foliation::covariant_derivative(C, c.bar()))));
  const auto avg = dirac::build_coupling_dirac(c.bar(), c.sigma_bar() + C, s.P);
  add("averaged_lagrangian", dirac::verify_lagrangian(avg.D));
  add("averaged_involutive", dirac::verify_involutive(avg.D));
  const auto inv = dirac::verify_g_invariance(c.act(), avg);
  add("invariance", inv.pullback);
  add("invariance_lie", inv.lie);
  add("invariance_routes_agree", agree(inv.consistent(), "pullback and Lie derivative routes"));
  const DiffForm dQ = geom::exterior_derivative(c.Q());
  add("gauge", dirac::same_distribution(dirac::gauge_transform(data.D, dQ - C), avg.D));
  add("presymplectic",
      dirac::presymplectic_comparison(data, dirac::build_coupling_dirac(c.bar(), c.sigma_bar(), s.P), c.Q()));
  add("hamiltonian_generators", dirac::hamiltonian_generator_check(c.act(), c.mu(), avg.D));
}

const std::map<std::string, void (*)(Context&, const Add&)>& runners() {
  static const std::map<std::string, void (*)(Context&, const Add&)> r{
      {"connection", connection_stage},   {"poisson", poisson_stage},       {"action", action_stage},
      {"premomentum", premomentum_stage}, {"difference", difference_stage}, {"curvature_form", curvature_form_stage},
      {"averaging", averaging_stage},     {"adiabatic", adiabatic_stage},   {"dirac", dirac_stage},
  };
  return r;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

bool Report::passed() const { return n_failed() == 0; }

std::size_t Report::n_checks() const {
  std::size_t n = 0;
  for (const auto& st : stages) n += st.checks.size();
  return n;
}

std::size_t Report::n_failed() const {
  std::size_t n = 0;
  for (const auto& st : stages)
    for (const auto& ch : st.checks) n += ch.verdict.passed ? 0 : 1;
  return n;
}

const std::vector<std::string>& stage_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : specs()) out.push_back(s.name);
    return out;
  }();
  return names;
}

Report run_checks(const Scenario& s, const std::vector<std::string>& selection) {
  for (const auto& name : selection)
    if (std::find(stage_names().begin(), stage_names().end(), name) == stage_names().end())
      throw SchemaError("unknown stage '" + name + "'");
  const int have = available(s);
  const auto t0 = std::chrono::steady_clock::now();
  Context ctx(s);
  Report report{s.name, {}, {}, 0};
  for (const auto& spec : specs()) {
    const bool selected =
        selection.empty() || std::find(selection.begin(), selection.end(), spec.name) != selection.end();
    if (!selected) continue;
    const int missing = spec.needs & ~have;
    if (missing) {
      if (!selection.empty())
        throw SchemaError("stage '" + spec.name + "' needs field '" + missing_field(missing) + "'");
      report.skipped.push_back(spec.name);
      continue;
    }
    StageResult stage{spec.name, {}, 0};
    const auto ts = std::chrono::steady_clock::now();
    runners().at(spec.name)(
        ctx, [&](std::string name, Verdict v) { stage.checks.push_back({std::move(name), std::move(v)}); });
    stage.seconds = since(ts);
    report.stages.push_back(std::move(stage));
  }
  report.seconds = since(t0);
  return report;
}

AveragedData averaged_data(const Scenario& s) {
  if (!s.action || !s.mu) throw SchemaError("averaging needs fields 'action' and 'premomentum'");
  Context ctx(s);
  std::optional<DiffForm> sigma;
  if (s.sigma) sigma = ctx.sigma_bar();
  return {ctx.bar(), ctx.Q(), std::move(sigma), ctx.mu()};
}

Scenario averaged_scenario(const Scenario& s, const AveragedData& data) {
  return Scenario{s.name + "_averaged", s.chart,   data.gamma,  s.P, s.action, data.mu,
                  data.sigma,           s.casimir, std::nullopt};
}

std::vector<std::pair<std::string, dirac::DiracData>> dirac_structures(const Scenario& s) {
  if (!s.sigma) throw SchemaError("dirac needs field 'sigma'");
  std::vector<std::pair<std::string, dirac::DiracData>> out;
  out.emplace_back("coupling", dirac::build_coupling_dirac(s.gamma, *s.sigma, s.P));
  if (s.action && s.mu) {
    Context ctx(s);
    out.emplace_back("averaged", dirac::build_coupling_dirac(ctx.bar(), ctx.sigma_bar() + ctx.casimir(), s.P));
  }
  return out;
}

}  // namespace hbkit::cli

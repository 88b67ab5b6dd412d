#ifndef HBKIT_TOOLS_PIPELINE_HPP
#define HBKIT_TOOLS_PIPELINE_HPP

#include <string>
#include <vector>

#include "hbkit/dirac/dirac.hpp"
#include "scenario.hpp"

namespace hbkit::cli {

struct CheckResult {
  std::string name;
  Verdict verdict;
};

struct StageResult {
  std::string name;
  std::vector<CheckResult> checks;
  double seconds = 0;
};

struct Report {
  std::string scenario;
  std::vector<StageResult> stages;
  std::vector<std::string> skipped;  // stages whose inputs the scenario lacks
  double seconds = 0;

  bool passed() const;
  std::size_t n_checks() const;
  std::size_t n_failed() const;
};

/// Stage names in dependency order.
const std::vector<std::string>& stage_names();

/// Runs the selected stages in dependency order; an empty selection means
/// every stage the scenario has inputs for. Throws SchemaError for an
/// unknown stage or a selected stage whose inputs are missing. Library
/// errors propagate.
Report run_checks(const Scenario& s, const std::vector<std::string>& selection = {});

/// <gamma>, Q and sigma-bar, with the pre-momentum map after adiabatic_fix
/// when primitives are given. Throws SchemaError without action and
/// pre-momentum map.
struct AveragedData {
  foliation::Connection gamma;
  DiffForm Q;
  std::optional<DiffForm> sigma;
  action::PreMomentumMap mu;
};
AveragedData averaged_data(const Scenario& s);

/// The scenario (<gamma>, sigma-bar) with the same P, action, Casimir form and
/// adiabatic pre-momentum map.
Scenario averaged_scenario(const Scenario& s, const AveragedData& data);

/// D^{gamma,sigma} and, with an action and pre-momentum map, D^{<gamma>, sigma-bar + C}.
std::vector<std::pair<std::string, dirac::DiracData>> dirac_structures(const Scenario& s);

}  // namespace hbkit::cli

#endif  // HBKIT_TOOLS_PIPELINE_HPP

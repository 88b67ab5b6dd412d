#ifndef HBKIT_TOOLS_SCENARIO_HPP
#define HBKIT_TOOLS_SCENARIO_HPP

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hbkit/action/torus.hpp"

namespace hbkit::cli {

using geom::DiffForm;
using geom::Multivector;
using symcalc::ChartPtr;
using symcalc::Scalar;

/// A loaded scenario. Every part has passed the invariant checks of its
/// type; the optional parts are absent when the file omits them.
struct Scenario {
  std::string name;
  ChartPtr chart;
  foliation::Connection gamma;
  Multivector P;
  std::optional<action::TorusAction> action;
  std::optional<action::PreMomentumMap> mu;
  std::optional<DiffForm> sigma;
  std::optional<DiffForm> casimir;
  std::optional<std::vector<Scalar>> primitives;
};

/// Throws ParseError (line and column for JSON syntax, field path for
/// expressions), SchemaError, or InvariantViolation.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

// Serialization in the scenario format. Zero coefficients are omitted.
nlohmann::ordered_json to_json(const geom::VectorField& X, bool vertical_only = false);
nlohmann::ordered_json to_json(const DiffForm& a);
nlohmann::ordered_json to_json(const Multivector& A);

/// The scenario with gamma written as its frame. Round-trips through
/// parse_scenario.
nlohmann::ordered_json to_json(const Scenario& s);

}  // namespace hbkit::cli

#endif  // HBKIT_TOOLS_SCENARIO_HPP

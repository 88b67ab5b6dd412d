// hbkit: scenario-driven verification of averaged Poisson connections.
//
// Exit codes: 0 all checks pass, 1 a verdict is false, 2 input error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "hbkit/errors.hpp"
#include "pipeline.hpp"
#include "report.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kVerdictFailure = 1;
constexpr int kInputError = 2;

using namespace hbkit::cli;

int write(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return kPass;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return kInputError;
  }
  out << text;
  return kPass;
}

// Error class name for the message; library errors keep their own names.
std::string kind(const hbkit::Error& e) {
  if (dynamic_cast<const hbkit::ParseError*>(&e)) return "ParseError";
  if (dynamic_cast<const hbkit::SchemaError*>(&e)) return "SchemaError";
  if (dynamic_cast<const hbkit::InvariantViolation*>(&e)) return "InvariantViolation";
  if (dynamic_cast<const hbkit::UnknownFormat*>(&e)) return "UnknownFormat";
  if (dynamic_cast<const hbkit::NotACocycle*>(&e)) return "NotACocycle";
  if (dynamic_cast<const hbkit::PrimitiveMismatch*>(&e)) return "PrimitiveMismatch";
  return "error";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of averaged Poisson connections and coupling Dirac structures"};
  app.require_subcommand(1);

  std::string scenario_path, format = "text", output;
  std::vector<std::string> stages;
  bool witness = false, expect_fail = false;

  auto* check = app.add_subcommand("check", "Run verification stages and report verdicts");
  check->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  check->add_option("--stage", stages, "Stage to run (repeatable or comma-separated); default all available")
      ->delimiter(',');
  check->add_flag("--witness", witness, "Include failing expressions");
  check->add_option("--format", format, "json or text");
  check->add_flag("--expect-fail", expect_fail, "Exit 0 only if some verdict is false");
  check->add_option("-o,--output", output, "Write the report here instead of stdout");

  auto* average = app.add_subcommand("average", "Emit the scenario of <gamma>, sigma-bar with Q");
  average->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  average->add_option("-o,--output", output, "Write the scenario here instead of stdout");

  auto* dirac = app.add_subcommand("dirac", "Emit the generator table of the coupling Dirac structures");
  dirac->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  dirac->add_option("--format", format, "json or text");
  dirac->add_option("-o,--output", output, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    const Scenario s = load_scenario(scenario_path);
    if (*check) {
      const Format f = parse_format(format);
      const Report r = run_checks(s, stages);
      if (const int rc = write(render(r, f, witness), output); rc != kPass) return rc;
      const bool failed = !r.passed();
      if (expect_fail) return failed ? kPass : kVerdictFailure;
      return failed ? kVerdictFailure : kPass;
    }
    if (*average) {
      const AveragedData data = averaged_data(s);
      auto doc = to_json(averaged_scenario(s, data));
      doc["averaged_from"] = s.name;
      doc["Q"] = to_json(data.Q);
      return write(doc.dump(2) + "\n", output);
    }
    const Format f = parse_format(format);
    return write(render_generators(s.name, dirac_structures(s), f), output);
  } catch (const hbkit::Error& e) {
    std::cerr << kind(e) << ": " << e.what() << "\n";
    return kInputError;
  }
}

#include "report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "hbkit/errors.hpp"

namespace hbkit::cli {

using json = nlohmann::ordered_json;

namespace {

json witness_json(const Witness& w) {
  json out;
  out["where"] = w.where;
  if (w.expr.chart()) out["expression"] = symcalc::to_string(w.expr);
  return out;
}

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", s);
  return buf;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::kJson;
  if (name == "text") return Format::kText;
  throw UnknownFormat("unknown format '" + name + "' (expected json or text)");
}

json report_json(const Report& r, bool witness) {
  json out;
  out["schema"] = 1;
  out["scenario"] = r.scenario;
  out["passed"] = r.passed();
  out["checks"] = r.n_checks();
  out["failed"] = r.n_failed();
  json stages = json::array();
  for (const auto& st : r.stages) {
    json checks = json::array();
    for (const auto& ch : st.checks) {
      json c;
      c["check"] = ch.name;
      c["passed"] = ch.verdict.passed;
      if (witness && !ch.verdict.passed && ch.verdict.witness) c["witness"] = witness_json(*ch.verdict.witness);
      checks.push_back(std::move(c));
    }
    json s;
    s["stage"] = st.name;
    s["passed"] = std::all_of(st.checks.begin(), st.checks.end(), [](const auto& c) { return c.verdict.passed; });
    s["checks"] = std::move(checks);
    s["seconds"] = st.seconds;
    stages.push_back(std::move(s));
  }
  out["stages"] = std::move(stages);
  out["skipped"] = r.skipped;
  out["seconds"] = r.seconds;
  return out;
}

std::string render(const Report& r, Format format, bool witness) {
  if (format == Format::kJson) return report_json(r, witness).dump(2) + "\n";
  std::ostringstream out;
  out << "scenario " << r.scenario << "\n";
  for (const auto& st : r.stages) {
    out << "  " << st.name << " (" << seconds(st.seconds) << ")\n";
    for (const auto& ch : st.checks) {
      out << "    " << (ch.verdict.passed ? "✓ " : "✗ ") << ch.name;
      if (witness && !ch.verdict.passed && ch.verdict.witness) {
        const auto& w = *ch.verdict.witness;
        out << ": " << w.where;
        if (w.expr.chart()) out << " = " << symcalc::to_string(w.expr);
      }
      out << "\n";
    }
  }
  for (const auto& name : r.skipped) out << "  " << name << " skipped (inputs missing)\n";
  out << (r.passed() ? "PASS " : "FAIL ") << (r.n_checks() - r.n_failed()) << "/" << r.n_checks()
      << " checks passed in " << seconds(r.seconds) << "\n";
  return out.str();
}

std::string render_generators(const std::string& scenario,
                              const std::vector<std::pair<std::string, dirac::DiracData>>& structures, Format format) {
  if (format == Format::kJson) {
    json out;
    out["schema"] = 1;
    out["scenario"] = scenario;
    json list = json::array();
    for (const auto& [name, data] : structures) {
      json gens = json::array();
      for (const auto& g : data.D.generators)
        gens.push_back({{"name", g.name}, {"vector", to_json(g.section.X)}, {"form", to_json(g.section.alpha)}});
      list.push_back({{"structure", name}, {"generators", std::move(gens)}});
    }
    out["structures"] = std::move(list);
    return out.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "scenario " << scenario << "\n";
  for (const auto& [name, data] : structures) {
    out << "  " << name << "\n";
    for (const auto& g : data.D.generators)
      out << "    " << g.name << ": (" << geom::to_string(g.section.X) << ", " << geom::to_string(g.section.alpha)
          << ")\n";
  }
  return out.str();
}

}  // namespace hbkit::cli

#ifndef HBKIT_TOOLS_REPORT_HPP
#define HBKIT_TOOLS_REPORT_HPP

#include <nlohmann/json.hpp>
#include <string>

#include "pipeline.hpp"

namespace hbkit::cli {

enum class Format { kJson, kText };

/// Throws UnknownFormat.
Format parse_format(const std::string& name);

/// Report in schema 1. Keys are stable; only the "seconds" fields vary
/// between runs.
nlohmann::ordered_json report_json(const Report& r, bool witness);

std::string render(const Report& r, Format format, bool witness);

/// Generator table of each structure.
std::string render_generators(const std::string& scenario,
                              const std::vector<std::pair<std::string, dirac::DiracData>>& structures, Format format);

}  // namespace hbkit::cli

#endif  // HBKIT_TOOLS_REPORT_HPP

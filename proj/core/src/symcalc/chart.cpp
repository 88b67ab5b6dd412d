#include "hbkit/symcalc/chart.hpp"

#include <set>

#include "hbkit/errors.hpp"

namespace hbkit::symcalc {

namespace {

void check_names(const std::vector<std::vector<std::string>*>& groups) {
  std::set<std::string> seen;
  for (const auto* group : groups) {
    for (const auto& name : *group) {
      if (name.empty()) throw ExpressionError("empty symbol name");
      if (name == "pi" || name == "sin" || name == "cos")
        throw ExpressionError("reserved name used as a symbol: " + name);
      if (!seen.insert(name).second) throw ExpressionError("duplicate symbol name: " + name);
    }
  }
}

}  // namespace

ChartPtr Chart::make(std::vector<std::string> horizontal, std::vector<std::string> vertical,
                     std::vector<std::string> angles, std::vector<std::string> parameters) {
  check_names({&horizontal, &vertical, &angles, &parameters});
  auto chart = std::shared_ptr<Chart>(new Chart());
  chart->horizontal_ = std::move(horizontal);
  chart->vertical_ = std::move(vertical);
  chart->angles_ = std::move(angles);
  chart->parameters_ = std::move(parameters);
  return chart;
}

const std::string& Chart::coordinate_name(std::size_t i) const {
  if (i < horizontal_.size()) return horizontal_[i];
  return vertical_.at(i - horizontal_.size());
}

std::optional<Symbol> Chart::find(std::string_view name) const {
  if (name == "pi") return Symbol{SymbolKind::kPi, 0};
  for (std::size_t i = 0; i < dimension(); ++i)
    if (coordinate_name(i) == name) return Symbol{SymbolKind::kCoordinate, i};
  for (std::size_t i = 0; i < parameters_.size(); ++i)
    if (parameters_[i] == name) return Symbol{SymbolKind::kParameter, i};
  for (std::size_t i = 0; i < angles_.size(); ++i)
    if (angles_[i] == name) return Symbol{SymbolKind::kAngle, i};
  return std::nullopt;
}

Symbol Chart::lookup(std::string_view name) const {
  auto s = find(name);
  if (!s) throw UnknownSymbol("unknown symbol '" + std::string(name) + "'");
  return *s;
}

std::size_t Chart::coordinate_index(std::string_view name) const {
  auto s = lookup(name);
  if (s.kind != SymbolKind::kCoordinate) throw UnknownSymbol("'" + std::string(name) + "' is not a coordinate");
  return s.index;
}

std::size_t Chart::angle_index(std::string_view name) const {
  auto s = lookup(name);
  if (s.kind != SymbolKind::kAngle) throw UnknownSymbol("'" + std::string(name) + "' is not an angle");
  return s.index;
}

const std::string& Chart::symbol_name(const Symbol& s) const {
  static const std::string kPi = "pi";
  switch (s.kind) {
    case SymbolKind::kCoordinate:
      return coordinate_name(s.index);
    case SymbolKind::kParameter:
      return parameters_.at(s.index);
    case SymbolKind::kAngle:
      return angles_.at(s.index);
    case SymbolKind::kPi:
      return kPi;
  }
  return kPi;
}

std::size_t Chart::poly_slot(const Symbol& s) const {
  switch (s.kind) {
    case SymbolKind::kCoordinate:
      return s.index;
    case SymbolKind::kParameter:
      return dimension() + s.index;
    case SymbolKind::kPi:
      return pi_slot();
    case SymbolKind::kAngle:
      break;
  }
  throw UnknownSymbol("angle '" + angles_.at(s.index) + "' has no polynomial slot");
}

ChartPtr Chart::extended(std::vector<std::string> extra_angles, std::vector<std::string> extra_parameters) const {
  auto angles = angles_;
  angles.insert(angles.end(), extra_angles.begin(), extra_angles.end());
  auto params = parameters_;
  params.insert(params.end(), extra_parameters.begin(), extra_parameters.end());
  return make(horizontal_, vertical_, std::move(angles), std::move(params));
}

bool Chart::extends(const Chart& base) const {
  auto prefix = [](const std::vector<std::string>& longer, const std::vector<std::string>& shorter) {
    if (longer.size() < shorter.size()) return false;
    for (std::size_t i = 0; i < shorter.size(); ++i)
      if (longer[i] != shorter[i]) return false;
    return true;
  };
  return horizontal_ == base.horizontal_ && vertical_ == base.vertical_ && prefix(angles_, base.angles_) &&
         prefix(parameters_, base.parameters_);
}

bool operator==(const Chart& a, const Chart& b) {
  return a.horizontal_ == b.horizontal_ && a.vertical_ == b.vertical_ && a.angles_ == b.angles_ &&
         a.parameters_ == b.parameters_;
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
  if (!same_chart(a, b)) throw ChartMismatch("operands live on different charts");
}

}  // namespace hbkit::symcalc

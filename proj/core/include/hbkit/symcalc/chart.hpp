#ifndef HBKIT_SYMCALC_CHART_HPP
#define HBKIT_SYMCALC_CHART_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hbkit::symcalc {

enum class SymbolKind { kCoordinate, kParameter, kAngle, kPi };

/// A resolved name on a chart. `index` counts within the symbol's own kind.
struct Symbol {
  SymbolKind kind;
  std::size_t index;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// Coordinate chart of a foliated manifold together with the auxiliary
/// symbols the coefficient ring may mention.
///
/// Manifold coordinates are ordered horizontal first, then vertical, and
/// are addressed by a single index in [0, dimension()). Angles enter the
/// ring only through sin/cos of integer combinations; parameters and the
/// reserved constant `pi` enter polynomially. `pi` is treated as an
/// independent indeterminate, which is exact because it is transcendental.
class Chart {
 public:
  static ChartPtr make(std::vector<std::string> horizontal, std::vector<std::string> vertical,
                       std::vector<std::string> angles = {}, std::vector<std::string> parameters = {});

  std::size_t dimension() const { return horizontal_.size() + vertical_.size(); }
  std::size_t n_horizontal() const { return horizontal_.size(); }
  std::size_t n_vertical() const { return vertical_.size(); }
  std::size_t n_angles() const { return angles_.size(); }
  std::size_t n_parameters() const { return parameters_.size(); }

  const std::vector<std::string>& horizontal_coords() const { return horizontal_; }
  const std::vector<std::string>& vertical_coords() const { return vertical_; }
  const std::vector<std::string>& angles() const { return angles_; }
  const std::vector<std::string>& parameters() const { return parameters_; }

  const std::string& coordinate_name(std::size_t i) const;
  bool is_horizontal(std::size_t coordinate) const { return coordinate < horizontal_.size(); }
  bool is_vertical(std::size_t coordinate) const {
    return coordinate >= horizontal_.size() && coordinate < dimension();
  }

  std::optional<Symbol> find(std::string_view name) const;
  /// Throws UnknownSymbol.
  Symbol lookup(std::string_view name) const;
  std::size_t coordinate_index(std::string_view name) const;
  std::size_t angle_index(std::string_view name) const;
  const std::string& symbol_name(const Symbol& s) const;

  // Polynomial slots: coordinates, then parameters, then pi.
  std::size_t n_poly_slots() const { return dimension() + parameters_.size() + 1; }
  std::size_t pi_slot() const { return dimension() + parameters_.size(); }
  std::size_t poly_slot(const Symbol& s) const;

  /// A chart with the same coordinates and additional trailing angles or
  /// parameters. Scalars of this chart lift into the result.
  ChartPtr extended(std::vector<std::string> extra_angles, std::vector<std::string> extra_parameters = {}) const;
  /// True when `this` equals `base` up to trailing angles and parameters.
  bool extends(const Chart& base) const;

  friend bool operator==(const Chart& a, const Chart& b);

 private:
  Chart() = default;

  std::vector<std::string> horizontal_;
  std::vector<std::string> vertical_;
  std::vector<std::string> angles_;
  std::vector<std::string> parameters_;
};

bool same_chart(const ChartPtr& a, const ChartPtr& b);

/// Throws ChartMismatch unless both pointers denote the same chart.
void require_same_chart(const ChartPtr& a, const ChartPtr& b);

}  // namespace hbkit::symcalc

#endif  // HBKIT_SYMCALC_CHART_HPP

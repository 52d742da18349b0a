#pragma once

// Dense parameter sweeps over (r, θ, f, n_th) and grid-plus-golden-section
// optimum search.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paramp/qfi.hpp"

namespace paramp {

enum class SweepVar : std::size_t { r = 0, theta = 1, f = 2, n_th = 3 };
inline constexpr std::size_t kSweepVarCount = 4;
inline constexpr std::array<SweepVar, kSweepVarCount> kSweepVars = {
    SweepVar::r, SweepVar::theta, SweepVar::f, SweepVar::n_th};

std::string_view to_string(SweepVar v);

/// Evenly spaced values from min to max. With include_max = false the grid is
/// half-open (used for the periodic θ axis).
struct Axis {
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 2;
  bool include_max = true;

  double value(std::size_t k) const;
  std::vector<double> values() const;
};

enum class Objective { qfi, m_for_target_error, relative_error };

std::string_view to_string(Objective o);
/// "qfi", "m", "error" (also accepts the long spellings).
Objective parse_objective(std::string_view name);

/// Larger is better for qfi; smaller is better for M and E.
bool objective_maximizes(Objective o);

inline constexpr std::size_t kDefaultGridBudget = 1'000'000;

struct SweepSpec {
  std::array<std::optional<Axis>, kSweepVarCount> axes{};
  /// Values used for variables without an axis.
  std::array<double, kSweepVarCount> fixed = {2.0, 0.0, 0.02, 8e-3};
  QfiMethod method = QfiMethod::two_mode_fidelity_numeric;
  Objective objective = Objective::qfi;
  double target_error = 0.1;
  std::uint64_t m = kDefaultMeasurements;
  std::size_t budget = kDefaultGridBudget;

  static constexpr std::uint64_t kDefaultMeasurements = 1000;

  std::optional<Axis>& axis(SweepVar v) { return axes[static_cast<std::size_t>(v)]; }
  const std::optional<Axis>& axis(SweepVar v) const { return axes[static_cast<std::size_t>(v)]; }
  double& fixed_value(SweepVar v) { return fixed[static_cast<std::size_t>(v)]; }

  std::vector<SweepVar> swept() const;
  std::size_t grid_size() const;
  /// Throws InvalidArgument: axis with < 2 points, inverted range, grid over
  /// budget, nonpositive target_error or m.
  void validate() const;
};

/// Coordinates in (r, θ, f, n_th) order.
using Point = std::array<double, kSweepVarCount>;

struct SweepRow {
  Point coords{};
  double qfi = 0.0;
  double value = 0.0;
  /// "ok", a QfiStatus spelling, or an error tag ("error: ...").
  std::string status;
  bool failed = false;
};

struct SweepTable {
  std::vector<SweepVar> swept;
  std::vector<SweepRow> rows;

  /// Best non-failed row (ties → first in row order); nullopt if all failed.
  std::optional<std::size_t> best_row(Objective objective) const;
  bool all_failed() const;
};

/// Objective at a single point, with status. Never throws for per-point
/// numerical failures; those are reported through SweepRow::failed.
SweepRow evaluate_point(const SweepSpec& spec, const Point& p);

/// Dense grid in lexicographic order (r outermost, then θ, f, n_th).
/// workers = 0 uses the available parallelism; row order does not depend on it.
SweepTable run_sweep(const SweepSpec& spec, std::size_t workers = 0);

struct Optimum {
  Point coords{};
  double value = 0.0;
  bool degenerate = false;
};

inline constexpr double kOptimumCoordinateTolerance = 1e-6;
inline constexpr double kFlatObjectiveThreshold = 1e-12;

/// Grid optimum followed by golden-section refinement along each swept axis
/// inside the neighbouring grid cells. Throws NumericalError if every grid
/// point failed.
Optimum find_optimum(const SweepSpec& spec, std::size_t workers = 0);

/// Maximizes g on [lo, hi] to absolute tolerance tol in x.
template <typename G>
double golden_section_maximize(G&& g, double lo, double hi, double tol);

}  // namespace paramp

#include "paramp/detail/golden_section.hpp"

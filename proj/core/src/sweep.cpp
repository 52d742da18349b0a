#include "paramp/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paramp/errors.hpp"
#include "paramp/parallel.hpp"
#include "paramp/planner.hpp"

namespace paramp {
namespace {

constexpr double kTieRelTolerance = 1e-12;

bool better(double candidate, double incumbent, bool maximize) {
  const double slack = kTieRelTolerance * std::abs(incumbent);
  return maximize ? candidate > incumbent + slack : candidate < incumbent - slack;
}

double objective_value(const SweepSpec& spec, double qfi, double f) {
  switch (spec.objective) {
    case Objective::qfi:
      return qfi;
    case Objective::m_for_target_error:
      return static_cast<double>(measurements_for_error(qfi, f, spec.target_error));
    case Objective::relative_error:
      return relative_error(qfi, f, spec.m);
  }
  throw InvalidArgument("unknown objective");
}

}  // namespace

std::string_view to_string(SweepVar v) {
  switch (v) {
    case SweepVar::r:
      return "r";
    case SweepVar::theta:
      return "theta";
    case SweepVar::f:
      return "f";
    case SweepVar::n_th:
      return "n_th";
  }
  return "unknown";
}

double Axis::value(std::size_t k) const {
  const double denom = static_cast<double>(include_max ? points - 1 : points);
  if (include_max && k + 1 == points) return max;
  return min + (max - min) * static_cast<double>(k) / denom;
}

std::vector<double> Axis::values() const {
  std::vector<double> out(points);
  for (std::size_t k = 0; k < points; ++k) out[k] = value(k);
  return out;
}

std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::qfi:
      return "qfi";
    case Objective::m_for_target_error:
      return "m";
    case Objective::relative_error:
      return "error";
  }
  return "unknown";
}

Objective parse_objective(std::string_view name) {
  if (name == "qfi") return Objective::qfi;
  if (name == "m" || name == "m_for_target_error") return Objective::m_for_target_error;
  if (name == "error" || name == "relative_error") return Objective::relative_error;
  throw InvalidArgument("unknown objective '" + std::string(name) +
                        "' (expected qfi, m or error)");
}

bool objective_maximizes(Objective o) { return o == Objective::qfi; }

std::vector<SweepVar> SweepSpec::swept() const {
  std::vector<SweepVar> out;
  for (SweepVar v : kSweepVars) {
    if (axis(v)) out.push_back(v);
  }
  return out;
}

std::size_t SweepSpec::grid_size() const {
  std::size_t n = 1;
  for (const auto& a : axes) {
    if (!a) continue;
    if (a->points != 0 && n > std::numeric_limits<std::size_t>::max() / a->points) {
      return std::numeric_limits<std::size_t>::max();
    }
    n *= a->points;
  }
  return n;
}

void SweepSpec::validate() const {
  for (SweepVar v : kSweepVars) {
    const auto& a = axis(v);
    if (!a) continue;
    const std::string name(to_string(v));
    if (a->points < 2) throw InvalidArgument("sweep axis " + name + ": needs >= 2 points");
    if (!std::isfinite(a->min) || !std::isfinite(a->max) || !(a->max > a->min)) {
      throw InvalidArgument("sweep axis " + name + ": requires finite min < max");
    }
  }
  if (grid_size() > budget) {
    throw InvalidArgument("sweep grid of " + std::to_string(grid_size()) +
                          " points exceeds the budget of " + std::to_string(budget));
  }
  if (!(target_error > 0.0)) throw InvalidArgument("sweep: target_error must be positive");
  if (m == 0) throw InvalidArgument("sweep: m must be >= 1");
}

std::optional<std::size_t> SweepTable::best_row(Objective objective) const {
  const bool maximize = objective_maximizes(objective);
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.failed || !std::isfinite(row.value)) continue;
    if (!best || better(row.value, rows[*best].value, maximize)) best = i;
  }
  return best;
}

bool SweepTable::all_failed() const {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed; });
}

SweepRow evaluate_point(const SweepSpec& spec, const Point& p) {
  SweepRow row;
  row.coords = p;
  try {
    const SqueezeSpec s(p[0], p[1], p[3]);
    const QfiResult q = compute_qfi(spec.method, s, p[2]);
    row.qfi = q.value;
    row.status = std::string(to_string(q.status));
    row.value = objective_value(spec, q.value, p[2]);
  } catch (const NoInformation&) {
    row.failed = true;
    row.value = std::numeric_limits<double>::quiet_NaN();
    row.status = "error: no-information";
  } catch (const Error& e) {
    row.failed = true;
    row.value = std::numeric_limits<double>::quiet_NaN();
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

SweepTable run_sweep(const SweepSpec& spec, std::size_t workers) {
  spec.validate();
  SweepTable table;
  table.swept = spec.swept();

  const std::size_t n = spec.grid_size();
  // Axis sizes in lexicographic order; fixed variables have extent 1.
  std::array<std::size_t, kSweepVarCount> extent{};
  for (SweepVar v : kSweepVars) {
    const auto& a = spec.axis(v);
    extent[static_cast<std::size_t>(v)] = a ? a->points : 1;
  }

  table.rows.resize(n);
  parallel_for(n, workers, [&](std::size_t flat) {
    Point p{};
    std::size_t rem = flat;
    for (std::size_t d = kSweepVarCount; d-- > 0;) {
      const std::size_t k = rem % extent[d];
      rem /= extent[d];
      const auto& a = spec.axes[d];
      p[d] = a ? a->value(k) : spec.fixed[d];
    }
    table.rows[flat] = evaluate_point(spec, p);
  });
  return table;
}

Optimum find_optimum(const SweepSpec& spec, std::size_t workers) {
  const SweepTable table = run_sweep(spec, workers);
  const auto best = table.best_row(spec.objective);
  if (!best) throw NumericalError("find_optimum: every grid point failed");

  const bool maximize = objective_maximizes(spec.objective);
  Optimum opt;
  opt.coords = table.rows[*best].coords;
  opt.value = table.rows[*best].value;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& row : table.rows) {
    if (row.failed || !std::isfinite(row.value)) continue;
    lo = std::min(lo, row.value);
    hi = std::max(hi, row.value);
  }
  opt.degenerate = (hi - lo) < kFlatObjectiveThreshold;
  if (opt.degenerate) return opt;

  const double sign = maximize ? 1.0 : -1.0;
  for (SweepVar v : table.swept) {
    const Axis& axis = *spec.axis(v);
    const std::size_t d = static_cast<std::size_t>(v);
    const auto grid = axis.values();
    const auto k = static_cast<std::size_t>(
        std::lower_bound(grid.begin(), grid.end(), opt.coords[d]) - grid.begin());
    const double left = k == 0 ? axis.min : grid[std::min(k, grid.size()) - 1];
    const double right = k + 1 < grid.size() ? grid[k + 1] : axis.max;
    if (!(right > left)) continue;

    auto g = [&](double x) {
      Point p = opt.coords;
      p[d] = x;
      const SweepRow r = evaluate_point(spec, p);
      return r.failed ? -std::numeric_limits<double>::infinity() : sign * r.value;
    };
    const double x = golden_section_maximize(g, left, right, kOptimumCoordinateTolerance);
    // Endpoints are candidates too: golden section never evaluates them.
    for (double candidate : {x, left, right}) {
      const double value = sign * g(candidate);
      if (better(value, opt.value, maximize)) {
        opt.coords[d] = candidate;
        opt.value = value;
      }
    }
  }
  return opt;
}

}  // namespace paramp

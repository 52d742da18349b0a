#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>

#include "paramp/sweep.hpp"
#include "paramp_cli/config.hpp"

namespace paramp::cli {

// Each command writes a `#` metadata preamble followed by its CSV table to
// `out`, diagnostics to `err`, and returns an exit code. Numerical failures
// surface as paramp::NumericalError, configuration problems as
// paramp::InvalidArgument; the caller maps them to exit codes.

/// CSV columns, fixed per subcommand.
extern const std::vector<std::string_view> kQfiColumns;
extern const std::vector<std::string_view> kPlanColumns;
extern const std::vector<std::string_view> kFluxColumns;
extern const std::vector<std::string_view> kSweepColumns;
extern const std::vector<std::string_view> kSimulateColumns;

int cmd_qfi(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_plan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_flux(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);

using AxisSet = std::array<std::optional<Axis>, kSweepVarCount>;

/// Parses "min:max:n" or "min:max:n:open" (half-open grid).
Axis parse_axis(std::string_view text);

SweepSpec make_sweep_spec(const RunConfig& config, const AxisSet& axes);
int cmd_sweep(const RunConfig& config, const AxisSet& axes, const std::string& preset,
              std::ostream& out, std::ostream& err);

}  // namespace paramp::cli

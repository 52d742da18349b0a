#include "paramp_cli/commands.hpp"

#include <charconv>
#include <cmath>

#include "paramp/constants.hpp"
#include "paramp/errors.hpp"
#include "paramp/planner.hpp"
#include "paramp/qfi.hpp"
#include "paramp/simulation.hpp"
#include "paramp_cli/app.hpp"
#include "paramp_cli/csv.hpp"

namespace paramp::cli {

const std::vector<std::string_view> kQfiColumns = {
    "r", "theta", "f", "n_th", "method", "qfi", "convergence_estimate", "status"};
const std::vector<std::string_view> kPlanColumns = {
    "r", "theta", "f", "n_th", "method", "qfi", "m", "delta_f", "relative_error",
    "target_error", "status"};
const std::vector<std::string_view> kFluxColumns = {
    "phi_ext_over_phi0", "d_phi_over_phi0", "i_c", "l_0", "e_j", "l_eff",
    "sensitivity_per_unit_dphi", "dl_over_l", "relative_error_factor"};
const std::vector<std::string_view> kSweepColumns = {
    "r", "theta", "f", "n_th", "method", "objective", "qfi", "value", "status"};
const std::vector<std::string_view> kSimulateColumns = {
    "kind", "trial", "seed", "f_hat", "log_likelihood", "converged", "mean", "std",
    "quantum_bound", "classical_bound", "std_over_quantum", "std_over_classical", "qfi",
    "fisher_heterodyne", "non_converged"};

namespace {

// Beyond this the first-order flux-to-length chain is meaningless.
constexpr double kMaxLinearizedLengthChange = 1.0;

void write_preamble(std::ostream& out, std::string_view command, const RunConfig& config) {
  out << "# paramp " << PARAMP_VERSION << '\n';
  out << "# command = " << command << '\n';
  config.write_metadata(out);
}

void report_warnings(std::ostream& err, const QfiResult& q) {
  for (const auto& w : q.warnings) err << "warning: " << w << '\n';
}

Point point_of(const SqueezeSpec& s, double f) { return {s.r(), s.theta(), f, s.n_th()}; }

double parse_number(std::string_view s, std::string_view what) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw ConfigError("axis " + std::string(what) + ": bad number '" + std::string(s) + "'");
  }
  return x;
}

}  // namespace

int cmd_qfi(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SqueezeSpec s = config.squeeze();
  const double f = config.pump();
  const QfiMethod method = config.method();
  const QfiResult q = compute_qfi(method, s, f);
  report_warnings(err, q);

  write_preamble(out, "qfi", config);
  write_header(out, kQfiColumns);
  CsvRow row;
  row.add(s.r()).add(s.theta()).add(f).add(s.n_th()).add(to_string(method)).add(q.value);
  if (method == QfiMethod::two_mode_fidelity_numeric) {
    row.add(q.convergence_estimate);
  } else {
    row.empty();
  }
  row.add(to_string(q.status)).write(out);
  return kExitOk;
}

int cmd_plan(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SqueezeSpec s = config.squeeze();
  const double f = config.pump();
  if (!(f > 0.0)) throw ConfigError("plan: f must be positive");
  const QfiMethod method = config.method();
  const QfiResult q = compute_qfi(method, s, f);
  report_warnings(err, q);

  const bool fixed_m = config.is_explicit("m");
  std::uint64_t m = 0;
  if (fixed_m) {
    m = config.get_u64("m");
    if (m == 0) throw ConfigError("plan: m must be >= 1");
  } else {
    m = measurements_for_error(q.value, f, config.get_double("target_error"));
  }
  const EstimationReport report = make_report(q.value, f, m);

  write_preamble(out, "plan", config);
  write_header(out, kPlanColumns);
  CsvRow row;
  row.add(s.r()).add(s.theta()).add(f).add(s.n_th()).add(to_string(method)).add(report.qfi);
  row.add(report.m).add(report.delta_f).add(report.relative_error);
  if (fixed_m) {
    row.empty();
  } else {
    row.add(config.get_double("target_error"));
  }
  row.add(report.m > kArrayFeasibleMeasurements ? "exceeds-array" : "ok").write(out);
  return kExitOk;
}

int cmd_flux(const RunConfig& config, std::ostream& out, std::ostream&) {
  const double x = config.get_double("phi_ext_over_phi0");
  const double dx = config.get_double("d_phi_over_phi0");
  const FluxParams p = config.flux();
  const double phi0 = constants::kFluxQuantum;

  const double per_unit = flux_sensitivity(p.phi_ext(), phi0);  // δφ = φ₀
  const double dl_over_l = flux_sensitivity(p.phi_ext(), dx * phi0);
  if (!(std::abs(dl_over_l) < kMaxLinearizedLengthChange)) {
    throw DomainError("flux: linearized |dL/L| = " + format_number(std::abs(dl_over_l)) +
                      " >= 1; phi_ext is too close to phi_0/2 for the linear error chain");
  }
  // (ΔL/L) / (δφ/φ_ext) = π x tan(π x)
  const double factor = constants::kPi * x * std::tan(constants::kPi * x);

  write_preamble(out, "flux", config);
  write_header(out, kFluxColumns);
  CsvRow()
      .add(x)
      .add(dx)
      .add(p.i_c())
      .add(p.l_0())
      .add(josephson_energy(p))
      .add(effective_length(p))
      .add(per_unit)
      .add(dl_over_l)
      .add(factor)
      .write(out);
  return kExitOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  SimConfig sim;
  sim.s = config.squeeze();
  sim.f_true = config.pump();
  if (!(sim.f_true > 0.0)) throw ConfigError("simulate: f must be positive");
  sim.m = config.has("m") ? config.get_u64("m") : 1000;
  sim.trials = config.get_u64("trials");
  sim.seed = config.get_u64("seed");
  sim.search = Interval{0.0, 2.5 * sim.f_true};
  sim.bound_method = config.method();
  sim.validate();

  const auto outcomes = run_trials(sim, static_cast<std::size_t>(config.get_u64("workers")));
  const EstimatorSummary summary = summarize(sim, outcomes);

  write_preamble(out, "simulate", config);
  out << "# search_interval = " << format_number(sim.search.lo) << ":"
      << format_number(sim.search.hi) << '\n';
  write_header(out, kSimulateColumns);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    CsvRow row;
    row.add("trial").add(static_cast<std::uint64_t>(i)).add(trial_seed(sim.seed, i));
    row.add(o.f_hat).add(o.log_likelihood_at_max).add(o.converged);
    for (int k = 0; k < 9; ++k) row.empty();
    row.write(out);
  }
  CsvRow row;
  row.add("summary").add(summary.trials).empty().empty().empty().empty();
  row.add(summary.mean).add(summary.std_dev).add(summary.quantum_bound);
  row.add(summary.classical_bound).add(summary.std_over_quantum).add(summary.std_over_classical);
  row.add(summary.qfi).add(summary.fisher_heterodyne).add(summary.non_converged);
  row.write(out);

  if (static_cast<double>(summary.non_converged) >
      kMaxNonConvergedFraction * static_cast<double>(summary.trials)) {
    err << "error: " << summary.non_converged << " of " << summary.trials
        << " trials did not converge (limit 5%)\n";
    return kExitNumerical;
  }
  return kExitOk;
}

Axis parse_axis(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3 && !(parts.size() == 4 && parts[3] == "open")) {
    throw ConfigError("axis '" + std::string(text) + "': expected min:max:n or min:max:n:open");
  }
  Axis a;
  a.min = parse_number(parts[0], text);
  a.max = parse_number(parts[1], text);
  const double n = parse_number(parts[2], text);
  if (n < 2 || n != std::floor(n)) throw ConfigError("axis '" + std::string(text) + "': n must be an integer >= 2");
  a.points = static_cast<std::size_t>(n);
  a.include_max = parts.size() == 3;
  return a;
}

SweepSpec make_sweep_spec(const RunConfig& config, const AxisSet& axes) {
  SweepSpec spec;
  spec.axes = axes;
  const SqueezeSpec s = config.squeeze();
  spec.fixed = point_of(s, config.pump());
  spec.method = config.method();
  spec.objective = parse_objective(config.has("objective") ? config.raw("objective") : "qfi");
  spec.target_error = config.get_double("target_error");
  spec.m = config.has("m") ? config.get_u64("m") : SweepSpec::kDefaultMeasurements;
  if (spec.swept().empty()) {
    throw ConfigError("sweep: no axes given (use --preset or --r-range/--theta-range/--f-range/--n-th-range)");
  }
  spec.validate();
  return spec;
}

int cmd_sweep(const RunConfig& config, const AxisSet& axes, const std::string& preset,
              std::ostream& out, std::ostream&) {
  const SweepSpec spec = make_sweep_spec(config, axes);
  const SweepTable table = run_sweep(spec, static_cast<std::size_t>(config.get_u64("workers")));

  write_preamble(out, "sweep", config);
  if (!preset.empty()) out << "# preset = " << preset << '\n';
  for (SweepVar v : table.swept) {
    const Axis& a = *spec.axis(v);
    out << "# axis " << to_string(v) << " = " << format_number(a.min) << ":"
        << format_number(a.max) << ":" << a.points << (a.include_max ? "" : ":open") << '\n';
  }
  write_header(out, kSweepColumns);
  const std::string method(to_string(spec.method));
  const std::string objective(to_string(spec.objective));
  for (const auto& row : table.rows) {
    CsvRow csv;
    for (double c : row.coords) csv.add(c);
    csv.add(method).add(objective);
    if (row.failed) {
      csv.empty().empty();
    } else {
      csv.add(row.qfi).add(row.value);
    }
    csv.add(row.status).write(out);
  }

  if (const auto best = table.best_row(spec.objective)) {
    const auto& row = table.rows[*best];
    out << (objective_maximizes(spec.objective) ? "# argmax:" : "# argmin:");
    for (std::size_t d = 0; d < kSweepVarCount; ++d) {
      out << ' ' << to_string(kSweepVars[d]) << '=' << format_number(row.coords[d]);
    }
    out << " value=" << format_number(row.value) << '\n';
    return kExitOk;
  }
  out << "# argmax: none (every point failed)\n";
  return kExitNumerical;
}

}  // namespace paramp::cli

#include "paramp_cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "paramp/errors.hpp"
#include "paramp_cli/commands.hpp"
#include "paramp_cli/config.hpp"
#include "paramp_cli/presets.hpp"

namespace paramp::cli {
namespace {

std::string flag_name(std::string_view key) {
  std::string s(key);
  std::replace(s.begin(), s.end(), '_', '-');
  return "--" + s;
}

const std::map<std::string, std::string>& key_help() {
  static const std::map<std::string, std::string> h = {
      {"r", "squeezing parameter r"},
      {"theta", "squeezing phase theta [rad]"},
      {"n_th", "thermal occupation per mode"},
      {"f", "pump strength f (default: derived from the drive)"},
      {"epsilon", "drive amplitude epsilon"},
      {"l_eff", "effective length [m]"},
      {"omega_d", "drive frequency [rad/s]"},
      {"v", "propagation speed [m/s]"},
      {"phi_ext_over_phi0", "external flux in units of phi0"},
      {"d_phi_over_phi0", "flux uncertainty in units of phi0"},
      {"i_c", "SQUID critical current [A]"},
      {"l_0", "inductance per unit length [H/m]"},
      {"m", "number of measurements"},
      {"target_error", "target relative error"},
      {"method", "single | two-numeric | two-analytic"},
      {"objective", "qfi | m | error"},
      {"trials", "Monte-Carlo trials"},
  };
  return h;
}

const std::vector<std::string> kStateKeys = {"r", "theta", "n_th", "f", "epsilon",
                                             "l_eff", "omega_d", "v", "method"};

struct Subcommand {
  CLI::App* app = nullptr;
  std::vector<std::pair<std::string, CLI::Option*>> options;
};

Subcommand add_keys(CLI::App* sub, std::map<std::string, std::string>& storage,
                    const std::vector<std::string>& keys) {
  Subcommand s{sub, {}};
  for (const auto& k : keys) {
    auto* opt = sub->add_option(flag_name(k), storage[k], key_help().at(k));
    s.options.emplace_back(k, opt);
  }
  return s;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  for (const auto& a : args) argv.push_back(a.c_str());
  argv.push_back(nullptr);
  return run(static_cast<int>(args.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum estimation of a parametric amplifier's pump strength"};
  app.name("paramp");
  app.set_version_flag("--version", std::string("paramp ") + PARAMP_VERSION);
  app.require_subcommand(1);
  // global options may also follow the subcommand
  app.fallthrough();

  std::string config_path;
  std::map<std::string, std::string> storage;
  app.add_option("--config", config_path, "key = value configuration file");
  auto* output_opt = app.add_option("--output,-o", storage["output"], "output file (- for stdout)");
  auto* workers_opt = app.add_option("--workers", storage["workers"], "worker threads (0 = all cores)");
  auto* seed_opt = app.add_option("--seed", storage["seed"], "base random seed");

  auto* qfi = app.add_subcommand("qfi", "quantum Fisher information at one point");
  auto* plan = app.add_subcommand("plan", "measurements needed for a target error");
  auto* flux = app.add_subcommand("flux", "flux-to-length error chain of the SQUID");
  auto* sweep = app.add_subcommand("sweep", "grid sweep over r, theta, f, n_th");
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo heterodyne MLE");

  std::vector<Subcommand> subs;
  subs.push_back(add_keys(qfi, storage, kStateKeys));
  subs.push_back(add_keys(plan, storage, concat(kStateKeys, {"m", "target_error"})));
  subs.push_back(add_keys(flux, storage, {"phi_ext_over_phi0", "d_phi_over_phi0", "i_c", "l_0"}));
  subs.push_back(add_keys(sweep, storage, concat(kStateKeys, {"m", "target_error", "objective"})));
  subs.push_back(add_keys(simulate, storage, concat(kStateKeys, {"m", "trials"})));

  std::string preset_name;
  std::array<std::string, kSweepVarCount> ranges;
  std::array<CLI::Option*, kSweepVarCount> range_opts{};
  sweep->add_option("--preset", preset_name, "figure preset: " + [] {
    std::string s;
    for (const auto& n : preset_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }());
  for (std::size_t d = 0; d < kSweepVarCount; ++d) {
    const std::string var(to_string(kSweepVars[d]));
    range_opts[d] = sweep->add_option(flag_name(var) + "-range", ranges[d],
                                      "sweep " + var + " over min:max:n[:open]");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    err << "run 'paramp --help' for usage\n";
    return kExitUsage;
  }

  const Subcommand* active = nullptr;
  for (const auto& s : subs) {
    if (s.app->parsed()) active = &s;
  }
  const std::string command = active->app->get_name();

  try {
    RunConfig config;
    AxisSet axes{};
    if (!preset_name.empty()) {
      const Preset& p = find_preset(preset_name);
      config.apply(p.values, Source::preset);
      axes = p.axes;
    }
    if (!config_path.empty()) config.apply(read_config_file(config_path), Source::file);

    std::map<std::string, std::string> flags;
    for (const auto& [key, opt] : active->options) {
      if (opt->count() > 0) flags[key] = storage[key];
    }
    if (output_opt->count() > 0) flags["output"] = storage["output"];
    if (workers_opt->count() > 0) flags["workers"] = storage["workers"];
    if (seed_opt->count() > 0) flags["seed"] = storage["seed"];
    config.apply(flags, Source::flag);
    for (std::size_t d = 0; d < kSweepVarCount; ++d) {
      if (range_opts[d]->count() > 0) axes[d] = parse_axis(ranges[d]);
    }

    // Validate early so a bad value never yields a partial table.
    (void)config.get_u64("workers");
    const std::string& output = config.raw("output");

    std::ostringstream buf;
    int code = kExitOk;
    if (command == "qfi") {
      code = cmd_qfi(config, buf, err);
    } else if (command == "plan") {
      code = cmd_plan(config, buf, err);
    } else if (command == "flux") {
      code = cmd_flux(config, buf, err);
    } else if (command == "sweep") {
      code = cmd_sweep(config, axes, preset_name, buf, err);
    } else {
      code = cmd_simulate(config, buf, err);
    }

    if (output == "-") {
      out << buf.str();
    } else {
      std::ofstream file(output, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("cannot open output file '" + output + "'");
      file << buf.str();
      if (!file) throw ConfigError("failed writing output file '" + output + "'");
    }
    out.flush();
    return code;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace paramp::cli

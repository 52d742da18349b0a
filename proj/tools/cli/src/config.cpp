#include "paramp_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "paramp/constants.hpp"
#include "paramp_cli/csv.hpp"

namespace paramp::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Keys with no built-in default: f is derived from the drive, m is only
// meaningful where a command asks for it.
const std::map<std::string, std::string>& builtin_defaults() {
  static const std::map<std::string, std::string> d = [] {
    const FluxParams flux = default_flux_params();
    return std::map<std::string, std::string>{
        {"r", "2"},
        {"theta", "0"},
        {"n_th", "0.008"},
        {"epsilon", "0.25"},
        {"l_eff", "0.0004"},
        {"omega_d", format_number(constants::kTwoPi * 1e10)},
        {"v", "157000000"},
        {"phi_ext_over_phi0", "0.35"},
        {"d_phi_over_phi0", "0.001"},
        {"i_c", format_number(flux.i_c())},
        {"l_0", format_number(flux.l_0())},
        {"target_error", "0.1"},
        {"method", "two-analytic"},
        {"seed", "42"},
        {"trials", "200"},
        {"workers", "0"},
        {"output", "-"},
    };
  }();
  return d;
}

}  // namespace

std::string_view to_string(Source s) {
  switch (s) {
    case Source::builtin:
      return "default";
    case Source::preset:
      return "preset";
    case Source::file:
      return "file";
    case Source::flag:
      return "flag";
  }
  return "unknown";
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "r",       "theta",           "n_th",    "f",     "epsilon", "l_eff",
      "omega_d", "v",               "phi_ext_over_phi0", "d_phi_over_phi0",
      "i_c",     "l_0",             "m",       "target_error", "method",
      "objective", "seed",          "trials",  "workers", "output"};
  return keys;
}

bool is_known_key(std::string_view key) {
  const auto& keys = known_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(where + ": missing key");
    if (!is_known_key(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");
    out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

RunConfig::RunConfig() {
  for (const auto& [k, v] : builtin_defaults()) entries_[k] = Entry{v, Source::builtin};
}

void RunConfig::apply(const std::map<std::string, std::string>& values, Source source) {
  for (const auto& [k, v] : values) {
    if (!is_known_key(k)) throw ConfigError("unknown configuration key '" + k + "'");
    entries_[k] = Entry{v, source};
  }
}

bool RunConfig::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

bool RunConfig::is_explicit(std::string_view key) const {
  const auto it = entries_.find(key);
  return it != entries_.end() && it->second.source != Source::builtin;
}

Source RunConfig::source(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("configuration key '" + std::string(key) + "' is not set");
  return it->second.source;
}

const std::string& RunConfig::raw(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("configuration key '" + std::string(key) + "' is not set");
  return it->second.value;
}

double RunConfig::get_double(std::string_view key) const {
  const std::string& s = raw(key);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(x)) {
    throw ConfigError("'" + std::string(key) + "' expects a finite number, got '" + s + "'");
  }
  return x;
}

std::uint64_t RunConfig::get_u64(std::string_view key) const {
  const std::string& s = raw(key);
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError("'" + std::string(key) + "' expects a nonnegative integer, got '" + s + "'");
  }
  return x;
}

SqueezeSpec RunConfig::squeeze() const {
  return {get_double("r"), get_double("theta"), get_double("n_th")};
}

DriveParams RunConfig::drive() const {
  return {get_double("epsilon"), get_double("l_eff"), get_double("omega_d"), get_double("v")};
}

double RunConfig::pump() const {
  const double f = has("f") ? get_double("f") : pump_strength(drive());
  if (!(std::abs(f) < 1.0)) {
    throw ConfigError("pump strength f = " + format_number(f) + " is outside |f| < 1");
  }
  return f;
}

QfiMethod RunConfig::method() const { return parse_qfi_method(raw("method")); }

FluxParams RunConfig::flux() const {
  return {get_double("phi_ext_over_phi0") * constants::kFluxQuantum, get_double("i_c"),
          get_double("l_0")};
}

void RunConfig::write_metadata(std::ostream& os) const {
  for (const auto& [k, e] : entries_) {
    if (k == "workers" || k == "output") continue;
    os << "# " << k << " = " << e.value << " (" << to_string(e.source) << ")\n";
  }
  if (!has("f")) {
    double f = std::nan("");
    try {
      f = pump();
    } catch (const Error&) {
    }
    os << "# f = " << format_number(f) << " (derived from drive)\n";
  }
}

}  // namespace paramp::cli

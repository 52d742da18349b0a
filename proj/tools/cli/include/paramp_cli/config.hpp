#pragma once

// Layered run configuration: built-in defaults < preset < config file < flags.

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "paramp/errors.hpp"
#include "paramp/gaussian.hpp"
#include "paramp/planner.hpp"
#include "paramp/qfi.hpp"

namespace paramp::cli {

/// Bad flag, config file or value; maps to exit code 2.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class Source { builtin, preset, file, flag };

std::string_view to_string(Source s);

/// Every key accepted in a config file or as a flag (flag spelling replaces
/// '_' with '-').
const std::vector<std::string>& known_keys();
bool is_known_key(std::string_view key);

/// Parses `key = value` lines with `#` comments. Unknown keys, malformed
/// lines and empty values throw ConfigError mentioning the line number.
std::map<std::string, std::string> parse_config_text(std::string_view text);
std::map<std::string, std::string> read_config_file(const std::string& path);

class RunConfig {
 public:
  /// Built-in defaults only.
  RunConfig();

  /// Overlays values from a higher-precedence layer. Throws ConfigError on an
  /// unknown key.
  void apply(const std::map<std::string, std::string>& values, Source source);

  bool has(std::string_view key) const;
  /// True if the key was set by anything other than the built-in defaults.
  bool is_explicit(std::string_view key) const;
  Source source(std::string_view key) const;
  const std::string& raw(std::string_view key) const;

  double get_double(std::string_view key) const;
  std::uint64_t get_u64(std::string_view key) const;

  SqueezeSpec squeeze() const;
  DriveParams drive() const;
  /// Explicit f if given, otherwise f derived from the drive parameters.
  double pump() const;
  bool pump_is_derived() const { return !has("f"); }
  QfiMethod method() const;
  FluxParams flux() const;

  /// `# key = value` lines for every resolved key (excluding workers and
  /// output, which do not affect results).
  void write_metadata(std::ostream& os) const;

 private:
  struct Entry {
    std::string value;
    Source source = Source::builtin;
  };
  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace paramp::cli

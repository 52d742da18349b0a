#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paramp/sweep.hpp"

namespace paramp::cli {

/// A figure window: configuration values (fixed coordinates, method,
/// objective) plus the swept axes.
struct Preset {
  std::string name;
  std::string description;
  std::map<std::string, std::string> values;
  std::array<std::optional<Axis>, kSweepVarCount> axes{};
};

inline constexpr std::size_t kPresetGridPoints = 64;

/// fig1 .. fig6 and nth. Throws ConfigError on an unknown name.
const Preset& find_preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace paramp::cli

#include "paramp_cli/presets.hpp"

#include <algorithm>

#include "paramp/constants.hpp"
#include "paramp_cli/config.hpp"

namespace paramp::cli {
namespace {

constexpr std::size_t kN = kPresetGridPoints;

Axis r_axis() { return {0.0, 2.0, kN, true}; }
Axis theta_axis() { return {0.0, constants::kTwoPi, kN, false}; }
Axis f_axis() { return {0.001, 0.04, kN, true}; }

std::vector<Preset> build_presets() {
  std::vector<Preset> out;

  Preset fig1{"fig1", "single-mode QFI over (r, theta)",
              {{"method", "single"}, {"objective", "qfi"}, {"f", "0.02"}, {"n_th", "0.008"}},
              {}};
  fig1.axes[0] = r_axis();
  fig1.axes[1] = theta_axis();
  out.push_back(fig1);

  Preset fig2{"fig2", "single-mode QFI over (r, f) at theta = pi/2",
              {{"method", "single"},
               {"objective", "qfi"},
               {"theta", "1.5707963267948966"},
               {"n_th", "0.008"}},
              {}};
  fig2.axes[0] = r_axis();
  fig2.axes[2] = f_axis();
  out.push_back(fig2);

  Preset fig3{"fig3", "two-mode QFI over (r, theta)",
              {{"method", "two-numeric"}, {"objective", "qfi"}, {"f", "0.02"}, {"n_th", "0.008"}},
              {}};
  fig3.axes[0] = r_axis();
  fig3.axes[1] = theta_axis();
  out.push_back(fig3);

  Preset fig4{"fig4", "two-mode QFI over (r, f) at theta = 0",
              {{"method", "two-numeric"}, {"objective", "qfi"}, {"theta", "0"}, {"n_th", "0.008"}},
              {}};
  fig4.axes[0] = r_axis();
  fig4.axes[2] = f_axis();
  out.push_back(fig4);

  Preset fig5{"fig5", "measurements needed for E <= 0.1 vs r, f in {0.01, 0.02, 0.03}",
              {{"method", "two-numeric"},
               {"objective", "m"},
               {"theta", "0"},
               {"n_th", "0.008"},
               {"target_error", "0.1"}},
              {}};
  fig5.axes[0] = r_axis();
  fig5.axes[2] = Axis{0.01, 0.03, 3, true};
  out.push_back(fig5);

  Preset fig6{"fig6", "relative error over (r, f) with M = 1000",
              {{"method", "two-numeric"},
               {"objective", "error"},
               {"theta", "0"},
               {"n_th", "0.008"},
               {"m", "1000"}},
              {}};
  fig6.axes[0] = r_axis();
  fig6.axes[2] = f_axis();
  out.push_back(fig6);

  Preset nth{"nth", "two-mode QFI over (r, n_th) at theta = 0",
             {{"method", "two-numeric"}, {"objective", "qfi"}, {"theta", "0"}, {"f", "0.02"}},
             {}};
  nth.axes[0] = r_axis();
  nth.axes[3] = Axis{0.001, 0.02, kN, true};
  out.push_back(nth);

  return out;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> p = build_presets();
  return p;
}

}  // namespace

const Preset& find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : presets()) names.push_back(p.name);
  return names;
}

}  // namespace paramp::cli

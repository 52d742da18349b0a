#pragma once

// Cramér–Rao planning and propagation of the error in f to physical
// magnitudes (drive frequency, propagation speed, effective length, flux).

#include <cstdint>

#include "paramp/constants.hpp"

namespace paramp {

/// Feasible array size for independent resonators.
inline constexpr std::uint64_t kArrayFeasibleMeasurements = 1000;

struct EstimationReport {
  double qfi = 0.0;
  double f = 0.0;
  std::uint64_t m = 1;
  double delta_f = 0.0;
  double relative_error = 0.0;
};

/// Saturated quantum Cramér–Rao bound Δf = 1/√(M·H). Throws NoInformation for
/// qfi ≤ 0 and InvalidArgument for m = 0.
double cramer_rao(double qfi, std::uint64_t m);

/// Smallest M with 1/(f·√(M·H)) ≤ target_e.
std::uint64_t measurements_for_error(double qfi, double f, double target_e);

/// E = 1/(f·√(M·H)).
double relative_error(double qfi, double f, std::uint64_t m);

EstimationReport make_report(double qfi, double f, std::uint64_t m);

/// Quadrature sum √(a² + b² + c²) of the relative errors in v, ω_d and L_eff.
double combine_relative_errors(double dv_over_v, double dw_over_w, double dl_over_l);

/// SQUID flux circuit. φ₀ is fixed to the flux quantum.
class FluxParams {
 public:
  /// Throws InvalidArgument for i_c ≤ 0 or l_0 ≤ 0, and DomainError when
  /// |cos(π φ_ext/φ₀)| ≤ 1e-6.
  FluxParams(double phi_ext, double i_c, double l_0);

  double phi_ext() const { return phi_ext_; }
  double phi_0() const { return constants::kFluxQuantum; }
  double i_c() const { return i_c_; }
  double l_0() const { return l_0_; }

 private:
  double phi_ext_;
  double i_c_;
  double l_0_;
};

inline constexpr double kFluxDivergenceGuard = 1e-6;

/// Working point φ_ext = 0.35 φ₀ with I_c·L₀ back-solved so that L_eff = 0.4 mm.
inline constexpr double kDefaultPhiExtOverPhi0 = 0.35;
inline constexpr double kDefaultEffectiveLength = 4e-4;
inline constexpr double kDefaultInductancePerLength = 4.5e-7;  // H/m
double default_critical_current_times_inductance();
FluxParams default_flux_params(double phi_ext_over_phi0 = kDefaultPhiExtOverPhi0);

/// E_J = 2 I_c (φ₀/2π) |cos(π φ_ext/φ₀)|.
double josephson_energy(const FluxParams& p);

/// L_eff = (φ₀/2π)² / (E_J L₀).
double effective_length(const FluxParams& p);

/// ΔL_eff/L_eff = π tan(π φ_ext/φ₀) · δφ/φ₀. Throws DomainError near
/// φ_ext = φ₀/2 (mod φ₀).
double flux_sensitivity(double phi_ext, double d_phi);

}  // namespace paramp

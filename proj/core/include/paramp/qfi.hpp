#pragma once

// Quantum Fisher information for the amplification parameter f.
//
// Three routes are provided: the single-mode closed formula on the reduced
// state, the two-mode Uhlmann-fidelity second-derivative limit, and the
// leading-order analytic two-mode expression.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "paramp/gaussian.hpp"

namespace paramp {

enum class QfiMethod { single_mode_formula, two_mode_fidelity_numeric, two_mode_analytic };

/// CLI spelling: "single", "two-numeric", "two-analytic".
std::string_view to_string(QfiMethod m);
/// Throws InvalidArgument on an unknown name.
QfiMethod parse_qfi_method(std::string_view name);

enum class QfiStatus {
  ok,
  non_converged,        // successive Richardson extrapolants differ by > 0.1%
  thermal_regularized,  // pure reference state; limit taken from n_th → 0⁺
  leading_order,        // analytic expansion, value ≥ 0
  leading_order_negative,
};

std::string_view to_string(QfiStatus s);

struct QfiResult {
  double value = 0.0;
  QfiMethod method = QfiMethod::two_mode_analytic;
  QfiStatus status = QfiStatus::ok;
  /// Finite-difference steps δ, numeric method only.
  std::vector<double> steps_used;
  /// |difference of the last two extrapolants|, numeric method only.
  double convergence_estimate = 0.0;
  std::vector<std::string> warnings;

  bool converged() const { return status != QfiStatus::non_converged; }
};

struct FidelityIntermediates {
  double gamma = 0.0;
  double lambda = 0.0;
  double upsilon = 0.0;
  double fidelity = 0.0;
};

/// Relative scale between the stored CovMat (vacuum ½·I) and the covariance the
/// fidelity determinants are written in. Fixed by the vacuum/thermal oracles:
/// the formula is evaluated on the stored matrix as-is.
inline constexpr double kFidelityCovarianceScale = 1.0;

/// Uhlmann fidelity F = (Tr√(√ρ₁ρ₂√ρ₁))² of two two-mode Gaussian states:
///   F = 1 / (√Γ + √Λ − √((√Γ + √Λ)² − Υ)),
///   Γ = 16·Det(ΩV₁ΩV₂ − I/4), Λ = 16·Det(V₁ + iΩ/2)·Det(V₂ + iΩ/2),
///   Υ = Det(V₁ + V₂).
/// Evaluated in extended precision. Throws NumericalBreakdown if a radicand is
/// below −1e-12; the message carries Γ, Λ, Υ.
FidelityIntermediates uhlmann_fidelity(const Mat4& v1, const Mat4& v2);
FidelityIntermediates uhlmann_fidelity(const CovMat& v1, const CovMat& v2);

/// Step schedule and convergence threshold for the numeric limit.
inline constexpr std::array<double, 4> kFidelitySteps = {4e-3, 2e-3, 1e-3, 5e-4};
inline constexpr double kConvergenceRelTol = 1e-3;
/// Thermal offsets h, 2h used to regularize a pure reference state.
inline constexpr double kRegularizationThermalStep = 1e-3;

/// −2·∂²F/∂δ² at δ = 0, with V₁ = V(f), V₂ = V(f + δ) from the truncated
/// covariance (or the exact map when use_exact_map is set). Central second
/// differences on kFidelitySteps followed by one Richardson step.
QfiResult qfi_two_mode_numeric(const SqueezeSpec& s, double f, bool use_exact_map = false);

/// H = 4[sinh²(2r)cos²θ(1 + 4f² − 4n) − f² + n(√(17/2) − 2)]. Negative values
/// near r = 0 are returned unclamped with status leading_order_negative.
QfiResult qfi_two_mode_analytic(const SqueezeSpec& s, double f);

/// Closed-form ∂Ṽ/∂f of the truncated covariance.
Mat4 cov_derivative_truncated(const SqueezeSpec& s, double f);

/// Single-mode QFI of a zero-mean Gaussian state σ(τ) with derivative σ′:
///   H = ½ Tr[(σ⁻¹σ′)²]/(1 + P²) + 2P′²/(1 − P⁴),  P = 1/(2√Det σ).
/// For P ≥ 1 − 1e-9 the pure-state limit ¼ Tr[(σ⁻¹σ′)²] is used.
/// Throws InvalidState for singular σ.
double single_mode_qfi(const Mat2& sigma, const Mat2& dsigma);

/// Single-mode QFI with respect to f of the reduced state of one mode.
QfiResult qfi_single_mode(const SqueezeSpec& s, double f, Mode mode = Mode::minus);

/// Dispatch on method.
QfiResult compute_qfi(QfiMethod method, const SqueezeSpec& s, double f);

}  // namespace paramp

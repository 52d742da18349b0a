#pragma once

// Covariance-matrix representation of zero-mean Gaussian states of one or two
// bosonic modes, and the SQUID parametric-amplifier transformation.
//
// Convention: quadratures q = (b + b†)/√2, p = −i(b − b†)/√2, ordered
// (q_-, p_-, q_+, p_+) for two modes; V_ab = ½⟨R_a R_b + R_b R_a⟩, so the
// vacuum covariance is ½·Identity.

#include <Eigen/Core>

#include <cstddef>

namespace paramp {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using MatX = Eigen::MatrixXd;

/// Initial thermal two-mode squeezed state parameters. Squeezing χ = r·e^{iθ}.
class SqueezeSpec {
 public:
  /// Throws InvalidArgument for r < 0, n_th < 0 or non-finite input.
  /// theta is wrapped into [0, 2π).
  SqueezeSpec(double r, double theta, double n_th);

  double r() const { return r_; }
  double theta() const { return theta_; }
  double n_th() const { return n_th_; }

  SqueezeSpec with_n_th(double n_th) const { return {r_, theta_, n_th}; }

 private:
  double r_;
  double theta_;
  double n_th_;
};

/// Perturbative regime used by the truncated covariance (f ≤ 0.05 and n_th ≤ 0.05).
inline constexpr double kRegimeMaxPump = 0.05;
inline constexpr double kRegimeMaxThermal = 0.05;
bool in_perturbative_regime(double f, double n_th);

/// SQUID drive: normalized amplitude, effective length [m], drive angular
/// frequency [rad/s], propagation speed [m/s].
class DriveParams {
 public:
  DriveParams(double epsilon, double l_eff, double omega_d, double v);

  double epsilon() const { return epsilon_; }
  double l_eff() const { return l_eff_; }
  double omega_d() const { return omega_d_; }
  double v() const { return v_; }

 private:
  double epsilon_;
  double l_eff_;
  double omega_d_;
  double v_;
};

/// Experimental working point: ε = 0.25, L_eff = 0.4 mm, ω_d = 2π·10 GHz and
/// v = 1.57e8 m/s, which together give f ≈ 0.02.
DriveParams default_drive();

/// Real symmetric, positive-definite covariance matrix of 1 or 2 modes.
class CovMat {
 public:
  /// Throws InvalidArgument if the size is not 2×2 / 4×4, the matrix is not
  /// symmetric to 1e-12 absolute, or it is not positive definite.
  explicit CovMat(const MatX& entries);

  static CovMat vacuum(std::size_t n_modes);

  std::size_t n_modes() const { return static_cast<std::size_t>(m_.rows() / 2); }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const MatX& matrix() const { return m_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// 4×4 view; throws InvalidArgument on a single-mode matrix.
  Mat4 as4() const;

  bool operator==(const CovMat&) const = default;

 private:
  MatX m_;
};

/// Ω = ⊕ (0 1; −1 0) for n_modes in {1, 2}.
MatX symplectic_form(std::size_t n_modes);
Mat4 symplectic_form4();

/// f = ε·L_eff·ω_d / (2v).
double pump_strength(const DriveParams& d);

/// Bose–Einstein occupation 1/(e^{ħω/k_B T} − 1). T in kelvin, ω in rad/s.
double thermal_occupation(double temperature, double omega);

/// V = ½ (A B; B A), A = cosh(2r)(1+2n)·I, B = sinh(2r)(1+2n)(cosθ σ_z + sinθ σ_x).
CovMat initial_tms_thermal(const SqueezeSpec& s);

/// Coupling matrix K, ones at (q_- ↔ p_+) and (p_- ↔ q_+).
Mat4 coupling_matrix();

/// S = −(I + f·K): q_± → −(q_0± + f p_0∓), p_± → −(p_0± + f q_0∓).
/// Throws InvalidArgument for |f| ≥ 1.
Mat4 amplifier_matrix(double f);

/// S·V·S^T without physicality checks.
Mat4 amplified_covariance(const Mat4& v, double f);

/// S·V·S^T; throws PhysicalityError if the result fails validate_physical.
/// S is not symplectic (SΩS^T = (1−f²)Ω), so zero-temperature inputs become
/// sub-vacuum at O(f²).
CovMat apply_amplifier_exact(const CovMat& v, double f);

/// Truncated transformed covariance (linear in n_th, quadratic in f), no
/// physicality check. Both QFI routes and the likelihood run on this.
Mat4 truncated_covariance(const SqueezeSpec& s, double f);

/// Exact map applied to the initial state, without physicality checks.
Mat4 exact_covariance(const SqueezeSpec& s, double f);

/// Checked version of truncated_covariance; throws PhysicalityError naming
/// (r, θ, n_th, f) when the result is unphysical.
CovMat apply_amplifier_truncated(const SqueezeSpec& s, double f);

enum class Mode { minus, plus };

/// 2×2 diagonal block of the selected mode. Throws InvalidArgument on a
/// single-mode input.
CovMat reduce_mode(const CovMat& v, Mode mode);

/// P = 1 / (2^n √Det V); 1 for pure states. Throws InvalidState when
/// Det V ≤ 0.
double purity(const CovMat& v);
double purity(const MatX& v);

/// Symplectic eigenvalues (moduli of the eigenvalues of iΩV), ascending.
Eigen::VectorXd symplectic_eigenvalues(const MatX& v);

inline constexpr double kPhysicalityTolerance = 1e-9;
inline constexpr double kSymmetryTolerance = 1e-12;

struct PhysicalityReport {
  double symmetry_defect = 0.0;
  /// Smallest eigenvalue of the Hermitian matrix V + (i/2)Ω.
  double min_eigenvalue = 0.0;
  bool passed = false;
};

PhysicalityReport validate_physical(const CovMat& v);
PhysicalityReport validate_physical(const MatX& v);

}  // namespace paramp

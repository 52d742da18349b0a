#include "paramp/gaussian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "paramp/constants.hpp"
#include "paramp/errors.hpp"

namespace paramp {
namespace {

bool finite(double x) { return std::isfinite(x); }

const Mat2& pauli_z() {
  static const Mat2 m = (Mat2() << 1.0, 0.0, 0.0, -1.0).finished();
  return m;
}

const Mat2& pauli_x() {
  static const Mat2 m = (Mat2() << 0.0, 1.0, 1.0, 0.0).finished();
  return m;
}

Mat4 assemble_blocks(const Mat2& a, const Mat2& b) {
  Mat4 v;
  v << a, b, b, a;
  return 0.5 * v;
}

std::string describe(const SqueezeSpec& s, double f) {
  std::ostringstream os;
  os.precision(6);
  os << "r=" << s.r() << " theta=" << s.theta() << " n_th=" << s.n_th()
     << " f=" << f;
  return os.str();
}

}  // namespace

SqueezeSpec::SqueezeSpec(double r, double theta, double n_th)
    : r_(r), theta_(theta), n_th_(n_th) {
  if (!finite(r) || !finite(theta) || !finite(n_th)) {
    throw InvalidArgument("SqueezeSpec: non-finite parameter");
  }
  if (r < 0.0) throw InvalidArgument("SqueezeSpec: r must be >= 0");
  if (n_th < 0.0) throw InvalidArgument("SqueezeSpec: n_th must be >= 0");
  theta_ = std::fmod(theta, constants::kTwoPi);
  if (theta_ < 0.0) theta_ += constants::kTwoPi;
  if (theta_ >= constants::kTwoPi) theta_ = 0.0;
}

bool in_perturbative_regime(double f, double n_th) {
  return std::abs(f) <= kRegimeMaxPump && n_th <= kRegimeMaxThermal;
}

DriveParams::DriveParams(double epsilon, double l_eff, double omega_d, double v)
    : epsilon_(epsilon), l_eff_(l_eff), omega_d_(omega_d), v_(v) {
  if (!finite(epsilon) || !finite(l_eff) || !finite(omega_d) || !finite(v)) {
    throw InvalidArgument("DriveParams: non-finite parameter");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("DriveParams: epsilon must lie in (0, 1)");
  }
  if (l_eff <= 0.0 || omega_d <= 0.0 || v <= 0.0) {
    throw InvalidArgument("DriveParams: l_eff, omega_d and v must be positive");
  }
}

DriveParams default_drive() {
  return {0.25, 4e-4, constants::kTwoPi * 1e10, 1.57e8};
}

CovMat::CovMat(const MatX& entries) : m_(entries) {
  if (!(m_.rows() == m_.cols() && (m_.rows() == 2 || m_.rows() == 4))) {
    throw InvalidArgument("CovMat: expected a 2x2 or 4x4 matrix");
  }
  if (!m_.allFinite()) throw InvalidArgument("CovMat: non-finite entries");
  if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance) {
    throw InvalidArgument("CovMat: matrix is not symmetric");
  }
  if (Eigen::LLT<MatX>(m_).info() != Eigen::Success) {
    throw InvalidArgument("CovMat: matrix is not positive definite");
  }
}

CovMat CovMat::vacuum(std::size_t n_modes) {
  if (n_modes != 1 && n_modes != 2) {
    throw InvalidArgument("CovMat::vacuum: n_modes must be 1 or 2");
  }
  const auto d = static_cast<Eigen::Index>(2 * n_modes);
  return CovMat(0.5 * MatX::Identity(d, d));
}

Mat4 CovMat::as4() const {
  if (dim() != 4) throw InvalidArgument("CovMat: expected a two-mode state");
  return m_;
}

MatX symplectic_form(std::size_t n_modes) {
  if (n_modes != 1 && n_modes != 2) {
    throw InvalidArgument("symplectic_form: n_modes must be 1 or 2");
  }
  const auto d = static_cast<Eigen::Index>(2 * n_modes);
  MatX omega = MatX::Zero(d, d);
  for (Eigen::Index k = 0; k < d; k += 2) {
    omega(k, k + 1) = 1.0;
    omega(k + 1, k) = -1.0;
  }
  return omega;
}

Mat4 symplectic_form4() { return symplectic_form(2); }

double pump_strength(const DriveParams& d) {
  return d.epsilon() * d.l_eff() * d.omega_d() / (2.0 * d.v());
}

double thermal_occupation(double temperature, double omega) {
  if (!(temperature > 0.0) || !(omega > 0.0) || !finite(temperature) ||
      !finite(omega)) {
    throw InvalidArgument("thermal_occupation: T and omega must be positive");
  }
  const double x = constants::kHbar * omega / (constants::kBoltzmann * temperature);
  return 1.0 / std::expm1(x);
}

CovMat initial_tms_thermal(const SqueezeSpec& s) {
  const double nu = 1.0 + 2.0 * s.n_th();
  const Mat2 a = std::cosh(2.0 * s.r()) * nu * Mat2::Identity();
  const Mat2 b = std::sinh(2.0 * s.r()) * nu *
                 (std::cos(s.theta()) * pauli_z() + std::sin(s.theta()) * pauli_x());
  return CovMat(assemble_blocks(a, b));
}

Mat4 coupling_matrix() {
  Mat4 k = Mat4::Zero();
  k(0, 3) = k(3, 0) = 1.0;  // q_- <-> p_+
  k(1, 2) = k(2, 1) = 1.0;  // p_- <-> q_+
  return k;
}

Mat4 amplifier_matrix(double f) {
  if (!(std::abs(f) < 1.0)) {
    throw InvalidArgument("amplifier_matrix: |f| must be < 1");
  }
  return -(Mat4::Identity() + f * coupling_matrix());
}

Mat4 amplified_covariance(const Mat4& v, double f) {
  const Mat4 s = amplifier_matrix(f);
  Mat4 out = s * v * s.transpose();
  // Restore exact symmetry lost to rounding in the triple product.
  return 0.5 * (out + out.transpose());
}

CovMat apply_amplifier_exact(const CovMat& v, double f) {
  const Mat4 out = amplified_covariance(v.as4(), f);
  const auto report = validate_physical(MatX(out));
  if (!report.passed) {
    std::ostringstream os;
    os << "apply_amplifier_exact: output is unphysical at f=" << f
       << " (min eigenvalue of V + iOmega/2 = " << report.min_eigenvalue << ")";
    throw PhysicalityError(os.str());
  }
  return CovMat(out);
}

Mat4 truncated_covariance(const SqueezeSpec& s, double f) {
  const double c = std::cosh(2.0 * s.r());
  const double sh = std::sinh(2.0 * s.r());
  const double th = std::tanh(2.0 * s.r());
  const double nu = 1.0 + 2.0 * s.n_th();
  const double st = std::sin(s.theta());
  const double ct = std::cos(s.theta());

  const double diag = c * nu * (1.0 + f * f + 2.0 * f * th * st);
  const double bz = sh * nu * (1.0 - f * f) * ct;
  const double bx = 2.0 * f * c * nu + (1.0 + f * f + 2.0 * s.n_th()) * sh * st;

  return assemble_blocks(diag * Mat2::Identity(), bz * pauli_z() + bx * pauli_x());
}

Mat4 exact_covariance(const SqueezeSpec& s, double f) {
  return amplified_covariance(initial_tms_thermal(s).as4(), f);
}

CovMat apply_amplifier_truncated(const SqueezeSpec& s, double f) {
  const Mat4 v = truncated_covariance(s, f);
  const auto report = validate_physical(MatX(v));
  if (!report.passed) {
    std::ostringstream os;
    os << "apply_amplifier_truncated: unphysical state at " << describe(s, f)
       << " (min eigenvalue of V + iOmega/2 = " << report.min_eigenvalue << ")";
    throw PhysicalityError(os.str());
  }
  return CovMat(v);
}

CovMat reduce_mode(const CovMat& v, Mode mode) {
  if (v.dim() != 4) throw InvalidArgument("reduce_mode: expected a two-mode state");
  const Eigen::Index k = mode == Mode::minus ? 0 : 2;
  return CovMat(MatX(v.matrix().block(k, k, 2, 2)));
}

double purity(const MatX& v) {
  const double det = v.determinant();
  if (!(det > 0.0)) throw InvalidState("purity: nonpositive determinant");
  const double n = static_cast<double>(v.rows() / 2);
  return 1.0 / (std::pow(2.0, n) * std::sqrt(det));
}

double purity(const CovMat& v) { return purity(v.matrix()); }

Eigen::VectorXd symplectic_eigenvalues(const MatX& v) {
  const MatX omega = symplectic_form(static_cast<std::size_t>(v.rows() / 2));
  // The eigenvalues of ΩV come in ±iν pairs.
  Eigen::EigenSolver<MatX> es(omega * v, false);
  const auto& ev = es.eigenvalues();
  std::vector<double> moduli;
  for (Eigen::Index k = 0; k < ev.size(); ++k) moduli.push_back(std::abs(ev(k)));
  std::sort(moduli.begin(), moduli.end());
  Eigen::VectorXd out(ev.size() / 2);
  for (Eigen::Index k = 0; k < out.size(); ++k) {
    out(k) = 0.5 * (moduli[2 * k] + moduli[2 * k + 1]);
  }
  return out;
}

PhysicalityReport validate_physical(const MatX& v) {
  PhysicalityReport report;
  report.symmetry_defect = (v - v.transpose()).cwiseAbs().maxCoeff();
  const MatX omega = symplectic_form(static_cast<std::size_t>(v.rows() / 2));
  using CMat = Eigen::MatrixXcd;
  CMat h = v.cast<std::complex<double>>() +
           std::complex<double>(0.0, 0.5) * omega.cast<std::complex<double>>();
  h = 0.5 * (h + h.adjoint()).eval();  // Hermitian part
  Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
  report.min_eigenvalue = es.eigenvalues().minCoeff();
  report.passed = report.symmetry_defect <= kSymmetryTolerance &&
                  report.min_eigenvalue >= -kPhysicalityTolerance;
  return report;
}

PhysicalityReport validate_physical(const CovMat& v) {
  return validate_physical(v.matrix());
}

}  // namespace paramp

#include "paramp/qfi.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <array>
#include <utility>
#include <sstream>

#include "paramp/errors.hpp"

namespace paramp {
namespace {

// Determinants are formed in binary128 where available: products of two
// doubles are exact there, so the near-cancellation in (√Γ + √Λ)² − Υ for
// almost pure states is resolved before the square root amplifies it.
#if defined(__SIZEOF_FLOAT128__)
__extension__ typedef __float128 Real;
#else
typedef long double Real;
#endif
using Mat4W = std::array<std::array<Real, 4>, 4>;

constexpr double kRadicandTolerance = 1e-12;

Real wide_abs(Real x) { return x < 0 ? -x : x; }

Real wide_sqrt(Real x) {
  if (!(x > 0)) return 0;
  Real y = std::sqrt(static_cast<long double>(x));
  for (int k = 0; k < 2; ++k) y = (y + x / y) / 2;
  return y;
}

Mat4W widen(const Mat4& m) {
  Mat4W w{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) w[i][j] = static_cast<Real>(kFidelityCovarianceScale * m(i, j));
  }
  return w;
}

Mat4W multiply(const Mat4W& a, const Mat4W& b) {
  Mat4W c{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Real acc = 0;
      for (int k = 0; k < 4; ++k) acc += a[i][k] * b[k][j];
      c[i][j] = acc;
    }
  }
  return c;
}

// Ω·M: rows (0,1) and (2,3) of each mode become (row₁, −row₀).
Mat4W omega_times(const Mat4W& m) {
  Mat4W out{};
  for (int mode = 0; mode < 2; ++mode) {
    out[2 * mode] = m[2 * mode + 1];
    for (int j = 0; j < 4; ++j) out[2 * mode + 1][j] = -m[2 * mode][j];
  }
  return out;
}

Real det(Mat4W a) {
  Real d = 1;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r) {
      if (wide_abs(a[r][c]) > wide_abs(a[piv][c])) piv = r;
    }
    if (a[piv][c] == 0) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const Real g = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= g * a[c][k];
    }
  }
  return d;
}

Real det2(const Mat4W& m, int r, int c) { return m[r][c] * m[r + 1][c + 1] - m[r][c + 1] * m[r + 1][c]; }

// Det(V + iΩ/2) = Det V − Δ/4 + 1/16 with Δ = Det A + Det B + 2 Det C for
// V = (A C; Cᵀ B).
Real det_plus_i_omega(const Mat4W& v) {
  const Real delta = det2(v, 0, 0) + det2(v, 2, 2) + 2 * det2(v, 0, 2);
  return det(v) - delta / 4 + Real(1) / 16;
}

Real checked_sqrt(Real x, const char* what, const FidelityIntermediates& fi) {
  if (x < -kRadicandTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "uhlmann_fidelity: negative radicand in " << what << " (" << static_cast<double>(x)
       << "); Gamma=" << fi.gamma << " Lambda=" << fi.lambda << " Upsilon=" << fi.upsilon;
    throw NumericalBreakdown(os.str());
  }
  return wide_sqrt(x);
}

Mat4 family_covariance(const SqueezeSpec& s, double f, bool exact) {
  return exact ? exact_covariance(s, f) : truncated_covariance(s, f);
}

QfiResult numeric_direct(const SqueezeSpec& s, double f, bool exact) {
  QfiResult result;
  result.method = QfiMethod::two_mode_fidelity_numeric;

  const Mat4 v0 = family_covariance(s, f, exact);
  const double f0 = uhlmann_fidelity(v0, v0).fidelity;

  std::array<double, kFidelitySteps.size()> second_diff{};
  for (std::size_t k = 0; k < kFidelitySteps.size(); ++k) {
    const double d = kFidelitySteps[k];
    const double fp = uhlmann_fidelity(v0, family_covariance(s, f + d, exact)).fidelity;
    const double fm = uhlmann_fidelity(v0, family_covariance(s, f - d, exact)).fidelity;
    second_diff[k] = -2.0 * (fp - 2.0 * f0 + fm) / (d * d);
    result.steps_used.push_back(d);
  }

  // Halving steps: the O(δ²) error term cancels in (4·D(δ/2) − D(δ)) / 3.
  std::array<double, kFidelitySteps.size() - 1> extrapolated{};
  for (std::size_t k = 0; k + 1 < second_diff.size(); ++k) {
    extrapolated[k] = (4.0 * second_diff[k + 1] - second_diff[k]) / 3.0;
  }
  const double last = extrapolated.back();
  const double prev = extrapolated[extrapolated.size() - 2];
  result.value = last;
  result.convergence_estimate = std::abs(last - prev);
  if (result.convergence_estimate > kConvergenceRelTol * std::max(std::abs(last), 1.0)) {
    result.status = QfiStatus::non_converged;
    result.warnings.emplace_back("numeric QFI: Richardson extrapolants differ by more than 0.1%");
  }
  return result;
}

}  // namespace

std::string_view to_string(QfiMethod m) {
  switch (m) {
    case QfiMethod::single_mode_formula:
      return "single";
    case QfiMethod::two_mode_fidelity_numeric:
      return "two-numeric";
    case QfiMethod::two_mode_analytic:
      return "two-analytic";
  }
  return "unknown";
}

QfiMethod parse_qfi_method(std::string_view name) {
  if (name == "single") return QfiMethod::single_mode_formula;
  if (name == "two-numeric") return QfiMethod::two_mode_fidelity_numeric;
  if (name == "two-analytic") return QfiMethod::two_mode_analytic;
  throw InvalidArgument("unknown QFI method '" + std::string(name) +
                        "' (expected single, two-numeric or two-analytic)");
}

std::string_view to_string(QfiStatus s) {
  switch (s) {
    case QfiStatus::ok:
      return "ok";
    case QfiStatus::non_converged:
      return "non-converged";
    case QfiStatus::thermal_regularized:
      return "thermal-regularized";
    case QfiStatus::leading_order:
      return "leading-order";
    case QfiStatus::leading_order_negative:
      return "leading-order-negative";
  }
  return "unknown";
}

FidelityIntermediates uhlmann_fidelity(const Mat4& v1d, const Mat4& v2d) {
  const Mat4W v1 = widen(v1d);
  const Mat4W v2 = widen(v2d);

  Mat4W g = multiply(omega_times(v1), omega_times(v2));
  Mat4W sum{};
  for (int i = 0; i < 4; ++i) {
    g[i][i] -= Real(1) / 4;
    for (int j = 0; j < 4; ++j) sum[i][j] = v1[i][j] + v2[i][j];
  }
  const Real gamma = 16 * det(g);
  const Real lambda = 16 * det_plus_i_omega(v1) * det_plus_i_omega(v2);
  const Real upsilon = det(sum);

  FidelityIntermediates fi;
  fi.gamma = static_cast<double>(gamma);
  fi.lambda = static_cast<double>(lambda);
  fi.upsilon = static_cast<double>(upsilon);
  if (!std::isfinite(fi.gamma) || !std::isfinite(fi.lambda) || !std::isfinite(fi.upsilon)) {
    throw NumericalBreakdown("uhlmann_fidelity: non-finite determinant");
  }

  const Real sg = checked_sqrt(gamma, "Gamma", fi);
  const Real sl = checked_sqrt(lambda, "Lambda", fi);
  const Real outer = checked_sqrt((sg + sl) * (sg + sl) - upsilon, "outer term", fi);
  const Real denom = sg + sl - outer;
  if (!(denom > 0)) {
    throw NumericalBreakdown("uhlmann_fidelity: nonpositive denominator");
  }
  fi.fidelity = static_cast<double>(1 / denom);
  return fi;
}

FidelityIntermediates uhlmann_fidelity(const CovMat& v1, const CovMat& v2) {
  return uhlmann_fidelity(v1.as4(), v2.as4());
}

QfiResult qfi_two_mode_numeric(const SqueezeSpec& s, double f, bool use_exact_map) {
  const Mat4 v0 = family_covariance(s, f, use_exact_map);
  const double p0 = purity(MatX(v0));

  QfiResult result;
  if (std::abs(p0 - 1.0) <= kPhysicalityTolerance) {
    // Pure reference: Λ vanishes and both neighbours along the family are
    // sub-vacuum, so the limit is taken from the thermal interior.
    const double h = kRegularizationThermalStep;
    const QfiResult at_h = numeric_direct(s.with_n_th(s.n_th() + h), f, use_exact_map);
    const QfiResult at_2h = numeric_direct(s.with_n_th(s.n_th() + 2 * h), f, use_exact_map);
    result = at_h;
    result.value = 2.0 * at_h.value - at_2h.value;
    result.convergence_estimate =
        std::max(at_h.convergence_estimate, at_2h.convergence_estimate);
    result.status = (at_h.converged() && at_2h.converged()) ? QfiStatus::thermal_regularized
                                                            : QfiStatus::non_converged;
    result.warnings.emplace_back("pure reference state: QFI extrapolated from n_th -> 0+");
  } else {
    result = numeric_direct(s, f, use_exact_map);
  }

  if (result.value < 0.0) {
    if (result.value < -kPhysicalityTolerance) {
      result.warnings.emplace_back("numeric QFI negative beyond roundoff; clamped to 0");
    } else {
      result.warnings.emplace_back("numeric QFI slightly negative from roundoff; clamped to 0");
    }
    result.value = 0.0;
  }
  if (!in_perturbative_regime(f, s.n_th())) {
    result.warnings.emplace_back("(f, n_th) outside the perturbative regime");
  }
  return result;
}

QfiResult qfi_two_mode_analytic(const SqueezeSpec& s, double f) {
  const double sh = std::sinh(2.0 * s.r());
  const double ct = std::cos(s.theta());
  const double n = s.n_th();
  QfiResult result;
  result.method = QfiMethod::two_mode_analytic;
  result.value = 4.0 * (sh * sh * ct * ct * (1.0 + 4.0 * f * f - 4.0 * n) - f * f +
                        n * (std::sqrt(17.0 / 2.0) - 2.0));
  if (result.value < 0.0) {
    result.status = QfiStatus::leading_order_negative;
    result.warnings.emplace_back("leading-order QFI is negative: expansion invalid here");
  } else {
    result.status = QfiStatus::leading_order;
  }
  return result;
}

Mat4 cov_derivative_truncated(const SqueezeSpec& s, double f) {
  const double c = std::cosh(2.0 * s.r());
  const double sh = std::sinh(2.0 * s.r());
  const double th = std::tanh(2.0 * s.r());
  const double nu = 1.0 + 2.0 * s.n_th();
  const double st = std::sin(s.theta());
  const double ct = std::cos(s.theta());

  const double d_diag = c * nu * (2.0 * f + 2.0 * th * st);
  const double d_bz = -2.0 * f * sh * nu * ct;
  const double d_bx = 2.0 * c * nu + 2.0 * f * sh * st;

  Mat2 a = d_diag * Mat2::Identity();
  Mat2 b;
  b << d_bz, d_bx, d_bx, -d_bz;
  Mat4 out;
  out << a, b, b, a;
  return 0.5 * out;
}

double single_mode_qfi(const Mat2& sigma, const Mat2& dsigma) {
  const double det = sigma.determinant();
  if (!(det > 0.0) || !std::isfinite(det)) {
    throw InvalidState("single_mode_qfi: singular covariance");
  }
  const Mat2 x = sigma.inverse() * dsigma;
  const double trace_sq = (x * x).trace();
  const double p = 1.0 / (2.0 * std::sqrt(det));
  if (p >= 1.0 - kPhysicalityTolerance) {
    return 0.25 * trace_sq;
  }
  // ∂ ln Det σ = Tr(σ⁻¹σ′)
  const double dp = -0.5 * p * x.trace();
  return 0.5 * trace_sq / (1.0 + p * p) + 2.0 * dp * dp / (1.0 - p * p * p * p);
}

QfiResult qfi_single_mode(const SqueezeSpec& s, double f, Mode mode) {
  const Eigen::Index k = mode == Mode::minus ? 0 : 2;
  const Mat2 sigma = truncated_covariance(s, f).block<2, 2>(k, k);
  const Mat2 dsigma = cov_derivative_truncated(s, f).block<2, 2>(k, k);
  QfiResult result;
  result.method = QfiMethod::single_mode_formula;
  result.value = single_mode_qfi(sigma, dsigma);
  if (result.value < 0.0) {
    result.warnings.emplace_back("single-mode QFI negative from roundoff; clamped to 0");
    result.value = 0.0;
  }
  if (!in_perturbative_regime(f, s.n_th())) {
    result.warnings.emplace_back("(f, n_th) outside the perturbative regime");
  }
  return result;
}

QfiResult compute_qfi(QfiMethod method, const SqueezeSpec& s, double f) {
  switch (method) {
    case QfiMethod::single_mode_formula:
      return qfi_single_mode(s, f);
    case QfiMethod::two_mode_fidelity_numeric:
      return qfi_two_mode_numeric(s, f);
    case QfiMethod::two_mode_analytic:
      return qfi_two_mode_analytic(s, f);
  }
  throw InvalidArgument("compute_qfi: unknown method");
}

}  // namespace paramp

#include <doctest.h>

#include <cmath>

#include "paramp/constants.hpp"
#include "paramp/errors.hpp"
#include "paramp/qfi.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace paramp;
using paramp::testing::Gen;

namespace {

Mat4 thermal_product(double n1, double n2) {
  Eigen::Vector4d d(0.5 + n1, 0.5 + n1, 0.5 + n2, 0.5 + n2);
  return d.asDiagonal();
}

double monras_truncated(const SqueezeSpec& s, double f) {
  return paramp::testing::monras_qfi(truncated_covariance(s, f), cov_derivative_truncated(s, f));
}

}  // namespace

TEST_CASE("fidelity of a state with itself") {
  Gen g(21);
  for (int k = 0; k < 300; ++k) {
    const SqueezeSpec s = g.squeeze(2.0, 0.05);
    const double f = g.pump(0.05);
    const Mat4 v = truncated_covariance(s, f);
    if (!validate_physical(MatX(v)).passed) continue;
    CAPTURE(s.r());
    CAPTURE(f);
    CHECK(std::abs(uhlmann_fidelity(v, v).fidelity - 1.0) <= 1e-12);
    CHECK(std::abs(uhlmann_fidelity(initial_tms_thermal(s), initial_tms_thermal(s)).fidelity - 1.0) <= 1e-12);
  }
}

TEST_CASE("fidelity against Fock-space thermal overlaps") {
  const double n = 8e-3;
  const double vac_thermal = paramp::testing::fock_thermal_fidelity(0.0, n);
  CHECK(vac_thermal == doctest::Approx(1 / (1 + n)).epsilon(1e-14));
  const auto fv = uhlmann_fidelity(CovMat::vacuum(2), initial_tms_thermal({0, 0, n}));
  CHECK(std::abs(fv.fidelity - vac_thermal * vac_thermal) <= 1e-9);
  CHECK(fv.fidelity == doctest::Approx(0.98419).epsilon(1e-5));

  const double per_mode = paramp::testing::fock_thermal_fidelity(0.1, 0.2);
  CHECK(per_mode == doctest::Approx(0.985183).epsilon(1e-6));
  const auto ft = uhlmann_fidelity(thermal_product(0.1, 0.1), thermal_product(0.2, 0.2));
  CHECK(std::abs(ft.fidelity - per_mode * per_mode) <= 1e-9);
  CHECK(ft.fidelity == doctest::Approx(0.970588).epsilon(1e-6));

  Gen g(22);
  for (int k = 0; k < 100; ++k) {
    const double a1 = g.uniform(0, 2), a2 = g.uniform(0, 2), b1 = g.uniform(0, 2), b2 = g.uniform(0, 2);
    const double oracle = paramp::testing::fock_thermal_fidelity(a1, b1, 2000) *
                          paramp::testing::fock_thermal_fidelity(a2, b2, 2000);
    CHECK(std::abs(uhlmann_fidelity(thermal_product(a1, a2), thermal_product(b1, b2)).fidelity - oracle) <= 1e-9);
  }
}

TEST_CASE("fidelity against the pure-state overlap") {
  Gen g(23);
  for (int k = 0; k < 200; ++k) {
    const Mat4 pure = g.pure_state();
    const Mat4 mixed = g.mixed_state();
    const double oracle = paramp::testing::pure_overlap(pure, mixed);
    const double f = uhlmann_fidelity(pure, mixed).fidelity;
    CAPTURE(k);
    CHECK(f == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(f <= 1 + 1e-9);
    CHECK(f >= 0.0);
  }
}

TEST_CASE("fidelity is symmetric and bounded") {
  Gen g(24);
  for (int k = 0; k < 300; ++k) {
    const Mat4 a = g.mixed_state();
    const Mat4 b = g.mixed_state();
    const auto ab = uhlmann_fidelity(a, b);
    const auto ba = uhlmann_fidelity(b, a);
    CHECK(std::abs(ab.fidelity - ba.fidelity) <= 1e-12);
    CHECK(ab.fidelity >= 0.0);
    CHECK(ab.fidelity <= 1 + 1e-9);
    CHECK(std::isfinite(ab.gamma));
    CHECK(std::isfinite(ab.lambda));
    CHECK(std::isfinite(ab.upsilon));
  }
}

TEST_CASE("fidelity breakdown on unphysical input") {
  Mat4 sub = Mat4::Zero();
  sub.diagonal() << 0.1, 0.1, 0.6, 0.6;
  CHECK_THROWS_AS(uhlmann_fidelity(sub, Mat4(0.6 * Mat4::Identity())), NumericalBreakdown);
}

TEST_CASE("numeric two-mode QFI matches the closed-form Gaussian QFI") {
  const SqueezeSpec work(2, 0, 8e-3);
  const QfiResult q = qfi_two_mode_numeric(work, 0.02);
  CHECK(q.status == QfiStatus::ok);
  CHECK(q.steps_used.size() == kFidelitySteps.size());
  CHECK(q.convergence_estimate <= kConvergenceRelTol * q.value);
  CHECK(q.value == doctest::Approx(monras_truncated(work, 0.02)).epsilon(1e-5));
  CHECK(q.value == doctest::Approx(3031.64).epsilon(1e-5));

  const SqueezeSpec cold(1, 0, 0);
  const QfiResult q1 = qfi_two_mode_numeric(cold, 0.02);
  CHECK(q1.value == doctest::Approx(52.70).epsilon(0.10));

  Gen g(25);
  for (int k = 0; k < 60; ++k) {
    const SqueezeSpec s(g.uniform(0.2, 2.0), g.uniform(0, constants::kTwoPi), g.uniform(2e-3, 0.01));
    const double f = g.uniform(0.0, 0.04);
    const QfiResult r = qfi_two_mode_numeric(s, f);
    const double oracle = monras_truncated(s, f);
    CAPTURE(s.r());
    CAPTURE(s.theta());
    CAPTURE(s.n_th());
    CAPTURE(f);
    CHECK(r.converged());
    CHECK(r.value == doctest::Approx(oracle).epsilon(1e-4));
  }
}

TEST_CASE("numeric QFI at a pure reference state") {
  const QfiResult q = qfi_two_mode_numeric({0, 0, 0}, 0.0);
  CHECK(q.status == QfiStatus::thermal_regularized);
  CHECK(q.value == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("theta periodicity") {
  Gen g(26);
  for (int k = 0; k < 40; ++k) {
    const SqueezeSpec s(g.uniform(0.5, 2.0), g.uniform(0, constants::kPi), g.uniform(2e-3, 0.01));
    const SqueezeSpec shifted(s.r(), s.theta() + constants::kPi, s.n_th());
    const double f = g.uniform(0.005, 0.04);
    const double a = qfi_two_mode_numeric(s, f, true).value;
    const double b = qfi_two_mode_numeric(shifted, f, true).value;
    CHECK(std::abs(a - b) <= 1e-6 * a);
  }
  // The truncated family drops an n_th f² sinh 2r sinθ term, which breaks
  // the symmetry at a visible but small level.
  const double at = qfi_two_mode_numeric({2, 0.3, 8e-3}, 0.02).value;
  const double bt = qfi_two_mode_numeric({2, 0.3 + constants::kPi, 8e-3}, 0.02).value;
  CHECK(std::abs(at - bt) / at > 1e-4);
  CHECK(std::abs(at - bt) / at < 1e-3);
}

TEST_CASE("analytic leading-order QFI") {
  const QfiResult q = qfi_two_mode_analytic({2, 0, 8e-3}, 0.02);
  CHECK(q.value == doctest::Approx(2888.5).epsilon(0.1 / 2888.5));
  CHECK(q.status == QfiStatus::leading_order);

  Gen g(27);
  for (int k = 0; k < 20; ++k) {
    CHECK(std::abs(qfi_two_mode_analytic({g.uniform(0, 2), constants::kPi / 2, 0}, 0.0).value) <= 1e-12);
  }
  const QfiResult neg = qfi_two_mode_analytic({0, 0, 0}, 0.02);
  CHECK(neg.value == doctest::Approx(-1.6e-3).epsilon(1e-12));
  CHECK(neg.status == QfiStatus::leading_order_negative);
  CHECK_FALSE(neg.warnings.empty());
}

TEST_CASE("closed-form covariance derivative") {
  CHECK((cov_derivative_truncated({0, 0, 0}, 0.0) - coupling_matrix()).cwiseAbs().maxCoeff() == 0.0);

  const SqueezeSpec s(1, constants::kPi / 3, 5e-3);
  auto v = [&](double f) { return truncated_covariance(s, f); };
  const Mat4 fd = paramp::testing::central_difference(v, 0.02, 1e-6);
  CHECK((fd - cov_derivative_truncated(s, 0.02)).cwiseAbs().maxCoeff() <= 1e-8);

  const SqueezeSpec flat(1.3, 0, 7e-3);
  const Mat4 d = cov_derivative_truncated(flat, 0.03);
  CHECK(d(0, 0) == doctest::Approx(0.5 * std::cosh(2.6) * 1.014 * 2 * 0.03).epsilon(1e-14));
  CHECK(d(0, 1) == 0.0);

  Gen g(28);
  for (int k = 0; k < 200; ++k) {
    const SqueezeSpec p = g.squeeze();
    const double f = g.pump();
    auto w = [&](double x) { return truncated_covariance(p, x); };
    CHECK((paramp::testing::central_difference(w, f, 1e-6) - cov_derivative_truncated(p, f))
              .cwiseAbs()
              .maxCoeff() <= 1e-8);
  }
}

TEST_CASE("single-mode QFI formula") {
  // squeezed vacuum ½ diag(e^{2s}, e^{−2s}) with respect to s
  const double sq = 0.7;
  Mat2 sigma = Mat2::Zero();
  sigma.diagonal() << 0.5 * std::exp(2 * sq), 0.5 * std::exp(-2 * sq);
  Mat2 dsigma = Mat2::Zero();
  dsigma.diagonal() << std::exp(2 * sq), -std::exp(-2 * sq);
  CHECK(single_mode_qfi(sigma, dsigma) == doctest::Approx(2.0).epsilon(1e-12));

  Gen g(29);
  for (int k = 0; k < 300; ++k) {
    const Mat2 s = g.mixed_single_mode();
    Mat2 d;
    d << g.uniform(-1, 1), g.uniform(-1, 1), 0, g.uniform(-1, 1);
    d(1, 0) = d(0, 1);
    CHECK(single_mode_qfi(s, d) == doctest::Approx(paramp::testing::monras_qfi(s, d)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(single_mode_qfi(Mat2::Zero(), Mat2::Identity()), InvalidState);
}

TEST_CASE("single-mode QFI of the reduced state") {
  Gen g(30);
  for (int k = 0; k < 100; ++k) {
    const SqueezeSpec s(g.uniform(0.0, 2.0), g.uniform(0, constants::kTwoPi), g.uniform(1e-3, 0.01));
    const double f = g.uniform(0.0, 0.05);
    for (Mode m : {Mode::minus, Mode::plus}) {
      const Mat4 v = truncated_covariance(s, f);
      const Mat4 dv = cov_derivative_truncated(s, f);
      const int o = m == Mode::minus ? 0 : 2;
      const double oracle =
          paramp::testing::monras_qfi(v.block<2, 2>(o, o), dv.block<2, 2>(o, o));
      const QfiResult q = qfi_single_mode(s, f, m);
      CHECK(q.value >= -1e-9);
      CHECK(q.value == doctest::Approx(oracle).epsilon(1e-8));
    }
  }
}

TEST_CASE("single-mode QFI near the vacuum") {
  // The reduced block is thermal with n̄ = f²/2, whose QFI is
  // (∂n̄)²/(n̄(1 + n̄)) = 2/(1 + f²/2), not O(f²).
  for (double f : {1e-3, 0.01, 0.02, 0.04}) {
    const double h = qfi_single_mode({0, 0, 0}, f).value;
    CHECK(h == doctest::Approx(2 / (1 + f * f / 2)).epsilon(1e-9));
    const Mat4 v = truncated_covariance({0, 0, 0}, f);
    const Mat4 dv = cov_derivative_truncated({0, 0, 0}, f);
    CHECK(h == doctest::Approx(paramp::testing::monras_qfi(v.block<2, 2>(0, 0), dv.block<2, 2>(0, 0)))
                   .epsilon(1e-9));
  }
  // at f = 0 the state is pure and the derivative vanishes
  CHECK(qfi_single_mode({0, 0, 0}, 0.0).value == 0.0);
}

TEST_CASE("single-mode QFI over theta") {
  constexpr int kGrid = 64;
  std::vector<double> h(kGrid);
  for (int k = 0; k < kGrid; ++k) {
    h[k] = qfi_single_mode({2, constants::kTwoPi * k / kGrid, 8e-3}, 0.02).value;
  }
  const auto kmax = std::max_element(h.begin(), h.end()) - h.begin();
  CHECK((kmax == 16 || kmax == 48));
  const auto kmin = std::min_element(h.begin(), h.end()) - h.begin();
  CHECK((kmin == 0 || kmin == 32));

  // H(θ) = H(π − θ) as f → 0
  for (int k = 0; k < 16; ++k) {
    const double th = constants::kPi * k / 16;
    const double a = qfi_single_mode({1.5, th, 8e-3}, 1e-5).value;
    const double b = qfi_single_mode({1.5, constants::kPi - th, 8e-3}, 1e-5).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-3));
  }
}

TEST_CASE("QFI nonnegativity in regime") {
  Gen g(31);
  for (int k = 0; k < 100; ++k) {
    const SqueezeSpec s(g.uniform(0.0, 2.0), g.uniform(0, constants::kTwoPi), g.uniform(2e-3, 0.05));
    const double f = g.uniform(0.0, 0.05);
    CHECK(qfi_two_mode_numeric(s, f).value >= -1e-9);
    CHECK(qfi_single_mode(s, f).value >= -1e-9);
  }
}

TEST_CASE("method names") {
  for (QfiMethod m : {QfiMethod::single_mode_formula, QfiMethod::two_mode_fidelity_numeric,
                      QfiMethod::two_mode_analytic}) {
    CHECK(parse_qfi_method(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_qfi_method("exact"), InvalidArgument);
  const SqueezeSpec s(1.0, 0.2, 5e-3);
  CHECK(compute_qfi(QfiMethod::two_mode_analytic, s, 0.02).value == qfi_two_mode_analytic(s, 0.02).value);
  CHECK(compute_qfi(QfiMethod::single_mode_formula, s, 0.02).method == QfiMethod::single_mode_formula);
}

#include "paramp/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paramp/errors.hpp"

namespace paramp {
namespace {

void require_information(double qfi) {
  if (!(qfi > 0.0)) throw NoInformation("QFI must be positive for a Cramér–Rao bound");
}

double reduced_flux_quantum() { return constants::kFluxQuantum / constants::kTwoPi; }

double flux_cosine(double phi_ext) {
  return std::cos(constants::kPi * phi_ext / constants::kFluxQuantum);
}

}  // namespace

double cramer_rao(double qfi, std::uint64_t m) {
  require_information(qfi);
  if (m == 0) throw InvalidArgument("cramer_rao: m must be >= 1");
  return 1.0 / std::sqrt(static_cast<double>(m) * qfi);
}

double relative_error(double qfi, double f, std::uint64_t m) {
  if (!(f > 0.0)) throw InvalidArgument("relative_error: f must be positive");
  return cramer_rao(qfi, m) / f;
}

std::uint64_t measurements_for_error(double qfi, double f, double target_e) {
  require_information(qfi);
  if (!(f > 0.0) || !(target_e > 0.0)) {
    throw InvalidArgument("measurements_for_error: f and target_e must be positive");
  }
  const double real_m = 1.0 / (target_e * target_e * f * f * qfi);
  if (real_m >= static_cast<double>(std::numeric_limits<std::uint64_t>::max() / 2)) {
    throw DomainError("measurements_for_error: required M overflows");
  }
  auto m = static_cast<std::uint64_t>(std::max(1.0, std::ceil(real_m)));
  // The ceiling of a rounded quotient can be off by one either way.
  while (m > 1 && relative_error(qfi, f, m - 1) <= target_e) --m;
  while (relative_error(qfi, f, m) > target_e) ++m;
  return m;
}

EstimationReport make_report(double qfi, double f, std::uint64_t m) {
  EstimationReport r;
  r.qfi = qfi;
  r.f = f;
  r.m = m;
  r.delta_f = cramer_rao(qfi, m);
  r.relative_error = r.delta_f / f;
  return r;
}

double combine_relative_errors(double dv_over_v, double dw_over_w, double dl_over_l) {
  if (dv_over_v < 0.0 || dw_over_w < 0.0 || dl_over_l < 0.0) {
    throw InvalidArgument("combine_relative_errors: inputs must be nonnegative");
  }
  return std::sqrt(dv_over_v * dv_over_v + dw_over_w * dw_over_w + dl_over_l * dl_over_l);
}

FluxParams::FluxParams(double phi_ext, double i_c, double l_0)
    : phi_ext_(phi_ext), i_c_(i_c), l_0_(l_0) {
  if (!std::isfinite(phi_ext) || !std::isfinite(i_c) || !std::isfinite(l_0)) {
    throw InvalidArgument("FluxParams: non-finite parameter");
  }
  if (i_c <= 0.0 || l_0 <= 0.0) {
    throw InvalidArgument("FluxParams: i_c and l_0 must be positive");
  }
  if (std::abs(flux_cosine(phi_ext)) <= kFluxDivergenceGuard) {
    throw DomainError("FluxParams: phi_ext too close to phi_0/2, Josephson energy vanishes");
  }
}

double default_critical_current_times_inductance() {
  const double cosine = std::abs(std::cos(constants::kPi * kDefaultPhiExtOverPhi0));
  return reduced_flux_quantum() / (2.0 * kDefaultEffectiveLength * cosine);
}

FluxParams default_flux_params(double phi_ext_over_phi0) {
  const double i_c = default_critical_current_times_inductance() / kDefaultInductancePerLength;
  return {phi_ext_over_phi0 * constants::kFluxQuantum, i_c, kDefaultInductancePerLength};
}

double josephson_energy(const FluxParams& p) {
  return 2.0 * p.i_c() * reduced_flux_quantum() * std::abs(flux_cosine(p.phi_ext()));
}

double effective_length(const FluxParams& p) {
  const double phi = reduced_flux_quantum();
  return phi * phi / (josephson_energy(p) * p.l_0());
}

double flux_sensitivity(double phi_ext, double d_phi) {
  if (!std::isfinite(phi_ext) || !std::isfinite(d_phi)) {
    throw InvalidArgument("flux_sensitivity: non-finite input");
  }
  if (std::abs(flux_cosine(phi_ext)) <= kFluxDivergenceGuard) {
    throw DomainError("flux_sensitivity: phi_ext too close to phi_0/2, sensitivity diverges");
  }
  const double x = constants::kPi * phi_ext / constants::kFluxQuantum;
  return constants::kPi * std::tan(x) * d_phi / constants::kFluxQuantum;
}

}  // namespace paramp

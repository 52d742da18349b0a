#include "paramp/simulation.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <numbers>
#include <sstream>

#include "paramp/errors.hpp"
#include "paramp/parallel.hpp"
#include "paramp/planner.hpp"
#include "paramp/sweep.hpp"

namespace paramp {
namespace {

Mat4 outcome_covariance(const SqueezeSpec& s, double f) {
  return truncated_covariance(s, f) + 0.5 * Mat4::Identity();
}

}  // namespace

std::vector<Outcome> sample_heterodyne(const CovMat& v, std::size_t m, Rng& rng) {
  const Mat4 sigma = v.as4() + 0.5 * Mat4::Identity();
  const Eigen::LLT<Mat4> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw PhysicalityError("sample_heterodyne: V + I/2 is not positive definite");
  }
  const Mat4 lower = llt.matrixL();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Outcome> out;
  out.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    Outcome z;
    for (Eigen::Index i = 0; i < 4; ++i) z(i) = normal(rng);
    out.emplace_back(lower * z);
  }
  return out;
}

HeterodyneData HeterodyneData::from(std::span<const Outcome> outcomes) {
  HeterodyneData d;
  d.count = outcomes.size();
  for (const auto& x : outcomes) d.scatter.noalias() += x * x.transpose();
  return d;
}

double log_likelihood(const HeterodyneData& data, const SqueezeSpec& s, double f) {
  const Mat4 sigma = outcome_covariance(s, f);
  const Eigen::LLT<Mat4> llt(sigma);
  if (llt.info() != Eigen::Success) {
    std::ostringstream os;
    os << "log_likelihood: outcome covariance not positive definite at f=" << f;
    throw DomainError(os.str());
  }
  const Mat4 lower = llt.matrixL();
  const double log_det = 2.0 * lower.diagonal().array().log().sum();
  // Σ_k x_kᵀ Σ⁻¹ x_k = Tr(Σ⁻¹ S)
  const double quad = llt.solve(data.scatter).trace();
  const double n = static_cast<double>(data.count);
  return -0.5 * quad - 0.5 * n * (4.0 * std::log(2.0 * std::numbers::pi) + log_det);
}

double log_likelihood(std::span<const Outcome> outcomes, const SqueezeSpec& s, double f) {
  return log_likelihood(HeterodyneData::from(outcomes), s, f);
}

double heterodyne_fisher(const SqueezeSpec& s, double f) {
  const Mat4 sigma = outcome_covariance(s, f);
  const Mat4 x = sigma.ldlt().solve(cov_derivative_truncated(s, f));
  return 0.5 * (x * x).trace();
}

TrialOutcome mle_estimate(const HeterodyneData& data, const SqueezeSpec& s, Interval interval) {
  if (!(interval.hi > interval.lo)) {
    throw InvalidArgument("mle_estimate: interval requires lo < hi");
  }
  auto ll = [&](double f) { return log_likelihood(data, s, f); };
  const double f_hat = golden_section_maximize(ll, interval.lo, interval.hi, kMleTolerance);
  TrialOutcome out;
  out.f_hat = f_hat;
  out.log_likelihood_at_max = ll(f_hat);
  const double edge = 10.0 * kMleTolerance;
  out.converged = (f_hat - interval.lo) > edge && (interval.hi - f_hat) > edge;
  return out;
}

TrialOutcome mle_estimate(std::span<const Outcome> outcomes, const SqueezeSpec& s,
                          Interval interval) {
  return mle_estimate(HeterodyneData::from(outcomes), s, interval);
}

void SimConfig::validate() const {
  if (m == 0) throw InvalidArgument("SimConfig: m must be >= 1");
  if (trials == 0) throw InvalidArgument("SimConfig: trials must be >= 1");
  if (!(search.lo < f_true && f_true < search.hi)) {
    throw InvalidArgument("SimConfig: search interval must strictly contain f_true");
  }
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
  return base_seed ^ trial;
}

TrialOutcome run_trial(const SimConfig& c, std::uint64_t trial) {
  Rng rng(trial_seed(c.seed, trial));
  const CovMat v(truncated_covariance(c.s, c.f_true));
  const auto sample = sample_heterodyne(v, c.m, rng);
  return mle_estimate(sample, c.s, c.search);
}

std::vector<TrialOutcome> run_trials(const SimConfig& c, std::size_t workers) {
  c.validate();
  std::vector<TrialOutcome> out(c.trials);
  parallel_for(out.size(), workers, [&](std::size_t i) { out[i] = run_trial(c, i); });
  return out;
}

EstimatorSummary summarize(const SimConfig& c, std::span<const TrialOutcome> outcomes) {
  EstimatorSummary s;
  s.trials = outcomes.size();
  double sum = 0.0;
  std::size_t used = 0;
  for (const auto& o : outcomes) {
    if (!o.converged) {
      ++s.non_converged;
      continue;
    }
    sum += o.f_hat;
    ++used;
  }
  s.mean = used > 0 ? sum / static_cast<double>(used) : std::nan("");
  if (used > 1) {
    double ss = 0.0;
    for (const auto& o : outcomes) {
      if (o.converged) ss += (o.f_hat - s.mean) * (o.f_hat - s.mean);
    }
    s.std_dev = std::sqrt(ss / static_cast<double>(used - 1));
  }

  s.qfi = compute_qfi(c.bound_method, c.s, c.f_true).value;
  s.fisher_heterodyne = heterodyne_fisher(c.s, c.f_true);
  s.quantum_bound = cramer_rao(s.qfi, c.m);
  s.classical_bound = cramer_rao(s.fisher_heterodyne, c.m);
  if (s.std_dev) {
    s.std_over_quantum = *s.std_dev / s.quantum_bound;
    s.std_over_classical = *s.std_dev / s.classical_bound;
  }
  return s;
}

EstimatorSummary estimator_statistics(const SimConfig& c, std::size_t workers) {
  const auto outcomes = run_trials(c, workers);
  EstimatorSummary s = summarize(c, outcomes);
  if (static_cast<double>(s.non_converged) >
      kMaxNonConvergedFraction * static_cast<double>(s.trials)) {
    std::ostringstream os;
    os << "estimator_statistics: " << s.non_converged << " of " << s.trials
       << " trials did not converge";
    throw ConvergenceError(os.str());
  }
  return s;
}

}  // namespace paramp

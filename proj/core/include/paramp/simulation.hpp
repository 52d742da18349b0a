#pragma once

// Monte-Carlo check of the Cramér–Rao premise: M independent resonators, each
// measured once by heterodyne detection, with maximum-likelihood estimation
// of f.
//
// Heterodyne outcomes of a zero-mean Gaussian state with covariance V are
// zero-mean Gaussian with covariance V + ½·I.

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "paramp/gaussian.hpp"
#include "paramp/qfi.hpp"

namespace paramp {

using Outcome = Eigen::Vector4d;
using Rng = std::mt19937_64;

/// m draws from N(0, V + I/2) using the lower Cholesky factor. Throws
/// PhysicalityError if V + I/2 cannot be factorized.
std::vector<Outcome> sample_heterodyne(const CovMat& v, std::size_t m, Rng& rng);

/// Sufficient statistics of a heterodyne sample: count and Σ x xᵀ.
struct HeterodyneData {
  std::size_t count = 0;
  Mat4 scatter = Mat4::Zero();

  static HeterodyneData from(std::span<const Outcome> outcomes);
};

/// Σ_k log N(x_k; 0, Ṽ(f) + I/2) with Ṽ the truncated covariance. Throws
/// DomainError (carrying f) if the covariance is not positive definite.
double log_likelihood(const HeterodyneData& data, const SqueezeSpec& s, double f);
double log_likelihood(std::span<const Outcome> outcomes, const SqueezeSpec& s, double f);

/// Classical Fisher information of heterodyne detection with respect to f,
/// ½ Tr[(Σ⁻¹ ∂Σ)²] with Σ = Ṽ(f) + I/2.
double heterodyne_fisher(const SqueezeSpec& s, double f);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct TrialOutcome {
  double f_hat = 0.0;
  double log_likelihood_at_max = 0.0;
  bool converged = false;
};

inline constexpr double kMleTolerance = 1e-7;

/// Golden-section maximization of the log-likelihood on the interval.
/// converged = false when the maximizer sits at an endpoint.
TrialOutcome mle_estimate(const HeterodyneData& data, const SqueezeSpec& s, Interval interval);
TrialOutcome mle_estimate(std::span<const Outcome> outcomes, const SqueezeSpec& s,
                          Interval interval);

struct SimConfig {
  SqueezeSpec s{2.0, 0.0, 8e-3};
  double f_true = 0.02;
  std::uint64_t m = 1000;
  std::uint64_t trials = 200;
  std::uint64_t seed = 42;
  Interval search{0.0, 0.05};
  /// QFI used for the quantum bound.
  QfiMethod bound_method = QfiMethod::two_mode_analytic;

  /// Throws InvalidArgument for m = 0, trials = 0 or an interval that does
  /// not strictly contain f_true.
  void validate() const;
};

/// Seed of trial i: base seed XOR i.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial);

/// One trial: draw m outcomes at f_true with the trial's seed and run the MLE.
TrialOutcome run_trial(const SimConfig& c, std::uint64_t trial);

/// All trials, in trial order regardless of worker count.
std::vector<TrialOutcome> run_trials(const SimConfig& c, std::size_t workers = 0);

struct EstimatorSummary {
  std::uint64_t trials = 0;
  std::uint64_t non_converged = 0;
  double mean = 0.0;
  /// Sample standard deviation (n − 1); absent for a single trial.
  std::optional<double> std_dev;
  double qfi = 0.0;
  double fisher_heterodyne = 0.0;
  double quantum_bound = 0.0;
  double classical_bound = 0.0;
  std::optional<double> std_over_quantum;
  std::optional<double> std_over_classical;
};

inline constexpr double kMaxNonConvergedFraction = 0.05;

/// Statistics over converged trials plus the two bounds.
EstimatorSummary summarize(const SimConfig& c, std::span<const TrialOutcome> outcomes);

/// run_trials + summarize. Throws ConvergenceError if more than 5% of the
/// trials failed to converge.
EstimatorSummary estimator_statistics(const SimConfig& c, std::size_t workers = 0);

}  // namespace paramp

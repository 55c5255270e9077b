#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mobo {

struct GpHyperparameters {
  Eigen::VectorXd lengthscales;  // one per input dimension, all > 0
  double signal_variance = 1.0;
  double noise_variance = 1e-6;
  double constant_mean = 0.0;
};

/// Matern 5/2 covariance with per-dimension lengthscales.
double matern52(const Eigen::Ref<const Eigen::VectorXd>& a,
                const Eigen::Ref<const Eigen::VectorXd>& b,
                const GpHyperparameters& hyp);

/// A factorized GP regressor. chol_lower is the Cholesky factor of the
/// kernel matrix plus noise (plus whatever jitter the factorization
/// needed); alpha solves (K + noise I) alpha = targets - mean.
struct GpModel {
  GpHyperparameters hyp;
  Eigen::MatrixXd inputs;   // n x d
  Eigen::VectorXd targets;  // n
  Eigen::MatrixXd chol_lower;
  Eigen::VectorXd alpha;
  double jitter = 0.0;
  double log_marginal = 0.0;
};

class GpFitError : public std::runtime_error {
 public:
  GpFitError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// Builds a model at fixed hyperparameters. If the Cholesky factorization
/// fails, diagonal jitter escalates by decades from 1e-6 to 1e-2; if it
/// still fails, throws GpFitError carrying a condition number estimate of
/// the kernel matrix.
GpModel make_gp(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                const GpHyperparameters& hyp);

/// Log marginal likelihood of the targets at the given hyperparameters,
/// including the constant mean.
double log_marginal_likelihood(const Eigen::MatrixXd& inputs,
                               const Eigen::VectorXd& targets,
                               const GpHyperparameters& hyp);

struct GpFitOptions {
  int restarts = 5;
  int search_iterations = 40;
  double initial_step = 0.25;
  double step_tolerance = 1e-3;
  std::uint64_t seed = 0;
  double lengthscale_min = 1e-2;
  double lengthscale_max = 10.0;
  double signal_variance_min = 1e-3;
  double signal_variance_max = 1e3;
  double noise_variance_min = 1e-6;
  double noise_variance_max = 1.0;
};

/// Maximizes the log marginal likelihood over log-scaled hyperparameters
/// with multi-start pattern search. The constant mean has a closed-form
/// optimum given the other hyperparameters and is profiled out rather than
/// searched. Deterministic for a given seed.
GpModel fit_gp(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
               const GpFitOptions& options = {});

struct PosteriorPrediction {
  double mean = 0.0;
  double variance = 0.0;  // latent function variance, clamped at 0
};

PosteriorPrediction predict(const GpModel& model,
                            const Eigen::Ref<const Eigen::VectorXd>& x);

}  // namespace mobo

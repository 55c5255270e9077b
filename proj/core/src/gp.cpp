#include "mobo/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "mobo/rng.hpp"
#include "mobo/search.hpp"

namespace mobo {
namespace {

constexpr double kJitterStart = 1e-6;
constexpr double kJitterMax = 1e-2;

void check_training_data(const Eigen::MatrixXd& inputs,
                         const Eigen::VectorXd& targets,
                         const GpHyperparameters& hyp) {
  if (inputs.rows() == 0 || inputs.rows() != targets.size()) {
    throw std::invalid_argument("gp: inputs and targets must agree and be non-empty");
  }
  if (hyp.lengthscales.size() != inputs.cols()) {
    throw std::invalid_argument("gp: one lengthscale per input dimension");
  }
  if ((hyp.lengthscales.array() <= 0.0).any() || hyp.signal_variance <= 0.0 ||
      hyp.noise_variance < 0.0) {
    throw std::invalid_argument("gp: hyperparameters must be positive");
  }
  if (!inputs.allFinite() || !targets.allFinite()) {
    throw std::invalid_argument("gp: non-finite training data");
  }
}

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& inputs,
                              const GpHyperparameters& hyp) {
  const Eigen::Index n = inputs.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = hyp.signal_variance;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = matern52(inputs.row(i), inputs.row(j), hyp);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

double condition_estimate(const Eigen::MatrixXd& k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      k, Eigen::EigenvaluesOnly);
  const double hi = solver.eigenvalues().maxCoeff();
  const double lo = std::max(solver.eigenvalues().minCoeff(),
                             std::numeric_limits<double>::min());
  return hi / lo;
}

struct Factorized {
  Eigen::MatrixXd chol_lower;
  double jitter = 0.0;
  bool ok = false;
};

Factorized factorize(const Eigen::MatrixXd& k, double noise_variance) {
  const Eigen::Index n = k.rows();
  Factorized out;
  double jitter = 0.0;
  while (true) {
    Eigen::MatrixXd shifted = k;
    shifted.diagonal().array() += noise_variance + jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) {
      out.chol_lower = llt.matrixL();
      out.jitter = jitter;
      out.ok = true;
      return out;
    }
    if (jitter >= kJitterMax) return out;
    jitter = (jitter == 0.0) ? kJitterStart : jitter * 10.0;
  }
  (void)n;
}

}  // namespace

double matern52(const Eigen::Ref<const Eigen::VectorXd>& a,
                const Eigen::Ref<const Eigen::VectorXd>& b,
                const GpHyperparameters& hyp) {
  if (a.size() != b.size() || a.size() != hyp.lengthscales.size()) {
    throw std::invalid_argument("matern52: input dimension mismatch");
  }
  if (hyp.signal_variance <= 0.0 ||
      (hyp.lengthscales.array() <= 0.0).any()) {
    throw std::invalid_argument(
        "matern52: lengthscales and signal variance must be positive");
  }
  double r2 = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double scaled = (a[i] - b[i]) / hyp.lengthscales[i];
    r2 += scaled * scaled;
  }
  const double s = std::sqrt(5.0 * r2);
  return hyp.signal_variance * (1.0 + s + 5.0 * r2 / 3.0) * std::exp(-s);
}

GpModel make_gp(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
                const GpHyperparameters& hyp) {
  check_training_data(inputs, targets, hyp);
  const Eigen::Index n = inputs.rows();
  const Eigen::MatrixXd k = kernel_matrix(inputs, hyp);
  Factorized fac = factorize(k, hyp.noise_variance);
  if (!fac.ok) {
    throw GpFitError("gp: Cholesky factorization failed at maximum jitter",
                     condition_estimate(k));
  }

  GpModel model;
  model.hyp = hyp;
  model.inputs = inputs;
  model.targets = targets;
  model.chol_lower = std::move(fac.chol_lower);
  model.jitter = fac.jitter;

  const Eigen::VectorXd centered =
      targets.array() - hyp.constant_mean;
  const Eigen::VectorXd tmp =
      model.chol_lower.triangularView<Eigen::Lower>().solve(centered);
  model.alpha = model.chol_lower.transpose()
                    .triangularView<Eigen::Upper>()
                    .solve(tmp);

  const double log_det = model.chol_lower.diagonal().array().log().sum();
  model.log_marginal = -0.5 * centered.dot(model.alpha) - log_det -
                       0.5 * static_cast<double>(n) *
                           std::log(2.0 * std::numbers::pi);
  return model;
}

double log_marginal_likelihood(const Eigen::MatrixXd& inputs,
                               const Eigen::VectorXd& targets,
                               const GpHyperparameters& hyp) {
  return make_gp(inputs, targets, hyp).log_marginal;
}

GpModel fit_gp(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
               const GpFitOptions& options) {
  if (inputs.rows() < 2) {
    throw std::invalid_argument("fit_gp: needs at least 2 observations");
  }
  if (options.restarts < 1) {
    throw std::invalid_argument("fit_gp: needs at least 1 restart");
  }
  const Eigen::Index d = inputs.cols();

  // Search space: log lengthscale per dimension, log signal variance,
  // log noise variance.
  std::vector<double> lower(d + 2), upper(d + 2);
  for (Eigen::Index i = 0; i < d; ++i) {
    lower[i] = std::log(options.lengthscale_min);
    upper[i] = std::log(options.lengthscale_max);
  }
  lower[d] = std::log(options.signal_variance_min);
  upper[d] = std::log(options.signal_variance_max);
  lower[d + 1] = std::log(options.noise_variance_min);
  upper[d + 1] = std::log(options.noise_variance_max);

  // exp(log(bound)) can overshoot the raw bound by an ulp, so clamp.
  const auto decode = [&](const std::vector<double>& z) {
    GpHyperparameters hyp;
    hyp.lengthscales.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      hyp.lengthscales[i] = std::clamp(std::exp(z[i]), options.lengthscale_min,
                                       options.lengthscale_max);
    }
    hyp.signal_variance = std::clamp(std::exp(z[d]), options.signal_variance_min,
                                     options.signal_variance_max);
    hyp.noise_variance = std::clamp(std::exp(z[d + 1]), options.noise_variance_min,
                                    options.noise_variance_max);
    return hyp;
  };

  // Closed-form optimum of the constant mean given everything else:
  // mean = (1^T K^-1 y) / (1^T K^-1 1).
  const auto profiled_lml = [&](const std::vector<double>& z) -> double {
    GpHyperparameters hyp = decode(z);
    const Eigen::MatrixXd k = kernel_matrix(inputs, hyp);
    Factorized fac = factorize(k, hyp.noise_variance);
    if (!fac.ok) return -std::numeric_limits<double>::infinity();
    const auto lw = fac.chol_lower.triangularView<Eigen::Lower>();
    const Eigen::VectorXd lin_y = lw.solve(targets);
    const Eigen::VectorXd lin_1 = lw.solve(Eigen::VectorXd::Ones(inputs.rows()));
    const double denom = lin_1.squaredNorm();
    const double mean = (denom > 0.0) ? lin_1.dot(lin_y) / denom : 0.0;
    const Eigen::VectorXd resid = lw.solve(
        Eigen::VectorXd(targets.array() - mean));
    const double log_det = fac.chol_lower.diagonal().array().log().sum();
    return -0.5 * resid.squaredNorm() - log_det -
           0.5 * static_cast<double>(inputs.rows()) *
               std::log(2.0 * std::numbers::pi);
  };

  const double target_variance =
      (targets.array() - targets.mean()).square().sum() /
      static_cast<double>(targets.size());

  // Moderate heuristic start: mid-range smoothness, data-scaled variances.
  // Inputs are expected to live in the unit cube.
  std::vector<double> heuristic_z(d + 2);
  for (Eigen::Index i = 0; i < d; ++i) heuristic_z[i] = std::log(0.3);
  heuristic_z[d] = std::log(std::clamp(std::max(target_variance, 1e-12),
                                       options.signal_variance_min,
                                       options.signal_variance_max));
  heuristic_z[d + 1] = std::log(std::clamp(1e-4, options.noise_variance_min,
                                           options.noise_variance_max));

  std::vector<double> best_z = heuristic_z;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < options.restarts; ++s) {
    std::vector<double> z0 = heuristic_z;
    if (s > 0) {
      Rng rng(derive_seed(options.seed, kStreamGpFit,
                          static_cast<std::uint64_t>(s)));
      for (std::size_t i = 0; i < z0.size(); ++i) {
        z0[i] = rng.uniform(lower[i], upper[i]);
      }
    }
    PatternSearchResult found = pattern_search_maximize(
        profiled_lml, lower, upper, z0, options.initial_step,
        static_cast<std::size_t>(options.search_iterations),
        options.step_tolerance);
    if (found.value > best_value) {
      best_value = found.value;
      best_z = found.x;
    }
  }
  if (!std::isfinite(best_value)) {
    throw GpFitError("fit_gp: no hyperparameter candidate factorized",
                     condition_estimate(kernel_matrix(inputs, decode(best_z))));
  }

  GpHyperparameters hyp = decode(best_z);
  {
    const Eigen::MatrixXd k = kernel_matrix(inputs, hyp);
    Factorized fac = factorize(k, hyp.noise_variance);
    const auto lw = fac.chol_lower.triangularView<Eigen::Lower>();
    const Eigen::VectorXd lin_y = lw.solve(targets);
    const Eigen::VectorXd lin_1 = lw.solve(Eigen::VectorXd::Ones(inputs.rows()));
    hyp.constant_mean = lin_1.dot(lin_y) / lin_1.squaredNorm();
  }
  return make_gp(inputs, targets, hyp);
}

PosteriorPrediction predict(const GpModel& model,
                            const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != model.inputs.cols()) {
    throw std::invalid_argument("predict: query dimension mismatch");
  }
  const Eigen::Index n = model.inputs.rows();
  Eigen::VectorXd kstar(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    kstar[i] = matern52(x, model.inputs.row(i), model.hyp);
  }
  PosteriorPrediction out;
  out.mean = model.hyp.constant_mean + kstar.dot(model.alpha);
  const Eigen::VectorXd v =
      model.chol_lower.triangularView<Eigen::Lower>().solve(kstar);
  out.variance = std::max(0.0, model.hyp.signal_variance - v.squaredNorm());
  return out;
}

}  // namespace mobo

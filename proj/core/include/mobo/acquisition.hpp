#pragma once

#include <cstdint>
#include <vector>

#include "mobo/gp.hpp"
#include "mobo/pareto.hpp"

namespace mobo {

/// Closed-form expected improvement of a normal variable over `best`,
/// for maximization. stddev = 0 degrades to max(0, mean - best).
double expected_improvement(double mean, double stddev, double best);

/// EI of a GP posterior at x against the incumbent best target.
double expected_improvement(const GpModel& model,
                            const Eigen::Ref<const Eigen::VectorXd>& x,
                            double best);

/// Everything the acquisition needs about the current optimizer state:
/// one independent GP per objective (fitted on identically normalized
/// inputs), the current front and the reference point, both in the same
/// standardized canonical objective space as the GP targets.
struct AcquisitionContext {
  std::vector<GpModel> models;
  std::vector<ObjectiveVector> front;
  ObjectiveVector reference;
  std::uint64_t mc_samples = 2048;
  std::uint64_t seed = 0;
};

/// Exact bi-objective expected hypervolume improvement, integrating the
/// independent posteriors over the non-dominated region in closed form.
/// Throws std::invalid_argument unless there are exactly 2 objectives.
double ehvi_exact_2d(const AcquisitionContext& ctx,
                     const Eigen::Ref<const Eigen::VectorXd>& x);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo EHVI for any number of objectives. Posterior samples are
/// counter-seeded, so the estimate depends only on (ctx.seed,
/// ctx.mc_samples), not on call order; reusing one seed across candidate
/// points yields common random numbers for stable comparisons.
McEstimate ehvi_mc(const AcquisitionContext& ctx,
                   const Eigen::Ref<const Eigen::VectorXd>& x);

struct ProposalBudget {
  std::size_t scan_points = 512;
  std::size_t restarts = 4;
  std::size_t refine_iterations = 40;
};

struct Proposal {
  std::vector<double> x;  // in the unit input cube
  double acquisition_value = 0.0;
  bool used_monte_carlo = false;
  // Set when the acquisition was flat zero everywhere scanned; x is then
  // the scanned point with the largest total posterior variance.
  bool exploration_fallback = false;
};

/// Maximizes EHVI over the unit cube: a shifted Sobol scan followed by
/// pattern-search refinement from the best scan points. Exact EHVI drives
/// the 2-objective case, Monte Carlo with common random numbers otherwise.
/// Deterministic for a given context seed.
Proposal propose_next(const AcquisitionContext& ctx,
                      const ProposalBudget& budget);

}  // namespace mobo

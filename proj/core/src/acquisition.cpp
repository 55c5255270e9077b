#include "mobo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "mobo/rng.hpp"
#include "mobo/search.hpp"

namespace mobo {
namespace {

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double z) {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

// E[(Y - b)+] for Y ~ N(mean, stddev^2): the one-sided partial expectation
// every closed-form acquisition below is assembled from.
double partial_expectation(double mean, double stddev, double b) {
  if (stddev == 0.0) return std::max(0.0, mean - b);
  const double d = (mean - b) / stddev;
  return (mean - b) * normal_cdf(d) + stddev * normal_pdf(d);
}

void check_context(const AcquisitionContext& ctx) {
  if (ctx.models.size() < 2) {
    throw std::invalid_argument("acquisition: needs at least 2 objectives");
  }
  if (ctx.reference.size() != ctx.models.size()) {
    throw std::invalid_argument(
        "acquisition: reference dimension must match the model count");
  }
  for (const auto& model : ctx.models) {
    if (model.inputs.cols() != ctx.models.front().inputs.cols()) {
      throw std::invalid_argument(
          "acquisition: models must share one input space");
    }
  }
}

// Front points that fail to strictly dominate the reference cannot clip
// any part of the improvement region above it, so they are dropped before
// the staircase walk.
std::vector<ObjectiveVector> usable_front(
    const std::vector<ObjectiveVector>& front, const ObjectiveVector& r) {
  std::vector<ObjectiveVector> out;
  for (const auto& p : front) {
    if (p.size() != r.size()) {
      throw std::invalid_argument("acquisition: front point dimension mismatch");
    }
    bool strict = true;
    for (std::size_t j = 0; j < r.size() && strict; ++j) strict = p[j] > r[j];
    if (strict) out.push_back(p);
  }
  return out;
}

struct Posterior {
  double mean = 0.0;
  double stddev = 0.0;
};

std::vector<Posterior> posteriors_at(const AcquisitionContext& ctx,
                                     const Eigen::Ref<const Eigen::VectorXd>& x) {
  std::vector<Posterior> out(ctx.models.size());
  for (std::size_t j = 0; j < ctx.models.size(); ++j) {
    const PosteriorPrediction p = predict(ctx.models[j], x);
    out[j] = {p.mean, std::sqrt(p.variance)};
  }
  return out;
}

}  // namespace

double expected_improvement(double mean, double stddev, double best) {
  if (stddev < 0.0) {
    throw std::invalid_argument("expected_improvement: negative stddev");
  }
  return partial_expectation(mean, stddev, best);
}

double expected_improvement(const GpModel& model,
                            const Eigen::Ref<const Eigen::VectorXd>& x,
                            double best) {
  const PosteriorPrediction p = predict(model, x);
  return partial_expectation(p.mean, std::sqrt(p.variance), best);
}

double ehvi_exact_2d(const AcquisitionContext& ctx,
                     const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_context(ctx);
  if (ctx.models.size() != 2) {
    throw std::invalid_argument("ehvi_exact_2d: exactly 2 objectives required");
  }
  const auto post = posteriors_at(ctx, x);
  const auto stair = staircase_2d(usable_front(ctx.front, ctx.reference));
  const double r1 = ctx.reference[0];
  const double r2 = ctx.reference[1];

  // With independent posteriors the expected improvement integral
  // factorizes per vertical strip of the non-dominated region:
  //   EHVI = sum_i [Psi1(left_i) - Psi1(right_i)] * Psi2(bottom_i)
  // where Psi is the partial expectation above and the strips are walked
  // right to left exactly as in hvi_point_2d.
  double total = 0.0;
  double psi1_right = 0.0;  // Psi1 at the right edge; 0 at +infinity
  double bottom = r2;
  for (std::size_t i = 0; i <= stair.size(); ++i) {
    const double left = (i < stair.size()) ? stair[i][0] : r1;
    const double psi1_left =
        partial_expectation(post[0].mean, post[0].stddev, left);
    const double width = psi1_left - psi1_right;
    if (width > 0.0) {
      total +=
          width * partial_expectation(post[1].mean, post[1].stddev, bottom);
    }
    if (i < stair.size()) {
      psi1_right = psi1_left;
      bottom = stair[i][1];
    }
  }
  return total;
}

McEstimate ehvi_mc(const AcquisitionContext& ctx,
                   const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_context(ctx);
  if (ctx.mc_samples < 2) {
    throw std::invalid_argument("ehvi_mc: needs at least 2 samples");
  }
  const std::size_t m = ctx.models.size();
  const auto post = posteriors_at(ctx, x);
  const auto front = usable_front(ctx.front, ctx.reference);
  const auto stair = (m == 2) ? staircase_2d(front)
                              : std::vector<std::array<double, 2>>{};

  constexpr std::uint64_t kInnerSamples = 256;

  double sum = 0.0;
  double sum_sq = 0.0;
  ObjectiveVector y(m);
  for (std::uint64_t i = 0; i < ctx.mc_samples; ++i) {
    const std::uint64_t sample_seed = derive_seed(ctx.seed, kStreamEhviMc, i);
    Rng rng(sample_seed);
    for (std::size_t j = 0; j < m; ++j) {
      y[j] = post[j].mean + post[j].stddev * rng.normal();
    }

    double improvement = 0.0;
    if (m == 2) {
      improvement = hvi_point_2d(y[0], y[1], stair, ctx.reference[0],
                                 ctx.reference[1]);
    } else if (m == 3) {
      improvement = hypervolume_improvement({y}, front, ctx.reference);
    } else {
      // The region a single sample adds is the box (reference, y] minus
      // what the front already dominates; estimate that fraction by
      // uniform sampling inside the box.
      bool above = true;
      for (std::size_t j = 0; j < m && above; ++j) {
        above = y[j] > ctx.reference[j];
      }
      if (above) {
        double box = 1.0;
        for (std::size_t j = 0; j < m; ++j) box *= y[j] - ctx.reference[j];
        Rng inner(derive_seed(sample_seed, kStreamHypervolumeMc, 0));
        std::uint64_t uncovered = 0;
        ObjectiveVector u(m);
        for (std::uint64_t k = 0; k < kInnerSamples; ++k) {
          for (std::size_t j = 0; j < m; ++j) {
            u[j] = ctx.reference[j] +
                   inner.uniform() * (y[j] - ctx.reference[j]);
          }
          bool covered = false;
          for (const auto& p : front) {
            bool all = true;
            for (std::size_t j = 0; j < m && all; ++j) all = p[j] >= u[j];
            if (all) {
              covered = true;
              break;
            }
          }
          if (!covered) ++uncovered;
        }
        improvement = box * static_cast<double>(uncovered) /
                      static_cast<double>(kInnerSamples);
      }
    }
    sum += improvement;
    sum_sq += improvement * improvement;
  }

  const double n = static_cast<double>(ctx.mc_samples);
  McEstimate est;
  est.value = sum / n;
  const double variance =
      std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
  est.std_error = std::sqrt(variance / n);
  return est;
}

Proposal propose_next(const AcquisitionContext& ctx,
                      const ProposalBudget& budget) {
  check_context(ctx);
  if (budget.scan_points == 0 || budget.restarts == 0) {
    throw std::invalid_argument("propose_next: empty search budget");
  }
  const std::size_t d = static_cast<std::size_t>(ctx.models[0].inputs.cols());
  const bool exact = ctx.models.size() == 2;

  const auto value_at = [&](const std::vector<double>& x) -> double {
    const Eigen::Map<const Eigen::VectorXd> v(x.data(),
                                              static_cast<Eigen::Index>(d));
    return exact ? ehvi_exact_2d(ctx, v) : ehvi_mc(ctx, v).value;
  };

  // Shifted Sobol scan of the unit cube.
  Rng shift_rng(derive_seed(ctx.seed, kStreamProposal, 0));
  std::vector<double> shift(d);
  for (auto& s : shift) s = shift_rng.uniform();
  auto scan = sobol_points(budget.scan_points, d, 1);
  for (auto& p : scan) {
    for (std::size_t j = 0; j < d; ++j) {
      p[j] += shift[j];
      p[j] -= std::floor(p[j]);
    }
  }

  std::vector<double> scan_values(scan.size());
  for (std::size_t i = 0; i < scan.size(); ++i) {
    scan_values[i] = value_at(scan[i]);
  }

  std::vector<std::size_t> order(scan.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scan_values[a] != scan_values[b]) {
      return scan_values[a] > scan_values[b];
    }
    return a < b;
  });

  Proposal proposal;
  proposal.used_monte_carlo = !exact;

  if (scan_values[order[0]] <= 0.0) {
    // Nothing in the scan improves the front. Fall back to the scanned
    // point with the widest total posterior, purely for exploration.
    double best_spread = -1.0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < scan.size(); ++i) {
      const Eigen::Map<const Eigen::VectorXd> v(
          scan[i].data(), static_cast<Eigen::Index>(d));
      double spread = 0.0;
      for (const auto& model : ctx.models) spread += predict(model, v).variance;
      if (spread > best_spread) {
        best_spread = spread;
        best_idx = i;
      }
    }
    proposal.x = scan[best_idx];
    proposal.acquisition_value = 0.0;
    proposal.exploration_fallback = true;
    return proposal;
  }

  const std::vector<double> lower(d, 0.0);
  const std::vector<double> upper(d, 1.0);
  proposal.x = scan[order[0]];
  proposal.acquisition_value = scan_values[order[0]];
  const std::size_t n_starts = std::min(budget.restarts, scan.size());
  for (std::size_t s = 0; s < n_starts; ++s) {
    if (scan_values[order[s]] <= 0.0) break;
    const PatternSearchResult refined = pattern_search_maximize(
        value_at, lower, upper, scan[order[s]], 0.1,
        budget.refine_iterations, 1e-4);
    if (refined.value > proposal.acquisition_value) {
      proposal.acquisition_value = refined.value;
      proposal.x = refined.x;
    }
  }
  return proposal;
}

}  // namespace mobo

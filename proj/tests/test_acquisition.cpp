#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

#include "mobo/acquisition.hpp"
#include "mobo/gp.hpp"
#include "mobo/pareto.hpp"
#include "mobo/rng.hpp"
#include "oracles.hpp"

namespace {

// A model whose posterior at any query in the unit cube is exactly
// N(mean, variance): the single training point sits so far away that the
// cross-covariance underflows to zero.
mobo::GpModel remote_model(double mean, double variance) {
  Eigen::MatrixXd inputs(1, 1);
  inputs << 1000.0;
  Eigen::VectorXd targets(1);
  targets << mean;
  mobo::GpHyperparameters hyp;
  hyp.lengthscales = Eigen::VectorXd::Constant(1, 0.5);
  hyp.signal_variance = std::max(variance, 1e-30);
  hyp.noise_variance = 1e-12;
  hyp.constant_mean = mean;
  return mobo::make_gp(inputs, targets, hyp);
}

mobo::AcquisitionContext gaussian_context(
    double mean1, double var1, double mean2, double var2,
    std::vector<mobo::ObjectiveVector> front, mobo::ObjectiveVector reference,
    std::uint64_t seed) {
  mobo::AcquisitionContext ctx;
  ctx.models.push_back(remote_model(mean1, var1));
  ctx.models.push_back(remote_model(mean2, var2));
  ctx.front = std::move(front);
  ctx.reference = std::move(reference);
  ctx.mc_samples = 1 << 16;
  ctx.seed = seed;
  return ctx;
}

const Eigen::VectorXd kQuery = Eigen::VectorXd::Constant(1, 0.5);

// Real fitted models over a 1-D input for the proposal tests.
mobo::AcquisitionContext fitted_context(std::uint64_t seed) {
  Eigen::MatrixXd inputs(5, 1);
  inputs << 0.05, 0.3, 0.5, 0.7, 0.95;
  Eigen::VectorXd t1(5), t2(5);
  t1 << -1.2, -0.4, 0.1, 0.8, 1.3;
  t2 << 1.1, 0.7, 0.2, -0.5, -1.2;
  mobo::GpHyperparameters hyp;
  hyp.lengthscales = Eigen::VectorXd::Constant(1, 0.3);
  hyp.signal_variance = 1.0;
  hyp.noise_variance = 1e-4;

  mobo::AcquisitionContext ctx;
  ctx.models.push_back(mobo::make_gp(inputs, t1, hyp));
  ctx.models.push_back(mobo::make_gp(inputs, t2, hyp));
  ctx.front = {{-1.2, 1.1}, {0.1, 0.2}, {1.3, -1.2}};
  ctx.reference = {-2.0, -2.0};
  ctx.mc_samples = 4096;
  ctx.seed = seed;
  return ctx;
}

}  // namespace

TEST_CASE("expected improvement closed form") {
  CHECK(mobo::expected_improvement(0.0, 0.0, 1.0) == 0.0);
  CHECK(mobo::expected_improvement(2.0, 0.0, 1.0) == 1.0);
  CHECK(mobo::expected_improvement(0.0, 1.0, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi))
            .epsilon(1e-12));
  CHECK_THROWS_AS((void)mobo::expected_improvement(0.0, -1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("expected improvement matches Gaussian quadrature") {
  mobo::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const double mean = rng.uniform(-2.0, 2.0);
    const double stddev = rng.uniform(0.05, 2.0);
    const double best = rng.uniform(-2.0, 2.0);
    const double closed = mobo::expected_improvement(mean, stddev, best);
    const double numeric =
        oracle::expected_excess_quadrature(mean, stddev, best);
    CHECK(closed == doctest::Approx(numeric).epsilon(1e-6));
    CHECK(closed >= 0.0);
  }
}

TEST_CASE("model-based expected improvement equals the scalar form") {
  const auto model = remote_model(0.4, 0.09);
  const double via_model = mobo::expected_improvement(model, kQuery, 0.1);
  const double via_scalar = mobo::expected_improvement(0.4, 0.3, 0.1);
  CHECK(via_model == doctest::Approx(via_scalar).epsilon(1e-12));
}

TEST_CASE("ehvi of a dominated point mass is negligible") {
  const auto ctx = gaussian_context(0.5, 0.0, 0.5, 0.0,
                                    {{1.0, 1.0}}, {0.0, 0.0}, 1);
  CHECK(mobo::ehvi_exact_2d(ctx, kQuery) <= 1e-12);
}

TEST_CASE("ehvi of a non-dominated point mass is its improvement") {
  const std::vector<mobo::ObjectiveVector> front = {{1, 3}, {2, 2}, {3, 1}};
  const auto ctx = gaussian_context(4.0, 0.0, 4.0, 0.0, front, {0, 0}, 1);
  CHECK(mobo::ehvi_exact_2d(ctx, kQuery) ==
        doctest::Approx(10.0).epsilon(1e-9));

  const auto partial = gaussian_context(2.5, 0.0, 1.5, 0.0, front, {0, 0}, 1);
  const double expected =
      mobo::hypervolume_improvement({{2.5, 1.5}}, front, {0, 0});
  CHECK(mobo::ehvi_exact_2d(partial, kQuery) ==
        doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("ehvi with an empty usable front factorizes") {
  // Every front point fails to dominate the reference, so EHVI is the
  // product of the two one-sided partial expectations.
  const auto ctx = gaussian_context(0.3, 0.25, -0.2, 0.49,
                                    {{-5.0, 7.0}}, {0.0, 0.0}, 1);
  const double product =
      oracle::expected_excess_quadrature(0.3, 0.5, 0.0) *
      oracle::expected_excess_quadrature(-0.2, 0.7, 0.0);
  CHECK(mobo::ehvi_exact_2d(ctx, kQuery) ==
        doctest::Approx(product).epsilon(1e-5));
}

TEST_CASE("exact ehvi agrees with the Monte Carlo estimator") {
  mobo::Rng rng(32);
  int distinguishable = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t front_size = 1 + rng.next_u64() % 5;
    std::vector<mobo::ObjectiveVector> points;
    for (std::size_t i = 0; i < front_size; ++i) {
      points.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    }
    const auto ctx = gaussian_context(
        rng.uniform(-1.0, 1.5), rng.uniform(0.01, 1.0),
        rng.uniform(-1.0, 1.5), rng.uniform(0.01, 1.0),
        mobo::extract_front(points), {-2.0, -2.0},
        static_cast<std::uint64_t>(trial));

    const double exact = mobo::ehvi_exact_2d(ctx, kQuery);
    const auto mc = mobo::ehvi_mc(ctx, kQuery);
    CHECK(std::abs(exact - mc.value) <= 3.0 * mc.std_error + 1e-12);
    if (mc.std_error > 0.0) ++distinguishable;
  }
  CHECK(distinguishable == 20);
}

TEST_CASE("ehvi is monotone in each posterior mean") {
  const std::vector<mobo::ObjectiveVector> front = {{0.5, 1.5}, {1.5, 0.5}};
  double previous = -1.0;
  for (int step = 0; step <= 20; ++step) {
    const double mean1 = -1.0 + 0.2 * step;
    const auto ctx =
        gaussian_context(mean1, 0.25, 0.7, 0.25, front, {0, 0}, 1);
    const double value = mobo::ehvi_exact_2d(ctx, kQuery);
    CHECK(value >= previous - 1e-12);
    previous = value;
  }
}

TEST_CASE("Monte Carlo ehvi with point masses collapses to the exact value") {
  const std::vector<mobo::ObjectiveVector> front = {{1, 3}, {2, 2}, {3, 1}};
  auto ctx = gaussian_context(4.0, 0.0, 4.0, 0.0, front, {0, 0}, 5);
  ctx.mc_samples = 64;
  const auto mc = mobo::ehvi_mc(ctx, kQuery);
  CHECK(mc.value == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(mc.std_error <= 1e-9);
}

TEST_CASE("Monte Carlo ehvi is reproducible for a seed") {
  const auto ctx = fitted_context(77);
  const auto a = mobo::ehvi_mc(ctx, kQuery);
  const auto b = mobo::ehvi_mc(ctx, kQuery);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("acquisition input validation") {
  auto ctx = fitted_context(1);
  ctx.mc_samples = 1;
  CHECK_THROWS_AS((void)mobo::ehvi_mc(ctx, kQuery), std::invalid_argument);

  auto three = fitted_context(1);
  three.models.push_back(remote_model(0.0, 1.0));
  three.reference = {-2.0, -2.0, -2.0};
  three.front = {{0.0, 0.0, 0.0}};
  CHECK_THROWS_AS((void)mobo::ehvi_exact_2d(three, kQuery),
                  std::invalid_argument);

  auto mismatched = fitted_context(1);
  mismatched.reference = {-2.0};
  CHECK_THROWS_AS((void)mobo::ehvi_exact_2d(mismatched, kQuery),
                  std::invalid_argument);
}

TEST_CASE("proposals are deterministic and stay in the unit cube") {
  const auto ctx = fitted_context(123);
  const auto a = mobo::propose_next(ctx, {});
  const auto b = mobo::propose_next(ctx, {});
  CHECK(a.x == b.x);
  CHECK(a.acquisition_value == b.acquisition_value);
  for (double v : a.x) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  CHECK_FALSE(a.used_monte_carlo);
  CHECK_FALSE(a.exploration_fallback);
  CHECK(a.acquisition_value > 0.0);
}

TEST_CASE("proposal beats a dense random scan to within 1%") {
  const auto ctx = fitted_context(42);
  const auto proposal = mobo::propose_next(ctx, {});

  mobo::Rng rng(2024);
  double best_dense = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double dense =
        mobo::ehvi_exact_2d(ctx, Eigen::VectorXd::Constant(1, rng.uniform()));
    best_dense = std::max(best_dense, dense);
  }
  CHECK(proposal.acquisition_value >= 0.99 * best_dense);
}

TEST_CASE("flat acquisition falls back to the widest posterior") {
  // The front already dominates everything reachable, so every scanned
  // point has zero improvement.
  auto ctx = fitted_context(9);
  ctx.front = {{100.0, 100.0}};
  const auto proposal = mobo::propose_next(ctx, {});
  CHECK(proposal.exploration_fallback);
  CHECK(proposal.acquisition_value == 0.0);
  for (double v : proposal.x) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("three objectives route through Monte Carlo") {
  mobo::AcquisitionContext ctx;
  ctx.models.push_back(remote_model(1.0, 0.25));
  ctx.models.push_back(remote_model(1.0, 0.25));
  ctx.models.push_back(remote_model(1.0, 0.25));
  ctx.front = {{0.5, 0.5, 0.5}};
  ctx.reference = {0.0, 0.0, 0.0};
  ctx.mc_samples = 512;
  ctx.seed = 2;
  const auto proposal = mobo::propose_next(ctx, {64, 2, 10});
  CHECK(proposal.used_monte_carlo);
  CHECK(proposal.acquisition_value > 0.0);
}

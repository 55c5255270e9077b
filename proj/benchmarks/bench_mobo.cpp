#include <benchmark/benchmark.h>

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <vector>

#include "mobo/acquisition.hpp"
#include "mobo/gp.hpp"
#include "mobo/pareto.hpp"
#include "mobo/restoration.hpp"
#include "mobo/rng.hpp"

namespace {

struct GpData {
  Eigen::MatrixXd inputs;
  Eigen::VectorXd targets;
};

GpData smooth_dataset(int n, int d, std::uint64_t seed) {
  GpData data;
  data.inputs.resize(n, d);
  data.targets.resize(n);
  mobo::Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
      data.inputs(i, j) = rng.uniform();
      s += data.inputs(i, j);
    }
    data.targets[i] = std::sin(3.0 * s) + 0.1 * rng.normal();
  }
  return data;
}

// k mutually non-dominated points: a descending staircase in the first two
// coordinates, random depth in the third.
std::vector<mobo::ObjectiveVector> staircase_front(int k, int dim,
                                                   std::uint64_t seed) {
  mobo::Rng rng(seed);
  std::vector<mobo::ObjectiveVector> front;
  front.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const double a = static_cast<double>(i + 1) / (k + 1);
    mobo::ObjectiveVector p = {a, 1.0 - a};
    if (dim == 3) p.push_back(rng.uniform(0.1, 1.0));
    front.push_back(p);
  }
  return front;
}

mobo::AcquisitionContext ehvi_context(int front_points, std::uint64_t seed) {
  mobo::AcquisitionContext ctx;
  const auto data_a = smooth_dataset(12, 2, seed);
  const auto data_b = smooth_dataset(12, 2, seed + 1);
  mobo::GpHyperparameters hyp;
  hyp.lengthscales = Eigen::VectorXd::Constant(2, 0.4);
  hyp.signal_variance = 1.0;
  hyp.noise_variance = 1e-4;
  ctx.models.push_back(mobo::make_gp(data_a.inputs, data_a.targets, hyp));
  ctx.models.push_back(mobo::make_gp(data_b.inputs, data_b.targets, hyp));
  ctx.front = staircase_front(front_points, 2, seed + 2);
  ctx.reference = {0.0, 0.0};
  ctx.seed = seed;
  return ctx;
}

void BM_GpFit(benchmark::State& state) {
  const auto data = smooth_dataset(static_cast<int>(state.range(0)), 6, 31);
  mobo::GpFitOptions options;
  options.restarts = 2;
  options.search_iterations = 30;
  options.seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mobo::fit_gp(data.inputs, data.targets, options));
  }
}
BENCHMARK(BM_GpFit)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_GpPredict(benchmark::State& state) {
  const auto data = smooth_dataset(64, 6, 32);
  mobo::GpHyperparameters hyp;
  hyp.lengthscales = Eigen::VectorXd::Constant(6, 0.5);
  const auto model = mobo::make_gp(data.inputs, data.targets, hyp);
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(6, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mobo::predict(model, x));
  }
}
BENCHMARK(BM_GpPredict);

void BM_Hypervolume2d(benchmark::State& state) {
  const auto front =
      staircase_front(static_cast<int>(state.range(0)), 2, 41);
  const mobo::ObjectiveVector reference = {0.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mobo::hypervolume(front, reference));
  }
}
BENCHMARK(BM_Hypervolume2d)->Arg(16)->Arg(128)->Arg(1024);

void BM_Hypervolume3d(benchmark::State& state) {
  const auto front =
      staircase_front(static_cast<int>(state.range(0)), 3, 42);
  const mobo::ObjectiveVector reference = {0.0, 0.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mobo::hypervolume(front, reference));
  }
}
BENCHMARK(BM_Hypervolume3d)->Arg(16)->Arg(64)->Arg(256);

void BM_HypervolumeMc(benchmark::State& state) {
  auto front = staircase_front(64, 3, 43);
  for (auto& p : front) p.push_back(0.5);
  const mobo::ObjectiveVector reference(4, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mobo::hypervolume_mc(
        front, reference, static_cast<std::uint64_t>(state.range(0)), 5));
  }
}
BENCHMARK(BM_HypervolumeMc)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_EhviExact2d(benchmark::State& state) {
  const auto ctx = ehvi_context(static_cast<int>(state.range(0)), 51);
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(2, 0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mobo::ehvi_exact_2d(ctx, x));
  }
}
BENCHMARK(BM_EhviExact2d)->Arg(4)->Arg(16);

void BM_EhviMc(benchmark::State& state) {
  auto ctx = ehvi_context(8, 52);
  ctx.mc_samples = static_cast<std::uint64_t>(state.range(0));
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(2, 0.6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mobo::ehvi_mc(ctx, x));
  }
}
BENCHMARK(BM_EhviMc)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);

void BM_ProposeNext(benchmark::State& state) {
  const auto ctx = ehvi_context(8, 53);
  mobo::ProposalBudget budget;
  budget.scan_points = 256;
  budget.restarts = 2;
  budget.refine_iterations = 20;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mobo::propose_next(ctx, budget));
  }
}
BENCHMARK(BM_ProposeNext)->Unit(benchmark::kMillisecond);

const mobo::Dataset& bench_dataset() {
  static const mobo::Dataset data = [] {
    mobo::DatasetConfig cfg;
    cfg.seed = 7;
    cfg.count = 10;
    cfg.image_size = 32;
    cfg.scale = 2;
    return mobo::synthesize_dataset(cfg);
  }();
  return data;
}

void BM_CombinedLoss(benchmark::State& state) {
  const auto& data = bench_dataset();
  const auto params = mobo::RestorerParams::identity(5);
  const std::vector<double> weights = {0.01, 1.0, 0.005};
  const std::vector<mobo::LossKind> kinds = {
      mobo::LossKind::l1, mobo::LossKind::ssim, mobo::LossKind::fft};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mobo::combined_loss(weights, kinds, params, data.train, 2));
  }
}
BENCHMARK(BM_CombinedLoss)->Unit(benchmark::kMicrosecond);

void BM_CombinedLossGradient(benchmark::State& state) {
  const auto& data = bench_dataset();
  const auto params = mobo::RestorerParams::identity(5);
  const std::vector<double> weights = {0.01, 1.0, 0.005};
  const std::vector<mobo::LossKind> kinds = {
      mobo::LossKind::l1, mobo::LossKind::ssim, mobo::LossKind::fft};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mobo::combined_loss_gradient(
        weights, kinds, params, data.train, 2, 1e-5));
  }
}
BENCHMARK(BM_CombinedLossGradient)->Unit(benchmark::kMillisecond);

void BM_TrainRestorer(benchmark::State& state) {
  const auto& data = bench_dataset();
  const std::vector<double> weights = {0.01, 1.0, 0.005};
  const std::vector<mobo::LossKind> kinds = {
      mobo::LossKind::l1, mobo::LossKind::ssim, mobo::LossKind::fft};
  mobo::TrainConfig cfg;
  cfg.steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mobo::train(mobo::RestorerParams::identity(5),
                                         weights, kinds, data.train, 2, cfg));
  }
}
BENCHMARK(BM_TrainRestorer)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

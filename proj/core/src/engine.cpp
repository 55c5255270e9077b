#include "mobo/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "mobo/acquisition.hpp"
#include "mobo/gp.hpp"
#include "mobo/rng.hpp"
#include "mobo/search.hpp"

namespace mobo {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string to_string(Phase phase) {
  return phase == Phase::warm_start ? "warm_start" : "optimized";
}

Phase phase_from_string(const std::string& s) {
  if (s == "warm_start") return Phase::warm_start;
  if (s == "optimized") return Phase::optimized;
  throw std::invalid_argument("unknown phase: " + s);
}

ObjectiveVector Observation::canonical() const {
  if (objectives_raw.size() != orientation.size()) {
    throw std::logic_error("observation orientation mismatch");
  }
  ObjectiveVector out(objectives_raw.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = orientation[j] > 0 ? objectives_raw[j] : -objectives_raw[j];
  }
  return out;
}

void ParetoArchive::append(Observation obs) {
  observations_.push_back(std::move(obs));
  std::vector<ObjectiveVector> points = canonical_points();
  front_indices_ = nondominated_indices(points);
}

std::vector<ObjectiveVector> ParetoArchive::canonical_points() const {
  std::vector<ObjectiveVector> points;
  points.reserve(observations_.size());
  for (const auto& obs : observations_) points.push_back(obs.canonical());
  return points;
}

std::vector<const Observation*> ParetoArchive::front() const {
  std::vector<const Observation*> out;
  out.reserve(front_indices_.size());
  for (std::size_t i : front_indices_) out.push_back(&observations_[i]);
  return out;
}

ObjectiveVector reference_point(const std::vector<ObjectiveVector>& points,
                                double slack_fraction, double min_slack) {
  if (points.empty()) {
    throw std::invalid_argument("reference_point: no points");
  }
  if (slack_fraction < 0.0 || !(min_slack > 0.0)) {
    throw std::invalid_argument(
        "reference_point: slack_fraction >= 0 and min_slack > 0");
  }
  const std::size_t m = points.front().size();
  ObjectiveVector lo(m), hi(m);
  for (std::size_t j = 0; j < m; ++j) {
    lo[j] = points.front()[j];
    hi[j] = points.front()[j];
  }
  for (const auto& p : points) {
    if (p.size() != m) {
      throw std::invalid_argument("reference_point: dimension mismatch");
    }
    for (std::size_t j = 0; j < m; ++j) {
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
    }
  }
  ObjectiveVector r(m);
  for (std::size_t j = 0; j < m; ++j) {
    r[j] = lo[j] - std::max(slack_fraction * (hi[j] - lo[j]), min_slack);
  }
  return r;
}

Engine::Engine(EngineConfig config, std::vector<WeightBound> bounds,
               std::vector<int> orientation, Evaluator& evaluator)
    : config_(std::move(config)),
      bounds_(std::move(bounds)),
      orientation_(std::move(orientation)),
      evaluator_(&evaluator) {
  if (bounds_.empty()) throw std::invalid_argument("engine: no weight bounds");
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    if (!(bounds_[i].lower < bounds_[i].upper)) {
      throw std::invalid_argument("engine: weight bound " + bounds_[i].name +
                                  " has no width");
    }
    for (std::size_t j = i + 1; j < bounds_.size(); ++j) {
      if (bounds_[i].name == bounds_[j].name) {
        throw std::invalid_argument("engine: duplicate weight name " +
                                    bounds_[i].name);
      }
    }
  }
  if (orientation_.size() < 2) {
    throw std::invalid_argument("engine: at least 2 objectives required");
  }
  for (int o : orientation_) {
    if (o != 1 && o != -1) {
      throw std::invalid_argument("engine: orientation entries must be +1/-1");
    }
  }
  if (evaluator_->weight_dim() != bounds_.size() ||
      evaluator_->objective_dim() != orientation_.size()) {
    throw std::invalid_argument("engine: evaluator dimensions disagree");
  }
  if (config_.warm_start_count < 2) {
    throw std::invalid_argument("engine: warm_start_count >= 2");
  }
  if (config_.total_iterations < 0 || config_.pretrain_epochs < 0) {
    throw std::invalid_argument("engine: negative iteration counts");
  }
  const bool has_fixed = !config_.fixed_warm_weights.empty();
  if (has_fixed && config_.fixed_warm_weights.size() != bounds_.size()) {
    throw std::invalid_argument(
        "engine: fixed_warm_weights size must match weight count");
  }
  if (has_fixed != (config_.pretrain_epochs > 0)) {
    throw std::invalid_argument(
        "engine: pretrain_epochs and fixed_warm_weights go together");
  }
  if (config_.window != 0 && config_.window < 2) {
    throw std::invalid_argument("engine: window is 0 (all) or >= 2");
  }
  if (config_.mc_samples < 2 || config_.scan_points == 0 ||
      config_.refine_restarts == 0) {
    throw std::invalid_argument("engine: degenerate search budget");
  }
  if (config_.reference_slack_fraction < 0.0 ||
      !(config_.reference_min_slack > 0.0)) {
    throw std::invalid_argument("engine: bad reference slack settings");
  }
  if (config_.gp_restarts < 1 || config_.gp_search_iterations < 1) {
    throw std::invalid_argument("engine: bad GP fit budget");
  }
}

void Engine::set_observation_sink(ObservationSink sink) {
  sink_ = std::move(sink);
}

int Engine::warm_start_total() const {
  return config_.pretrain_epochs + config_.warm_start_count;
}

int Engine::target_observations() const {
  return warm_start_total() + config_.total_iterations;
}

std::vector<double> Engine::warm_weights_for(int index) const {
  const std::size_t d = bounds_.size();
  if (index < config_.pretrain_epochs) return config_.fixed_warm_weights;

  const int sample = index - config_.pretrain_epochs;
  // Sobol scan of the weight box, Cranley-Patterson rotated by a shift
  // derived from the master seed so different seeds explore different
  // grids. Sequence index 0 (the origin) is skipped.
  Rng shift_rng(derive_seed(config_.master_seed, kStreamWarmStart, 0));
  std::vector<double> shift(d);
  for (auto& s : shift) s = shift_rng.uniform();
  const std::vector<double> point =
      sobol_points(1, d, static_cast<std::uint64_t>(sample) + 1).front();

  std::vector<double> weights(d);
  for (std::size_t j = 0; j < d; ++j) {
    double u = point[j] + shift[j];
    u -= std::floor(u);
    weights[j] = bounds_[j].lower + u * (bounds_[j].upper - bounds_[j].lower);
  }
  return weights;
}

Observation Engine::evaluate_observation(int iteration, Phase phase,
                                         std::vector<double> weights,
                                         std::vector<double> reference,
                                         double fit_seconds,
                                         double propose_seconds) {
  const auto t0 = Clock::now();
  std::vector<double> raw = evaluator_->evaluate(weights);
  const double eval_seconds = seconds_since(t0);
  if (raw.size() != orientation_.size()) {
    throw std::runtime_error("engine: evaluator returned wrong objective count");
  }
  for (double v : raw) {
    if (!std::isfinite(v)) {
      throw std::runtime_error("engine: evaluator returned non-finite value");
    }
  }

  Observation obs;
  obs.iteration = iteration;
  obs.phase = phase;
  obs.weights = std::move(weights);
  obs.objectives_raw = std::move(raw);
  obs.orientation = orientation_;
  obs.reference = std::move(reference);
  obs.eval_wall_seconds = eval_seconds;
  obs.fit_wall_seconds = fit_seconds;
  obs.propose_wall_seconds = propose_seconds;
  obs.seed = derive_seed(config_.master_seed, kStreamIteration,
                         static_cast<std::uint64_t>(iteration));
  archive_.append(obs);
  if (sink_) sink_(archive_.observations().back(), archive_);
  return archive_.observations().back();
}

void Engine::warm_start() {
  const int total = warm_start_total();
  for (int k = static_cast<int>(archive_.size()); k < total; ++k) {
    evaluate_observation(k + 1, Phase::warm_start, warm_weights_for(k), {},
                         0.0, 0.0);
  }
}

Observation Engine::step() {
  const int n = static_cast<int>(archive_.size());
  if (n < warm_start_total() || n < 2) {
    throw std::logic_error("engine: step() before warm start completed");
  }
  const int iteration = n + 1;
  const std::uint64_t iteration_seed =
      derive_seed(config_.master_seed, kStreamIteration,
                  static_cast<std::uint64_t>(iteration));
  const std::size_t d = bounds_.size();
  const std::size_t m = orientation_.size();
  const auto& observations = archive_.observations();

  // GP training window: the newest `window` observations (all when 0).
  const std::size_t first =
      (config_.window > 0 && n > config_.window)
          ? static_cast<std::size_t>(n - config_.window)
          : 0;
  const std::size_t count = static_cast<std::size_t>(n) - first;

  Eigen::MatrixXd inputs(static_cast<Eigen::Index>(count),
                         static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < count; ++i) {
    const auto& w = observations[first + i].weights;
    for (std::size_t j = 0; j < d; ++j) {
      inputs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (w[j] - bounds_[j].lower) / (bounds_[j].upper - bounds_[j].lower);
    }
  }

  // Standardize canonical targets with the window's statistics; the same
  // affine map is applied to the front and the reference point so the
  // acquisition sees one consistent space.
  std::vector<double> mean(m, 0.0), scale(m, 1.0);
  std::vector<Eigen::VectorXd> targets(m,
                                       Eigen::VectorXd(static_cast<Eigen::Index>(count)));
  for (std::size_t j = 0; j < m; ++j) {
    double mu = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      mu += observations[first + i].canonical()[j];
    }
    mu /= static_cast<double>(count);
    double var = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double v = observations[first + i].canonical()[j] - mu;
      var += v * v;
    }
    var /= static_cast<double>(count);
    mean[j] = mu;
    scale[j] = (var > 1e-24) ? std::sqrt(var) : 1.0;
    for (std::size_t i = 0; i < count; ++i) {
      targets[j][static_cast<Eigen::Index>(i)] =
          (observations[first + i].canonical()[j] - mean[j]) / scale[j];
    }
  }

  const auto t_fit = Clock::now();
  AcquisitionContext ctx;
  ctx.models.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    GpFitOptions options;
    options.restarts = config_.gp_restarts;
    options.search_iterations = config_.gp_search_iterations;
    options.seed = derive_seed(iteration_seed, kStreamGpFit,
                               static_cast<std::uint64_t>(j));
    ctx.models.push_back(fit_gp(inputs, targets[j], options));
  }
  const double fit_seconds = seconds_since(t_fit);

  const auto t_propose = Clock::now();
  const std::vector<ObjectiveVector> canonical = archive_.canonical_points();
  const ObjectiveVector reference_raw = reference_point(
      canonical, config_.reference_slack_fraction, config_.reference_min_slack);

  ctx.reference.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    ctx.reference[j] = (reference_raw[j] - mean[j]) / scale[j];
  }
  for (const auto& p : extract_front(canonical)) {
    ObjectiveVector std_point(m);
    for (std::size_t j = 0; j < m; ++j) {
      std_point[j] = (p[j] - mean[j]) / scale[j];
    }
    ctx.front.push_back(std::move(std_point));
  }
  ctx.mc_samples = config_.mc_samples;
  ctx.seed = iteration_seed;

  ProposalBudget budget;
  budget.scan_points = config_.scan_points;
  budget.restarts = config_.refine_restarts;
  budget.refine_iterations = config_.refine_iterations;
  const Proposal proposal = propose_next(ctx, budget);
  const double propose_seconds = seconds_since(t_propose);

  std::vector<double> weights(d);
  for (std::size_t j = 0; j < d; ++j) {
    weights[j] = bounds_[j].lower +
                 proposal.x[j] * (bounds_[j].upper - bounds_[j].lower);
  }
  return evaluate_observation(iteration, Phase::optimized, std::move(weights),
                              reference_raw, fit_seconds, propose_seconds);
}

void Engine::run() {
  warm_start();
  while (static_cast<int>(archive_.size()) < target_observations()) step();
}

void Engine::load_existing(std::vector<Observation> observations) {
  if (!archive_.empty()) {
    throw std::logic_error("engine: load_existing on a non-empty archive");
  }
  const int warm_total = warm_start_total();
  for (std::size_t i = 0; i < observations.size(); ++i) {
    Observation& obs = observations[i];
    const int expected_iteration = static_cast<int>(i) + 1;
    if (obs.iteration != expected_iteration) {
      throw std::runtime_error("archive: iterations not contiguous at line " +
                               std::to_string(i + 1));
    }
    if (obs.weights.size() != bounds_.size() ||
        obs.objectives_raw.size() != orientation_.size() ||
        obs.orientation != orientation_) {
      throw std::runtime_error(
          "archive: observation " + std::to_string(expected_iteration) +
          " does not match the configured problem");
    }
    const std::uint64_t expected_seed =
        derive_seed(config_.master_seed, kStreamIteration,
                    static_cast<std::uint64_t>(expected_iteration));
    if (obs.seed != expected_seed) {
      throw std::runtime_error(
          "archive: observation " + std::to_string(expected_iteration) +
          " was produced with a different master seed");
    }
    const Phase expected_phase = expected_iteration <= warm_total
                                     ? Phase::warm_start
                                     : Phase::optimized;
    if (obs.phase != expected_phase) {
      throw std::runtime_error(
          "archive: observation " + std::to_string(expected_iteration) +
          " phase does not match the configured warm start");
    }
    archive_.append(std::move(obs));
  }
}

void replay_observations(Evaluator& evaluator,
                         const std::vector<Observation>& observations) {
  for (const auto& obs : observations) {
    const std::vector<double> raw = evaluator.evaluate(obs.weights);
    if (raw != obs.objectives_raw) {
      throw std::runtime_error(
          "replay: objectives diverged at iteration " +
          std::to_string(obs.iteration) +
          "; the archive does not match this configuration");
    }
  }
}

}  // namespace mobo

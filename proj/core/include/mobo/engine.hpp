#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mobo/evaluator.hpp"
#include "mobo/pareto.hpp"

namespace mobo {

inline constexpr const char* kEngineVersion = "0.1.0";

struct WeightBound {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
};

enum class Phase { warm_start, optimized };
std::string to_string(Phase phase);
Phase phase_from_string(const std::string& s);

/// One archived evaluation. objectives_raw keeps each objective's native
/// orientation; orientation[j] is +1 for maximized and -1 for minimized
/// objectives, and canonical() applies it. reference records the canonical
/// reference point the proposal used (empty during warm start).
struct Observation {
  int iteration = 0;  // 1-based across the whole run
  Phase phase = Phase::warm_start;
  std::vector<double> weights;
  std::vector<double> objectives_raw;
  std::vector<int> orientation;
  std::vector<double> reference;
  double eval_wall_seconds = 0.0;
  double fit_wall_seconds = 0.0;
  double propose_wall_seconds = 0.0;
  std::uint64_t seed = 0;

  ObjectiveVector canonical() const;
};

/// Append-only observation store with a maintained Pareto front.
/// Front membership is decided on canonical objectives with exact
/// comparisons; among duplicates the earliest iteration stays.
class ParetoArchive {
 public:
  void append(Observation obs);
  const std::vector<Observation>& observations() const { return observations_; }
  const std::vector<std::size_t>& front_indices() const { return front_indices_; }
  std::vector<ObjectiveVector> canonical_points() const;
  std::vector<const Observation*> front() const;
  std::size_t size() const { return observations_.size(); }
  bool empty() const { return observations_.empty(); }

 private:
  std::vector<Observation> observations_;
  std::vector<std::size_t> front_indices_;
};

/// Reference point rule: componentwise minimum of the canonical points
/// minus slack, where slack is slack_fraction of the observed range but
/// never below min_slack. Guarantees every observed point strictly
/// dominates the reference.
ObjectiveVector reference_point(const std::vector<ObjectiveVector>& points,
                                double slack_fraction, double min_slack);

struct EngineConfig {
  int warm_start_count = 8;
  int pretrain_epochs = 0;
  std::vector<double> fixed_warm_weights;  // empty = no fixed pretraining
  int total_iterations = 40;
  int window = 0;  // GP training window over the newest observations; 0 = all
  std::uint64_t mc_samples = 2048;
  std::size_t scan_points = 512;
  std::size_t refine_restarts = 4;
  std::size_t refine_iterations = 40;
  double reference_slack_fraction = 0.1;
  double reference_min_slack = 1e-6;
  std::uint64_t master_seed = 0;
  int gp_restarts = 5;
  int gp_search_iterations = 40;
};

/// The optimization loop: quasi-random warm start (optionally preceded by
/// fixed-weight pretraining epochs), then iterations of fit / propose /
/// evaluate / archive. All randomness is derived from the master seed and
/// the global iteration index, so a run resumed from its archive continues
/// exactly the run it would have been.
class Engine {
 public:
  using ObservationSink =
      std::function<void(const Observation&, const ParetoArchive&)>;

  Engine(EngineConfig config, std::vector<WeightBound> bounds,
         std::vector<int> orientation, Evaluator& evaluator);

  /// Called after every archived observation (persistence, logging).
  void set_observation_sink(ObservationSink sink);

  /// Adopts previously archived observations before continuing a run.
  /// Validates contiguous 1-based iterations, matching dimensions and
  /// matching derived seeds; throws std::runtime_error on any mismatch.
  void load_existing(std::vector<Observation> observations);

  int warm_start_total() const;
  int target_observations() const;

  /// Runs any warm-start evaluations not yet in the archive.
  void warm_start();

  /// One optimized iteration. Requires a completed warm start and at
  /// least 2 observations.
  Observation step();

  /// warm_start() plus optimized steps until the archive holds
  /// warm_start_total() + total_iterations observations.
  void run();

  const ParetoArchive& archive() const { return archive_; }
  const EngineConfig& config() const { return config_; }
  const std::vector<WeightBound>& bounds() const { return bounds_; }
  const std::vector<int>& orientation() const { return orientation_; }

 private:
  std::vector<double> warm_weights_for(int index) const;
  Observation evaluate_observation(int iteration, Phase phase,
                                   std::vector<double> weights,
                                   std::vector<double> reference,
                                   double fit_seconds, double propose_seconds);

  EngineConfig config_;
  std::vector<WeightBound> bounds_;
  std::vector<int> orientation_;
  Evaluator* evaluator_;
  ParetoArchive archive_;
  ObservationSink sink_;
};

/// Rebuilds a stateful evaluator by re-running the archived weight
/// vectors in order. Used when no state checkpoint is available.
void replay_observations(Evaluator& evaluator,
                         const std::vector<Observation>& observations);

}  // namespace mobo

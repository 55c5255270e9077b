#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "mobo/engine.hpp"
#include "mobo/restoration.hpp"

namespace mobo {

enum class ProblemKind { restoration, zdt1, toy_tradeoff };
std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& s);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ObjectiveChoice {
  std::string name;
  bool maximize = true;
};

/// A full run description as read from a config file. Restoration runs
/// take their weight space from the [weights.<loss>] sections (section
/// order is weight order) and their objectives from [objectives];
/// analytic problems fix both themselves.
struct RunConfig {
  ProblemKind problem = ProblemKind::restoration;

  // [problem] when kind = restoration
  std::uint64_t dataset_seed = 7;
  int dataset_count = 10;
  int image_size = 32;
  int scale = 2;
  int filter_size = 5;
  int train_steps = 25;
  double learning_rate = 0.05;
  bool stateful = true;
  double psnr_cap_db = 100.0;

  // [problem] when kind = zdt1
  int zdt1_dim = 6;

  std::vector<ObjectiveChoice> objectives;  // restoration only
  std::vector<WeightBound> weights;         // restoration only

  EngineConfig engine;
};

/// Parses and fully validates config text. Unknown sections or keys,
/// malformed values and inconsistent settings are all hard errors carrying
/// the offending line number.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// A ready-to-run config for the given problem, as written by `init`.
std::string default_config_text(ProblemKind kind);

/// Renders a config so that parse_config_text round-trips it.
std::string serialize_config(const RunConfig& config);

/// Effective weight box: configured bounds for restoration, the problem's
/// own input box for analytic problems.
std::vector<WeightBound> weight_bounds_of(const RunConfig& config);

/// Effective objective list (names and directions) for any problem kind.
std::vector<ObjectiveChoice> objectives_of(const RunConfig& config);

/// +1 / -1 per objective, in objective order.
std::vector<int> orientation_of(const RunConfig& config);

/// Builds the evaluator the config describes.
std::unique_ptr<Evaluator> make_evaluator(const RunConfig& config);

}  // namespace mobo

#pragma once

#include <string>
#include <vector>

namespace mobo {

/// A black-box objective evaluator driven by the optimizer. Maps a weight
/// vector to raw objective values. Stateful evaluators (where one
/// evaluation warm-starts the next) expose their internal state as a
/// string so interrupted runs can checkpoint and resume exactly.
class Evaluator {
 public:
  virtual ~Evaluator() = default;

  virtual std::size_t weight_dim() const = 0;
  virtual std::size_t objective_dim() const = 0;

  /// Evaluates one weight vector. Must return objective_dim() finite
  /// values. May mutate internal state when is_stateful().
  virtual std::vector<double> evaluate(const std::vector<double>& weights) = 0;

  virtual bool is_stateful() const { return false; }
  virtual std::string serialize_state() const { return {}; }
  virtual void restore_state(const std::string& state) { (void)state; }
};

}  // namespace mobo

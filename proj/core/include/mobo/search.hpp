#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace mobo {

/// First `n` points of the `dim`-dimensional Sobol sequence after skipping
/// `skip` points. Point 0 of the raw sequence is the origin, so scans
/// usually pass skip = 1.
std::vector<std::vector<double>> sobol_points(std::size_t n, std::size_t dim,
                                              std::uint64_t skip = 0);

struct PatternSearchResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
};

/// Derivative-free maximization of f over the box [lower, upper] by compass
/// search: probe +/- step along each axis, move to the best improving
/// probe, halve the step when none improves. Fully deterministic.
/// `initial_step` and `step_tolerance` are fractions of each axis range.
PatternSearchResult pattern_search_maximize(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& lower, const std::vector<double>& upper,
    const std::vector<double>& start, double initial_step,
    std::size_t max_iterations, double step_tolerance);

}  // namespace mobo

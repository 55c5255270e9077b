#include "mobo/search.hpp"

#include <boost/random/sobol.hpp>

#include <algorithm>
#include <stdexcept>

namespace mobo {

std::vector<std::vector<double>> sobol_points(std::size_t n, std::size_t dim,
                                              std::uint64_t skip) {
  if (dim == 0) throw std::invalid_argument("sobol_points: dim must be >= 1");
  boost::random::sobol engine(static_cast<unsigned>(dim));
  // Engine values are integers in [0, max]; max + 1 is a power of two, so
  // the scale maps them into [0, 1).
  const double scale =
      1.0 / (static_cast<double>(boost::random::sobol::max()) + 1.0);
  if (skip > 0) engine.discard(skip * dim);
  std::vector<std::vector<double>> points(n, std::vector<double>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      points[i][j] = static_cast<double>(engine()) * scale;
    }
  }
  return points;
}

PatternSearchResult pattern_search_maximize(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<double>& lower, const std::vector<double>& upper,
    const std::vector<double>& start, double initial_step,
    std::size_t max_iterations, double step_tolerance) {
  const std::size_t d = lower.size();
  if (d == 0 || upper.size() != d || start.size() != d) {
    throw std::invalid_argument("pattern_search_maximize: bad box dimensions");
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!(lower[i] < upper[i])) {
      throw std::invalid_argument("pattern_search_maximize: empty box axis");
    }
  }

  PatternSearchResult result;
  result.x = start;
  for (std::size_t i = 0; i < d; ++i) {
    result.x[i] = std::clamp(result.x[i], lower[i], upper[i]);
  }
  result.value = f(result.x);
  result.evaluations = 1;

  double step = initial_step;
  std::vector<double> probe = result.x;
  for (std::size_t iter = 0; iter < max_iterations && step >= step_tolerance;
       ++iter) {
    double best_value = result.value;
    std::size_t best_axis = d;
    double best_coord = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double range = upper[i] - lower[i];
      for (const double direction : {1.0, -1.0}) {
        const double coord = std::clamp(result.x[i] + direction * step * range,
                                        lower[i], upper[i]);
        if (coord == result.x[i]) continue;
        probe = result.x;
        probe[i] = coord;
        const double value = f(probe);
        ++result.evaluations;
        if (value > best_value) {
          best_value = value;
          best_axis = i;
          best_coord = coord;
        }
      }
    }
    if (best_axis < d) {
      result.x[best_axis] = best_coord;
      result.value = best_value;
    } else {
      step *= 0.5;
    }
  }
  return result;
}

}  // namespace mobo

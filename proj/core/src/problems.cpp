#include "mobo/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace mobo {
namespace {

void check_unit_box(const std::vector<double>& x, std::size_t dim,
                    const char* name) {
  if (x.size() != dim) {
    throw std::invalid_argument(std::string(name) + ": wrong input dimension");
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(std::string(name) + ": input outside [0, 1]");
    }
  }
}

}  // namespace

AnalyticProblem zdt1_problem(int dim) {
  if (dim < 2) throw std::invalid_argument("zdt1 needs dim >= 2");
  AnalyticProblem p;
  p.name = "zdt1";
  p.dim = dim;
  p.maximize = {false, false};
  p.lower.assign(static_cast<std::size_t>(dim), 0.0);
  p.upper.assign(static_cast<std::size_t>(dim), 1.0);
  return p;
}

std::vector<double> evaluate_zdt1(const std::vector<double>& x) {
  if (x.size() < 2) throw std::invalid_argument("zdt1: needs dim >= 2");
  check_unit_box(x, x.size(), "zdt1");
  const double f1 = x[0];
  double tail = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) tail += x[i];
  const double g = 1.0 + 9.0 * tail / static_cast<double>(x.size() - 1);
  const double f2 = g * (1.0 - std::sqrt(f1 / g));
  return {f1, f2};
}

AnalyticProblem toy_tradeoff_problem() {
  AnalyticProblem p;
  p.name = "toy_tradeoff";
  p.dim = 1;
  p.maximize = {true, true};
  p.lower = {0.0};
  p.upper = {1.0};
  return p;
}

std::vector<double> evaluate_toy_tradeoff(const std::vector<double>& x) {
  check_unit_box(x, 1, "toy_tradeoff");
  return {x[0], 1.0 - x[0] * x[0]};
}

}  // namespace mobo

#pragma once

#include <string>
#include <vector>

namespace mobo {

/// An analytic benchmark: box-bounded inputs, cheap objectives, known
/// front shape. Raw objective values keep the function's native
/// orientation; maximize[j] records which way raw objective j improves,
/// and canonical points are raw values with minimized coordinates negated.
struct AnalyticProblem {
  std::string name;
  int dim = 0;
  std::vector<bool> maximize;
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Bi-objective problem with a connected convex front at g(x) = 1:
///   f1 = x1,  g = 1 + 9 mean(x2..xd),  f2 = g (1 - sqrt(f1 / g)).
/// Both objectives are minimized. Inputs live in [0, 1]^dim.
AnalyticProblem zdt1_problem(int dim = 6);
std::vector<double> evaluate_zdt1(const std::vector<double>& x);

/// One-dimensional smoke problem, both objectives maximized:
///   f1 = x,  f2 = 1 - x^2  on [0, 1].
/// Every input is Pareto optimal.
AnalyticProblem toy_tradeoff_problem();
std::vector<double> evaluate_toy_tradeoff(const std::vector<double>& x);

}  // namespace mobo

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mobo {

/// One point in objective space. All Pareto geometry in this library uses
/// the canonical orientation in which every coordinate is maximized;
/// callers negate minimized objectives before handing points in.
using ObjectiveVector = std::vector<double>;

/// Pareto dominance: a >= b in every coordinate and a > b in at least one.
/// Comparisons are exact, there is no tolerance.
/// Throws std::invalid_argument if the vectors are empty or sized unequally.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Indices of the non-dominated points of `points`, in their original order.
/// Exact duplicates keep only the earliest index so the front is a set.
std::vector<std::size_t> nondominated_indices(
    const std::vector<ObjectiveVector>& points);

/// The non-dominated subset of `points` (see nondominated_indices).
/// Throws std::invalid_argument on empty input.
std::vector<ObjectiveVector> extract_front(
    const std::vector<ObjectiveVector>& points);

/// Exact hypervolume of the region dominated by `front` and bounding
/// `reference` from below, for 2 or 3 objectives. Throws
/// std::invalid_argument for other dimensions or if any front point fails
/// to strictly dominate the reference in every coordinate.
double hypervolume(const std::vector<ObjectiveVector>& front,
                   const ObjectiveVector& reference);

struct HypervolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo hypervolume for any dimension >= 2. Samples are drawn in the
/// box spanned by the reference and the componentwise maximum of the front.
/// Sample i comes from its own derived seed, so the estimate is independent
/// of evaluation order and reproducible for a given (seed, n_samples).
HypervolumeEstimate hypervolume_mc(const std::vector<ObjectiveVector>& front,
                                   const ObjectiveVector& reference,
                                   std::uint64_t n_samples,
                                   std::uint64_t seed);

/// Exact hypervolume improvement HV(P u Y, r) - HV(P, r) for 2 or 3
/// objectives. Candidates that do not strictly dominate the reference add
/// nothing; if every candidate is dominated by P the result is exactly 0.
double hypervolume_improvement(const std::vector<ObjectiveVector>& candidates,
                               const std::vector<ObjectiveVector>& front,
                               const ObjectiveVector& reference);

/// Bi-objective front in staircase form: mutually non-dominated points
/// sorted by descending first coordinate (hence ascending second). This is
/// the precomputed shape the acquisition hot path walks per sample.
std::vector<std::array<double, 2>> staircase_2d(
    const std::vector<ObjectiveVector>& points);

/// Exact hypervolume improvement of the single point (a, b) against a
/// staircase front, in O(front size). Every staircase point must strictly
/// dominate (r1, r2); under that precondition this matches
/// hypervolume_improvement on the same inputs.
double hvi_point_2d(double a, double b,
                    const std::vector<std::array<double, 2>>& staircase,
                    double r1, double r2);

}  // namespace mobo

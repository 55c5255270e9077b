#include "mobo/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mobo/rng.hpp"

namespace mobo {
namespace {

void check_same_dim(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.empty() || a.size() != b.size()) {
    throw std::invalid_argument(
        "objective vectors must be non-empty and equally sized");
  }
}

bool strictly_dominates_reference(const ObjectiveVector& p,
                                  const ObjectiveVector& r) {
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (!(p[j] > r[j])) return false;
  }
  return true;
}

void check_reference(const std::vector<ObjectiveVector>& front,
                     const ObjectiveVector& reference) {
  for (const auto& p : front) {
    check_same_dim(p, reference);
    if (!strictly_dominates_reference(p, reference)) {
      throw std::invalid_argument(
          "every front point must strictly dominate the reference");
    }
  }
}

double staircase_area(const std::vector<std::array<double, 2>>& stair,
                      double r1, double r2) {
  double area = 0.0;
  double prev_y = r2;
  for (const auto& p : stair) {
    area += (p[0] - r1) * (p[1] - prev_y);
    prev_y = p[1];
  }
  return area;
}

std::vector<std::array<double, 2>> staircase_of_pairs(
    std::vector<std::array<double, 2>> pts) {
  // Non-dominated filter with exact-duplicate removal, then sort by
  // descending x. In 2-D the result is strictly decreasing in x and
  // strictly increasing in y.
  std::vector<std::array<double, 2>> kept;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < pts.size() && !drop; ++j) {
      if (j == i) continue;
      const bool geq = pts[j][0] >= pts[i][0] && pts[j][1] >= pts[i][1];
      const bool gt = pts[j][0] > pts[i][0] || pts[j][1] > pts[i][1];
      if (geq && gt) drop = true;
      if (j < i && pts[j] == pts[i]) drop = true;
    }
    if (!drop) kept.push_back(pts[i]);
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a[0] > b[0]; });
  return kept;
}

double hypervolume_2d(const std::vector<ObjectiveVector>& front,
                      const ObjectiveVector& r) {
  std::vector<std::array<double, 2>> pts;
  pts.reserve(front.size());
  for (const auto& p : front) pts.push_back({p[0], p[1]});
  return staircase_area(staircase_of_pairs(std::move(pts)), r[0], r[1]);
}

// Slices the dominated region along the third axis. Points sorted by
// descending z; the slab between consecutive z values is dominated by
// exactly the points above it, so its volume is a 2-D hypervolume times
// the slab depth.
double hypervolume_3d(std::vector<ObjectiveVector> front,
                      const ObjectiveVector& r) {
  std::sort(front.begin(), front.end(),
            [](const auto& a, const auto& b) { return a[2] > b[2]; });
  double volume = 0.0;
  std::vector<std::array<double, 2>> proj;
  proj.reserve(front.size());
  for (std::size_t k = 0; k < front.size(); ++k) {
    proj.push_back({front[k][0], front[k][1]});
    const double z_low = (k + 1 < front.size()) ? front[k + 1][2] : r[2];
    const double depth = front[k][2] - z_low;
    if (depth <= 0.0) continue;
    volume += staircase_area(staircase_of_pairs(proj), r[0], r[1]) * depth;
  }
  return volume;
}

double hypervolume_of_set(const std::vector<ObjectiveVector>& points,
                          const ObjectiveVector& reference) {
  if (points.empty()) return 0.0;
  const auto front = extract_front(points);
  if (front.empty()) return 0.0;
  if (reference.size() == 2) return hypervolume_2d(front, reference);
  return hypervolume_3d(front, reference);
}

}  // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  check_same_dim(a, b);
  bool any_greater = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < b[j]) return false;
    if (a[j] > b[j]) any_greater = true;
  }
  return any_greater;
}

std::vector<std::size_t> nondominated_indices(
    const std::vector<ObjectiveVector>& points) {
  std::vector<std::size_t> result;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j == i) continue;
      if (dominates(points[j], points[i])) dominated = true;
      if (j < i && points[j] == points[i]) dominated = true;
    }
    if (!dominated) result.push_back(i);
  }
  return result;
}

std::vector<ObjectiveVector> extract_front(
    const std::vector<ObjectiveVector>& points) {
  if (points.empty()) {
    throw std::invalid_argument("extract_front needs at least one point");
  }
  std::vector<ObjectiveVector> front;
  for (std::size_t i : nondominated_indices(points)) front.push_back(points[i]);
  return front;
}

double hypervolume(const std::vector<ObjectiveVector>& front,
                   const ObjectiveVector& reference) {
  if (reference.size() != 2 && reference.size() != 3) {
    throw std::invalid_argument(
        "exact hypervolume supports 2 or 3 objectives; use hypervolume_mc");
  }
  if (front.empty()) return 0.0;
  check_reference(front, reference);
  return hypervolume_of_set(front, reference);
}

HypervolumeEstimate hypervolume_mc(const std::vector<ObjectiveVector>& front,
                                   const ObjectiveVector& reference,
                                   std::uint64_t n_samples,
                                   std::uint64_t seed) {
  if (reference.size() < 2) {
    throw std::invalid_argument("hypervolume needs at least 2 objectives");
  }
  if (n_samples == 0) throw std::invalid_argument("n_samples must be positive");
  if (front.empty()) return {};
  check_reference(front, reference);

  const std::size_t m = reference.size();
  ObjectiveVector hi(m, -std::numeric_limits<double>::infinity());
  for (const auto& p : front) {
    for (std::size_t j = 0; j < m; ++j) hi[j] = std::max(hi[j], p[j]);
  }
  double box_volume = 1.0;
  for (std::size_t j = 0; j < m; ++j) box_volume *= hi[j] - reference[j];

  std::uint64_t hits = 0;
  ObjectiveVector u(m);
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    Rng rng(derive_seed(seed, kStreamHypervolumeMc, i));
    for (std::size_t j = 0; j < m; ++j) {
      u[j] = reference[j] + rng.uniform() * (hi[j] - reference[j]);
    }
    for (const auto& p : front) {
      bool covered = true;
      for (std::size_t j = 0; j < m && covered; ++j) covered = p[j] >= u[j];
      if (covered) {
        ++hits;
        break;
      }
    }
  }
  const double fraction = static_cast<double>(hits) / static_cast<double>(n_samples);
  HypervolumeEstimate est;
  est.value = box_volume * fraction;
  est.std_error = box_volume * std::sqrt(fraction * (1.0 - fraction) /
                                         static_cast<double>(n_samples));
  return est;
}

double hypervolume_improvement(const std::vector<ObjectiveVector>& candidates,
                               const std::vector<ObjectiveVector>& front,
                               const ObjectiveVector& reference) {
  if (reference.size() != 2 && reference.size() != 3) {
    throw std::invalid_argument(
        "exact hypervolume improvement supports 2 or 3 objectives");
  }
  check_reference(front, reference);
  std::vector<ObjectiveVector> usable;
  for (const auto& y : candidates) {
    check_same_dim(y, reference);
    if (strictly_dominates_reference(y, reference)) usable.push_back(y);
  }
  if (usable.empty()) return 0.0;

  std::vector<ObjectiveVector> merged = front;
  merged.insert(merged.end(), usable.begin(), usable.end());
  return hypervolume_of_set(merged, reference) -
         hypervolume_of_set(front, reference);
}

std::vector<std::array<double, 2>> staircase_2d(
    const std::vector<ObjectiveVector>& points) {
  std::vector<std::array<double, 2>> pts;
  pts.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != 2) {
      throw std::invalid_argument("staircase_2d expects 2-D points");
    }
    pts.push_back({p[0], p[1]});
  }
  return staircase_of_pairs(std::move(pts));
}

double hvi_point_2d(double a, double b,
                    const std::vector<std::array<double, 2>>& staircase,
                    double r1, double r2) {
  if (a <= r1 || b <= r2) return 0.0;
  double total = 0.0;
  double right = std::numeric_limits<double>::infinity();
  double bottom = r2;
  // Vertical strips of the non-dominated region, walked right to left.
  // Strip i spans (staircase[i].x, previous x] above height bottom; the
  // final strip is bounded on the left by the reference.
  for (std::size_t i = 0; i <= staircase.size(); ++i) {
    const double left = (i < staircase.size()) ? staircase[i][0] : r1;
    const double width = std::min(a, right) - left;
    if (width > 0.0 && b > bottom) total += width * (b - bottom);
    if (i < staircase.size()) {
      right = staircase[i][0];
      bottom = staircase[i][1];
    }
  }
  return total;
}

}  // namespace mobo

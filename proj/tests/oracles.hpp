// Independent reference implementations the tests compare against. These
// deliberately use the slowest, most literal formulation of each quantity
// and share no code with the library.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

using Point = std::vector<double>;

inline bool weakly_dominates(const Point& a, const Point& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < b[j]) return false;
  }
  return true;
}

inline bool strictly_dominates(const Point& a, const Point& b) {
  bool strict = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] < b[j]) return false;
    if (a[j] > b[j]) strict = true;
  }
  return strict;
}

// All-pairs non-dominated scan, duplicates keep the earliest index.
inline std::vector<std::size_t> pairwise_front_indices(
    const std::vector<Point>& points) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool keep = true;
    for (std::size_t k = 0; k < points.size() && keep; ++k) {
      if (k == i) continue;
      if (strictly_dominates(points[k], points[i])) keep = false;
      if (points[k] == points[i] && k < i) keep = false;
    }
    if (keep) out.push_back(i);
  }
  return out;
}

// Lebesgue measure of the region dominated by `front` above `reference`,
// approximated by counting midpoints of a regular grid over the bounding
// box. Exact whenever every coordinate of every front point lies on the
// grid (the region is then a union of whole cells).
inline double grid_hypervolume(const std::vector<Point>& front,
                               const Point& reference, int cells_per_dim,
                               Point upper = {}) {
  const std::size_t m = reference.size();
  if (upper.empty()) {
    upper = front.front();
    for (const auto& p : front) {
      for (std::size_t j = 0; j < m; ++j) upper[j] = std::max(upper[j], p[j]);
    }
  }
  double cell_volume = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    cell_volume *= (upper[j] - reference[j]) / cells_per_dim;
  }

  long long dominated = 0;
  std::vector<int> index(m, 0);
  Point mid(m);
  while (true) {
    for (std::size_t j = 0; j < m; ++j) {
      mid[j] = reference[j] + (index[j] + 0.5) *
                                  (upper[j] - reference[j]) / cells_per_dim;
    }
    for (const auto& p : front) {
      if (weakly_dominates(p, mid)) {
        ++dominated;
        break;
      }
    }
    std::size_t j = 0;
    while (j < m && ++index[j] == cells_per_dim) index[j++] = 0;
    if (j == m) break;
  }
  return dominated * cell_volume;
}

// Textbook GP posterior by dense solve, with its own Matern 5/2 kernel.
struct DensePosterior {
  double mean = 0.0;
  double variance = 0.0;
};

inline double matern52_direct(const Eigen::VectorXd& a,
                              const Eigen::VectorXd& b,
                              const Eigen::VectorXd& lengthscales,
                              double signal_variance) {
  double r2 = 0.0;
  for (int j = 0; j < a.size(); ++j) {
    const double d = (a[j] - b[j]) / lengthscales[j];
    r2 += d * d;
  }
  const double r = std::sqrt(5.0 * r2);
  return signal_variance * (1.0 + r + r * r / 3.0) * std::exp(-r);
}

inline DensePosterior dense_gp_posterior(const Eigen::MatrixXd& inputs,
                                         const Eigen::VectorXd& targets,
                                         const Eigen::VectorXd& lengthscales,
                                         double signal_variance,
                                         double noise_variance,
                                         double constant_mean,
                                         const Eigen::VectorXd& x) {
  const auto n = inputs.rows();
  Eigen::MatrixXd gram(n, n);
  Eigen::VectorXd k_star(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      gram(i, k) = matern52_direct(inputs.row(i), inputs.row(k), lengthscales,
                                   signal_variance);
    }
    gram(i, i) += noise_variance;
    k_star[i] = matern52_direct(inputs.row(i), x, lengthscales,
                                signal_variance);
  }
  const Eigen::VectorXd centered =
      targets - Eigen::VectorXd::Constant(n, constant_mean);
  const Eigen::MatrixXd inverse = gram.inverse();
  DensePosterior out;
  out.mean = constant_mean + k_star.dot(inverse * centered);
  out.variance = signal_variance - k_star.dot(inverse * k_star);
  return out;
}

inline double dense_log_marginal(const Eigen::MatrixXd& inputs,
                                 const Eigen::VectorXd& targets,
                                 const Eigen::VectorXd& lengthscales,
                                 double signal_variance, double noise_variance,
                                 double constant_mean) {
  const auto n = inputs.rows();
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      gram(i, k) = matern52_direct(inputs.row(i), inputs.row(k), lengthscales,
                                   signal_variance);
    }
    gram(i, i) += noise_variance;
  }
  const Eigen::VectorXd centered =
      targets - Eigen::VectorXd::Constant(n, constant_mean);
  const double quad = centered.dot(gram.inverse() * centered);
  const double logdet = std::log(gram.determinant());
  return -0.5 * quad - 0.5 * logdet -
         0.5 * static_cast<double>(n) * std::log(2.0 * M_PI);
}

// E[max(0, Y - b)] for Y ~ N(mean, stddev^2) by trapezoidal quadrature.
inline double expected_excess_quadrature(double mean, double stddev,
                                         double b) {
  const int n = 20000;
  const double lo = mean - 12.0 * stddev;
  const double hi = mean + 12.0 * stddev;
  const double h = (hi - lo) / n;
  double total = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double y = lo + i * h;
    const double z = (y - mean) / stddev;
    const double density =
        std::exp(-0.5 * z * z) / (stddev * std::sqrt(2.0 * M_PI));
    const double f = std::max(0.0, y - b) * density;
    total += (i == 0 || i == n) ? 0.5 * f : f;
  }
  return total * h;
}

// Forward DFT straight from the definition, O(n^4).
inline Eigen::MatrixXcd naive_dft(const Eigen::MatrixXd& img) {
  const auto rows = img.rows();
  const auto cols = img.cols();
  Eigen::MatrixXcd out(rows, cols);
  for (Eigen::Index u = 0; u < rows; ++u) {
    for (Eigen::Index v = 0; v < cols; ++v) {
      std::complex<double> sum = 0.0;
      for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
          const double angle =
              -2.0 * M_PI *
              (static_cast<double>(u * r) / rows +
               static_cast<double>(v * c) / cols);
          sum += img(r, c) * std::complex<double>(std::cos(angle),
                                                  std::sin(angle));
        }
      }
      out(u, v) = sum;
    }
  }
  return out;
}

// Reflected-border convolution by direct loops (kernel flipped).
inline Eigen::MatrixXd naive_conv_reflect(const Eigen::MatrixXd& img,
                                          const Eigen::MatrixXd& kernel) {
  const auto rows = img.rows();
  const auto cols = img.cols();
  const auto kr = kernel.rows();
  const auto kc = kernel.cols();
  const auto reflect = [](Eigen::Index i, Eigen::Index n) {
    while (i < 0 || i >= n) {
      if (i < 0) i = -i - 1;
      if (i >= n) i = 2 * n - i - 1;
    }
    return i;
  };
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double sum = 0.0;
      for (Eigen::Index i = 0; i < kr; ++i) {
        for (Eigen::Index k = 0; k < kc; ++k) {
          const Eigen::Index rr = reflect(r + kr / 2 - i, rows);
          const Eigen::Index cc = reflect(c + kc / 2 - k, cols);
          sum += kernel(i, k) * img(rr, cc);
        }
      }
      out(r, c) = sum;
    }
  }
  return out;
}

inline std::vector<double> ranks_of(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t k = i;
    while (k + 1 < order.size() &&
           values[order[k + 1]] == values[order[i]]) {
      ++k;
    }
    const double shared = 0.5 * static_cast<double>(i + k) + 1.0;
    for (std::size_t t = i; t <= k; ++t) ranks[order[t]] = shared;
    i = k + 1;
  }
  return ranks;
}

// Spearman rank correlation with midrank ties.
inline double spearman(const std::vector<double>& x,
                       const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman needs two equal series");
  }
  const std::vector<double> rx = ranks_of(x);
  const std::vector<double> ry = ranks_of(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double cov = 0.0, vx = 0.0, vy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (rx[i] - mean) * (ry[i] - mean);
    vx += (rx[i] - mean) * (rx[i] - mean);
    vy += (ry[i] - mean) * (ry[i] - mean);
  }
  return cov / std::sqrt(vx * vy);
}

}  // namespace oracle

#include "mobo/image_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mobo {
namespace {

// Reflected index, edge pixel included: -1 -> 0, n -> n-1.
inline Eigen::Index reflect(Eigen::Index t, Eigen::Index n) {
  if (t < 0) return -t - 1;
  if (t >= n) return 2 * n - t - 1;
  return t;
}

bool is_pow2(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_pow2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen = std::polar(1.0, angle);
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w{1.0, 0.0};
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

Eigen::MatrixXcd dft_matrix(Eigen::Index n) {
  Eigen::MatrixXcd d(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index m = 0; m < n; ++m) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>(u * m) / static_cast<double>(n);
      d(u, m) = std::polar(1.0, angle);
    }
  }
  return d;
}

void check_kernel(const Eigen::MatrixXd& kernel) {
  if (kernel.rows() % 2 == 0 || kernel.cols() % 2 == 0 || kernel.size() == 0) {
    throw std::invalid_argument("convolution kernels must be odd-sized");
  }
}

}  // namespace

double cubic_kernel(double t) {
  constexpr double a = -0.5;
  t = std::abs(t);
  if (t <= 1.0) return ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0;
  if (t < 2.0) return a * (((t - 5.0) * t + 8.0) * t - 4.0);
  return 0.0;
}

Eigen::MatrixXd resample_matrix(int n_in, int n_out) {
  if (n_in < 1 || n_out < 1) {
    throw std::invalid_argument("resample_matrix: sizes must be positive");
  }
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n_out, n_in);
  const double shrink =
      std::min(1.0, static_cast<double>(n_out) / static_cast<double>(n_in));
  const double radius = 2.0 / shrink;
  for (int i = 0; i < n_out; ++i) {
    const double x = (i + 0.5) * static_cast<double>(n_in) /
                         static_cast<double>(n_out) -
                     0.5;
    const int j_first = static_cast<int>(std::ceil(x - radius));
    const int j_last = static_cast<int>(std::floor(x + radius));
    double row_sum = 0.0;
    for (int j = j_first; j <= j_last; ++j) {
      const double w = cubic_kernel((x - j) * shrink);
      if (w == 0.0) continue;
      const int jc = std::clamp(j, 0, n_in - 1);
      op(i, jc) += w;
      row_sum += w;
    }
    op.row(i) /= row_sum;
  }
  return op;
}

Image resample_bicubic(const Image& img, int out_rows, int out_cols) {
  const Eigen::MatrixXd row_op =
      resample_matrix(static_cast<int>(img.rows()), out_rows);
  const Eigen::MatrixXd col_op =
      resample_matrix(static_cast<int>(img.cols()), out_cols);
  return row_op * img * col_op.transpose();
}

Image conv_reflect(const Image& img, const Eigen::MatrixXd& kernel) {
  check_kernel(kernel);
  const Eigen::Index rows = img.rows(), cols = img.cols();
  const Eigen::Index cr = kernel.rows() / 2, cc = kernel.cols() / 2;
  Image out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      double acc = 0.0;
      for (Eigen::Index p = 0; p < kernel.rows(); ++p) {
        const Eigen::Index r = reflect(i - p + cr, rows);
        for (Eigen::Index q = 0; q < kernel.cols(); ++q) {
          acc += kernel(p, q) * img(r, reflect(j - q + cc, cols));
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

Image conv_reflect_adjoint(const Image& grad, const Eigen::MatrixXd& kernel) {
  check_kernel(kernel);
  const Eigen::Index rows = grad.rows(), cols = grad.cols();
  const Eigen::Index cr = kernel.rows() / 2, cc = kernel.cols() / 2;
  Image out = Image::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double g = grad(i, j);
      if (g == 0.0) continue;
      for (Eigen::Index p = 0; p < kernel.rows(); ++p) {
        const Eigen::Index r = reflect(i - p + cr, rows);
        for (Eigen::Index q = 0; q < kernel.cols(); ++q) {
          out(r, reflect(j - q + cc, cols)) += kernel(p, q) * g;
        }
      }
    }
  }
  return out;
}

Eigen::MatrixXd conv_reflect_kernel_gradient(const Image& grad,
                                             const Image& img, int k_rows,
                                             int k_cols) {
  if (k_rows % 2 == 0 || k_cols % 2 == 0 || k_rows < 1 || k_cols < 1) {
    throw std::invalid_argument("kernel gradient needs odd kernel shape");
  }
  const Eigen::Index rows = img.rows(), cols = img.cols();
  const Eigen::Index cr = k_rows / 2, cc = k_cols / 2;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k_rows, k_cols);
  for (Eigen::Index p = 0; p < k_rows; ++p) {
    for (Eigen::Index q = 0; q < k_cols; ++q) {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < rows; ++i) {
        const Eigen::Index r = reflect(i - p + cr, rows);
        for (Eigen::Index j = 0; j < cols; ++j) {
          acc += grad(i, j) * img(r, reflect(j - q + cc, cols));
        }
      }
      out(p, q) = acc;
    }
  }
  return out;
}

Eigen::MatrixXcd dft2(const Image& img) {
  const Eigen::Index rows = img.rows(), cols = img.cols();
  if (rows == 0 || cols == 0) throw std::invalid_argument("dft2: empty image");
  if (is_pow2(rows) && is_pow2(cols)) {
    Eigen::MatrixXcd f = img.cast<std::complex<double>>();
    std::vector<std::complex<double>> buf;
    buf.resize(static_cast<std::size_t>(cols));
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) buf[j] = f(i, j);
      fft_pow2(buf);
      for (Eigen::Index j = 0; j < cols; ++j) f(i, j) = buf[j];
    }
    buf.resize(static_cast<std::size_t>(rows));
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) buf[i] = f(i, j);
      fft_pow2(buf);
      for (Eigen::Index i = 0; i < rows; ++i) f(i, j) = buf[i];
    }
    return f;
  }
  return dft_matrix(rows) * img * dft_matrix(cols).transpose();
}

void write_pgm(const std::string& path, const Image& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
  out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
  for (Eigen::Index i = 0; i < img.rows(); ++i) {
    for (Eigen::Index j = 0; j < img.cols(); ++j) {
      const double v = std::clamp(img(i, j), 0.0, 1.0);
      out.put(static_cast<char>(
          static_cast<std::uint8_t>(std::lround(v * 255.0))));
    }
  }
  if (!out) throw std::runtime_error("write_pgm: write failed for " + path);
}

Eigen::Matrix3d sobel_x_kernel() {
  Eigen::Matrix3d k;
  k << -1, 0, 1, -2, 0, 2, -1, 0, 1;
  return k;
}

Eigen::Matrix3d sobel_y_kernel() {
  Eigen::Matrix3d k;
  k << -1, -2, -1, 0, 0, 0, 1, 2, 1;
  return k;
}

Eigen::Matrix3d laplacian_kernel() {
  Eigen::Matrix3d k;
  k << 0, 1, 0, 1, -4, 1, 0, 1, 0;
  return k;
}

Eigen::MatrixXd gaussian_window(int size, double sigma) {
  if (size < 1 || size % 2 == 0 || sigma <= 0.0) {
    throw std::invalid_argument("gaussian_window: odd size and positive sigma");
  }
  Eigen::MatrixXd w(size, size);
  const double c = (size - 1) / 2.0;
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      const double d2 = (i - c) * (i - c) + (j - c) * (j - c);
      w(i, j) = std::exp(-d2 / (2.0 * sigma * sigma));
    }
  }
  w /= w.sum();
  return w;
}

}  // namespace mobo

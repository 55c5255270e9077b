#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>

namespace mobo {

/// Grayscale image, values nominally in [0, 1].
using Image = Eigen::MatrixXd;

/// Keys cubic interpolation kernel with a = -0.5. Support (-2, 2).
double cubic_kernel(double t);

/// Dense 1-D bicubic resampling operator taking n_in samples to n_out.
/// Sample positions align pixel centers: x = (i + 0.5) * n_in / n_out - 0.5.
/// When shrinking, the kernel is stretched by the scale factor so the
/// operator antialiases. Out-of-range taps clamp to the border and every
/// row is normalized to sum 1, so constants map to constants.
Eigen::MatrixXd resample_matrix(int n_in, int n_out);

/// Separable bicubic resize using resample_matrix on each axis.
Image resample_bicubic(const Image& img, int out_rows, int out_cols);

/// 2-D convolution (kernel flipped) with reflected borders,
/// edge pixel included: index -1 maps to 0, index n to n-1.
Image conv_reflect(const Image& img, const Eigen::MatrixXd& kernel);

/// Adjoint of conv_reflect in its image argument:
/// sum(conv_reflect(img, k) * g) == sum(img * conv_reflect_adjoint(g, k)).
Image conv_reflect_adjoint(const Image& grad, const Eigen::MatrixXd& kernel);

/// Gradient of sum(conv_reflect(img, kernel) * grad) with respect to the
/// kernel, for a kernel of shape (k_rows, k_cols).
Eigen::MatrixXd conv_reflect_kernel_gradient(const Image& grad,
                                             const Image& img, int k_rows,
                                             int k_cols);

/// Unnormalized forward 2-D DFT. Power-of-two sizes go through a radix-2
/// transform, anything else through dense DFT matrices; both produce the
/// same values up to rounding.
Eigen::MatrixXcd dft2(const Image& img);

/// 8-bit binary PGM writer; values are clamped to [0, 1] and rounded.
void write_pgm(const std::string& path, const Image& img);

Eigen::Matrix3d sobel_x_kernel();
Eigen::Matrix3d sobel_y_kernel();
Eigen::Matrix3d laplacian_kernel();

/// Normalized 2-D Gaussian window (sums to 1).
Eigen::MatrixXd gaussian_window(int size, double sigma);

}  // namespace mobo

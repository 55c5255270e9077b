#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mobo/evaluator.hpp"
#include "mobo/image_ops.hpp"

namespace mobo {

enum class LossKind { l1, l2, fft, gradient, cycle, ssim };

LossKind loss_kind_from_string(const std::string& name);
std::string to_string(LossKind kind);

/// fft and ssim gradients come from central differences; the rest have
/// closed-form adjoints.
bool loss_has_analytic_gradient(LossKind kind);

/// The learnable restorer: bicubic upsampling followed by one odd square
/// convolution filter plus a scalar bias. Linear in its parameters; the
/// output is only clamped when metrics are computed, never during training.
struct RestorerParams {
  Eigen::MatrixXd filter;
  double bias = 0.0;

  /// Identity filter (center tap 1) and zero bias: the restorer starts as
  /// plain bicubic upsampling.
  static RestorerParams identity(int filter_size);
};

struct SamplePair {
  Image hr;
  Image lr;
};

struct DatasetConfig {
  std::uint64_t seed = 7;
  int count = 10;
  int image_size = 32;
  int scale = 2;
  double validation_fraction = 0.2;
};

struct Dataset {
  std::vector<SamplePair> train;
  std::vector<SamplePair> validation;
  int scale = 2;
};

/// Deterministic synthetic scenes: a few oriented sinusoids, a soft step
/// edge and two rectangles, contrast-normalized into [0, 1], then bicubic
/// downsampling for the paired low-resolution input. The last
/// validation_fraction of the images (at least one) form the validation
/// split.
Dataset synthesize_dataset(const DatasetConfig& config);

Image restore(const RestorerParams& params, const Image& lr, int scale);

/// One loss term between a restored image and its sample pair. All terms
/// are means over pixels, so sizes do not change their scale.
double loss_value(LossKind kind, const Image& sr, const SamplePair& sample,
                  int scale);

/// Weighted sum of the enabled loss terms, averaged over the batch.
double combined_loss(const std::vector<double>& weights,
                     const std::vector<LossKind>& kinds,
                     const RestorerParams& params,
                     const std::vector<SamplePair>& batch, int scale);

struct ParamGradient {
  Eigen::MatrixXd filter;
  double bias = 0.0;
};

/// Gradient of combined_loss with respect to the restorer parameters.
/// Analytic adjoints for l1, l2, gradient and cycle; one shared central
/// difference pass (step fd_step) for whatever fft and ssim weight mass
/// is enabled.
ParamGradient combined_loss_gradient(const std::vector<double>& weights,
                                     const std::vector<LossKind>& kinds,
                                     const RestorerParams& params,
                                     const std::vector<SamplePair>& batch,
                                     int scale, double fd_step);

struct TrainConfig {
  double learning_rate = 0.05;
  int steps = 25;
  double fd_step = 1e-5;
};

/// Full-batch gradient descent from `start`.
RestorerParams train(RestorerParams start, const std::vector<double>& weights,
                     const std::vector<LossKind>& kinds,
                     const std::vector<SamplePair>& train_set, int scale,
                     const TrainConfig& config);

struct MetricVector {
  double psnr_db = 0.0;
  double ssim = 0.0;
  double lr_psnr_db = 0.0;
  double hf_proxy = 0.0;
};

/// Validation metrics of a parameter set. Restored images are clamped to
/// [0, 1] first; every metric is averaged over the validation split.
MetricVector evaluate_metrics(const RestorerParams& params,
                              const std::vector<SamplePair>& validation,
                              int scale, double psnr_cap_db);

/// Peak signal-to-noise ratio in dB for unit dynamic range, capped.
double psnr_db(const Image& a, const Image& b, double cap_db);

/// Mean SSIM over the valid (fully windowed) region, 11x11 Gaussian
/// window with sigma 1.5, standard small constants.
double ssim_mean(const Image& a, const Image& b);

/// Mean absolute difference of 3x3 Laplacian responses: a cheap proxy for
/// how much high-frequency content survived restoration.
double high_frequency_distance(const Image& a, const Image& b);

/// Names of the objectives the bench can expose, in canonical order.
const std::vector<std::string>& restoration_metric_names();
bool restoration_metric_maximized(const std::string& name);

struct RestorationBenchConfig {
  DatasetConfig dataset;
  int filter_size = 5;
  TrainConfig train;
  /// Stateful mode keeps the trained parameters between evaluations, so
  /// the optimizer steers one continued training run; fresh mode restarts
  /// from the identity every evaluation.
  bool stateful = true;
  double psnr_cap_db = 100.0;
  std::vector<LossKind> losses;          // weight order
  std::vector<std::string> objectives;   // subset of restoration_metric_names()
};

/// The weighted-loss image restoration bench as an optimizer evaluator:
/// each evaluation trains with the given loss weights and reports
/// validation metrics.
class RestorationEvaluator : public Evaluator {
 public:
  explicit RestorationEvaluator(RestorationBenchConfig config);

  std::size_t weight_dim() const override { return config_.losses.size(); }
  std::size_t objective_dim() const override {
    return config_.objectives.size();
  }
  std::vector<double> evaluate(const std::vector<double>& weights) override;

  bool is_stateful() const override { return config_.stateful; }
  std::string serialize_state() const override;
  void restore_state(const std::string& state) override;

  const RestorationBenchConfig& config() const { return config_; }
  const Dataset& dataset() const { return dataset_; }
  const RestorerParams& params() const { return params_; }

 private:
  RestorationBenchConfig config_;
  Dataset dataset_;
  RestorerParams params_;
};

}  // namespace mobo

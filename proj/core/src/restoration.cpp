#include "mobo/restoration.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "mobo/rng.hpp"

namespace mobo {
namespace {

constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;
constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;

double sign_of(double v) {
  if (v > 0.0) return 1.0;
  if (v < 0.0) return -1.0;
  return 0.0;
}

Image sign_map(const Image& m) {
  return m.unaryExpr([](double v) { return sign_of(v); });
}

void check_filter(const Eigen::MatrixXd& filter) {
  if (filter.rows() != filter.cols() || filter.rows() % 2 == 0 ||
      filter.size() == 0) {
    throw std::invalid_argument("restorer filter must be odd and square");
  }
}

void check_weights(const std::vector<double>& weights,
                   const std::vector<LossKind>& kinds) {
  if (weights.size() != kinds.size() || kinds.empty()) {
    throw std::invalid_argument("one weight per enabled loss term required");
  }
  for (double w : weights) {
    if (!std::isfinite(w)) {
      throw std::invalid_argument("loss weights must be finite");
    }
  }
}

Image clamp01(const Image& img) {
  return img.unaryExpr([](double v) { return std::clamp(v, 0.0, 1.0); });
}

}  // namespace

LossKind loss_kind_from_string(const std::string& name) {
  if (name == "l1") return LossKind::l1;
  if (name == "l2") return LossKind::l2;
  if (name == "fft") return LossKind::fft;
  if (name == "gradient") return LossKind::gradient;
  if (name == "cycle") return LossKind::cycle;
  if (name == "ssim") return LossKind::ssim;
  throw std::invalid_argument("unknown loss term: " + name);
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::l1: return "l1";
    case LossKind::l2: return "l2";
    case LossKind::fft: return "fft";
    case LossKind::gradient: return "gradient";
    case LossKind::cycle: return "cycle";
    case LossKind::ssim: return "ssim";
  }
  throw std::logic_error("unreachable loss kind");
}

bool loss_has_analytic_gradient(LossKind kind) {
  return kind != LossKind::fft && kind != LossKind::ssim;
}

RestorerParams RestorerParams::identity(int filter_size) {
  if (filter_size < 1 || filter_size % 2 == 0) {
    throw std::invalid_argument("filter_size must be odd and positive");
  }
  RestorerParams p;
  p.filter = Eigen::MatrixXd::Zero(filter_size, filter_size);
  p.filter(filter_size / 2, filter_size / 2) = 1.0;
  p.bias = 0.0;
  return p;
}

Dataset synthesize_dataset(const DatasetConfig& config) {
  if (config.count < 2) throw std::invalid_argument("dataset: count >= 2");
  if (config.image_size < 16) {
    throw std::invalid_argument("dataset: image_size >= 16");
  }
  if (config.scale < 2 || config.image_size % config.scale != 0) {
    throw std::invalid_argument(
        "dataset: scale >= 2 and image_size divisible by scale");
  }
  if (!(config.validation_fraction > 0.0 && config.validation_fraction < 1.0)) {
    throw std::invalid_argument("dataset: validation_fraction in (0, 1)");
  }

  const int n = config.image_size;
  const int lr_n = n / config.scale;
  std::vector<SamplePair> all;
  all.reserve(static_cast<std::size_t>(config.count));
  for (int idx = 0; idx < config.count; ++idx) {
    Rng rng(derive_seed(config.seed, kStreamDataset,
                        static_cast<std::uint64_t>(idx)));
    Image img = Image::Zero(n, n);

    for (int s = 0; s < 3; ++s) {
      const double freq = rng.uniform(0.02, 0.35);  // cycles per pixel
      const double angle = rng.uniform(0.0, std::numbers::pi);
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const double amp = rng.uniform(0.1, 0.35);
      const double kx = 2.0 * std::numbers::pi * freq * std::cos(angle);
      const double ky = 2.0 * std::numbers::pi * freq * std::sin(angle);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          img(i, j) += amp * std::sin(kx * j + ky * i + phase);
        }
      }
    }

    const double pos = rng.uniform(0.25, 0.75) * n;
    const double width = rng.uniform(1.0, 3.0);
    const bool vertical = rng.uniform() < 0.5;
    const double height = rng.uniform(0.2, 0.5);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double coord = vertical ? j : i;
        img(i, j) += height * std::tanh((coord - pos) / width);
      }
    }

    for (int t = 0; t < 2; ++t) {
      const int ext_r = static_cast<int>(rng.uniform(n / 4.0, n / 2.0));
      const int ext_c = static_cast<int>(rng.uniform(n / 4.0, n / 2.0));
      const int r0 = static_cast<int>(rng.uniform(0.0, n - ext_r));
      const int c0 = static_cast<int>(rng.uniform(0.0, n - ext_c));
      const double value = rng.uniform(-0.3, 0.3);
      img.block(r0, c0, ext_r, ext_c).array() += value;
    }

    const double mean = img.mean();
    const double stddev = std::max(
        std::sqrt((img.array() - mean).square().mean()), 1e-9);
    const Image hr = clamp01(
        (0.5 + 0.5 * (img.array() - mean) / (3.0 * stddev)).matrix());

    SamplePair pair;
    pair.hr = hr;
    pair.lr = resample_bicubic(hr, lr_n, lr_n);
    all.push_back(std::move(pair));
  }

  const int requested = static_cast<int>(
      std::lround(config.validation_fraction * config.count));
  const int val_count = std::clamp(requested, 1, config.count - 1);

  Dataset ds;
  ds.scale = config.scale;
  ds.train.assign(all.begin(), all.end() - val_count);
  ds.validation.assign(all.end() - val_count, all.end());
  return ds;
}

Image restore(const RestorerParams& params, const Image& lr, int scale) {
  check_filter(params.filter);
  if (scale < 1) throw std::invalid_argument("restore: scale >= 1");
  const Image up = resample_bicubic(lr, static_cast<int>(lr.rows()) * scale,
                                    static_cast<int>(lr.cols()) * scale);
  return (conv_reflect(up, params.filter).array() + params.bias).matrix();
}

double loss_value(LossKind kind, const Image& sr, const SamplePair& sample,
                  int scale) {
  const Image& hr = sample.hr;
  if (sr.rows() != hr.rows() || sr.cols() != hr.cols()) {
    throw std::invalid_argument("loss_value: image size mismatch");
  }
  switch (kind) {
    case LossKind::l1:
      return (sr - hr).cwiseAbs().mean();
    case LossKind::l2:
      return (sr - hr).array().square().mean();
    case LossKind::fft: {
      const Eigen::MatrixXcd diff = dft2(sr) - dft2(hr);
      return (diff.real().cwiseAbs() + diff.imag().cwiseAbs()).mean();
    }
    case LossKind::gradient: {
      const Image diff = sr - hr;
      return conv_reflect(diff, sobel_x_kernel()).cwiseAbs().mean() +
             conv_reflect(diff, sobel_y_kernel()).cwiseAbs().mean();
    }
    case LossKind::cycle: {
      const Image down = resample_bicubic(
          sr, static_cast<int>(sr.rows()) / scale,
          static_cast<int>(sr.cols()) / scale);
      return (down - sample.lr).cwiseAbs().mean();
    }
    case LossKind::ssim:
      return 1.0 - ssim_mean(sr, hr);
  }
  throw std::logic_error("unreachable loss kind");
}

double combined_loss(const std::vector<double>& weights,
                     const std::vector<LossKind>& kinds,
                     const RestorerParams& params,
                     const std::vector<SamplePair>& batch, int scale) {
  check_weights(weights, kinds);
  if (batch.empty()) throw std::invalid_argument("combined_loss: empty batch");
  double total = 0.0;
  for (const auto& sample : batch) {
    const Image sr = restore(params, sample.lr, scale);
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      if (weights[k] == 0.0) continue;
      total += weights[k] * loss_value(kinds[k], sr, sample, scale);
    }
  }
  return total / static_cast<double>(batch.size());
}

ParamGradient combined_loss_gradient(const std::vector<double>& weights,
                                     const std::vector<LossKind>& kinds,
                                     const RestorerParams& params,
                                     const std::vector<SamplePair>& batch,
                                     int scale, double fd_step) {
  check_weights(weights, kinds);
  check_filter(params.filter);
  if (batch.empty()) {
    throw std::invalid_argument("combined_loss_gradient: empty batch");
  }
  if (!(fd_step > 0.0)) {
    throw std::invalid_argument("combined_loss_gradient: fd_step > 0");
  }
  const int k_size = static_cast<int>(params.filter.rows());
  const double inv_batch = 1.0 / static_cast<double>(batch.size());

  ParamGradient grad;
  grad.filter = Eigen::MatrixXd::Zero(k_size, k_size);
  grad.bias = 0.0;

  bool any_fd = false;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    if (!loss_has_analytic_gradient(kinds[k]) && weights[k] != 0.0) {
      any_fd = true;
    }
  }

  for (const auto& sample : batch) {
    const Image up =
        resample_bicubic(sample.lr, static_cast<int>(sample.lr.rows()) * scale,
                         static_cast<int>(sample.lr.cols()) * scale);
    const Image sr =
        (conv_reflect(up, params.filter).array() + params.bias).matrix();
    const double inv_pixels = 1.0 / static_cast<double>(sr.size());

    Image g_sr = Image::Zero(sr.rows(), sr.cols());
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const double w = weights[k];
      if (w == 0.0 || !loss_has_analytic_gradient(kinds[k])) continue;
      switch (kinds[k]) {
        case LossKind::l1:
          g_sr += w * inv_pixels * sign_map(sr - sample.hr);
          break;
        case LossKind::l2:
          g_sr += (2.0 * w * inv_pixels) * (sr - sample.hr);
          break;
        case LossKind::gradient: {
          const Image diff = sr - sample.hr;
          const Image dx = conv_reflect(diff, sobel_x_kernel());
          const Image dy = conv_reflect(diff, sobel_y_kernel());
          g_sr += w * inv_pixels *
                  (conv_reflect_adjoint(sign_map(dx), sobel_x_kernel()) +
                   conv_reflect_adjoint(sign_map(dy), sobel_y_kernel()));
          break;
        }
        case LossKind::cycle: {
          const int lr_rows = static_cast<int>(sample.lr.rows());
          const int lr_cols = static_cast<int>(sample.lr.cols());
          const Eigen::MatrixXd row_op =
              resample_matrix(static_cast<int>(sr.rows()), lr_rows);
          const Eigen::MatrixXd col_op =
              resample_matrix(static_cast<int>(sr.cols()), lr_cols);
          const Image down = row_op * sr * col_op.transpose();
          const Image g_down =
              sign_map(down - sample.lr) /
              static_cast<double>(sample.lr.size());
          g_sr += w * (row_op.transpose() * g_down * col_op);
          break;
        }
        default:
          break;
      }
    }

    grad.filter += conv_reflect_kernel_gradient(g_sr, up, k_size, k_size);
    grad.bias += g_sr.sum();
  }
  grad.filter *= inv_batch;
  grad.bias *= inv_batch;

  if (any_fd) {
    // One shared central-difference pass over the loss terms that lack an
    // analytic adjoint.
    const auto fd_loss = [&](const RestorerParams& p) -> double {
      double total = 0.0;
      for (const auto& sample : batch) {
        const Image sr_p = restore(p, sample.lr, scale);
        for (std::size_t k = 0; k < kinds.size(); ++k) {
          if (weights[k] == 0.0 || loss_has_analytic_gradient(kinds[k])) {
            continue;
          }
          total += weights[k] * loss_value(kinds[k], sr_p, sample, scale);
        }
      }
      return total * inv_batch;
    };

    RestorerParams probe = params;
    for (int p = 0; p < k_size; ++p) {
      for (int q = 0; q < k_size; ++q) {
        const double saved = probe.filter(p, q);
        probe.filter(p, q) = saved + fd_step;
        const double hi = fd_loss(probe);
        probe.filter(p, q) = saved - fd_step;
        const double lo = fd_loss(probe);
        probe.filter(p, q) = saved;
        grad.filter(p, q) += (hi - lo) / (2.0 * fd_step);
      }
    }
    const double saved = probe.bias;
    probe.bias = saved + fd_step;
    const double hi = fd_loss(probe);
    probe.bias = saved - fd_step;
    const double lo = fd_loss(probe);
    probe.bias = saved;
    grad.bias += (hi - lo) / (2.0 * fd_step);
  }
  return grad;
}

RestorerParams train(RestorerParams start, const std::vector<double>& weights,
                     const std::vector<LossKind>& kinds,
                     const std::vector<SamplePair>& train_set, int scale,
                     const TrainConfig& config) {
  if (config.steps < 0 || !(config.learning_rate > 0.0)) {
    throw std::invalid_argument("train: steps >= 0, learning_rate > 0");
  }
  RestorerParams params = std::move(start);
  for (int step = 0; step < config.steps; ++step) {
    const ParamGradient grad = combined_loss_gradient(
        weights, kinds, params, train_set, scale, config.fd_step);
    params.filter -= config.learning_rate * grad.filter;
    params.bias -= config.learning_rate * grad.bias;
  }
  return params;
}

double psnr_db(const Image& a, const Image& b, double cap_db) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.size() == 0) {
    throw std::invalid_argument("psnr_db: image size mismatch");
  }
  const double mse = (a - b).array().square().mean();
  if (mse <= 0.0) return cap_db;
  return std::min(cap_db, -10.0 * std::log10(mse));
}

double ssim_mean(const Image& a, const Image& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("ssim_mean: image size mismatch");
  }
  const int margin = kSsimWindow / 2;
  if (a.rows() <= 2 * margin || a.cols() <= 2 * margin) {
    throw std::invalid_argument("ssim_mean: image smaller than the window");
  }
  const Eigen::MatrixXd w = gaussian_window(kSsimWindow, kSsimSigma);
  const Image mu_a = conv_reflect(a, w);
  const Image mu_b = conv_reflect(b, w);
  const Image var_a =
      conv_reflect(a.cwiseProduct(a), w) - mu_a.cwiseProduct(mu_a);
  const Image var_b =
      conv_reflect(b.cwiseProduct(b), w) - mu_b.cwiseProduct(mu_b);
  const Image cov =
      conv_reflect(a.cwiseProduct(b), w) - mu_a.cwiseProduct(mu_b);

  const auto numer = (2.0 * mu_a.cwiseProduct(mu_b).array() + kSsimC1) *
                     (2.0 * cov.array() + kSsimC2);
  const auto denom =
      (mu_a.array().square() + mu_b.array().square() + kSsimC1) *
      (var_a.array() + var_b.array() + kSsimC2);
  const Image ssim_map = (numer / denom).matrix();
  return ssim_map
      .block(margin, margin, a.rows() - 2 * margin, a.cols() - 2 * margin)
      .mean();
}

double high_frequency_distance(const Image& a, const Image& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("high_frequency_distance: size mismatch");
  }
  return conv_reflect(a - b, laplacian_kernel()).cwiseAbs().mean();
}

MetricVector evaluate_metrics(const RestorerParams& params,
                              const std::vector<SamplePair>& validation,
                              int scale, double psnr_cap_db) {
  if (validation.empty()) {
    throw std::invalid_argument("evaluate_metrics: empty validation split");
  }
  MetricVector acc;
  for (const auto& sample : validation) {
    const Image sr = clamp01(restore(params, sample.lr, scale));
    acc.psnr_db += psnr_db(sr, sample.hr, psnr_cap_db);
    acc.ssim += ssim_mean(sr, sample.hr);
    const Image down = resample_bicubic(
        sr, static_cast<int>(sample.lr.rows()),
        static_cast<int>(sample.lr.cols()));
    acc.lr_psnr_db += psnr_db(down, sample.lr, psnr_cap_db);
    acc.hf_proxy += high_frequency_distance(sr, sample.hr);
  }
  const double inv = 1.0 / static_cast<double>(validation.size());
  acc.psnr_db *= inv;
  acc.ssim *= inv;
  acc.lr_psnr_db *= inv;
  acc.hf_proxy *= inv;
  return acc;
}

const std::vector<std::string>& restoration_metric_names() {
  static const std::vector<std::string> names = {"psnr", "ssim", "lr_psnr",
                                                 "hf_proxy"};
  return names;
}

bool restoration_metric_maximized(const std::string& name) {
  if (name == "psnr" || name == "ssim" || name == "lr_psnr") return true;
  if (name == "hf_proxy") return false;
  throw std::invalid_argument("unknown restoration metric: " + name);
}

RestorationEvaluator::RestorationEvaluator(RestorationBenchConfig config)
    : config_(std::move(config)),
      dataset_(synthesize_dataset(config_.dataset)),
      params_(RestorerParams::identity(config_.filter_size)) {
  if (config_.losses.empty()) {
    throw std::invalid_argument("restoration bench: no loss terms enabled");
  }
  for (std::size_t i = 0; i < config_.losses.size(); ++i) {
    for (std::size_t j = i + 1; j < config_.losses.size(); ++j) {
      if (config_.losses[i] == config_.losses[j]) {
        throw std::invalid_argument("restoration bench: duplicate loss term");
      }
    }
  }
  if (config_.objectives.empty()) {
    throw std::invalid_argument("restoration bench: no objectives selected");
  }
  for (std::size_t i = 0; i < config_.objectives.size(); ++i) {
    restoration_metric_maximized(config_.objectives[i]);  // validates name
    for (std::size_t j = i + 1; j < config_.objectives.size(); ++j) {
      if (config_.objectives[i] == config_.objectives[j]) {
        throw std::invalid_argument("restoration bench: duplicate objective");
      }
    }
  }
  if (!(config_.psnr_cap_db > 0.0)) {
    throw std::invalid_argument("restoration bench: psnr_cap_db > 0");
  }
}

std::vector<double> RestorationEvaluator::evaluate(
    const std::vector<double>& weights) {
  check_weights(weights, config_.losses);
  if (!config_.stateful) {
    params_ = RestorerParams::identity(config_.filter_size);
  }
  params_ = train(std::move(params_), weights, config_.losses, dataset_.train,
                  dataset_.scale, config_.train);
  const MetricVector metrics = evaluate_metrics(
      params_, dataset_.validation, dataset_.scale, config_.psnr_cap_db);
  std::vector<double> out;
  out.reserve(config_.objectives.size());
  for (const auto& name : config_.objectives) {
    if (name == "psnr") out.push_back(metrics.psnr_db);
    else if (name == "ssim") out.push_back(metrics.ssim);
    else if (name == "lr_psnr") out.push_back(metrics.lr_psnr_db);
    else out.push_back(metrics.hf_proxy);
  }
  return out;
}

std::string RestorationEvaluator::serialize_state() const {
  nlohmann::ordered_json state;
  state["filter"] = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < params_.filter.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index j = 0; j < params_.filter.cols(); ++j) {
      row.push_back(params_.filter(i, j));
    }
    state["filter"].push_back(std::move(row));
  }
  state["bias"] = params_.bias;
  return state.dump();
}

void RestorationEvaluator::restore_state(const std::string& state) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(state);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad evaluator state: ") +
                                e.what());
  }
  if (!parsed.contains("filter") || !parsed.contains("bias") ||
      !parsed["filter"].is_array() ||
      parsed["filter"].size() != static_cast<std::size_t>(config_.filter_size)) {
    throw std::invalid_argument("bad evaluator state: wrong shape");
  }
  Eigen::MatrixXd filter(config_.filter_size, config_.filter_size);
  for (int i = 0; i < config_.filter_size; ++i) {
    const auto& row = parsed["filter"][static_cast<std::size_t>(i)];
    if (!row.is_array() ||
        row.size() != static_cast<std::size_t>(config_.filter_size)) {
      throw std::invalid_argument("bad evaluator state: wrong shape");
    }
    for (int j = 0; j < config_.filter_size; ++j) {
      filter(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
  }
  params_.filter = std::move(filter);
  params_.bias = parsed["bias"].get<double>();
}

}  // namespace mobo

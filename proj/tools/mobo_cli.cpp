#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mobo/acquisition.hpp"
#include "mobo/archive_io.hpp"
#include "mobo/config.hpp"
#include "mobo/engine.hpp"
#include "mobo/gp.hpp"
#include "mobo/pareto.hpp"
#include "mobo/problems.hpp"
#include "mobo/restoration.hpp"

namespace {

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("MOBO_LOG");
    if (!env) return LogLevel::info;
    const std::string v(env);
    if (v == "quiet") return LogLevel::quiet;
    if (v == "debug") return LogLevel::debug;
    if (v == "info") return LogLevel::info;
    std::cerr << "warning: unknown MOBO_LOG value '" << v << "', using info\n";
    return LogLevel::info;
  }();
  return level;
}

bool log_info() { return log_level() >= LogLevel::info; }
bool log_debug() { return log_level() >= LogLevel::debug; }

std::string format_double(double v) { return nlohmann::json(v).dump(); }

std::string iso_utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string default_archive_path(const std::string& config_path) {
  std::filesystem::path p(config_path);
  p.replace_extension();
  return p.string() + ".archive.jsonl";
}

std::string state_path_of(const std::string& archive_path) {
  return archive_path + ".state.json";
}

std::string manifest_path_of(const std::string& archive_path) {
  return archive_path + ".manifest.json";
}

void write_manifest(const std::string& archive_path,
                    const std::string& config_path) {
  nlohmann::ordered_json manifest;
  manifest["config_path"] = config_path;
  manifest["archive_path"] = archive_path;
  manifest["created_utc"] = iso_utc_now();
  manifest["engine_version"] = mobo::kEngineVersion;
  std::ofstream out(manifest_path_of(archive_path), std::ios::trunc);
  if (out) out << manifest.dump(2) << "\n";
}

std::string manifest_config_path(const std::string& archive_path) {
  std::ifstream in(manifest_path_of(archive_path));
  if (!in) return {};
  try {
    nlohmann::json manifest;
    in >> manifest;
    return manifest.value("config_path", std::string{});
  } catch (const nlohmann::json::exception&) {
    return {};
  }
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

double archive_hypervolume(const mobo::ParetoArchive& archive,
                           double slack_fraction, double min_slack) {
  const auto canonical = archive.canonical_points();
  if (canonical.empty() || canonical.front().size() > 3) return 0.0;
  const auto reference =
      mobo::reference_point(canonical, slack_fraction, min_slack);
  return mobo::hypervolume(mobo::extract_front(canonical), reference);
}

void print_observation_line(const mobo::Observation& obs,
                            const mobo::ParetoArchive& archive, int target,
                            double slack_fraction, double min_slack) {
  if (!log_info()) return;
  std::cout << "[" << obs.iteration << "/" << target << "] "
            << to_string(obs.phase) << " weights=(" << join_doubles(obs.weights)
            << ") objectives=(" << join_doubles(obs.objectives_raw)
            << ") front=" << archive.front_indices().size();
  if (obs.objectives_raw.size() <= 3) {
    std::cout << " hv="
              << format_double(
                     archive_hypervolume(archive, slack_fraction, min_slack));
  }
  std::cout << " eval=" << format_double(obs.eval_wall_seconds)
            << "s fit=" << format_double(obs.fit_wall_seconds)
            << "s propose=" << format_double(obs.propose_wall_seconds) << "s";
  if (log_debug() && !obs.reference.empty()) {
    std::cout << " reference=(" << join_doubles(obs.reference) << ")";
  }
  std::cout << "\n" << std::flush;
}

struct LoadedRun {
  mobo::RunConfig config;
  std::unique_ptr<mobo::Evaluator> evaluator;
  std::vector<std::string> weight_names;
  std::vector<std::string> objective_names;
};

LoadedRun prepare_run(const std::string& config_path) {
  LoadedRun run;
  run.config = mobo::load_config(config_path);
  run.evaluator = mobo::make_evaluator(run.config);
  for (const auto& b : mobo::weight_bounds_of(run.config)) {
    run.weight_names.push_back(b.name);
  }
  for (const auto& o : mobo::objectives_of(run.config)) {
    run.objective_names.push_back(o.name);
  }
  return run;
}

mobo::Engine make_engine(const LoadedRun& run) {
  return mobo::Engine(run.config.engine, mobo::weight_bounds_of(run.config),
                      mobo::orientation_of(run.config), *run.evaluator);
}

void attach_persistence(mobo::Engine& engine, mobo::ArchiveWriter& writer,
                        mobo::Evaluator& evaluator,
                        const std::string& state_path) {
  const int target = engine.target_observations();
  const double slack_fraction = engine.config().reference_slack_fraction;
  const double min_slack = engine.config().reference_min_slack;
  engine.set_observation_sink(
      [&writer, &evaluator, state_path, target, slack_fraction, min_slack](
          const mobo::Observation& obs, const mobo::ParetoArchive& archive) {
        writer.append(obs);
        if (evaluator.is_stateful()) {
          mobo::write_state_file(state_path, static_cast<int>(archive.size()),
                                 evaluator.serialize_state());
        }
        print_observation_line(obs, archive, target, slack_fraction,
                               min_slack);
      });
}

void print_run_summary(const mobo::ParetoArchive& archive,
                       const mobo::RunConfig& config,
                       const std::string& archive_path) {
  const auto canonical = archive.canonical_points();
  const auto front = mobo::extract_front(canonical);
  std::cout << "archive: " << archive_path << "\n";
  std::cout << "observations: " << archive.size() << "\n";
  std::cout << "front size: " << front.size() << "\n";
  const std::size_t m = mobo::orientation_of(config).size();
  if (m <= 3 && !canonical.empty()) {
    const auto reference = mobo::reference_point(
        canonical, config.engine.reference_slack_fraction,
        config.engine.reference_min_slack);
    std::cout << "hypervolume: "
              << format_double(mobo::hypervolume(front, reference))
              << " (reference " << join_doubles(reference) << ")\n";
  }
}

void check_config_consistency(const std::string& archive_path,
                              const std::string& config_path) {
  const std::string recorded = manifest_config_path(archive_path);
  if (!recorded.empty() && recorded != config_path && log_info()) {
    std::cout << "note: archive was created from " << recorded
              << ", resuming with " << config_path << "\n";
  }
}

int cmd_init(const std::string& path, const std::string& problem, bool force) {
  if (!force && std::filesystem::exists(path)) {
    std::cerr << "error: " << path << " already exists (use --force)\n";
    return 1;
  }
  const mobo::ProblemKind kind = mobo::problem_kind_from_string(problem);
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 1;
  }
  out << mobo::default_config_text(kind);
  if (log_info()) std::cout << "wrote " << path << "\n";
  return 0;
}

int cmd_run(const std::string& config_path, std::string archive_path) {
  if (archive_path.empty()) archive_path = default_archive_path(config_path);
  if (std::filesystem::exists(archive_path) &&
      std::filesystem::file_size(archive_path) > 0) {
    std::cerr << "error: archive " << archive_path
              << " already has observations; use resume\n";
    return 1;
  }
  LoadedRun run = prepare_run(config_path);
  mobo::Engine engine = make_engine(run);
  mobo::ArchiveWriter writer(archive_path);
  write_manifest(archive_path, config_path);
  attach_persistence(engine, writer, *run.evaluator,
                     state_path_of(archive_path));
  engine.run();
  print_run_summary(engine.archive(), run.config, archive_path);
  return 0;
}

int cmd_resume(const std::string& config_path, std::string archive_path) {
  if (archive_path.empty()) archive_path = default_archive_path(config_path);
  LoadedRun run = prepare_run(config_path);
  mobo::Engine engine = make_engine(run);

  const mobo::ArchiveLoadResult loaded =
      mobo::load_archive(archive_path, /*strict=*/true);
  for (const auto& [line, reason] : loaded.skipped) {
    std::cerr << "warning: dropped archive line " << line << ": " << reason
              << "\n";
  }
  check_config_consistency(archive_path, config_path);
  engine.load_existing(loaded.observations);

  if (run.evaluator->is_stateful() && !loaded.observations.empty()) {
    const mobo::StateFile state =
        mobo::read_state_file(state_path_of(archive_path));
    std::size_t replay_from = 0;
    if (state.loaded && state.observation_count >= 0 &&
        static_cast<std::size_t>(state.observation_count) <=
            loaded.observations.size()) {
      run.evaluator->restore_state(state.evaluator_state);
      replay_from = static_cast<std::size_t>(state.observation_count);
    }
    if (replay_from < loaded.observations.size()) {
      if (log_info()) {
        std::cout << "rebuilding evaluator state: replaying "
                  << (loaded.observations.size() - replay_from)
                  << " archived evaluation(s)\n";
      }
      mobo::replay_observations(
          *run.evaluator,
          {loaded.observations.begin() +
               static_cast<std::ptrdiff_t>(replay_from),
           loaded.observations.end()});
    }
  }

  mobo::ArchiveWriter writer(archive_path);
  if (!std::filesystem::exists(manifest_path_of(archive_path))) {
    write_manifest(archive_path, config_path);
  }
  attach_persistence(engine, writer, *run.evaluator,
                     state_path_of(archive_path));

  if (static_cast<int>(engine.archive().size()) >=
      engine.target_observations()) {
    if (log_info()) std::cout << "archive already complete, nothing to do\n";
    print_run_summary(engine.archive(), run.config, archive_path);
    return 0;
  }
  engine.run();
  print_run_summary(engine.archive(), run.config, archive_path);
  return 0;
}

struct NamedArchive {
  std::vector<mobo::Observation> observations;
  std::vector<std::string> weight_names;
  std::vector<std::string> objective_names;
  mobo::RunConfig config;
  bool have_config = false;
  bool had_corrupt_records = false;
};

NamedArchive load_named_archive(const std::string& archive_path,
                                std::string config_path) {
  NamedArchive out;
  const mobo::ArchiveLoadResult loaded =
      mobo::load_archive(archive_path, /*strict=*/false);
  for (const auto& [line, reason] : loaded.skipped) {
    std::cerr << "warning: skipped archive line " << line << ": " << reason
              << "\n";
  }
  out.had_corrupt_records = !loaded.skipped.empty();
  out.observations = loaded.observations;
  if (out.observations.empty()) {
    throw mobo::ArchiveError("archive " + archive_path +
                             " holds no readable observations");
  }

  if (config_path.empty()) config_path = manifest_config_path(archive_path);
  if (!config_path.empty() && std::filesystem::exists(config_path)) {
    try {
      out.config = mobo::load_config(config_path);
      out.have_config = true;
    } catch (const mobo::ConfigError&) {
      out.have_config = false;
    }
  }

  const std::size_t d = out.observations.front().weights.size();
  const std::size_t m = out.observations.front().objectives_raw.size();
  if (out.have_config) {
    for (const auto& b : mobo::weight_bounds_of(out.config)) {
      out.weight_names.push_back(b.name);
    }
    for (const auto& o : mobo::objectives_of(out.config)) {
      out.objective_names.push_back(o.name);
    }
  }
  if (out.weight_names.size() != d) {
    out.weight_names.clear();
    for (std::size_t j = 0; j < d; ++j) {
      out.weight_names.push_back("w" + std::to_string(j + 1));
    }
  }
  if (out.objective_names.size() != m) {
    out.objective_names.clear();
    for (std::size_t j = 0; j < m; ++j) {
      out.objective_names.push_back("obj" + std::to_string(j + 1));
    }
  }
  return out;
}

void write_csv(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write csv file " + path);
  out << content;
}

int cmd_pareto(const std::string& archive_path, const std::string& config_path,
               const std::string& csv_path) {
  const NamedArchive archive = load_named_archive(archive_path, config_path);

  mobo::ParetoArchive store;
  for (const auto& obs : archive.observations) store.append(obs);
  std::vector<const mobo::Observation*> front = store.front();
  std::stable_sort(front.begin(), front.end(),
                   [](const mobo::Observation* a, const mobo::Observation* b) {
                     return a->objectives_raw[0] > b->objectives_raw[0];
                   });

  std::ostringstream csv;
  csv << "iteration";
  for (const auto& n : archive.weight_names) csv << "," << n;
  for (const auto& n : archive.objective_names) csv << "," << n;
  csv << "\n";
  for (const mobo::Observation* obs : front) {
    csv << obs->iteration;
    for (double w : obs->weights) csv << "," << format_double(w);
    for (double v : obs->objectives_raw) csv << "," << format_double(v);
    csv << "\n";
  }

  if (!csv_path.empty()) {
    write_csv(csv_path, csv.str());
    if (log_info()) {
      std::cout << "front size " << front.size() << ", wrote " << csv_path
                << "\n";
    }
  } else {
    std::cout << csv.str();
  }
  return archive.had_corrupt_records ? 1 : 0;
}

int cmd_report(const std::string& archive_path, const std::string& config_path,
               const std::string& csv_path) {
  const NamedArchive archive = load_named_archive(archive_path, config_path);

  double slack_fraction = 0.1;
  double min_slack = 1e-6;
  if (archive.have_config) {
    slack_fraction = archive.config.engine.reference_slack_fraction;
    min_slack = archive.config.engine.reference_min_slack;
  }

  // One fixed reference over the whole run makes the hypervolume column a
  // monotone trace of front progress.
  mobo::ParetoArchive store;
  std::vector<mobo::ObjectiveVector> all_canonical;
  for (const auto& obs : archive.observations) {
    all_canonical.push_back(obs.canonical());
  }
  const mobo::ObjectiveVector reference =
      mobo::reference_point(all_canonical, slack_fraction, min_slack);
  const std::size_t m = reference.size();

  std::ostringstream csv;
  csv << "iteration,phase";
  for (const auto& n : archive.objective_names) csv << "," << n;
  csv << ",front_size,hypervolume,eval_wall_seconds,fit_wall_seconds,"
         "propose_wall_seconds,cumulative_eval_seconds,"
         "cumulative_optimizer_seconds\n";

  std::vector<mobo::ObjectiveVector> seen;
  double cumulative_eval = 0.0;
  double cumulative_optimizer = 0.0;
  for (const auto& obs : archive.observations) {
    store.append(obs);
    seen.push_back(obs.canonical());
    const auto front = mobo::extract_front(seen);
    double hv = 0.0;
    if (m <= 3) {
      hv = mobo::hypervolume(front, reference);
    } else {
      hv = mobo::hypervolume_mc(front, reference, 4096, 0).value;
    }
    cumulative_eval += obs.eval_wall_seconds;
    cumulative_optimizer += obs.fit_wall_seconds + obs.propose_wall_seconds;
    csv << obs.iteration << "," << to_string(obs.phase);
    for (double v : obs.objectives_raw) csv << "," << format_double(v);
    csv << "," << front.size() << "," << format_double(hv) << ","
        << format_double(obs.eval_wall_seconds) << ","
        << format_double(obs.fit_wall_seconds) << ","
        << format_double(obs.propose_wall_seconds) << ","
        << format_double(cumulative_eval) << ","
        << format_double(cumulative_optimizer) << "\n";
  }

  if (!csv_path.empty()) {
    write_csv(csv_path, csv.str());
    if (log_info()) {
      std::cout << "reported " << archive.observations.size()
                << " observations, wrote " << csv_path << "\n";
    }
  } else {
    std::cout << csv.str();
  }
  return archive.had_corrupt_records ? 1 : 0;
}

class BenchReport {
 public:
  void check(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
    if (!ok) ++failures_;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

void bench_geometry(BenchReport& report) {
  const std::vector<mobo::ObjectiveVector> front = {{1, 3}, {2, 2}, {3, 1}};
  const double hv = mobo::hypervolume(front, {0, 0});
  report.check("hypervolume staircase", hv == 6.0,
               "union of 3 rectangles = " + format_double(hv) + ", want 6");

  const double hvi = mobo::hypervolume_improvement({{4, 4}}, front, {0, 0});
  report.check("hypervolume improvement", hvi == 10.0,
               "dominating candidate adds " + format_double(hvi) +
                   ", want 16 - 6 = 10");

  const std::vector<mobo::ObjectiveVector> front3 = {
      {3, 1, 2}, {1, 3, 2}, {2, 2, 3}};
  const double exact = mobo::hypervolume(front3, {0, 0, 0});
  const auto mc = mobo::hypervolume_mc(front3, {0, 0, 0}, 200000, 1);
  const double limit = 4.0 * mc.std_error;
  report.check("hypervolume Monte Carlo", std::abs(exact - mc.value) <= limit,
               "exact " + format_double(exact) + " vs estimate " +
                   format_double(mc.value) + " +- " +
                   format_double(mc.std_error));
}

void bench_surrogate(BenchReport& report) {
  Eigen::MatrixXd inputs(5, 1);
  inputs << 0.05, 0.3, 0.5, 0.7, 0.95;
  Eigen::VectorXd targets(5);
  targets << 0.2, -0.9, 0.4, 1.1, -0.5;

  mobo::GpHyperparameters hyp;
  hyp.lengthscales = Eigen::VectorXd::Constant(1, 0.3);
  hyp.signal_variance = 1.0;
  hyp.noise_variance = 1e-6;
  const mobo::GpModel model = mobo::make_gp(inputs, targets, hyp);

  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto pred = mobo::predict(model, inputs.row(i).transpose());
    worst = std::max(worst, std::abs(pred.mean - targets[i]));
  }
  report.check("surrogate interpolation", worst <= 1e-3,
               "max training residual " + format_double(worst) +
                   " at the noise floor");

  const auto far = mobo::predict(model, Eigen::VectorXd::Constant(1, 60.0));
  const bool prior = std::abs(far.mean - hyp.constant_mean) <= 0.01 &&
                     std::abs(far.variance - hyp.signal_variance) <= 0.01;
  report.check("surrogate far field", prior,
               "mean " + format_double(far.mean) + ", variance " +
                   format_double(far.variance) + " vs prior (0, 1)");
}

void bench_acquisition(BenchReport& report) {
  // E[max(0, N(0,1))] = 1/sqrt(2 pi).
  const double ei = mobo::expected_improvement(0.0, 1.0, 0.0);
  const double want = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  report.check("expected improvement", std::abs(ei - want) <= 1e-12,
               format_double(ei) + " vs 1/sqrt(2 pi)");

  Eigen::MatrixXd inputs(4, 1);
  inputs << 0.1, 0.4, 0.6, 0.9;
  Eigen::VectorXd t1(4), t2(4);
  t1 << -1.0, -0.2, 0.5, 1.2;
  t2 << 1.1, 0.6, -0.1, -1.0;
  mobo::GpHyperparameters hyp;
  hyp.lengthscales = Eigen::VectorXd::Constant(1, 0.4);
  hyp.signal_variance = 1.0;
  hyp.noise_variance = 1e-4;

  mobo::AcquisitionContext ctx;
  ctx.models.push_back(mobo::make_gp(inputs, t1, hyp));
  ctx.models.push_back(mobo::make_gp(inputs, t2, hyp));
  ctx.front = {{-1.0, 1.1}, {0.5, -0.1}, {1.2, -1.0}};
  ctx.reference = {-2.0, -2.0};
  ctx.mc_samples = 1 << 14;
  ctx.seed = 11;

  const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 0.5);
  const double exact = mobo::ehvi_exact_2d(ctx, x);
  const auto mc = mobo::ehvi_mc(ctx, x);
  const double limit = 4.0 * mc.std_error + 1e-12;
  report.check("expected hypervolume improvement",
               std::abs(exact - mc.value) <= limit,
               "exact " + format_double(exact) + " vs Monte Carlo " +
                   format_double(mc.value) + " +- " +
                   format_double(mc.std_error));
}

void bench_problems(BenchReport& report) {
  std::vector<double> x(6, 0.0);
  const auto at_zero = mobo::evaluate_zdt1(x);
  x[0] = 1.0;
  const auto at_one = mobo::evaluate_zdt1(x);
  report.check("zdt1 endpoints",
               at_zero[0] == 0.0 && at_zero[1] == 1.0 && at_one[0] == 1.0 &&
                   at_one[1] == 0.0,
               "(0,...,0) -> (" + join_doubles(at_zero) + "), (1,0,...,0) -> (" +
                   join_doubles(at_one) + ")");

  const auto toy = mobo::evaluate_toy_tradeoff({0.5});
  report.check("toy tradeoff", toy[0] == 0.5 && toy[1] == 0.75,
               "f(0.5) = (" + join_doubles(toy) + "), want (0.5, 0.75)");
}

void bench_engine(BenchReport& report) {
  mobo::RunConfig run;
  run.problem = mobo::ProblemKind::toy_tradeoff;
  run.engine.warm_start_count = 6;
  run.engine.total_iterations = 8;
  run.engine.master_seed = 3;
  run.engine.gp_restarts = 3;
  run.engine.gp_search_iterations = 25;

  const auto evaluator = mobo::make_evaluator(run);
  mobo::Engine engine(run.engine, mobo::weight_bounds_of(run),
                      mobo::orientation_of(run), *evaluator);
  engine.warm_start();
  const double warm_hv = archive_hypervolume(engine.archive(), 0.1, 1e-6);
  engine.run();
  const double final_hv = archive_hypervolume(engine.archive(), 0.1, 1e-6);
  report.check("optimizer progress", final_hv > warm_hv,
               "hypervolume " + format_double(warm_hv) + " after warm start, " +
                   format_double(final_hv) + " after 8 proposals");
}

void bench_trainer(int image_size, int scale, int steps) {
  using Clock = std::chrono::steady_clock;

  mobo::RestorationBenchConfig bench;
  bench.dataset.image_size = image_size;
  bench.dataset.scale = scale;
  bench.train.steps = steps;
  bench.losses = {mobo::LossKind::l1, mobo::LossKind::ssim,
                  mobo::LossKind::fft};
  bench.objectives = {"psnr", "ssim", "lr_psnr", "hf_proxy"};

  const auto t0 = Clock::now();
  mobo::RestorationEvaluator evaluator(bench);
  const double synth_s =
      std::chrono::duration<double>(Clock::now() - t0).count();

  const mobo::MetricVector before = mobo::evaluate_metrics(
      evaluator.params(), evaluator.dataset().validation,
      evaluator.dataset().scale, bench.psnr_cap_db);

  const std::vector<double> weights = {0.01, 1.0, 0.005};
  const auto t1 = Clock::now();
  const std::vector<double> after = evaluator.evaluate(weights);
  const double train_s =
      std::chrono::duration<double>(Clock::now() - t1).count();

  std::cout << "dataset: " << evaluator.dataset().train.size() << " train + "
            << evaluator.dataset().validation.size() << " validation, "
            << image_size << "x" << image_size << ", scale " << scale << " ("
            << format_double(synth_s) << "s)\n";
  std::cout << "bicubic start: psnr=" << format_double(before.psnr_db)
            << " ssim=" << format_double(before.ssim)
            << " lr_psnr=" << format_double(before.lr_psnr_db)
            << " hf_proxy=" << format_double(before.hf_proxy) << "\n";
  std::cout << "after " << steps << " steps at weights ("
            << join_doubles(weights) << "): psnr=" << format_double(after[0])
            << " ssim=" << format_double(after[1])
            << " lr_psnr=" << format_double(after[2])
            << " hf_proxy=" << format_double(after[3]) << " ("
            << format_double(train_s) << "s)\n";
}

int cmd_bench(bool trainer, int image_size, int scale, int steps) {
  BenchReport report;
  bench_geometry(report);
  bench_surrogate(report);
  bench_acquisition(report);
  bench_problems(report);
  bench_engine(report);
  if (trainer) bench_trainer(image_size, scale, steps);
  if (report.failures() > 0) {
    std::cout << report.failures() << " check(s) failed\n";
    return 1;
  }
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective Bayesian optimization of loss weights"};
  app.require_subcommand(1);

  std::string init_path = "mobo.ini";
  std::string init_problem = "restoration";
  bool init_force = false;
  CLI::App* init = app.add_subcommand("init", "write a default config file");
  init->add_option("path", init_path, "config file to create");
  init->add_option("--problem", init_problem,
                   "restoration, zdt1 or toy_tradeoff");
  init->add_flag("--force", init_force, "overwrite an existing file");

  std::string run_config;
  std::string run_archive;
  CLI::App* run = app.add_subcommand("run", "start a fresh optimization run");
  run->add_option("config", run_config, "run config file")->required();
  run->add_option("--archive", run_archive,
                  "archive path (default: derived from the config path)");

  std::string resume_config;
  std::string resume_archive;
  CLI::App* resume =
      app.add_subcommand("resume", "continue an interrupted run");
  resume->add_option("config", resume_config, "run config file")->required();
  resume->add_option("--archive", resume_archive,
                     "archive path (default: derived from the config path)");

  std::string pareto_archive;
  std::string pareto_config;
  std::string pareto_csv;
  CLI::App* pareto =
      app.add_subcommand("pareto", "print or export the Pareto front");
  pareto->add_option("archive", pareto_archive, "archive file")->required();
  pareto->add_option("--config", pareto_config,
                     "config file for column names (default: from manifest)");
  pareto->add_option("--csv", pareto_csv, "write CSV here instead of stdout");

  std::string report_archive;
  std::string report_config;
  std::string report_csv;
  CLI::App* report =
      app.add_subcommand("report", "per-iteration progress report");
  report->add_option("archive", report_archive, "archive file")->required();
  report->add_option("--config", report_config,
                     "config file for column names (default: from manifest)");
  report->add_option("--csv", report_csv, "write CSV here instead of stdout");

  bool bench_trainer_flag = false;
  int bench_size = 32;
  int bench_scale = 2;
  int bench_steps = 25;
  CLI::App* bench = app.add_subcommand(
      "bench", "run the analytic validation suite and print pass/fail");
  bench->add_flag("--trainer", bench_trainer_flag,
                  "also time a restoration training evaluation");
  bench->add_option("--size", bench_size, "trainer image size");
  bench->add_option("--scale", bench_scale, "trainer downsampling factor");
  bench->add_option("--steps", bench_steps, "trainer gradient steps");

  CLI11_PARSE(app, argc, argv);

  try {
    if (init->parsed()) return cmd_init(init_path, init_problem, init_force);
    if (run->parsed()) return cmd_run(run_config, run_archive);
    if (resume->parsed()) return cmd_resume(resume_config, resume_archive);
    if (pareto->parsed()) {
      return cmd_pareto(pareto_archive, pareto_config, pareto_csv);
    }
    if (report->parsed()) {
      return cmd_report(report_archive, report_config, report_csv);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_trainer_flag, bench_size, bench_scale,
                       bench_steps);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

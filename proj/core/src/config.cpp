#include "mobo/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mobo/problems.hpp"

namespace mobo {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) throw std::invalid_argument("empty list element");
    out.push_back(t);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

struct RawEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct RawSection {
  std::string name;
  int line = 0;
  std::vector<RawEntry> entries;
};

std::vector<RawSection> tokenize(const std::string& text) {
  std::vector<RawSection> sections;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    const auto hash = raw_line.find('#');
    std::string line =
        trim(hash == std::string::npos ? raw_line : raw_line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": malformed section header");
      }
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (!seen.insert(name).second) {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": duplicate section [" + name + "]");
      }
      sections.push_back({name, line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    if (sections.empty()) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": key outside any section");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": empty key or value");
    }
    for (const auto& e : sections.back().entries) {
      if (e.key == key) {
        throw ConfigError("line " + std::to_string(line_no) +
                          ": duplicate key " + key);
      }
    }
    sections.back().entries.push_back({key, value, line_no});
  }
  return sections;
}

/// Typed accessor over one raw section that tracks which keys were
/// consumed, so anything left over is reported as unknown.
class SectionView {
 public:
  explicit SectionView(const RawSection* section) : section_(section) {}

  bool present() const { return section_ != nullptr; }

  const RawEntry* find(const std::string& key) {
    if (!section_) return nullptr;
    for (const auto& e : section_->entries) {
      if (e.key == key) {
        used_.insert(key);
        return &e;
      }
    }
    return nullptr;
  }

  template <typename Parse>
  auto get(const std::string& key, Parse parse)
      -> std::optional<decltype(parse(std::string{}))> {
    const RawEntry* e = find(key);
    if (!e) return std::nullopt;
    try {
      return parse(e->value);
    } catch (const std::exception& ex) {
      throw ConfigError("line " + std::to_string(e->line) + ": bad value for " +
                        key + ": " + ex.what());
    }
  }

  void finish() const {
    if (!section_) return;
    for (const auto& e : section_->entries) {
      if (!used_.count(e.key)) {
        throw ConfigError("line " + std::to_string(e.line) + ": unknown key " +
                          e.key + " in [" + section_->name + "]");
      }
    }
  }

 private:
  const RawSection* section_;
  std::set<std::string> used_;
};

long long parse_ll(const std::string& v) {
  std::size_t pos = 0;
  const long long out = std::stoll(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("trailing characters");
  return out;
}

int parse_int(const std::string& v) {
  const long long out = parse_ll(v);
  if (out < std::numeric_limits<int>::min() ||
      out > std::numeric_limits<int>::max()) {
    throw std::invalid_argument("out of int range");
  }
  return static_cast<int>(out);
}

std::uint64_t parse_u64(const std::string& v) {
  if (!v.empty() && v.front() == '-') throw std::invalid_argument("negative");
  std::size_t pos = 0;
  const unsigned long long out = std::stoull(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("trailing characters");
  return out;
}

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  const double out = std::stod(v, &pos);
  if (pos != v.size()) throw std::invalid_argument("trailing characters");
  if (!std::isfinite(out)) throw std::invalid_argument("not finite");
  return out;
}

std::size_t parse_size(const std::string& v) {
  const long long out = parse_ll(v);
  if (out < 0) throw std::invalid_argument("negative");
  return static_cast<std::size_t>(out);
}

std::vector<double> parse_double_list(const std::string& v) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_double(item));
  return out;
}

std::string format_double(double v) {
  // Shortest representation that parses back to the same double.
  return nlohmann::json(v).dump();
}

const RawSection* section_named(const std::vector<RawSection>& sections,
                                const std::string& name) {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

void read_engine_section(SectionView& view, EngineConfig& engine) {
  if (auto v = view.get("master_seed", parse_u64)) engine.master_seed = *v;
  if (auto v = view.get("warm_start_count", parse_int)) {
    engine.warm_start_count = *v;
  }
  if (auto v = view.get("pretrain_epochs", parse_int)) {
    engine.pretrain_epochs = *v;
  }
  if (auto v = view.get("fixed_warm_weights", parse_double_list)) {
    engine.fixed_warm_weights = *v;
  }
  if (auto v = view.get("total_iterations", parse_int)) {
    engine.total_iterations = *v;
  }
  if (auto v = view.get("window", parse_int)) engine.window = *v;
  if (auto v = view.get("mc_samples", parse_u64)) engine.mc_samples = *v;
  if (auto v = view.get("scan_points", parse_size)) engine.scan_points = *v;
  if (auto v = view.get("refine_restarts", parse_size)) {
    engine.refine_restarts = *v;
  }
  if (auto v = view.get("refine_iterations", parse_size)) {
    engine.refine_iterations = *v;
  }
  if (auto v = view.get("reference_slack_fraction", parse_double)) {
    engine.reference_slack_fraction = *v;
  }
  if (auto v = view.get("reference_min_slack", parse_double)) {
    engine.reference_min_slack = *v;
  }
  if (auto v = view.get("gp_restarts", parse_int)) engine.gp_restarts = *v;
  if (auto v = view.get("gp_search_iterations", parse_int)) {
    engine.gp_search_iterations = *v;
  }
  view.finish();
}

void validate_config(const RunConfig& config) {
  const auto fail = [](const std::string& msg) { throw ConfigError(msg); };

  if (config.problem == ProblemKind::restoration) {
    if (config.dataset_count < 2) fail("dataset_count must be >= 2");
    if (config.image_size < 16) fail("image_size must be >= 16");
    if (config.scale < 2) fail("scale must be >= 2");
    if (config.image_size % config.scale != 0) {
      fail("image_size must be divisible by scale");
    }
    if (config.filter_size < 1 || config.filter_size % 2 == 0) {
      fail("filter_size must be odd and positive");
    }
    if (config.train_steps < 0) fail("train_steps must be >= 0");
    if (!(config.learning_rate > 0.0)) fail("learning_rate must be > 0");
    if (!(config.psnr_cap_db > 0.0)) fail("psnr_cap_db must be > 0");

    if (config.weights.empty()) {
      fail("restoration runs need at least one [weights.<loss>] section");
    }
    for (const auto& w : config.weights) {
      loss_kind_from_string(w.name);  // throws on unknown loss
      if (w.lower < 0.0) fail("weight " + w.name + ": lower must be >= 0");
      if (!(w.lower < w.upper)) {
        fail("weight " + w.name + ": lower must be < upper");
      }
    }
    if (config.objectives.size() < 2) {
      fail("at least 2 objectives are required");
    }
    for (std::size_t i = 0; i < config.objectives.size(); ++i) {
      restoration_metric_maximized(config.objectives[i].name);  // validates
      for (std::size_t j = i + 1; j < config.objectives.size(); ++j) {
        if (config.objectives[i].name == config.objectives[j].name) {
          fail("duplicate objective " + config.objectives[i].name);
        }
      }
    }
  } else if (config.problem == ProblemKind::zdt1) {
    if (config.zdt1_dim < 2) fail("zdt1 dim must be >= 2");
  }

  const auto& engine = config.engine;
  if (engine.warm_start_count < 2) fail("warm_start_count must be >= 2");
  if (engine.total_iterations < 0) fail("total_iterations must be >= 0");
  if (engine.pretrain_epochs < 0) fail("pretrain_epochs must be >= 0");
  const bool has_fixed = !engine.fixed_warm_weights.empty();
  if (has_fixed != (engine.pretrain_epochs > 0)) {
    fail("pretrain_epochs and fixed_warm_weights must be set together");
  }
  if (has_fixed) {
    const auto bounds = weight_bounds_of(config);
    if (engine.fixed_warm_weights.size() != bounds.size()) {
      fail("fixed_warm_weights must have one value per weight");
    }
    for (std::size_t j = 0; j < bounds.size(); ++j) {
      if (engine.fixed_warm_weights[j] < bounds[j].lower ||
          engine.fixed_warm_weights[j] > bounds[j].upper) {
        fail("fixed_warm_weights[" + std::to_string(j) +
             "] is outside the " + bounds[j].name + " bounds");
      }
    }
  }
  if (engine.window != 0 && engine.window < 2) fail("window is 0 or >= 2");
  if (engine.mc_samples < 2) fail("mc_samples must be >= 2");
  if (engine.scan_points == 0) fail("scan_points must be >= 1");
  if (engine.refine_restarts == 0) fail("refine_restarts must be >= 1");
  if (engine.reference_slack_fraction < 0.0) {
    fail("reference_slack_fraction must be >= 0");
  }
  if (!(engine.reference_min_slack > 0.0)) {
    fail("reference_min_slack must be > 0");
  }
  if (engine.gp_restarts < 1) fail("gp_restarts must be >= 1");
  if (engine.gp_search_iterations < 1) {
    fail("gp_search_iterations must be >= 1");
  }
}

class AnalyticEvaluator : public Evaluator {
 public:
  AnalyticEvaluator(ProblemKind kind, int dim) : kind_(kind), dim_(dim) {}

  std::size_t weight_dim() const override {
    return static_cast<std::size_t>(dim_);
  }
  std::size_t objective_dim() const override { return 2; }

  std::vector<double> evaluate(const std::vector<double>& weights) override {
    return kind_ == ProblemKind::zdt1 ? evaluate_zdt1(weights)
                                      : evaluate_toy_tradeoff(weights);
  }

 private:
  ProblemKind kind_;
  int dim_;
};

}  // namespace

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::restoration: return "restoration";
    case ProblemKind::zdt1: return "zdt1";
    case ProblemKind::toy_tradeoff: return "toy_tradeoff";
  }
  throw std::logic_error("unreachable problem kind");
}

ProblemKind problem_kind_from_string(const std::string& s) {
  if (s == "restoration") return ProblemKind::restoration;
  if (s == "zdt1") return ProblemKind::zdt1;
  if (s == "toy_tradeoff") return ProblemKind::toy_tradeoff;
  throw std::invalid_argument("unknown problem kind: " + s);
}

RunConfig parse_config_text(const std::string& text) {
  const std::vector<RawSection> sections = tokenize(text);

  const RawSection* problem_section = section_named(sections, "problem");
  if (!problem_section) throw ConfigError("missing [problem] section");

  RunConfig config;
  SectionView problem(problem_section);
  {
    const RawEntry* kind = problem.find("kind");
    if (!kind) throw ConfigError("missing key kind in [problem]");
    try {
      config.problem = problem_kind_from_string(kind->value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("line " + std::to_string(kind->line) + ": " + e.what());
    }
  }

  std::set<std::string> allowed = {"problem", "engine"};
  if (config.problem == ProblemKind::restoration) {
    if (auto v = problem.get("dataset_seed", parse_u64)) config.dataset_seed = *v;
    if (auto v = problem.get("dataset_count", parse_int)) {
      config.dataset_count = *v;
    }
    if (auto v = problem.get("image_size", parse_int)) config.image_size = *v;
    if (auto v = problem.get("scale", parse_int)) config.scale = *v;
    if (auto v = problem.get("filter_size", parse_int)) config.filter_size = *v;
    if (auto v = problem.get("train_steps", parse_int)) config.train_steps = *v;
    if (auto v = problem.get("learning_rate", parse_double)) {
      config.learning_rate = *v;
    }
    if (const RawEntry* mode = problem.find("mode")) {
      if (mode->value == "stateful") {
        config.stateful = true;
      } else if (mode->value == "fresh") {
        config.stateful = false;
      } else {
        throw ConfigError("line " + std::to_string(mode->line) +
                          ": mode must be stateful or fresh");
      }
    }
    if (auto v = problem.get("psnr_cap_db", parse_double)) {
      config.psnr_cap_db = *v;
    }
    allowed.insert("objectives");
  } else if (config.problem == ProblemKind::zdt1) {
    if (auto v = problem.get("dim", parse_int)) config.zdt1_dim = *v;
  }
  problem.finish();

  for (const auto& section : sections) {
    const bool weight_section = section.name.rfind("weights.", 0) == 0;
    if (weight_section && config.problem != ProblemKind::restoration) {
      throw ConfigError("line " + std::to_string(section.line) +
                        ": [" + section.name + "] is only valid for restoration");
    }
    if (!weight_section && !allowed.count(section.name)) {
      throw ConfigError("line " + std::to_string(section.line) +
                        ": unknown section [" + section.name + "]");
    }
  }

  if (config.problem == ProblemKind::restoration) {
    // Objectives: explicit section or the default perception-distortion
    // pair. Directions default to each metric's natural sense.
    config.objectives.clear();
    const RawSection* objectives_section =
        section_named(sections, "objectives");
    if (objectives_section) {
      SectionView view(objectives_section);
      const RawEntry* names = view.find("names");
      if (!names) {
        throw ConfigError("line " + std::to_string(objectives_section->line) +
                          ": [objectives] needs a names key");
      }
      std::vector<std::string> list;
      try {
        list = split_list(names->value);
      } catch (const std::exception& e) {
        throw ConfigError("line " + std::to_string(names->line) +
                          ": bad names list: " + e.what());
      }
      for (const auto& name : list) {
        ObjectiveChoice choice;
        choice.name = name;
        try {
          choice.maximize = restoration_metric_maximized(name);
        } catch (const std::invalid_argument& e) {
          throw ConfigError("line " + std::to_string(names->line) + ": " +
                            e.what());
        }
        if (const RawEntry* dir = view.find(name)) {
          if (dir->value == "maximize") {
            choice.maximize = true;
          } else if (dir->value == "minimize") {
            choice.maximize = false;
          } else {
            throw ConfigError("line " + std::to_string(dir->line) +
                              ": direction must be maximize or minimize");
          }
        }
        config.objectives.push_back(choice);
      }
      view.finish();
    } else {
      config.objectives = {{"psnr", true}, {"hf_proxy", false}};
    }

    config.weights.clear();
    for (const auto& section : sections) {
      if (section.name.rfind("weights.", 0) != 0) continue;
      WeightBound bound;
      bound.name = section.name.substr(std::string("weights.").size());
      if (bound.name.empty()) {
        throw ConfigError("line " + std::to_string(section.line) +
                          ": weight section without a loss name");
      }
      try {
        loss_kind_from_string(bound.name);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("line " + std::to_string(section.line) + ": " +
                          e.what());
      }
      SectionView view(&section);
      if (auto v = view.get("lower", parse_double)) bound.lower = *v;
      if (auto v = view.get("upper", parse_double)) {
        bound.upper = *v;
      } else {
        throw ConfigError("line " + std::to_string(section.line) + ": [" +
                          section.name + "] needs an upper bound");
      }
      view.finish();
      config.weights.push_back(bound);
    }
  }

  SectionView engine(section_named(sections, "engine"));
  read_engine_section(engine, config.engine);

  validate_config(config);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
  std::ostringstream out;
  out << "[problem]\n";
  out << "kind = " << to_string(config.problem) << "\n";
  if (config.problem == ProblemKind::restoration) {
    out << "dataset_seed = " << config.dataset_seed << "\n";
    out << "dataset_count = " << config.dataset_count << "\n";
    out << "image_size = " << config.image_size << "\n";
    out << "scale = " << config.scale << "\n";
    out << "filter_size = " << config.filter_size << "\n";
    out << "train_steps = " << config.train_steps << "\n";
    out << "learning_rate = " << format_double(config.learning_rate) << "\n";
    out << "mode = " << (config.stateful ? "stateful" : "fresh") << "\n";
    out << "psnr_cap_db = " << format_double(config.psnr_cap_db) << "\n";
    out << "\n[objectives]\n";
    out << "names = ";
    for (std::size_t i = 0; i < config.objectives.size(); ++i) {
      if (i) out << ", ";
      out << config.objectives[i].name;
    }
    out << "\n";
    for (const auto& o : config.objectives) {
      out << o.name << " = " << (o.maximize ? "maximize" : "minimize") << "\n";
    }
    for (const auto& w : config.weights) {
      out << "\n[weights." << w.name << "]\n";
      out << "lower = " << format_double(w.lower) << "\n";
      out << "upper = " << format_double(w.upper) << "\n";
    }
  } else if (config.problem == ProblemKind::zdt1) {
    out << "dim = " << config.zdt1_dim << "\n";
  }

  const auto& engine = config.engine;
  out << "\n[engine]\n";
  out << "master_seed = " << engine.master_seed << "\n";
  out << "warm_start_count = " << engine.warm_start_count << "\n";
  if (!engine.fixed_warm_weights.empty()) {
    out << "pretrain_epochs = " << engine.pretrain_epochs << "\n";
    out << "fixed_warm_weights = ";
    for (std::size_t i = 0; i < engine.fixed_warm_weights.size(); ++i) {
      if (i) out << ", ";
      out << format_double(engine.fixed_warm_weights[i]);
    }
    out << "\n";
  }
  out << "total_iterations = " << engine.total_iterations << "\n";
  out << "window = " << engine.window << "\n";
  out << "mc_samples = " << engine.mc_samples << "\n";
  out << "scan_points = " << engine.scan_points << "\n";
  out << "refine_restarts = " << engine.refine_restarts << "\n";
  out << "refine_iterations = " << engine.refine_iterations << "\n";
  out << "reference_slack_fraction = "
      << format_double(engine.reference_slack_fraction) << "\n";
  out << "reference_min_slack = " << format_double(engine.reference_min_slack)
      << "\n";
  out << "gp_restarts = " << engine.gp_restarts << "\n";
  out << "gp_search_iterations = " << engine.gp_search_iterations << "\n";
  return out.str();
}

std::string default_config_text(ProblemKind kind) {
  const char* engine_block =
      "[engine]\n"
      "# Every random draw in the run derives from this one seed.\n"
      "master_seed = 0\n"
      "# Quasi-random evaluations before model-guided proposals begin.\n"
      "warm_start_count = 8\n"
      "total_iterations = 40\n"
      "# Fit surrogates on the newest N observations only; 0 = all.\n"
      "window = 0\n"
      "# Monte Carlo budget for 3+ objectives (2 objectives are exact).\n"
      "mc_samples = 2048\n"
      "# Acquisition maximizer: Sobol scan size, then local refinements.\n"
      "scan_points = 512\n"
      "refine_restarts = 4\n"
      "refine_iterations = 40\n"
      "# Reference point: per-objective minimum minus this fraction of the\n"
      "# observed range (never less than the minimum slack).\n"
      "reference_slack_fraction = 0.1\n"
      "reference_min_slack = 1e-06\n"
      "# Surrogate hyperparameter search budget.\n"
      "gp_restarts = 5\n"
      "gp_search_iterations = 40\n";

  if (kind == ProblemKind::restoration) {
    return std::string(
               "# Weighted-loss image restoration tuned by multi-objective\n"
               "# Bayesian optimization over the loss weights.\n"
               "\n"
               "[problem]\n"
               "kind = restoration\n"
               "# Synthetic paired dataset; nothing is read from disk.\n"
               "dataset_seed = 7\n"
               "dataset_count = 10\n"
               "image_size = 32\n"
               "scale = 2\n"
               "# Restorer: bicubic upsample, then one filter_size^2 "
               "convolution\n"
               "# plus a scalar bias.\n"
               "filter_size = 5\n"
               "# Gradient steps per evaluation and their step size.\n"
               "train_steps = 25\n"
               "learning_rate = 0.05\n"
               "# stateful: training continues across evaluations.\n"
               "# fresh: the restorer restarts from identity each time.\n"
               "mode = stateful\n"
               "psnr_cap_db = 100\n"
               "\n"
               "[objectives]\n"
               "# Validation metrics handed to the optimizer. Available:\n"
               "# psnr, ssim, lr_psnr (all maximized), hf_proxy (minimized).\n"
               "names = psnr, hf_proxy\n"
               "psnr = maximize\n"
               "hf_proxy = minimize\n"
               "\n"
               "# One section per enabled loss term; section order is weight\n"
               "# order. The optimizer explores weights inside these boxes.\n"
               "[weights.l1]\n"
               "lower = 0\n"
               "upper = 1\n"
               "\n"
               "[weights.l2]\n"
               "lower = 0\n"
               "upper = 1\n"
               "\n"
               "[weights.fft]\n"
               "# The unnormalized spectrum difference is large; keep this\n"
               "# weight small so the term cannot drown out the others.\n"
               "lower = 0\n"
               "upper = 0.02\n"
               "\n"
               "[weights.gradient]\n"
               "lower = 0\n"
               "upper = 1\n"
               "\n"
               "[weights.cycle]\n"
               "lower = 0\n"
               "upper = 1\n"
               "\n"
               "[weights.ssim]\n"
               "lower = 0\n"
               "upper = 1.5\n"
               "\n") +
           engine_block;
  }
  if (kind == ProblemKind::zdt1) {
    return std::string(
               "# Analytic benchmark: zdt1, both objectives minimized,\n"
               "# known front at g = 1.\n"
               "\n"
               "[problem]\n"
               "kind = zdt1\n"
               "dim = 6\n"
               "\n") +
           engine_block;
  }
  return std::string(
             "# Analytic smoke problem: f1 = x, f2 = 1 - x^2, both\n"
             "# maximized; every input is Pareto optimal.\n"
             "\n"
             "[problem]\n"
             "kind = toy_tradeoff\n"
             "\n") +
         engine_block;
}

std::vector<WeightBound> weight_bounds_of(const RunConfig& config) {
  if (config.problem == ProblemKind::restoration) return config.weights;
  const AnalyticProblem problem = config.problem == ProblemKind::zdt1
                                      ? zdt1_problem(config.zdt1_dim)
                                      : toy_tradeoff_problem();
  std::vector<WeightBound> bounds;
  for (int i = 0; i < problem.dim; ++i) {
    bounds.push_back({"x" + std::to_string(i + 1),
                      problem.lower[static_cast<std::size_t>(i)],
                      problem.upper[static_cast<std::size_t>(i)]});
  }
  return bounds;
}

std::vector<ObjectiveChoice> objectives_of(const RunConfig& config) {
  if (config.problem == ProblemKind::restoration) return config.objectives;
  const AnalyticProblem problem = config.problem == ProblemKind::zdt1
                                      ? zdt1_problem(config.zdt1_dim)
                                      : toy_tradeoff_problem();
  std::vector<ObjectiveChoice> out;
  for (std::size_t j = 0; j < problem.maximize.size(); ++j) {
    out.push_back({"f" + std::to_string(j + 1), problem.maximize[j]});
  }
  return out;
}

std::vector<int> orientation_of(const RunConfig& config) {
  std::vector<int> out;
  for (const auto& o : objectives_of(config)) out.push_back(o.maximize ? 1 : -1);
  return out;
}

std::unique_ptr<Evaluator> make_evaluator(const RunConfig& config) {
  if (config.problem == ProblemKind::restoration) {
    RestorationBenchConfig bench;
    bench.dataset.seed = config.dataset_seed;
    bench.dataset.count = config.dataset_count;
    bench.dataset.image_size = config.image_size;
    bench.dataset.scale = config.scale;
    bench.filter_size = config.filter_size;
    bench.train.steps = config.train_steps;
    bench.train.learning_rate = config.learning_rate;
    bench.stateful = config.stateful;
    bench.psnr_cap_db = config.psnr_cap_db;
    for (const auto& w : config.weights) {
      bench.losses.push_back(loss_kind_from_string(w.name));
    }
    for (const auto& o : config.objectives) bench.objectives.push_back(o.name);
    return std::make_unique<RestorationEvaluator>(std::move(bench));
  }
  const int dim =
      config.problem == ProblemKind::zdt1 ? config.zdt1_dim : 1;
  return std::make_unique<AnalyticEvaluator>(config.problem, dim);
}

}  // namespace mobo

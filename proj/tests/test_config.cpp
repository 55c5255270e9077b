#include <doctest.h>

#include <string>
#include <vector>

#include "mobo/config.hpp"

namespace {

std::string parse_error(const std::string& text) {
  try {
    (void)mobo::parse_config_text(text);
  } catch (const mobo::ConfigError& e) {
    return e.what();
  }
  return "";
}

bool error_contains(const std::string& text, const std::string& needle) {
  const std::string message = parse_error(text);
  if (message.find(needle) == std::string::npos) {
    const std::string note = "parse error was: \"" + message + "\"";
    MESSAGE(note);
    return false;
  }
  return true;
}

void check_same_config(const mobo::RunConfig& a, const mobo::RunConfig& b) {
  CHECK(a.problem == b.problem);
  CHECK(a.dataset_seed == b.dataset_seed);
  CHECK(a.dataset_count == b.dataset_count);
  CHECK(a.image_size == b.image_size);
  CHECK(a.scale == b.scale);
  CHECK(a.filter_size == b.filter_size);
  CHECK(a.train_steps == b.train_steps);
  CHECK(a.learning_rate == b.learning_rate);
  CHECK(a.stateful == b.stateful);
  CHECK(a.psnr_cap_db == b.psnr_cap_db);
  CHECK(a.zdt1_dim == b.zdt1_dim);
  REQUIRE(a.objectives.size() == b.objectives.size());
  for (std::size_t i = 0; i < a.objectives.size(); ++i) {
    CHECK(a.objectives[i].name == b.objectives[i].name);
    CHECK(a.objectives[i].maximize == b.objectives[i].maximize);
  }
  REQUIRE(a.weights.size() == b.weights.size());
  for (std::size_t i = 0; i < a.weights.size(); ++i) {
    CHECK(a.weights[i].name == b.weights[i].name);
    CHECK(a.weights[i].lower == b.weights[i].lower);
    CHECK(a.weights[i].upper == b.weights[i].upper);
  }
  CHECK(a.engine.warm_start_count == b.engine.warm_start_count);
  CHECK(a.engine.pretrain_epochs == b.engine.pretrain_epochs);
  CHECK(a.engine.fixed_warm_weights == b.engine.fixed_warm_weights);
  CHECK(a.engine.total_iterations == b.engine.total_iterations);
  CHECK(a.engine.window == b.engine.window);
  CHECK(a.engine.mc_samples == b.engine.mc_samples);
  CHECK(a.engine.scan_points == b.engine.scan_points);
  CHECK(a.engine.refine_restarts == b.engine.refine_restarts);
  CHECK(a.engine.refine_iterations == b.engine.refine_iterations);
  CHECK(a.engine.reference_slack_fraction ==
        b.engine.reference_slack_fraction);
  CHECK(a.engine.reference_min_slack == b.engine.reference_min_slack);
  CHECK(a.engine.master_seed == b.engine.master_seed);
  CHECK(a.engine.gp_restarts == b.engine.gp_restarts);
  CHECK(a.engine.gp_search_iterations == b.engine.gp_search_iterations);
}

}  // namespace

TEST_CASE("problem kind names round trip") {
  using mobo::ProblemKind;
  for (auto kind : {ProblemKind::restoration, ProblemKind::zdt1,
                    ProblemKind::toy_tradeoff}) {
    CHECK(mobo::problem_kind_from_string(mobo::to_string(kind)) == kind);
  }
  CHECK_THROWS_AS((void)mobo::problem_kind_from_string("rosenbrock"),
                  std::invalid_argument);
}

TEST_CASE("the generated restoration config parses to the documented defaults") {
  const auto config = mobo::parse_config_text(
      mobo::default_config_text(mobo::ProblemKind::restoration));
  CHECK(config.problem == mobo::ProblemKind::restoration);
  CHECK(config.dataset_seed == 7);
  CHECK(config.dataset_count == 10);
  CHECK(config.image_size == 32);
  CHECK(config.scale == 2);
  CHECK(config.filter_size == 5);
  CHECK(config.train_steps == 25);
  CHECK(config.learning_rate == 0.05);
  CHECK(config.stateful);
  CHECK(config.psnr_cap_db == 100.0);

  REQUIRE(config.objectives.size() == 2);
  CHECK(config.objectives[0].name == "psnr");
  CHECK(config.objectives[0].maximize);
  CHECK(config.objectives[1].name == "hf_proxy");
  CHECK_FALSE(config.objectives[1].maximize);

  REQUIRE(config.weights.size() == 6);
  const std::vector<std::string> order = {"l1",       "l2",    "fft",
                                          "gradient", "cycle", "ssim"};
  for (std::size_t i = 0; i < order.size(); ++i) {
    CHECK(config.weights[i].name == order[i]);
    CHECK(config.weights[i].lower == 0.0);
  }
  CHECK(config.weights[2].upper == 0.02);
  CHECK(config.weights[5].upper == 1.5);

  const mobo::EngineConfig defaults;
  CHECK(config.engine.warm_start_count == defaults.warm_start_count);
  CHECK(config.engine.total_iterations == defaults.total_iterations);
  CHECK(config.engine.window == defaults.window);
  CHECK(config.engine.mc_samples == defaults.mc_samples);
  CHECK(config.engine.scan_points == defaults.scan_points);
  CHECK(config.engine.refine_restarts == defaults.refine_restarts);
  CHECK(config.engine.refine_iterations == defaults.refine_iterations);
  CHECK(config.engine.reference_slack_fraction ==
        defaults.reference_slack_fraction);
  CHECK(config.engine.reference_min_slack == defaults.reference_min_slack);
  CHECK(config.engine.gp_restarts == defaults.gp_restarts);
  CHECK(config.engine.gp_search_iterations == defaults.gp_search_iterations);
  CHECK(config.engine.master_seed == 0);
}

TEST_CASE("the generated analytic configs parse") {
  const auto zdt1 = mobo::parse_config_text(
      mobo::default_config_text(mobo::ProblemKind::zdt1));
  CHECK(zdt1.problem == mobo::ProblemKind::zdt1);
  CHECK(zdt1.zdt1_dim == 6);

  const auto toy = mobo::parse_config_text(
      mobo::default_config_text(mobo::ProblemKind::toy_tradeoff));
  CHECK(toy.problem == mobo::ProblemKind::toy_tradeoff);
}

TEST_CASE("serialization round trips every field") {
  SUBCASE("default restoration") {
    const auto config = mobo::parse_config_text(
        mobo::default_config_text(mobo::ProblemKind::restoration));
    check_same_config(config,
                      mobo::parse_config_text(mobo::serialize_config(config)));
  }

  SUBCASE("customized restoration") {
    const std::string text =
        "[problem]\n"
        "kind = restoration\n"
        "dataset_seed = 12345\n"
        "dataset_count = 4\n"
        "image_size = 24\n"
        "scale = 2\n"
        "filter_size = 3\n"
        "train_steps = 5\n"
        "learning_rate = 0.125\n"
        "mode = fresh\n"
        "psnr_cap_db = 48\n"
        "[objectives]\n"
        "names = psnr, ssim, hf_proxy\n"
        "ssim = minimize\n"
        "[weights.l2]\n"
        "upper = 0.75\n"
        "[weights.ssim]\n"
        "lower = 0.25\n"
        "upper = 2\n"
        "[engine]\n"
        "master_seed = 99\n"
        "warm_start_count = 3\n"
        "pretrain_epochs = 2\n"
        "fixed_warm_weights = 0.5, 1.25\n"
        "total_iterations = 7\n"
        "window = 4\n"
        "mc_samples = 128\n"
        "scan_points = 33\n"
        "refine_restarts = 2\n"
        "refine_iterations = 11\n"
        "reference_slack_fraction = 0.2\n"
        "reference_min_slack = 0.001\n"
        "gp_restarts = 2\n"
        "gp_search_iterations = 9\n";
    const auto config = mobo::parse_config_text(text);
    CHECK_FALSE(config.stateful);
    CHECK(config.objectives.size() == 3);
    CHECK_FALSE(config.objectives[1].maximize);
    CHECK(config.weights[0].name == "l2");
    CHECK(config.weights[0].lower == 0.0);
    CHECK(config.engine.fixed_warm_weights ==
          std::vector<double>{0.5, 1.25});
    check_same_config(config,
                      mobo::parse_config_text(mobo::serialize_config(config)));
  }

  SUBCASE("zdt1 with a narrow budget") {
    const std::string text =
        "[problem]\n"
        "kind = zdt1\n"
        "dim = 4\n"
        "[engine]\n"
        "warm_start_count = 5\n"
        "total_iterations = 3\n"
        "window = 6\n";
    const auto config = mobo::parse_config_text(text);
    CHECK(config.zdt1_dim == 4);
    check_same_config(config,
                      mobo::parse_config_text(mobo::serialize_config(config)));
  }
}

TEST_CASE("comments and blank lines are ignored") {
  const auto config = mobo::parse_config_text(
      "# top comment\n"
      "\n"
      "[problem]\n"
      "# about the kind\n"
      "kind = toy_tradeoff\n"
      "\n"
      "[engine]\n"
      "warm_start_count = 4\n");
  CHECK(config.problem == mobo::ProblemKind::toy_tradeoff);
  CHECK(config.engine.warm_start_count == 4);
  CHECK(config.engine.total_iterations == 40);
}

TEST_CASE("syntax errors carry their line number") {
  CHECK(error_contains("[problem]\nkind = toy_tradeoff\n[broken\n",
                       "line 3: malformed section header"));
  CHECK(error_contains(
      "[problem]\nkind = toy_tradeoff\n[engine]\n[engine]\n",
      "line 4: duplicate section [engine]"));
  CHECK(error_contains("[problem]\nkind = toy_tradeoff\n[engine]\nnonsense\n",
                       "line 4: expected key = value"));
  CHECK(error_contains("window = 3\n", "line 1: key outside any section"));
  CHECK(error_contains("[problem]\nkind = toy_tradeoff\n[engine]\nwindow =\n",
                       "line 4: empty key or value"));
  CHECK(error_contains(
      "[problem]\nkind = toy_tradeoff\n[engine]\nwindow = 0\nwindow = 2\n",
      "line 5: duplicate key window"));
}

TEST_CASE("value and structure errors carry their location") {
  CHECK(error_contains(
      "[problem]\nkind = toy_tradeoff\n[engine]\nwarm_start_count = abc\n",
      "line 4: bad value for warm_start_count"));
  CHECK(error_contains(
      "[problem]\nkind = toy_tradeoff\n[engine]\nmaster_seed = -1\n",
      "line 4: bad value for master_seed"));
  CHECK(error_contains(
      "[problem]\nkind = toy_tradeoff\n[engine]\nturbo = yes\n",
      "line 4: unknown key turbo in [engine]"));
  CHECK(error_contains("[problem]\nkind = banana\n", "line 2"));
  CHECK(error_contains("[engine]\nwindow = 0\n", "missing [problem] section"));
  CHECK(error_contains("[problem]\ndim = 6\n", "missing key kind"));
  CHECK(error_contains("[problem]\nkind = toy_tradeoff\n[extras]\na = 1\n",
                       "line 3: unknown section [extras]"));
  CHECK(error_contains("[problem]\nkind = zdt1\n[weights.l1]\nupper = 1\n",
                       "line 3: [weights.l1] is only valid for restoration"));
  CHECK(error_contains("[problem]\nkind = toy_tradeoff\n[problem]\n",
                       "line 3: duplicate section [problem]"));
}

TEST_CASE("restoration specific errors") {
  const std::string head =
      "[problem]\n"
      "kind = restoration\n";
  CHECK(error_contains(head + "[weights.huber]\nupper = 1\n",
                       "line 3"));
  CHECK(error_contains(head + "[weights.l1]\nlower = 0\n",
                       "needs an upper bound"));
  CHECK(error_contains(head + "mode = sometimes\n",
                       "line 3: mode must be stateful or fresh"));
  CHECK(error_contains(
      head + "[objectives]\npsnr = maximize\n[weights.l1]\nupper = 1\n",
      "[objectives] needs a names key"));
  CHECK(error_contains(head +
                           "[objectives]\nnames = psnr, hf_proxy\n"
                           "psnr = upward\n[weights.l1]\nupper = 1\n",
                       "line 5: direction must be maximize or minimize"));
  CHECK(error_contains(head +
                           "[objectives]\nnames = psnr, sharpness\n"
                           "[weights.l1]\nupper = 1\n",
                       "unknown restoration metric"));
}

TEST_CASE("validation rejects inconsistent settings") {
  const std::string toy_head = "[problem]\nkind = toy_tradeoff\n[engine]\n";
  CHECK(error_contains(toy_head + "warm_start_count = 1\n",
                       "warm_start_count must be >= 2"));
  CHECK(error_contains(toy_head + "total_iterations = -1\n",
                       "total_iterations must be >= 0"));
  CHECK(error_contains(toy_head + "window = 1\n", "window is 0 or >= 2"));
  CHECK(error_contains(toy_head + "mc_samples = 1\n",
                       "mc_samples must be >= 2"));
  CHECK(error_contains(toy_head + "scan_points = 0\n",
                       "scan_points must be >= 1"));
  CHECK(error_contains(toy_head + "refine_restarts = 0\n",
                       "refine_restarts must be >= 1"));
  CHECK(error_contains(toy_head + "reference_min_slack = 0\n",
                       "reference_min_slack must be > 0"));
  CHECK(error_contains(toy_head + "gp_restarts = 0\n",
                       "gp_restarts must be >= 1"));
  CHECK(error_contains(toy_head + "pretrain_epochs = 2\n",
                       "pretrain_epochs and fixed_warm_weights"));
  CHECK(error_contains(toy_head + "fixed_warm_weights = 0.5\n",
                       "pretrain_epochs and fixed_warm_weights"));
  CHECK(error_contains(
      toy_head + "pretrain_epochs = 1\nfixed_warm_weights = 0.5, 0.5\n",
      "fixed_warm_weights must have one value per weight"));
  CHECK(error_contains(
      toy_head + "pretrain_epochs = 1\nfixed_warm_weights = 1.5\n",
      "outside the x1 bounds"));

  CHECK(error_contains("[problem]\nkind = zdt1\ndim = 1\n",
                       "zdt1 dim must be >= 2"));

  const std::string resto_head =
      "[problem]\nkind = restoration\n";
  const std::string weights_tail = "[weights.l1]\nupper = 1\n";
  CHECK(error_contains(resto_head + "image_size = 8\n" + weights_tail,
                       "image_size must be >= 16"));
  CHECK(error_contains(resto_head + "image_size = 18\nscale = 4\n" +
                           weights_tail,
                       "image_size must be divisible by scale"));
  CHECK(error_contains(resto_head + "filter_size = 4\n" + weights_tail,
                       "filter_size must be odd"));
  CHECK(error_contains(resto_head + "dataset_count = 1\n" + weights_tail,
                       "dataset_count must be >= 2"));
  CHECK(error_contains(resto_head + "learning_rate = 0\n" + weights_tail,
                       "learning_rate must be > 0"));
  CHECK(error_contains(resto_head,
                       "restoration runs need at least one [weights.<loss>]"));
  CHECK(error_contains(
      resto_head + "[weights.l1]\nlower = 1\nupper = 1\n",
      "lower must be < upper"));
  CHECK(error_contains(
      resto_head + "[objectives]\nnames = psnr\n" + weights_tail,
      "at least 2 objectives"));
  CHECK(error_contains(
      resto_head + "[objectives]\nnames = psnr, psnr\n" + weights_tail,
      "duplicate objective psnr"));
}

TEST_CASE("effective bounds, objectives and orientation per problem") {
  mobo::RunConfig zdt1;
  zdt1.problem = mobo::ProblemKind::zdt1;
  zdt1.zdt1_dim = 3;
  const auto zdt1_bounds = mobo::weight_bounds_of(zdt1);
  REQUIRE(zdt1_bounds.size() == 3);
  CHECK(zdt1_bounds[0].name == "x1");
  CHECK(zdt1_bounds[2].name == "x3");
  CHECK(zdt1_bounds[1].lower == 0.0);
  CHECK(zdt1_bounds[1].upper == 1.0);
  const auto zdt1_objectives = mobo::objectives_of(zdt1);
  REQUIRE(zdt1_objectives.size() == 2);
  CHECK(zdt1_objectives[0].name == "f1");
  CHECK_FALSE(zdt1_objectives[0].maximize);
  CHECK(mobo::orientation_of(zdt1) == std::vector<int>{-1, -1});

  mobo::RunConfig toy;
  toy.problem = mobo::ProblemKind::toy_tradeoff;
  CHECK(mobo::weight_bounds_of(toy).size() == 1);
  CHECK(mobo::orientation_of(toy) == std::vector<int>{1, 1});

  const auto resto = mobo::parse_config_text(
      mobo::default_config_text(mobo::ProblemKind::restoration));
  const auto resto_bounds = mobo::weight_bounds_of(resto);
  CHECK(resto_bounds.size() == 6);
  CHECK(resto_bounds[0].name == "l1");
  CHECK(mobo::orientation_of(resto) == std::vector<int>{1, -1});
}

TEST_CASE("make_evaluator builds the problem the config describes") {
  mobo::RunConfig toy;
  toy.problem = mobo::ProblemKind::toy_tradeoff;
  const auto toy_eval = mobo::make_evaluator(toy);
  CHECK(toy_eval->weight_dim() == 1);
  CHECK(toy_eval->objective_dim() == 2);
  CHECK_FALSE(toy_eval->is_stateful());
  CHECK(toy_eval->evaluate({0.5}) == std::vector<double>{0.5, 0.75});

  mobo::RunConfig zdt1;
  zdt1.problem = mobo::ProblemKind::zdt1;
  zdt1.zdt1_dim = 5;
  const auto zdt1_eval = mobo::make_evaluator(zdt1);
  CHECK(zdt1_eval->weight_dim() == 5);
  CHECK(zdt1_eval->evaluate({1, 0, 0, 0, 0}) == std::vector<double>{1, 0});

  const auto resto = mobo::parse_config_text(
      "[problem]\n"
      "kind = restoration\n"
      "dataset_count = 2\n"
      "image_size = 16\n"
      "train_steps = 1\n"
      "mode = fresh\n"
      "filter_size = 3\n"
      "[weights.l1]\n"
      "upper = 1\n");
  const auto resto_eval = mobo::make_evaluator(resto);
  CHECK(resto_eval->weight_dim() == 1);
  CHECK(resto_eval->objective_dim() == 2);
  CHECK_FALSE(resto_eval->is_stateful());
  const auto metrics = resto_eval->evaluate({0.5});
  REQUIRE(metrics.size() == 2);
  CHECK(metrics[0] > 0.0);
  CHECK(metrics[1] > 0.0);
}

TEST_CASE("load_config reports unreadable paths") {
  CHECK_THROWS_AS((void)mobo::load_config("/nonexistent/mobo.ini"),
                  mobo::ConfigError);
}

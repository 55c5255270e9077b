#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mobo/archive_io.hpp"
#include "mobo/engine.hpp"

namespace {

namespace fs = std::filesystem;

struct TempDir {
  TempDir() {
    path = fs::temp_directory_path() /
           ("mobo_archive_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
  fs::path path;
  static inline int counter = 0;
};

mobo::Observation sample_observation(int iteration) {
  mobo::Observation obs;
  obs.iteration = iteration;
  obs.phase = iteration <= 2 ? mobo::Phase::warm_start : mobo::Phase::optimized;
  obs.weights = {0.125 * iteration, 0.5};
  obs.objectives_raw = {1.0 / 3.0 + iteration, -0.7 * iteration};
  obs.orientation = {1, -1};
  if (obs.phase == mobo::Phase::optimized) {
    obs.reference = {-1.25, -2.5};
  }
  obs.eval_wall_seconds = 0.25 * iteration;
  obs.fit_wall_seconds = 0.001;
  obs.propose_wall_seconds = 0.002;
  obs.seed = 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(iteration);
  return obs;
}

void check_equal(const mobo::Observation& a, const mobo::Observation& b) {
  CHECK(a.iteration == b.iteration);
  CHECK(a.phase == b.phase);
  CHECK(a.weights == b.weights);
  CHECK(a.objectives_raw == b.objectives_raw);
  CHECK(a.orientation == b.orientation);
  CHECK(a.reference == b.reference);
  CHECK(a.eval_wall_seconds == b.eval_wall_seconds);
  CHECK(a.fit_wall_seconds == b.fit_wall_seconds);
  CHECK(a.propose_wall_seconds == b.propose_wall_seconds);
  CHECK(a.seed == b.seed);
}

}  // namespace

TEST_CASE("json lines round trip observations exactly") {
  for (int i = 1; i <= 4; ++i) {
    const auto obs = sample_observation(i);
    const std::string line = mobo::to_json_line(obs);
    CHECK(line.find('\n') == std::string::npos);
    check_equal(obs, mobo::observation_from_json(line));

    const auto parsed = nlohmann::json::parse(line);
    CHECK(parsed.at("version") == mobo::kArchiveSchemaVersion);
    CHECK(parsed.at("iteration") == i);
  }
}

TEST_CASE("json parser rejects damaged lines") {
  const std::string line = mobo::to_json_line(sample_observation(3));
  CHECK_THROWS_AS((void)mobo::observation_from_json("{not json"),
                  mobo::ArchiveError);
  CHECK_THROWS_AS((void)mobo::observation_from_json("[1, 2, 3]"),
                  mobo::ArchiveError);

  auto drop_field = nlohmann::json::parse(line);
  drop_field.erase("weights");
  CHECK_THROWS_AS((void)mobo::observation_from_json(drop_field.dump()),
                  mobo::ArchiveError);

  auto future = nlohmann::json::parse(line);
  future["version"] = mobo::kArchiveSchemaVersion + 1;
  CHECK_THROWS_AS((void)mobo::observation_from_json(future.dump()),
                  mobo::ArchiveError);
}

TEST_CASE("writer appends flushed lines that load back verbatim") {
  TempDir dir;
  const auto path = dir.file("run.archive.jsonl");
  {
    mobo::ArchiveWriter writer(path);
    CHECK(writer.path() == path);
    for (int i = 1; i <= 3; ++i) writer.append(sample_observation(i));
  }
  {
    mobo::ArchiveWriter writer(path);
    writer.append(sample_observation(4));
  }

  const auto result = mobo::load_archive(path, true);
  CHECK(result.skipped.empty());
  REQUIRE(result.observations.size() == 4);
  for (int i = 0; i < 4; ++i) {
    check_equal(result.observations[static_cast<std::size_t>(i)],
                sample_observation(i + 1));
  }
}

TEST_CASE("a missing archive is an error while an empty one is a fresh run") {
  TempDir dir;
  CHECK_THROWS_AS((void)mobo::load_archive(dir.file("absent.jsonl"), true),
                  mobo::ArchiveError);

  const auto empty_path = dir.file("empty.jsonl");
  std::ofstream(empty_path).close();
  const auto empty = mobo::load_archive(empty_path, true);
  CHECK(empty.observations.empty());
  CHECK(empty.skipped.empty());
}

TEST_CASE("a torn final line is tolerated, a torn middle line is not") {
  TempDir dir;
  const auto path = dir.file("torn.jsonl");
  {
    std::ofstream out(path);
    out << mobo::to_json_line(sample_observation(1)) << "\n";
    out << mobo::to_json_line(sample_observation(2)) << "\n";
    out << R"({"version": 1, "iteration": 3, "wei)";
  }
  const auto strict = mobo::load_archive(path, true);
  CHECK(strict.observations.size() == 2);
  REQUIRE(strict.skipped.size() == 1);
  CHECK(strict.skipped[0].first == 3);

  const auto middle = dir.file("middle.jsonl");
  {
    std::ofstream out(middle);
    out << mobo::to_json_line(sample_observation(1)) << "\n";
    out << "garbage\n";
    out << mobo::to_json_line(sample_observation(3)) << "\n";
  }
  CHECK_THROWS_AS((void)mobo::load_archive(middle, true), mobo::ArchiveError);

  const auto lenient = mobo::load_archive(middle, false);
  CHECK(lenient.observations.size() == 2);
  REQUIRE(lenient.skipped.size() == 1);
  CHECK(lenient.skipped[0].first == 2);
  CHECK(lenient.observations[1].iteration == 3);
}

TEST_CASE("blank lines are ignored wherever they appear") {
  TempDir dir;
  const auto path = dir.file("blanks.jsonl");
  {
    std::ofstream out(path);
    out << "\n" << mobo::to_json_line(sample_observation(1)) << "\n\n";
    out << mobo::to_json_line(sample_observation(2)) << "\n";
  }
  const auto result = mobo::load_archive(path, true);
  CHECK(result.observations.size() == 2);
  CHECK(result.skipped.empty());
}

TEST_CASE("the writer lock excludes a second writer") {
  TempDir dir;
  const auto path = dir.file("locked.jsonl");
  mobo::ArchiveWriter writer(path);
  writer.append(sample_observation(1));

  // Locks are process-scoped, so probe from a child process.
  const pid_t pid = ::fork();
  REQUIRE(pid >= 0);
  if (pid == 0) {
    int code = 0;
    try {
      mobo::ArchiveWriter second(path);
    } catch (const mobo::ArchiveError&) {
      code = 42;
    } catch (...) {
      code = 43;
    }
    ::_exit(code);
  }
  int status = 0;
  REQUIRE(::waitpid(pid, &status, 0) == pid);
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 42);

  writer.append(sample_observation(2));
  const auto result = mobo::load_archive(path, true);
  CHECK(result.observations.size() == 2);
}

TEST_CASE("state files round trip and report missing files") {
  TempDir dir;
  const auto path = dir.file("run.state.json");
  const std::string blob = R"({"filter": [[1, 0], [0, 1]], "bias": 0.25})";
  mobo::write_state_file(path, 17, blob);
  const auto state = mobo::read_state_file(path);
  CHECK(state.loaded);
  CHECK(state.observation_count == 17);
  CHECK(state.evaluator_state == blob);

  const auto missing = mobo::read_state_file(dir.file("nope.json"));
  CHECK_FALSE(missing.loaded);
  CHECK(missing.observation_count == 0);

  const auto mangled_path = dir.file("bad.state.json");
  std::ofstream(mangled_path) << "not a state file";
  const auto mangled = mobo::read_state_file(mangled_path);
  CHECK_FALSE(mangled.loaded);

  // Rewrites replace the previous checkpoint.
  mobo::write_state_file(path, 18, "123");
  const auto updated = mobo::read_state_file(path);
  CHECK(updated.loaded);
  CHECK(updated.observation_count == 18);
  CHECK(updated.evaluator_state == "123");
}

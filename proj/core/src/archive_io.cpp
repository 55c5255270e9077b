#include "mobo/archive_io.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mobo {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<double> doubles_of(const json& arr, const char* field) {
  if (!arr.is_array()) {
    throw ArchiveError(std::string("archive field is not an array: ") + field);
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) {
      throw ArchiveError(std::string("archive field has a non-number: ") +
                         field);
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string to_json_line(const Observation& obs) {
  ordered_json j;
  j["version"] = kArchiveSchemaVersion;
  j["iteration"] = obs.iteration;
  j["phase"] = to_string(obs.phase);
  j["weights"] = obs.weights;
  j["objectives_raw"] = obs.objectives_raw;
  j["orientation"] = obs.orientation;
  j["eval_wall_seconds"] = obs.eval_wall_seconds;
  j["fit_wall_seconds"] = obs.fit_wall_seconds;
  j["propose_wall_seconds"] = obs.propose_wall_seconds;
  j["seed"] = obs.seed;
  j["reference"] = obs.reference;
  return j.dump();
}

Observation observation_from_json(const std::string& line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ArchiveError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ArchiveError("archive line is not an object");
  for (const char* field :
       {"version", "iteration", "phase", "weights", "objectives_raw",
        "orientation", "eval_wall_seconds", "fit_wall_seconds",
        "propose_wall_seconds", "seed", "reference"}) {
    if (!j.contains(field)) {
      throw ArchiveError(std::string("missing archive field: ") + field);
    }
  }
  const int version = j["version"].get<int>();
  if (version != kArchiveSchemaVersion) {
    throw ArchiveError("unsupported archive version " +
                       std::to_string(version));
  }

  Observation obs;
  obs.iteration = j["iteration"].get<int>();
  try {
    obs.phase = phase_from_string(j["phase"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ArchiveError(e.what());
  }
  obs.weights = doubles_of(j["weights"], "weights");
  obs.objectives_raw = doubles_of(j["objectives_raw"], "objectives_raw");
  for (const auto& v : j["orientation"]) {
    const int o = v.get<int>();
    if (o != 1 && o != -1) throw ArchiveError("orientation must be +1/-1");
    obs.orientation.push_back(o);
  }
  obs.reference = doubles_of(j["reference"], "reference");
  obs.eval_wall_seconds = j["eval_wall_seconds"].get<double>();
  obs.fit_wall_seconds = j["fit_wall_seconds"].get<double>();
  obs.propose_wall_seconds = j["propose_wall_seconds"].get<double>();
  obs.seed = j["seed"].get<std::uint64_t>();

  if (obs.objectives_raw.size() != obs.orientation.size()) {
    throw ArchiveError("objectives_raw and orientation sizes disagree");
  }
  if (!obs.reference.empty() &&
      obs.reference.size() != obs.orientation.size()) {
    throw ArchiveError("reference size disagrees with objectives");
  }
  return obs;
}

ArchiveWriter::ArchiveWriter(const std::string& path) : path_(path) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd_ < 0) {
    throw ArchiveError("cannot open archive " + path + ": " +
                       std::strerror(errno));
  }
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    const int err = errno;
    ::close(fd_);
    fd_ = -1;
    if (err == EWOULDBLOCK) {
      throw ArchiveError("archive " + path +
                         " is locked by another process");
    }
    throw ArchiveError("cannot lock archive " + path + ": " +
                       std::strerror(err));
  }
}

ArchiveWriter::~ArchiveWriter() {
  if (fd_ >= 0) ::close(fd_);  // releases the lock
}

void ArchiveWriter::append(const Observation& obs) {
  const std::string line = to_json_line(obs) + "\n";
  // A single write keeps the line atomic with respect to other readers;
  // fsync makes the observation durable before the next evaluation runs.
  ssize_t written = 0;
  while (written < static_cast<ssize_t>(line.size())) {
    const ssize_t n = ::write(fd_, line.data() + written,
                              line.size() - static_cast<std::size_t>(written));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ArchiveError("archive write failed: " +
                         std::string(std::strerror(errno)));
    }
    written += n;
  }
  if (::fsync(fd_) != 0) {
    throw ArchiveError("archive fsync failed: " +
                       std::string(std::strerror(errno)));
  }
}

ArchiveLoadResult load_archive(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw ArchiveError("cannot read archive " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }

  ArchiveLoadResult result;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      result.observations.push_back(observation_from_json(lines[i]));
    } catch (const ArchiveError& e) {
      const bool final_line = (i + 1 == lines.size());
      if (strict && !final_line) {
        throw ArchiveError("line " + std::to_string(i + 1) + ": " + e.what());
      }
      result.skipped.emplace_back(static_cast<int>(i + 1), e.what());
    }
  }
  return result;
}

void write_state_file(const std::string& path, int observation_count,
                      const std::string& evaluator_state) {
  // Write-then-rename so a crash can only ever leave the previous intact
  // checkpoint behind, never a torn one.
  const std::string tmp = path + ".tmp";
  {
    ordered_json j;
    j["observation_count"] = observation_count;
    j["evaluator_state"] = evaluator_state;
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ArchiveError("cannot write state file " + tmp);
    out << j.dump();
    out.flush();
    if (!out) throw ArchiveError("state file write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw ArchiveError("cannot replace state file " + path + ": " +
                       std::strerror(errno));
  }
}

StateFile read_state_file(const std::string& path) {
  StateFile out;
  std::ifstream in(path);
  if (!in) return out;
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    const json j = json::parse(buffer.str());
    out.observation_count = j.at("observation_count").get<int>();
    out.evaluator_state = j.at("evaluator_state").get<std::string>();
    out.loaded = true;
  } catch (const json::exception&) {
    out.loaded = false;
  }
  return out;
}

}  // namespace mobo

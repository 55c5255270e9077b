#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mobo/engine.hpp"

namespace mobo {

inline constexpr int kArchiveSchemaVersion = 1;

class ArchiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One observation as a single JSON object line (no trailing newline).
std::string to_json_line(const Observation& obs);

/// Parses one archive line. Throws ArchiveError on malformed JSON, missing
/// fields or an unknown schema version.
Observation observation_from_json(const std::string& line);

/// Append-only newline-delimited JSON writer. The file is created if
/// missing and locked exclusively (flock) for the writer's lifetime, so
/// two processes cannot interleave observations; the lock dies with the
/// process. Every append is flushed to disk before returning.
class ArchiveWriter {
 public:
  explicit ArchiveWriter(const std::string& path);
  ~ArchiveWriter();
  ArchiveWriter(const ArchiveWriter&) = delete;
  ArchiveWriter& operator=(const ArchiveWriter&) = delete;

  void append(const Observation& obs);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  int fd_ = -1;
};

struct ArchiveLoadResult {
  std::vector<Observation> observations;
  std::vector<std::pair<int, std::string>> skipped;  // line number, reason
};

/// Reads an archive file. In strict mode a malformed line is an error,
/// except for a malformed final line, which is treated as the torn tail
/// of an interrupted write, skipped and reported. In lenient mode all
/// malformed lines are skipped and reported.
ArchiveLoadResult load_archive(const std::string& path, bool strict);

/// Evaluator state checkpoint: the serialized evaluator after
/// `observation_count` archived observations.
void write_state_file(const std::string& path, int observation_count,
                      const std::string& evaluator_state);

struct StateFile {
  int observation_count = 0;
  std::string evaluator_state;
  bool loaded = false;
};

/// Reads a state checkpoint; loaded stays false when the file is missing
/// or unreadable (resume then falls back to replay).
StateFile read_state_file(const std::string& path);

}  // namespace mobo

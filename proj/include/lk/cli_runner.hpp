#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

namespace lk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitBlowup = 2;
inline constexpr int kExitIo = 3;

struct RunOptions {
  std::string out_dir = ".";
  int threads = 0;  // 0 = library decides
  bool quiet = false;
};

/// Executes one named workflow from its JSON config.  Artifacts land in
/// out_dir as <command>-<hash>.csv/json, where the hash is FNV-1a over the
/// canonical (key-sorted) dump of the effective config.  A one-line summary
/// is printed to `out` unless quiet; failures print one machine-readable
/// JSON object to `err` and map to the exit codes above.
int run_command(const std::string& command, const nlohmann::json& config, const RunOptions& opts,
                std::ostream& out, std::ostream& err);

/// Commands understood by run_command.
bool known_command(const std::string& command);

}  // namespace lk::cli

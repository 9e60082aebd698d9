#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace aniso::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,     // I/O, parse or geometry errors
  kUsage = 2,       // invalid flags or inconsistent run options
  kRunaway = 3,     // node cap exceeded
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace aniso::cli

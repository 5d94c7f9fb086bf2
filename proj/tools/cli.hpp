#pragma once

#include <optional>
#include <string>
#include <vector>

namespace greenfpga::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kInconsistent = 2 };

struct Outcome {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

// Runs one command line (without the program name). `env_params` stands in
// for the GREENFPGA_PARAMS environment variable. Files named by --out are
// written; everything else is returned.
Outcome run(const std::vector<std::string>& args, const std::optional<std::string>& env_params = {});

}  // namespace greenfpga::cli

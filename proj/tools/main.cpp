#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env;
  if (const char* p = std::getenv("GREENFPGA_PARAMS"); p != nullptr && *p != '\0') env = p;

  const auto r = greenfpga::cli::run(args, env);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}

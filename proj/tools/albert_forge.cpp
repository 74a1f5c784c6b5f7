#include <string>
#include <vector>

#include "albert/runner.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return albert::cli::run_cli(args);
}

#include <iostream>
#include <string>
#include <vector>

#include "eqloc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto report = eqloc::run_cli(std::move(args), std::cout);
  return report.exit_code;
}

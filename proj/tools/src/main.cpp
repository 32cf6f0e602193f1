#include <iostream>
#include <string>
#include <vector>

#include "qportrait_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qp::cli::run_cli(args, std::cout, std::cerr);
}

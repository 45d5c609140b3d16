#include <iostream>

#include "brickint/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return brickint::cli::run(args, std::cout, std::cerr);
}

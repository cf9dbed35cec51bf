#include <iostream>

#include "quiltkit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qk::run_cli(args, std::cout, std::cerr);
}

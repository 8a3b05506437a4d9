#include <iostream>
#include <string>
#include <vector>

#include "pvsizing/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return pvsizing::run_cli(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "frogsim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return frogsim::cli::run(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "anticonc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return anticonc::cli::run(args, std::cout, std::cerr);
}

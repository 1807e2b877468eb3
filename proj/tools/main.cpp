#include <iostream>
#include <string>
#include <vector>

#include "fuzzy_cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fuzzy::cli::run(args, std::cout, std::cerr);
}

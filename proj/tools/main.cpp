#include <iostream>
#include <string>
#include <vector>

#include "epispace/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return epispace::cli::run(args, std::cout, std::cerr);
}

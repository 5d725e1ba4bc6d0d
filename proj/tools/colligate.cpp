#include <iostream>
#include <string>
#include <vector>

#include "colligate/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return colligate::cli::run(args, std::cout, std::cerr);
}

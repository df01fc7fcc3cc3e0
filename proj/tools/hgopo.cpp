#include <iostream>
#include <string>
#include <vector>

#include "hgopo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hgopo::run_cli(args, std::cout, std::cerr);
}

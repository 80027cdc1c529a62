#include <iostream>
#include <string>
#include <vector>

#include "cellscope/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cellscope::run_cli(args, std::cout, std::cerr);
}

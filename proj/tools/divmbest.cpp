#include <iostream>

#include "divmbest/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return divmbest::run_cli(args, std::cout, std::cerr);
}

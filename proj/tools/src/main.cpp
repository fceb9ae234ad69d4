#include <iostream>

#include "imdet_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return imdet::cli::run(args, std::cout, std::cerr);
}

#include <iostream>

#include "elastica/cli/commands.hpp"

int main(int argc, char** argv) {
  return elastica::cli::run_cli(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "linmax_cli/cli.hpp"

int main(int argc, char** argv) {
  return linmax::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}

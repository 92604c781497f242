#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return s2hull::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "primeform/harness/harness.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return primeform::harness::cli_main(args, std::cout, std::cerr);
}

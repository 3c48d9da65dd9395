#include <iostream>

#include "bihamil/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bihamil::run(args, std::cout, std::cerr);
}

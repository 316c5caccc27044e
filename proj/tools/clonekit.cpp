#include <iostream>

#include "clonekit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return clonekit::cli::run(args, std::cout, std::cerr);
}

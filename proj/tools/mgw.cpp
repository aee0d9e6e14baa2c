#include <iostream>
#include <string>
#include <vector>

#include "mgw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mgw::cli_run(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "ofs/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ofs::cli::run(args, std::cout, std::cerr);
}

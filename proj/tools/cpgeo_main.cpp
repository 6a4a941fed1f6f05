#include <iostream>
#include <string>
#include <vector>

#include "cpgeo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cpgeo::cli::run(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "esg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return esg::cli::run(args, std::cout, std::cerr);
}

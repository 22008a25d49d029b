#include <iostream>
#include <string>
#include <vector>

#include "dikin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dikin::cli::run(args, std::cout, std::cerr);
}

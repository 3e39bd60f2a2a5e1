#include <iostream>
#include <string>
#include <vector>

#include "lefcli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return lefcli::run(args, std::cout, std::cerr);
}

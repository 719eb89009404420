#include <iostream>
#include <string>
#include <vector>

#include "gnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gnet::run_cli(args, std::cout, std::cerr);
}

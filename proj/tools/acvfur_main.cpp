#include <iostream>
#include <string>
#include <vector>

#include "acvfur/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return acvfur::run_cli(args, std::cout, std::cerr);
}

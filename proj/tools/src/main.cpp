#include <iostream>
#include <string>
#include <vector>

#include "bprt_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return bprt::cli::run(args, std::cout, std::cerr);
}

#include <iostream>
#include <string>
#include <vector>

#include "quadwalk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return quadwalk::cli::dispatch(args, std::cout, std::cerr);
}

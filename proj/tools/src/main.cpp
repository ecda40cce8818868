#include "discordlab/cli/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return discordlab::cli::parse_and_dispatch(args, std::cout, std::cerr);
}

#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include "cli.hpp"

int main(int argc, char** argv) {
  geoassess::cli::Environment env;
  env.color = std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO) != 0;
  const std::vector<std::string> args(argv + 1, argv + argc);
  return geoassess::cli::run(args, std::cout, std::cerr, env);
}

#include <iostream>

#include "weylkit/cli.hpp"

int main(int argc, char** argv) {
  return weylkit::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

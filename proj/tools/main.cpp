#include <iostream>

#include "fbar/cli.hpp"

int main(int argc, char** argv) {
  return fbar::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}

#include <iostream>

#include "bellinger/cli.hpp"

int main(int argc, char** argv) {
  return bellinger::cli::run(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "isingdos/cli.hpp"

int main(int argc, char** argv) {
  return isingdos::run_cli(argc, argv, std::cout, std::cerr);
}

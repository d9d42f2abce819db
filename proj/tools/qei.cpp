#include <cstdlib>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return qei::cli::run(argc, argv, std::cout, std::cerr, std::getenv("QEI_TOL"));
}

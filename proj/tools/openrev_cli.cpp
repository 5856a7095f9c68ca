#include <iostream>

#include "openrev/cli.hpp"

int main(int argc, char** argv) {
  return openrev::cli::run(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "sphinv/cli.hpp"

int main(int argc, char** argv) {
  return sphinv::cli::run(argc, argv, std::cout, std::cerr);
}

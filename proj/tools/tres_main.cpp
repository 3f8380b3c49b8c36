#include <iostream>

#include "tres/cli.hpp"

int main(int argc, char** argv) {
  return tres::run_cli(argc, argv, std::cout, std::cerr);
}

#include <iostream>

#include "spinmirror/cli.hpp"

int main(int argc, char** argv) {
  return spinmirror::run_cli(argc, argv, std::cout, std::cerr);
}
